"""Provides services for feature-dependency mining."""
from featurefinch.foundation.application import Application
from featurefinch.mine.miner import Miner
from featurefinch.support.services import Service, ServiceProvider


class MineServiceProvider(ServiceProvider):
    """Registers the miner to the service container."""

    provides = ("miner",)

    def register(self, app: Application) -> None:
        """Register the miner service.

        Args:
            app: The Application.
        """

        def register_miner(app: Application) -> Miner:
            """Closure for creating the miner.

            Args:
                app: The Application.

            Returns:
                Miner: Miner using the run's thresholds.
            """
            return Miner(app.make("config").mine)

        app.bind(Service("miner", register_miner, singleton=True))
