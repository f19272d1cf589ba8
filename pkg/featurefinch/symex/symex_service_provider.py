"""Provides services for the symbolic execution engine."""
from featurefinch.foundation.application import Application
from featurefinch.modelx.cleaning import TraceCleaner
from featurefinch.support.services import Service, ServiceProvider
from featurefinch.symex.engine import SymbolicEngine


class SymexServiceProvider(ServiceProvider):
    """Registers the engine and the trace cleaner to the container.

    Both services read the `config` service.
    """

    provides = ("engine", "cleaner")

    def register(self, app: Application) -> None:
        """Register the engine and cleaner services.

        Args:
            app: The Application.
        """

        def register_engine(app: Application) -> SymbolicEngine:
            """Closure for creating the configured engine.

            Args:
                app: The Application.

            Returns:
                SymbolicEngine: Engine using the run's engine settings.
            """
            return SymbolicEngine(app.make("config").engine)

        def register_cleaner(app: Application) -> TraceCleaner:
            """Closure for creating the trace cleaner.

            Args:
                app: The Application.

            Returns:
                TraceCleaner: Cleaner using the run's exclusion list.
            """
            return TraceCleaner(app.make("config").exclusions)

        app.bind(Service("engine", register_engine, singleton=True))
        app.bind(Service("cleaner", register_cleaner, singleton=True))
