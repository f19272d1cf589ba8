"""Provides services for the classification pipeline."""
from featurefinch.foundation.application import Application
from featurefinch.learn.learner import Learner
from featurefinch.support.services import Service, ServiceProvider


class LearnServiceProvider(ServiceProvider):
    """Registers the learner to the service container."""

    provides = ("learner",)

    def register(self, app: Application) -> None:
        """Register the learner service.

        Args:
            app: The Application.
        """

        def register_learner(app: Application) -> Learner:
            """Closure for creating the learner.

            Args:
                app: The Application.

            Returns:
                Learner: Learner using the run's source, model and
                    hyperparameters.
            """
            return Learner(app.make("config").learn)

        app.bind(Service("learner", register_learner, singleton=True))
