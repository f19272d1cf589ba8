"""Establishes the service container of a run.

One command builds one Application: the providers of the stages it
needs bind their services, the non-deferred ones are built eagerly, and
the pipeline asks the container for the engine, cleaner, miner or
learner configured for this run.
"""
import logging
from os import getcwd
from os.path import join
from typing import Any, Dict, List

from featurefinch.support.exceptions import InvariantViolation
from featurefinch.support.services import Service, ServiceProvider

logger = logging.getLogger(__name__)

AREAS = ("corpus", "models", "reports")


class Application:
    """The service container for a featurefinch run.

    Attributes:
        paths: Output directory of the run under `base`, and the
            `corpus`, `models` and `reports` areas inside it.
        providers: Registered providers, in registration order.
        _bindings: Services bound to the container.
        _instances: Built instances of singleton services.

    Example:
        app = Application(base_path=abspath("out"))
        app.register(ConfigServiceProvider(None, {"seed": 3}))
        engine = app.make("engine")
    """

    def __init__(self, base_path: str = None) -> None:
        """Establish the service container and the output areas.

        Args:
            base_path: Output directory of the run, the working
                directory by default.
        """
        base_path = base_path or getcwd()

        self.paths: Dict[str, str] = {"base": base_path}
        self.paths.update({area: join(base_path, area) for area in AREAS})
        self.providers: List[ServiceProvider] = []
        self._bindings: Dict[str, Service] = {}
        self._instances: Dict[str, Any] = {}

    def register(self, provider: ServiceProvider) -> None:
        """Let a provider bind its services.

        Args:
            provider: Provider of one pipeline stage.

        Raises:
            InvariantViolation: If the provider left a service it
                declares unbound.
        """
        provider.register(self)
        missing = provider.missing(self)
        if missing:
            raise InvariantViolation(
                f"{type(provider).__name__} did not bind "
                f"{', '.join(missing)}"
            )
        self.providers.append(provider)
        logger.debug(
            "registered %s: %s",
            type(provider).__name__,
            ", ".join(provider.provides),
        )

    def bound(self, name: str) -> bool:
        """Whether a service is bound under a name."""
        return name in self._bindings

    def bind(self, service: Service) -> None:
        """Bind a service to the service container.

        Args:
            service: The Service to bind.

        Raises:
            ValueError: If the service name has already
                been used to bind another service.
        """
        if self.bound(service.name):
            raise ValueError(
                f"A service with the name {service.name} has already "
                f"been bound to the service container."
            )

        self._bindings[service.name] = service

    def make(self, name: str) -> Any:
        """Build a service, or return the shared instance of a singleton.

        Args:
            name: A string of the service name.

        Returns:
            The service, as returned by the Service closure.

        Raises:
            KeyError: If no service is bound under `name`.
        """
        try:
            binding = self._bindings[name]
        except KeyError:
            raise KeyError(
                f"Unknown service {name}, check service "
                f"is bound to the service container."
            )

        if not binding.singleton:
            return binding.closure(self)

        if name not in self._instances:
            self._instances[name] = binding.closure(self)
        return self._instances[name]

    def load_services(self) -> None:
        """Build every bound service that is not deferred."""
        for service in self._bindings.values():
            if not service.defer:
                self.make(service.name)
