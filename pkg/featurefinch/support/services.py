"""Services and the providers that bind them to the container.

Every pipeline stage ships a provider naming the services it binds.
The container checks those names after registration, so a command fails
before any work starts when a stage is wired incompletely.
"""
from abc import ABCMeta, abstractmethod
from typing import Any, Callable, NamedTuple, Tuple


class Service(NamedTuple):
    """A named recipe for one pipeline component.

    Attributes:
        name: Name the component is made by, e.g. `engine`.
        closure: Callable taking the container and building the
            component.
        singleton: Whether one instance is shared by the whole run.
        defer: Whether building waits until the component is first
            requested.
    """

    name: str
    closure: Callable[[Any], Any]
    singleton: bool = False
    defer: bool = False

    def __repr__(self) -> str:
        flags = [
            flag
            for flag, enabled in (
                ("singleton", self.singleton),
                ("deferred", self.defer),
            )
            if enabled
        ]
        return f"<Service {self.name} {' '.join(flags) or 'transient'}>"


class ServiceProvider(metaclass=ABCMeta):
    """Base class of the providers of one pipeline stage.

    Attributes:
        provides: Names of the services `register` binds.

    Usage:
        app.register(SymexServiceProvider())
    """

    provides: Tuple[str, ...] = ()

    @abstractmethod
    def register(self, app: "Application") -> None:  # noqa
        """Bind the stage's services to the container.

        Args:
            app: The Application.
        """

    def missing(self, app: "Application") -> Tuple[str, ...]:  # noqa
        """Names this provider promised but did not bind."""
        return tuple(name for name in self.provides if not app.bound(name))
