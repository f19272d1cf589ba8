from os.path import join
from unittest.mock import MagicMock, Mock

from pytest import fixture, raises

from featurefinch.foundation.application import Application
from featurefinch.support.exceptions import InvariantViolation
from featurefinch.support.services import Service, ServiceProvider


@fixture
def application():
    return Application(base_path="out")


def test_paths(application):
    assert application.paths == {
        "base": "out",
        "corpus": join("out", "corpus"),
        "models": join("out", "models"),
        "reports": join("out", "reports"),
    }


def test_bind_service(application):
    name = "test"
    mock_closure = MagicMock()
    singleton = True
    defer = True

    application.bind(Service(name, mock_closure, singleton, defer))

    assert application._bindings == {
        name: Service(name, mock_closure, singleton, defer)
    }


def test_binding_service_with_used_name(application):
    """Test binding a service to the service container where
    the name has already been used to bind another service.
    """
    name = "test"

    application._bindings = {name: Mock()}

    with raises(
        ValueError,
        match=(
            f"A service with the name {name} has already "
            f"been bound to the service container."
        ),
    ):
        application.bind(Service(name, Mock()))


def test_make_unknown_service(application):
    name = "test"

    with raises(KeyError) as exception:
        application.make(name)

    assert (
        f"Unknown service {name}, check service "
        f"is bound to the service container." in str(exception.value)
    )


def test_make_known_non_singleton_service(application):
    name = "test"
    closure = Mock(side_effect=lambda app: Mock())

    application.bind(Service(name, closure, singleton=False))
    service_1 = application.make(name)
    service_2 = application.make(name)

    assert isinstance(service_1, Mock)
    assert service_1 is not service_2
    assert closure.call_count == 2


def test_make_known_singleton_service(application):
    name = "test"
    closure = Mock()

    application.bind(Service(name, closure, singleton=True))
    service_1 = application.make(name)
    service_2 = application.make(name)

    assert service_1 is service_2
    closure.assert_called_once_with(application)


def test_load_services(application):
    mock_closure = Mock()
    application.bind(Service("engine", mock_closure, True, False))
    application.bind(Service("learner", mock_closure, False, True))
    application.make = Mock()

    application.load_services()

    application.make.assert_called_once_with("engine")


class StageProvider(ServiceProvider):
    provides = ("engine", "cleaner")

    def __init__(self, names):
        self.names = names

    def register(self, app):
        for name in self.names:
            app.bind(Service(name, Mock()))


def test_register_provider(application):
    provider = StageProvider(["engine", "cleaner"])

    application.register(provider)

    assert application.bound("engine")
    assert application.bound("cleaner")
    assert application.providers == [provider]


def test_register_incomplete_provider(application):
    with raises(InvariantViolation, match="StageProvider did not bind"):
        application.register(StageProvider(["engine"]))

    assert application.providers == []
