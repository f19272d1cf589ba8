from unittest.mock import MagicMock

from featurefinch.config.config_service_provider import ConfigServiceProvider
from featurefinch.foundation.application import Application
from featurefinch.modelx.cleaning import TraceCleaner
from featurefinch.symex.engine import SymbolicEngine
from featurefinch.symex.symex_service_provider import SymexServiceProvider


def test_symex_service_provider():
    mock_app = MagicMock()
    SymexServiceProvider().register(mock_app)

    assert mock_app.bind.call_count == 2


def test_services_follow_config():
    app = Application()
    options = {"max_paths": 7, "exclusions": "log*"}
    ConfigServiceProvider(None, options).register(app)
    SymexServiceProvider().register(app)

    engine = app.make("engine")
    cleaner = app.make("cleaner")

    assert isinstance(engine, SymbolicEngine)
    assert engine.config.max_paths == 7
    assert isinstance(cleaner, TraceCleaner)
    assert cleaner.exclusions == ("log*",)
    assert app.make("engine") is engine
