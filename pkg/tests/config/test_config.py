from configparser import ConfigParser
from unittest.mock import Mock

from featurefinch.config.config import Config


def test_init():
    config = Config()
    assert isinstance(config, Config)
    assert isinstance(config, ConfigParser)


def test_get_section():
    config = Config()
    config.__getitem__ = Mock(
        return_value={"seed": "3", "source": "stack", "timeout_secs": "0.5"}
    )

    section = config.get_section("test")

    assert section == {"seed": 3, "source": "stack", "timeout_secs": 0.5}


def test_read_flat():
    config = Config()

    config.read_flat("min-support = 0.2\nModel = rf\nL = 4\n")

    assert config.run_options() == {
        "min_support": 0.2,
        "model": "rf",
        "l": 4,
    }


def test_run_options_without_file():
    assert Config().run_options() == {}
