"""Exceptions raised while loading settings."""
from featurefinch.support.exceptions import InputError


class SettingsError(InputError):
    """A config file or flag holds an invalid or unknown setting."""
