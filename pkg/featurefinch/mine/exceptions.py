"""Exceptions raised by the association rule miner."""
from featurefinch.support.exceptions import InputError


class ItemFormatError(InputError):
    """An item text does not follow the canonical item format."""
