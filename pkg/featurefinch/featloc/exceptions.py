"""Exceptions raised while locating features."""
from featurefinch.support.exceptions import InputError


class RoleNameError(InputError):
    """A function name has a role marker without a valid feature."""
