"""Feature-interaction analysis for feature-annotated FLC programs."""

__version__ = "0.1.0"
