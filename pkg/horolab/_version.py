"""Version information for horolab."""

__version__ = "0.1.0"
