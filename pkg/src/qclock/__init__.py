"""Dense simulation of clock-correlation timelines and their measurement protocol."""

__version__ = "0.1.0"
