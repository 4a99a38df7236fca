"""Information measures of a planar quantum ring in uniform and Aharonov-Bohm fields."""

__version__ = "0.1.0"
