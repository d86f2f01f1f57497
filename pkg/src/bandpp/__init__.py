"""Banded plane partitions: exact counts, modular identities and saddle-point asymptotics."""

__version__ = "0.1.0"
