"""Exact verification toolkit for Witt-type Lie superalgebras and their weight modules."""

__version__ = "0.1.0"
