"""Nanoword encodings of plane curves and fronts, their pairing invariants,
elementary moves and surface genus."""

__version__ = "0.1.0"
