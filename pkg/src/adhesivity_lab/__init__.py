"""Bounded, executable checks of M,N-adhesivity on small finite categories."""

__version__ = "0.1.0"

from .core import (
    AdhesivityError,
    BoundedVerdict,
    Cube,
    Morphism,
    Square,
    compose,
    identity,
    make_morphism,
)

__all__ = [
    "AdhesivityError",
    "BoundedVerdict",
    "Cube",
    "Morphism",
    "Square",
    "__version__",
    "compose",
    "identity",
    "make_morphism",
]
