"""positroidlab: relabelled plabic graphs, Grassmannlike necklaces, twist
maps and cluster seeds for open positroid varieties, in exact arithmetic."""
from .perm import AffinePerm, Perm, lift, length, leq_circ, type_of
from .necklace import Necklace, forward_necklace, grassmannlike, necklace_of, reverse_necklace, toggle
from .positroid import Positroid, dimension, positroid_of

__version__ = "0.1.0"

__all__ = [
    "AffinePerm",
    "Perm",
    "lift",
    "length",
    "leq_circ",
    "type_of",
    "Necklace",
    "forward_necklace",
    "grassmannlike",
    "necklace_of",
    "reverse_necklace",
    "toggle",
    "Positroid",
    "dimension",
    "positroid_of",
]
