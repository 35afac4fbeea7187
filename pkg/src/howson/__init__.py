"""Computational toolkit for free groups and their ascending HNN extensions.

Subpackages cover freely reduced words, Stallings subgroup automata,
free-group endomorphisms and their growth, Britton normal forms in
ascending HNN extensions, filtered graph self-maps with mapping-torus
presentations, and the rank-growth experiments that exhibit failures of
the finitely generated intersection property (the Howson property) at
finite truncation levels.
"""

from .endos import Endomorphism
from .errors import HowsonError
from .hnn import AscendingHnn, HnnElement
from .stallings import (
    GeneratorExpression,
    StallingsGraph,
    constructive_membership,
    is_free_basis,
)
from .words import Word, cyclically_equal, format_word, parse_word

__version__ = "0.1.0"

__all__ = [
    "AscendingHnn",
    "Endomorphism",
    "GeneratorExpression",
    "HnnElement",
    "HowsonError",
    "StallingsGraph",
    "Word",
    "constructive_membership",
    "cyclically_equal",
    "format_word",
    "is_free_basis",
    "parse_word",
    "__version__",
]
