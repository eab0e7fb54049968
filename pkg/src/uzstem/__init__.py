"""Lexicon-free Uzbek morphological analyzer and stemmer.

Affixes from seven classes are stripped right to left by finite state
machines that are written left to right, reversed, and determinized.

>>> from uzstem import stem
>>> stem("kitoblarim")
'kitob'
"""

from .analyzer import Analysis, Analyzer, AnalyzerConfig, Morpheme, analyze, normalize, stem, strip_prefix
from .inventory import AFFIX_CLASSES, Inventory, InventoryError, ValidationError, expand_generic, load_inventory
from .machines import MorphotacticGraph, build_graph, default_graph, legal_next_classes

__all__ = [
    "AFFIX_CLASSES",
    "Analysis",
    "Analyzer",
    "AnalyzerConfig",
    "Inventory",
    "InventoryError",
    "Morpheme",
    "MorphotacticGraph",
    "ValidationError",
    "analyze",
    "build_graph",
    "default_graph",
    "expand_generic",
    "legal_next_classes",
    "load_inventory",
    "normalize",
    "stem",
    "strip_prefix",
]

__version__ = "0.1.0"
