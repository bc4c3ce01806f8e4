"""Decidable theory backends behind a uniform oracle interface."""

from .core import OracleError, TheoryError, TheoryOracle
from .eq_rel import EqRelOracle
from .finite import FiniteStructureOracle
from .loader import BUILTIN_CONFIGS, builtin_theory, load_theory
from .pure_set import PureSetOracle
from .random_graph import RandomGraphOracle

__all__ = [
    "BUILTIN_CONFIGS",
    "EqRelOracle",
    "FiniteStructureOracle",
    "OracleError",
    "PureSetOracle",
    "RandomGraphOracle",
    "TheoryError",
    "TheoryOracle",
    "builtin_theory",
    "load_theory",
]
