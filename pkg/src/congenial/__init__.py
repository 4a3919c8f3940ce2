"""Decide whether homomorphisms onto finite ordered semigroups induce well quasi-orders on words."""
from .algebra import (FiniteSemigroup, OrderedSemigroup, StableOrder, validate_order,
                      validate_semigroup)
from .conditions import is_congenial
from .decider import WqoVerdict, decide_wqo, explore
from .words import Homomorphism, eval_homomorphism, leq_sigma, make_homomorphism

__version__ = "0.1.0"

__all__ = [
    "FiniteSemigroup", "OrderedSemigroup", "StableOrder", "validate_semigroup", "validate_order",
    "Homomorphism", "make_homomorphism", "eval_homomorphism", "leq_sigma",
    "WqoVerdict", "decide_wqo", "explore", "is_congenial",
]
