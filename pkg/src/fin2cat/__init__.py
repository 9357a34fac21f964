"""Computations with finite categories and the 2-category of small categories."""
from .budget import Budget, NodeCounter, current_budget, use_budget
from .category import FinCategory, FinFunctor, NatTransf, build_category
from .errors import Fin2CatError

__version__ = "0.1.0"

__all__ = ["Budget", "NodeCounter", "current_budget", "use_budget", "FinCategory",
           "FinFunctor", "NatTransf", "build_category", "Fin2CatError", "__version__"]
