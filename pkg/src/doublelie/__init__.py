"""Double Lie algebras, Manin triples and b-type bialgebra structures on iso(p,q)."""
from .errors import DoubleLieError
from .liecore import LieAlgebra, Metric, Subspace, new_lie_algebra

__all__ = ["DoubleLieError", "LieAlgebra", "Metric", "Subspace", "new_lie_algebra"]
__version__ = "0.1.0"
