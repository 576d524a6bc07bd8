"""Exact graded characters for the twisted affine algebra of type A_2l^(2).

Submodules:

``root_datum``      roots, Weyl group actions, the Macdonald order
``series``          truncated series in ``q^(1/2)`` and Laurent polynomials in ``x``
``weyl``            minimal affine Weyl words on the orbit of ``Lambda_0``
``demazure``        Demazure operators, thin and local Weyl characters
``macdonald``       ``t = 0`` kernel, pairings, slice and global Weyl characters
``special_current`` dimension and generator formulas for the special current algebra
``verify``          self-checks used by the CLI and tests
"""

from .root_datum import build_datum, dynkin_to_eps, eps_to_dynkin
from .series import CharSeries, PrecisionError, QSeries

__version__ = "0.1.0"

__all__ = [
    "build_datum",
    "dynkin_to_eps",
    "eps_to_dynkin",
    "CharSeries",
    "QSeries",
    "PrecisionError",
    "__version__",
]
