"""Clones over the positive integers: one substitution engine, three front-ends.

* :mod:`clonekit.subst` -- finite encodings of substitution sequences
* :mod:`clonekit.terms` -- first-order terms and finite algebras
* :mod:`clonekit.lam` -- de Bruijn lambda terms with beta/eta
* :mod:`clonekit.fol` -- formulas, finite models, truth tables
"""

from . import errors, fol, lam, subst, terms
from .errors import (
    BoundExceeded,
    CloneKitError,
    DomainMismatch,
    EnvTooShort,
    ParseError,
    SemanticError,
    UnknownSymbol,
)

__version__ = "0.1.0"
