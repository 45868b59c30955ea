"""Strength and small-subalgebra computations for homogeneous forms.

The package is organised by layer:

* :mod:`formstrength.algebra`: exact scalar fields and dense linear algebra.
* :mod:`formstrength.forms`: sparse homogeneous polynomials and graded subspaces.
* :mod:`formstrength.quadforms`: rank, normal forms and collapse of quadrics.
* :mod:`formstrength.bounds`: explicit strength and subalgebra bound functions.
* :mod:`formstrength.subalgebra`: small subalgebras for linear + quadratic spaces.
* :mod:`formstrength.oracle`: Groebner bases and brute-force collapse search.
* :mod:`formstrength.suites`: named verification suites (used by the CLI).
"""

from formstrength.algebra import parse_field
from formstrength.forms import Form, GradedSubspace, parse_form

__all__ = ["Form", "GradedSubspace", "parse_field", "parse_form"]
__version__ = "0.1.0"
