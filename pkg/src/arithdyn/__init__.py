"""arithdyn: a desk-scale lab for exact point counts, zeta functions and
degree-growth dynamics.

Modules
-------
ffield       exact arithmetic in F_{p^n} (Zech-logarithm representation)
counting     point counting over finite fields (numba kernels + numpy fallback)
zeta         recurrences, zeta reconstruction, Weil / functional-equation checks
cyclelattice exact rational intersection-form decompositions
corr         monomial maps and graded matrix correspondences
dyndeg       dynamical degrees, entropy and the numeric property suite
cli          command-line entry point
"""

from .errors import (
    ArithdynError,
    DegenerateError,
    DominanceError,
    GuardError,
    InputError,
    OrderNotConfirmedError,
)

__version__ = "0.1.0"

__all__ = [
    "ArithdynError",
    "DegenerateError",
    "DominanceError",
    "GuardError",
    "InputError",
    "OrderNotConfirmedError",
    "__version__",
]
