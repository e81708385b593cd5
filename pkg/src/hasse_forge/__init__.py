"""Numerical checks of zeta(X, s) = det_inf(s - Theta | TP_od) / det_inf(s - Theta | TP_ev).

Point counts over F_q give Z(X, t); its Weil polynomials give the Frobenius
eigenvalues; those feed a parity-graded model on which regularized
determinants are evaluated in closed form.
"""

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import *  # noqa: F401,F403
from .finite_field import *  # noqa: F401,F403
from .witt import *  # noqa: F401,F403
from .varieties import *  # noqa: F401,F403
from .special import *  # noqa: F401,F403
from .spectrum import *  # noqa: F401,F403
from .regdet import *  # noqa: F401,F403

__version__ = "0.1.0"
