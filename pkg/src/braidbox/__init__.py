"""Finite quantum groups, R-matrices, braided tensor products and bosonisation.

Everything is concrete: algebras are subspaces of matrices, coactions and
comultiplications are coefficient arrays on chosen bases, and every identity
is checked as a numerical residual against ``braidbox.config.tau``.

Submodules
----------
tensor, algebra
    Leg calculus, operator subspaces, finite-dimensional *-algebras.
qgroup
    Multiplicative unitaries and the quantum groups they generate.
bicharacter, corep
    Bicharacters and R-matrices; corepresentations and braiding unitaries.
coaction, yd
    Coactions, covariant representations, Yetter-Drinfeld algebras, codouble.
twisted
    Heisenberg pairs and twisted tensor products.
braided
    Braided bialgebras and their semidirect products.
scenario, cli
    JSON scenarios, certificates and the ``braidbox`` command.
"""

__version__ = "0.1.0"

from . import algebra, bicharacter, braided, coaction, corep, qgroup, tensor, twisted, yd
from .algebra import *  # noqa: F401,F403
from .bicharacter import *  # noqa: F401,F403
from .braided import *  # noqa: F401,F403
from .coaction import *  # noqa: F401,F403
from .config import tau, tolerance_override
from .corep import *  # noqa: F401,F403
from .qgroup import *  # noqa: F401,F403
from .tensor import *  # noqa: F401,F403
from .twisted import *  # noqa: F401,F403
from .yd import *  # noqa: F401,F403

__all__ = (["__version__", "tau", "tolerance_override"] + tensor.__all__ + algebra.__all__
           + qgroup.__all__ + corep.__all__ + coaction.__all__ + bicharacter.__all__
           + yd.__all__ + twisted.__all__ + braided.__all__)
