"""Exact symbolic calculus on graded jet spaces: variational bicomplex, Euler-Lagrange,
Lepage equivalents, Noether currents and horizontal homotopies."""

from .signature import EVEN, ODD, Signature, SignatureError, make_signature
from .multiindex import MultiIndex
from .algebra import GradedForm, GradedPolynomial, JetVariable, const, partial, total_derivative, var, xcoord
from .forms import (
    coordinate_interior,
    d_H,
    d_V,
    dx,
    exterior_d,
    h0,
    interior,
    omega,
    pair_interior,
    project,
    theta,
    vol,
    wedge,
)
from .derivations import ContactDerivation, DerivationError, lie, prolong
from .variational import (
    IdentityFailure,
    PreconditionError,
    delta,
    euler_lagrange,
    first_variation,
    helmholtz,
    lepage,
    noether,
    rho,
)
from .homotopy import (
    HomotopyError,
    density_homotopy_alt,
    dplus,
    horizontal_homotopy,
    lowering_homotopy,
    one_contact_homotopy,
    rho_kernel_homotopy,
    split_base,
)
from .expr_io import DSLError, parse, parse_derivation, parse_expr, print_derivation, print_value

__version__ = "0.1.0"
