"""Projector rho, variational operator delta, Euler-Lagrange, Lepage equivalents, Noether."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .algebra import (
    FIELD,
    GradedForm,
    GradedPolynomial,
    field_gen,
    partial,
    theta_gen,
    total_derivative,
    total_derivative_multi,
)
from .derivations import ContactDerivation, lie
from .forms import (
    d_H,
    d_V,
    exterior_d,
    field_generators,
    interior,
    omega,
    pair_interior,
    project,
    theta_generators,
    vol,
)
from .multiindex import MultiIndex, counts_add, counts_factorial, counts_upto, ordered_multiplicity
from .signature import Signature


class PreconditionError(ValueError):
    """Input violates an operation's precondition; ``certificate`` shows why."""

    def __init__(self, message: str, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class IdentityFailure(RuntimeError):
    """An identity that must hold by construction did not: an internal bug."""


# --- projector and variational operator ----------------------------------------------

def _rho_bar(psi: GradedForm) -> GradedForm:
    sig = psi.sig
    out = GradedForm.zero(sig)
    for fid, counts in sorted(theta_generators(psi)):
        inner = pair_interior(psi, fid, counts)
        if not inner:
            continue
        term = total_derivative_multi(inner, counts)
        th = GradedForm.from_gen(sig, theta_gen(sig, fid, (0,) * sig.n))
        piece = th * term
        out = out - piece if sum(counts) & 1 else out + piece
    return GradedForm(sig, out.terms)


def rho(phi: GradedForm) -> GradedForm:
    """Projector onto source-type forms, applied per contact degree k with weight 1/k."""
    sig = phi.sig
    out = GradedForm.zero(sig)
    for k in sorted({b[0] for b in phi.bidegrees()}):
        if k == 0:
            continue
        part = project(phi, k, sig.n)
        if part:
            out = out + _rho_bar(part) * Fraction(1, k)
    return out


def delta(phi: GradedForm) -> GradedForm:
    """delta = rho o d on forms of top horizontal degree."""
    return rho(exterior_d(project(phi, None, phi.sig.n)))


def density(L: GradedForm) -> GradedPolynomial:
    """The coefficient l of L = l vol; raises unless L has bidegree (0, n)."""
    sig = L.sig
    bad = L.bidegrees() - {(0, sig.n)}
    if bad:
        raise ValueError(f"expected a (0,{sig.n})-form, found bidegrees {sorted(bad)}")
    split = L.coefficient_split()
    if not split:
        return GradedPolynomial.zero(sig)
    (_, coeff), = split.items()
    return coeff


def _present_jets(p: GradedForm, fid: int):
    return sorted(g[2] for g in field_generators(p, (FIELD,)) if g[1] == fid)


# --- Euler-Lagrange ------------------------------------------------------------------

@dataclass(frozen=True)
class EulerLagrangeResult:
    components: dict  # field name -> GradedPolynomial
    as_form: GradedForm

    def __getitem__(self, name):
        return self.components[name]


def euler_lagrange(L: GradedForm) -> EulerLagrangeResult:
    sig = L.sig
    lag = density(L)
    comps = {}
    form = GradedForm.zero(sig)
    zero = (0,) * sig.n
    for fid in range(sig.num_fields):
        e = GradedPolynomial.zero(sig)
        for counts in _present_jets(lag, fid):
            d = partial(lag, field_gen(sig, fid, counts))
            d = total_derivative_multi(d, counts)
            e = e - d if sum(counts) & 1 else e + d
        comps[sig.field_name(fid)] = e
        if e:
            form = form + GradedForm.from_gen(sig, theta_gen(sig, fid, zero)) * e * vol(sig)
    return EulerLagrangeResult(comps, GradedForm(sig, form.terms))


@dataclass(frozen=True)
class HelmholtzResult:
    holds: bool
    residual: GradedForm
    projected: bool = False

    def __bool__(self):
        return self.holds


def helmholtz(E: GradedForm) -> HelmholtzResult:
    """True iff the source form E is locally variational, i.e. delta(E) = 0."""
    sig = E.sig
    bad = E.bidegrees() - {(1, sig.n)}
    if bad:
        raise ValueError(f"expected a (1,{sig.n})-form, found bidegrees {sorted(bad)}")
    projected = False
    src = rho(E)
    if src != E:
        warnings.warn("input is not a source form; projecting with rho first", stacklevel=2)
        E = src
        projected = True
    res = delta(E)
    return HelmholtzResult(res.is_zero(), res, projected)


# --- Lepage equivalent -------------------------------------------------------------------

@dataclass(frozen=True)
class LepageResult:
    Xi: GradedForm
    F_coeffs: dict = field(default_factory=dict)  # (field, "[digits]") -> GradedPolynomial

    def lepage_form(self, L: GradedForm) -> GradedForm:
        return L + self.Xi


def lepage(L: GradedForm) -> LepageResult:
    """Xi with dL = delta L - d_H Xi, using the representative with all gauge terms zero.

    F^K_A = (K!/|K|!) d^K_A l - sum_lam d_lam F^{K+lam}_A for 1 <= |K| <= r, F = 0 above r;
    Xi = sum_{|L| < r} (|L|!/L!) sum_lam theta^A_L ^ F^{lam+L}_A ^ omega_lam.
    """
    sig = L.sig
    lag = density(L)
    r = lag.jet_order()
    zero = GradedPolynomial.zero(sig)
    F: dict = {}
    all_counts = [c for c in counts_upto(sig.n, r) if sum(c)]
    for fid in range(sig.num_fields):
        for counts in sorted(all_counts, key=lambda c: (-sum(c), c)):
            w = Fraction(counts_factorial(counts), factorial(sum(counts)))
            val = partial(lag, field_gen(sig, fid, counts)) * w
            for lam in range(sig.n):
                up = F.get((fid, counts_add(counts, lam)))
                if up:
                    val = val - total_derivative(up, lam)
            F[(fid, counts)] = val
    xi = GradedForm.zero(sig)
    omegas = [omega(sig, lam) for lam in range(sig.n)]
    for fid in range(sig.num_fields):
        for counts in counts_upto(sig.n, max(r - 1, 0)) if r else []:
            w = ordered_multiplicity(counts)
            th = GradedForm.from_gen(sig, theta_gen(sig, fid, counts))
            for lam in range(sig.n):
                f = F.get((fid, counts_add(counts, lam)), zero)
                if f:
                    xi = xi + th * f * omegas[lam] * w
    xi = GradedForm(sig, xi.terms)
    lhs = d_V(L)
    rhs = delta(L) - d_H(xi)
    if lhs != rhs:
        raise IdentityFailure("Lepage decomposition identity failed")
    coeffs = {(sig.field_name(fid), str(MultiIndex(c))): v for (fid, c), v in F.items() if v}
    return LepageResult(xi, coeffs)


# --- first variation -------------------------------------------------------------------------

@dataclass(frozen=True)
class FirstVariation:
    lie_term: GradedForm
    el_term: GradedForm
    boundary_term: GradedForm
    dV_term: GradedForm

    @property
    def residual(self) -> GradedForm:
        return self.lie_term - self.el_term - self.boundary_term - self.dV_term

    @property
    def holds(self) -> bool:
        return self.residual.is_zero()


def first_variation(vartheta: ContactDerivation, L: GradedForm) -> FirstVariation:
    """L_v L = v_V _| delta L + d_H(h0(v _| (L + Xi))) + d_V(v_H _| vol) ^ l."""
    sig = L.sig
    lag = density(L)
    horizontal, vertical = vartheta.split()
    xi = lepage(L).Xi
    lie_term = GradedForm(sig, lie(vartheta, L).terms)
    el_term = interior(vertical, delta(L))
    boundary = d_H(project(interior(vartheta, L + xi), 0, None))
    dv_term = d_V(interior(horizontal, vol(sig))) * lag
    out = FirstVariation(lie_term, el_term, boundary, GradedForm(sig, dv_term.terms))
    if not out.holds:
        raise IdentityFailure("first variational formula failed")
    return out


# --- Noether ---------------------------------------------------------------------------------

@dataclass(frozen=True)
class NoetherResult:
    current: GradedForm
    xi: GradedForm
    lie_term: GradedForm
    divergence: GradedForm  # d_H J
    coefficients: dict  # field name -> c_A with d_H J = sum c_A E_A vol
    euler_lagrange: EulerLagrangeResult

    @property
    def holds(self) -> bool:
        sig = self.current.sig
        comb = GradedForm.zero(sig)
        for name, c in self.coefficients.items():
            comb = comb + c * self.euler_lagrange.components[name] * vol(sig)
        return comb == self.divergence


def noether(vartheta: ContactDerivation, L: GradedForm, xi: GradedForm | None = None) -> NoetherResult:
    """Conserved current J = h0(v _| (L + Xi)) - xi for a variational symmetry v.

    If xi is omitted it is produced by the horizontal homotopy; a Lie derivative
    that is not d_H-exact raises PreconditionError.
    """
    sig = L.sig
    density(L)
    lie_term = lie(vartheta, L)
    off = lie_term - project(lie_term, 0, sig.n)
    if off:
        raise PreconditionError("Lie derivative of L is not a horizontal density", off)
    if xi is None:
        from .homotopy import horizontal_homotopy

        if not lie_term:
            xi = GradedForm.zero(sig)
        else:
            res = horizontal_homotopy(lie_term)
            if res.base_remainder:
                raise PreconditionError("Lie derivative has a field-independent part; "
                                        "not d_H-exact in the polynomial algebra", res.base_remainder)
            xi = res.xi
    else:
        bad = xi.bidegrees() - {(0, sig.n - 1)}
        if bad:
            raise ValueError(f"xi must be a (0,{sig.n - 1})-form")
        diff = d_H(xi) - lie_term
        if diff:
            raise PreconditionError("L_v L differs from d_H xi", diff)
    lep = lepage(L)
    J = project(interior(vartheta, L + lep.Xi), 0, sig.n - 1) - xi
    J = GradedForm(sig, J.terms)
    div = d_H(J)
    el = euler_lagrange(L)
    _, vertical = vartheta.split()
    coeffs = {sig.field_name(f): -vertical.vert[f] for f in range(sig.num_fields)}
    out = NoetherResult(J, GradedForm(sig, xi.terms), lie_term, div, coeffs, el)
    if not out.holds:
        raise IdentityFailure("Noether off-shell identity failed")
    return out


def total_divergence(components, sig: Signature) -> GradedForm:
    """d_H of sum_mu J^mu omega_mu."""
    out = GradedForm.zero(sig)
    for mu, j in enumerate(components):
        out = out + j * omega(sig, mu)
    return d_H(out)


__all__ = [
    "PreconditionError",
    "IdentityFailure",
    "rho",
    "delta",
    "density",
    "EulerLagrangeResult",
    "euler_lagrange",
    "HelmholtzResult",
    "helmholtz",
    "LepageResult",
    "lepage",
    "FirstVariation",
    "first_variation",
    "NoetherResult",
    "noether",
    "total_divergence",
]
