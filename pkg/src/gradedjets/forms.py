"""Bigraded forms: wedge, bidegree projections, d_H, d_V, d and interior products."""

from __future__ import annotations

from .algebra import (
    AUX,
    BASE,
    DX,
    FIELD,
    THETA,
    GradedForm,
    GradedPolynomial,
    SignatureMismatch,
    apply_derivation,
    dx_gen,
    mono_bidegree,
    theta_gen,
    total_derivative,
)
from .multiindex import MultiIndex
from .signature import Signature

__all__ = [
    "GradedForm",
    "theta",
    "dx",
    "vol",
    "omega",
    "wedge",
    "project",
    "h0",
    "d_H",
    "d_V",
    "exterior_d",
    "interior",
    "pair_interior",
    "coordinate_interior",
]


def theta(sig: Signature, field: str | int, indices=()) -> GradedForm:
    fid = sig.field_index(field) if isinstance(field, str) else field
    counts = MultiIndex.from_indices(sig.n, indices).counts
    return GradedForm.from_gen(sig, theta_gen(sig, fid, counts))


def dx(sig: Signature, mu: int) -> GradedForm:
    if not 0 <= mu < sig.n:
        raise IndexError(mu)
    return GradedForm.from_gen(sig, dx_gen(mu))


def vol(sig: Signature) -> GradedForm:
    out = GradedForm.const(sig, 1)
    for mu in range(sig.n):
        out = out * dx(sig, mu)
    return out


def omega(sig: Signature, lam: int) -> GradedForm:
    """omega_lam = d/dx^lam contracted into vol."""
    return coordinate_interior(lam, vol(sig))


def wedge(phi: GradedForm, psi: GradedForm) -> GradedForm:
    if phi.sig != psi.sig:
        raise SignatureMismatch("operands live on different signatures")
    out = phi * psi
    return out if isinstance(out, GradedForm) else GradedForm(phi.sig, out.terms)


def project(phi: GradedForm, k: int | None, m: int | None) -> GradedForm:
    """Bidegree (k, m) part; ``None`` leaves that grading unrestricted."""
    def keep(mono):
        bk, bm = mono_bidegree(mono)
        return (k is None or bk == k) and (m is None or bm == m)
    return phi.filter(keep)


def h0(phi: GradedForm) -> GradedForm:
    return project(phi, 0, None)


def d_H(phi: GradedForm) -> GradedForm:
    sig = phi.sig
    out = GradedForm.zero(sig)
    for lam in range(sig.n):
        t = total_derivative(phi, lam)
        if t:
            out = out + dx(sig, lam) * t
    return GradedForm(sig, out.terms)


def _vertical_image(sig):
    def image(g):
        if g[0] == FIELD:
            return GradedForm.from_gen(sig, (THETA, g[1], g[2], g[3]))
        if g[0] == AUX:
            raise ValueError("vertical differential is not defined on mirror variables")
        return None
    return image


def d_V(phi: GradedForm) -> GradedForm:
    """theta^A_L wedge (left partial in s^A_L) phi, summed over distinct jets."""
    return apply_derivation(phi, 1, 0, _vertical_image(phi.sig))


def exterior_d(phi: GradedForm) -> GradedForm:
    return d_H(phi) + d_V(phi)


def interior(vartheta, phi: GradedForm) -> GradedForm:
    """Contraction with a contact derivation.

    Graded antiderivation: theta(phi ^ s) = (theta phi) ^ s + (-1)**(|phi| + [phi][theta]) phi ^ (theta s),
    with theta contracted into dx^lam giving the horizontal component and into
    theta^A_L giving the prolonged vertical coefficient.
    """
    sig = phi.sig
    if vartheta.sig != sig:
        raise SignatureMismatch("derivation and form live on different signatures")

    def image(g):
        if g[0] == DX:
            return vartheta.horiz[g[1]]
        if g[0] == THETA:
            return vartheta.vertical_coeff(g[1], g[2])
        return None
    return apply_derivation(phi, 1, vartheta.parity, image)


def pair_interior(phi: GradedForm, field: int, counts) -> GradedForm:
    """Contraction with the dual vector of theta^A_L (kills dx and other thetas)."""
    target = theta_gen(phi.sig, field, tuple(counts))
    one = GradedPolynomial.const(phi.sig, 1)

    def image(g):
        return one if g == target else None
    return apply_derivation(phi, 1, phi.sig.field_parity(field), image)


def coordinate_interior(mu: int, phi: GradedForm) -> GradedForm:
    """Contraction with d/dx^mu paired only against dx (used for omega_mu and homotopies)."""
    one = GradedPolynomial.const(phi.sig, 1)
    target = dx_gen(mu)

    def image(g):
        return one if g == target else None
    return apply_derivation(phi, 1, 0, image)


def is_horizontal(phi: GradedForm) -> bool:
    return all(k == 0 for k, _ in phi.bidegrees())


def theta_generators(phi: GradedForm) -> set[tuple[int, tuple]]:
    out = set()
    for m in phi.terms:
        for g, _ in m:
            if g[0] == THETA:
                out.add((g[1], g[2]))
    return out


def field_generators(phi: GradedForm, kinds=(FIELD, AUX)) -> set[tuple]:
    out = set()
    for m in phi.terms:
        for g, _ in m:
            if g[0] in kinds:
                out.add(g)
    return out


def has_base_only(phi: GradedForm) -> bool:
    return all(g[0] in (BASE, DX) for m in phi.terms for g, _ in m)
