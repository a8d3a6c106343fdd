"""Constructive inverses of d_H on its local kernel.

All homotopies verify ``d_H(result) == target`` before returning; a mismatch
raises HomotopyError. The radial integral over the scaling s -> t*s is done
monomial-wise: a term of field degree k picks up the factor 1/k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .algebra import (
    AUX,
    DX,
    FIELD,
    THETA,
    GradedForm,
    GradedPolynomial,
    euler_scale,
    inverse_degree,
    mono_field_degree,
    partial,
    total_derivative,
    total_derivative_multi,
)
from .forms import coordinate_interior, d_H, field_generators, omega, pair_interior, project, theta_generators
from .multiindex import counts_factorial, counts_sub, mi_splits, MultiIndex
from .variational import PreconditionError, delta, density, rho


class HomotopyError(RuntimeError):
    """A homotopy failed its own postcondition (an internal bug, never user error)."""


__all__ = [
    "HomotopyError",
    "PreconditionError",
    "SplitBase",
    "split_base",
    "dplus",
    "HomotopyResult",
    "horizontal_homotopy",
    "lowering_homotopy",
    "density_homotopy_alt",
    "one_contact_homotopy",
    "rho_kernel_homotopy",
]


@dataclass(frozen=True)
class SplitBase:
    base_part: GradedForm
    fiber_part: GradedForm


def split_base(phi: GradedForm) -> SplitBase:
    """Field-degree-0 part and the rest; the radial integral is the identity on the rest."""
    base = phi.filter(lambda m: mono_field_degree(m) == 0)
    return SplitBase(base, phi - base)


def _horizontal_degree(phi: GradedForm) -> int:
    bids = phi.bidegrees()
    if not bids:
        return -1
    if len(bids) != 1 or next(iter(bids))[0] != 0:
        raise ValueError(f"expected a horizontal form of one degree, found bidegrees {sorted(bids)}")
    return next(iter(bids))[1]


def _gen_poly(sig, kind, fid, counts):
    return GradedPolynomial.from_gen(sig, (kind, fid, tuple(counts), sig.field_parity(fid)))


def _jet_gens(phi: GradedForm):
    return sorted(field_generators(phi, (FIELD, AUX)))


# --- the lowering operator ------------------------------------------------------------------

def dplus(nu: int, phi: GradedForm) -> GradedForm:
    """Lowering operator with [dplus(nu), d_mu] = delta^nu_mu on field-degree >= 1 elements.

    Sum over jets s_M with M_nu >= 1 of M_nu * s_{M - nu} * d/ds_M, then weight 1/k.
    """
    if phi.filter(lambda m: mono_field_degree(m) == 0):
        raise ValueError("dplus needs an element without field-degree-0 terms")
    sig = phi.sig
    out = phi._new({})
    for g in _jet_gens(phi):
        counts = g[2]
        if counts[nu] == 0:
            continue
        low = _gen_poly(sig, g[0], g[1], counts_sub(counts, nu))
        out = out + low * partial(phi, g) * counts[nu]
    return euler_scale(out, inverse_degree)


# --- primary horizontal homotopy -----------------------------------------------------------

@dataclass(frozen=True)
class HomotopyResult:
    xi: GradedForm
    base_remainder: GradedForm
    fiber: GradedForm


def _check_exact_target(phi: GradedForm, m: int):
    sig = phi.sig
    if m < sig.n:
        cert = d_H(phi)
        if cert:
            raise PreconditionError("form is not d_H-closed", cert)
    else:
        cert = delta(phi)
        if cert:
            raise PreconditionError("density is not variationally trivial (delta != 0)", cert)


def _integral_I(fiber: GradedForm, m: int) -> GradedForm:
    sig = fiber.sig
    n = sig.n
    total = GradedForm.zero(sig)
    for mu in range(n):
        psi = coordinate_interior(mu, fiber)
        if not psi:
            continue
        inner: dict = {}
        for g in _jet_gens(psi):
            M = g[2]
            if M[mu] == 0:
                continue
            rest = counts_sub(M, mu)
            d_psi = partial(psi, g)
            s0 = _gen_poly(sig, g[0], g[1], (0,) * n)
            for lam_mi, xi_mi in mi_splits(MultiIndex(rest)):
                lam, xi_c = lam_mi.counts, xi_mi.counts
                mu_lam = tuple(a + (1 if i == mu else 0) for i, a in enumerate(lam))
                w = Fraction(counts_factorial(M), counts_factorial(mu_lam) * counts_factorial(xi_c))
                if sum(xi_c) & 1:
                    w = -w
                piece = s0 * total_derivative_multi(d_psi, xi_c) * w
                inner[lam] = inner[lam] + piece if lam in inner else piece
        for lam, val in inner.items():
            w = Fraction(lam[mu] + 1, n - m + sum(lam) + 1)
            total = total + total_derivative_multi(val, lam) * w
    return total


def horizontal_homotopy(phi: GradedForm) -> HomotopyResult:
    """xi with d_H xi = fiber part of phi, for d_H-closed phi (or delta-closed densities).

    The field-independent part is returned untouched as ``base_remainder``;
    whether it is exact on the base is not decided here.
    """
    sig = phi.sig
    m = _horizontal_degree(phi)
    if m == -1:
        z = GradedForm.zero(sig)
        return HomotopyResult(z, z, z)
    if m == 0:
        raise ValueError("horizontal homotopy needs horizontal degree >= 1")
    _check_exact_target(phi, m)
    parts = split_base(phi)
    fiber = parts.fiber_part
    xi = euler_scale(_integral_I(fiber, m), inverse_degree)
    xi = GradedForm(sig, xi.terms)
    if d_H(xi) != fiber:
        raise HomotopyError("horizontal homotopy failed its round-trip check")
    bound = 2 * phi.jet_order() + 1
    if xi.jet_order() > bound:
        raise HomotopyError(f"result jet order {xi.jet_order()} exceeds bound {bound}")
    return HomotopyResult(xi, parts.base_part, fiber)


# --- cross-check variants ------------------------------------------------------------------------

def lowering_homotopy(phi: GradedForm) -> GradedForm:
    """Series in the lowering operator for d_H-closed (0, m)-forms with m < n.

    xi = sum_k (-1)^k (n-m-1)!/(n-m+k)! dplus(nu) P_k (d/dx^nu _| fiber),
    P_k = d_{nu_1}..d_{nu_k} dplus(nu_1)..dplus(nu_k). The alternating sign is
    the normalization that makes d_H xi reproduce the fiber part.
    """
    sig = phi.sig
    n = sig.n
    m = _horizontal_degree(phi)
    if m == -1:
        return GradedForm.zero(sig)
    if not 1 <= m < n:
        raise ValueError("lowering homotopy needs 1 <= m < n")
    _check_exact_target(phi, m)
    fiber = split_base(phi).fiber_part
    xi = GradedForm.zero(sig)
    for nu in range(n):
        psi = coordinate_interior(nu, fiber)
        # word of lowering indices -> lowering operators applied to psi in that order
        layer = {(): psi} if psi else {}
        k = 0
        while layer:
            pk = GradedForm.zero(sig)
            for word, val in layer.items():
                pk = pk + _total_word(val, word)
            if pk:
                w = Fraction(factorial(n - m - 1), factorial(n - m + k))
                xi = xi + dplus(nu, pk) * (-w if k & 1 else w)
            nxt = {}
            for word, val in layer.items():
                for a in range(n):
                    low = dplus(a, val)
                    if low:
                        nxt[word + (a,)] = low
            layer = nxt
            k += 1
    if d_H(xi) != fiber:
        raise HomotopyError("lowering homotopy failed its round-trip check")
    return xi


def _total_word(val: GradedForm, word) -> GradedForm:
    for a in word:
        val = total_derivative(val, a)
    return val


def density_homotopy_alt(phi: GradedForm) -> GradedForm:
    """Double-sum inverse for delta-closed densities.

    xi^mu = sum_M sum_{X+S = M-mu} (-1)^|S| (|X|!/X!)(|S|!/S!)(M!/|M|!) s_X d_S d^M l,
    xi = sum_mu xi^mu omega_mu with weight 1/k on field-degree-k terms.
    """
    sig = phi.sig
    n = sig.n
    if not phi:
        return GradedForm.zero(sig)
    lag = density(phi)
    _check_exact_target(phi, n)
    fiber_l = split_base(lag).fiber_part
    xi = GradedForm.zero(sig)
    for mu in range(n):
        acc = GradedPolynomial.zero(sig)
        for g in _jet_gens(fiber_l):
            M = g[2]
            if M[mu] == 0:
                continue
            d = partial(fiber_l, g)
            wm = Fraction(counts_factorial(M), factorial(sum(M)))
            for x_mi, s_mi in mi_splits(MultiIndex(counts_sub(M, mu))):
                xc, sc = x_mi.counts, s_mi.counts
                w = wm * Fraction(factorial(sum(xc)), counts_factorial(xc)) \
                    * Fraction(factorial(sum(sc)), counts_factorial(sc))
                if sum(sc) & 1:
                    w = -w
                acc = acc + _gen_poly(sig, g[0], g[1], xc) * total_derivative_multi(d, sc) * w
        if acc:
            xi = xi + acc * omega(sig, mu)
    xi = GradedForm(sig, euler_scale(xi, inverse_degree).terms)
    if d_H(xi) != split_base(phi).fiber_part:
        raise HomotopyError("density homotopy failed its round-trip check")
    return xi


# --- one-contact forms via mirror variables ---------------------------------------------------

def _dx_count(m) -> int:
    return sum(e for g, e in m if g[0] == DX)


def one_contact_homotopy(phi: GradedForm) -> GradedForm:
    """xi with d_H xi = phi for a d_H-closed (1, m)-form, 1 <= m < n.

    Each theta^A_L is traded for a mirror jet sbar^A_L (which prolongs like a
    field), the horizontal homotopy runs on the resulting horizontal form, and
    the single mirror factor is traded back.
    """
    sig = phi.sig
    n = sig.n
    if not phi:
        return GradedForm.zero(sig)
    bids = phi.bidegrees()
    if len(bids) != 1 or next(iter(bids))[0] != 1:
        raise ValueError(f"expected a (1, m)-form, found bidegrees {sorted(bids)}")
    m = next(iter(bids))[1]
    if m >= n:
        raise ValueError("one-contact homotopy needs m < n; use rho_kernel_homotopy for m = n")
    if m == 0:
        raise ValueError("one-contact homotopy needs horizontal degree >= 1")
    if field_generators(phi, (AUX,)):
        raise ValueError("input already contains mirror variables")
    cert = d_H(phi)
    if cert:
        raise PreconditionError("form is not d_H-closed", cert)
    asig = sig.with_aux()
    barred = {}
    for mono, c in phi.terms.items():
        new = tuple(((AUX,) + g[1:], e) if g[0] == THETA else (g, e) for g, e in mono)
        barred[new] = -c if _dx_count(mono) & 1 else c
    lifted = GradedForm(asig, barred)
    res = horizontal_homotopy(lifted)
    out = {}
    for mono, c in res.xi.terms.items():
        mirrors = sum(e for g, e in mono if g[0] == AUX)
        if mirrors != 1:
            raise HomotopyError("homotopy result is not linear in mirror variables")
        new = tuple(((THETA,) + g[1:], e) if g[0] == AUX else (g, e) for g, e in mono)
        out[new] = -c if (m - 1) & 1 else c
    xi = GradedForm(sig, out)
    if d_H(xi) != phi:
        raise HomotopyError("one-contact homotopy failed its round-trip check")
    return xi


# --- kernel of the projector ------------------------------------------------------------------

def rho_kernel_homotopy(sigma: GradedForm) -> GradedForm:
    """xi with d_H xi = sigma for a (1, n)-form annihilated by rho.

    xi = -sum_mu sum_{K contains mu} sum_{X+S = K-mu} (-1)^|S| W theta^A_X ^ d_S sigma^K_A ^ omega_mu
    with W = (|X|!/X!)(|S|!/S!)(K!/|K|!) and sigma^K_A the coefficient of theta^A_K.
    """
    sig = sigma.sig
    n = sig.n
    if not sigma:
        return GradedForm.zero(sig)
    bad = sigma.bidegrees() - {(1, n)}
    if bad:
        raise ValueError(f"expected a (1,{n})-form, found bidegrees {sorted(bad)}")
    cert = rho(sigma)
    if cert:
        raise PreconditionError("form is not in the kernel of rho", cert)
    xi = GradedForm.zero(sig)
    for fid, K in sorted(theta_generators(sigma)):
        comp = density(GradedForm(sig, project(pair_interior(sigma, fid, K), 0, n).terms))
        wk = Fraction(counts_factorial(K), factorial(sum(K)))
        for mu in range(n):
            if K[mu] == 0:
                continue
            for x_mi, s_mi in mi_splits(MultiIndex(counts_sub(K, mu))):
                xc, sc = x_mi.counts, s_mi.counts
                w = wk * Fraction(factorial(sum(xc)), counts_factorial(xc)) \
                    * Fraction(factorial(sum(sc)), counts_factorial(sc))
                if sum(sc) & 1:
                    w = -w
                th = GradedForm.from_gen(sig, (THETA, fid, xc, sig.field_parity(fid)))
                xi = xi - th * total_derivative_multi(comp, sc) * omega(sig, mu) * w
    xi = GradedForm(sig, xi.terms)
    if d_H(xi) != sigma:
        raise HomotopyError("rho-kernel homotopy failed its round-trip check")
    return xi
