"""Contact derivations: prolongation, horizontal/vertical splitting, Lie derivatives."""

from __future__ import annotations

import threading
from typing import Mapping

from .algebra import (
    GradedForm,
    GradedPolynomial,
    field_gen,
    total_derivative,
)
from .forms import exterior_d, interior
from .multiindex import counts_add, counts_upto
from .signature import EVEN, Signature


class DerivationError(ValueError):
    pass


class ContactDerivation:
    """Generalized vector field theta^lam d_lam-part plus theta^A d_A, prolonged on demand.

    Coefficients sit to the LEFT of the vector fields they multiply, so the
    coefficient at d/ds^A_L is d_L(theta^A - theta^mu s^A_mu) + theta^mu s^A_{mu+L}.
    """

    def __init__(self, sig: Signature, horiz=None, vert=None, parity: int | None = None):
        self.sig = sig
        zero = GradedPolynomial.zero(sig)
        h = list(horiz) if horiz is not None else [zero] * sig.n
        v = list(vert) if vert is not None else [zero] * sig.num_fields
        if len(h) != sig.n or len(v) != sig.num_fields:
            raise DerivationError("component count does not match the signature")
        self.horiz = tuple(_as_poly(sig, p) for p in h)
        self.vert = tuple(_as_poly(sig, p) for p in v)
        self.parity = self._infer_parity(parity)
        self._cache: dict = {}
        self._lock = threading.Lock()

    @classmethod
    def from_components(cls, sig: Signature, horiz: Mapping[int, GradedPolynomial] | None = None,
                        vert: Mapping[str, GradedPolynomial] | None = None, parity: int | None = None):
        zero = GradedPolynomial.zero(sig)
        h = [zero] * sig.n
        for mu, p in (horiz or {}).items():
            h[mu] = p
        v = [zero] * sig.num_fields
        for name, p in (vert or {}).items():
            v[sig.field_index(name) if isinstance(name, str) else name] = p
        return cls(sig, h, v, parity)

    def _infer_parity(self, declared):
        found = set()
        for p in self.horiz:
            found |= p.parities()
        for fid, p in enumerate(self.vert):
            found |= {(q + self.sig.field_parity(fid)) & 1 for q in p.parities()}
        if len(found) > 1:
            raise DerivationError("components have inconsistent Grassmann parity")
        if declared is not None:
            if found and found != {declared}:
                raise DerivationError("declared parity disagrees with the components")
            return declared
        return found.pop() if found else EVEN

    def __eq__(self, other):
        if not isinstance(other, ContactDerivation):
            return NotImplemented
        return (self.sig == other.sig and self.horiz == other.horiz
                and self.vert == other.vert and self.parity == other.parity)

    def __hash__(self):
        return hash((self.sig, self.horiz, self.vert, self.parity))

    def __repr__(self):
        from .expr_io import print_derivation
        return f"ContactDerivation({print_derivation(self)!r})"

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.horiz + self.vert)

    def is_vertical(self) -> bool:
        return all(p.is_zero() for p in self.horiz)

    def characteristic(self, fid: int) -> GradedPolynomial:
        """theta^A - theta^mu s^A_mu, the vertical generator of the prolongation."""
        sig = self.sig
        out = self.vert[fid]
        for mu in range(sig.n):
            if self.horiz[mu]:
                unit = [0] * sig.n
                unit[mu] = 1
                out = out - self.horiz[mu] * GradedPolynomial.from_gen(sig, field_gen(sig, fid, tuple(unit)))
        return out

    def vertical_coeff(self, fid: int, counts) -> GradedPolynomial:
        """d_L(characteristic); this is what the derivation pairs with theta^A_L."""
        key = (fid, tuple(counts))
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        counts = tuple(counts)
        if sum(counts) == 0:
            val = self.characteristic(fid)
        else:
            # d_L = d_mu d_{L - mu}; reuse the cached lower coefficient
            mu = next(i for i, c in enumerate(counts) if c)
            lower = counts[:mu] + (counts[mu] - 1,) + counts[mu + 1:]
            val = total_derivative(self.vertical_coeff(fid, lower), mu)
        with self._lock:
            self._cache.setdefault(key, val)
        return self._cache[key]

    def coeff(self, fid: int, counts) -> GradedPolynomial:
        """Full prolonged coefficient at d/ds^A_L."""
        sig = self.sig
        out = self.vertical_coeff(fid, counts)
        for mu in range(sig.n):
            if self.horiz[mu]:
                out = out + self.horiz[mu] * GradedPolynomial.from_gen(
                    sig, field_gen(sig, fid, counts_add(tuple(counts), mu)))
        return out

    def prolongation(self, order: int) -> dict[tuple[int, tuple], GradedPolynomial]:
        return {(fid, c): self.coeff(fid, c)
                for fid in range(self.sig.num_fields)
                for c in counts_upto(self.sig.n, order)}

    def split(self) -> tuple[ContactDerivation, ContactDerivation]:
        """(horizontal part theta^lam d_lam, vertical part)."""
        sig = self.sig
        hvert = [self.vert[fid] - self.characteristic(fid) for fid in range(sig.num_fields)]
        horizontal = ContactDerivation(sig, self.horiz, hvert, self.parity)
        vertical = ContactDerivation(sig, None, [self.characteristic(f) for f in range(sig.num_fields)],
                                     self.parity)
        return horizontal, vertical

    def apply(self, p: GradedForm) -> GradedForm:
        """Action on the coefficient ring (the Lie derivative of a 0-form)."""
        return lie(self, p)


def _as_poly(sig, p):
    if isinstance(p, (int,)) or p is None:
        return GradedPolynomial.const(sig, p or 0)
    if not isinstance(p, GradedForm):
        return GradedPolynomial.const(sig, p)
    if p.sig != sig:
        raise DerivationError("component lives on a different signature")
    return p.as_poly()


def prolong(sig: Signature, horiz, vert, order: int, parity: int | None = None) -> ContactDerivation:
    """Build the contact derivation and materialize coefficients up to ``order``."""
    v = ContactDerivation(sig, horiz, vert, parity)
    v.prolongation(order)
    return v


def split(vartheta: ContactDerivation):
    return vartheta.split()


def lie(vartheta: ContactDerivation, phi: GradedForm) -> GradedForm:
    """Cartan formula theta _| d phi + d(theta _| phi)."""
    out = interior(vartheta, exterior_d(phi)) + exterior_d(interior(vartheta, phi))
    if isinstance(phi, GradedPolynomial):
        return out.as_poly()
    return out


def total_vector(sig: Signature, lam: int) -> ContactDerivation:
    """d_lam written as a contact derivation (theta^lam = 1, theta^A = s^A_lam)."""
    unit = [0] * sig.n
    unit[lam] = 1
    horiz = [GradedPolynomial.const(sig, 1 if mu == lam else 0) for mu in range(sig.n)]
    vert = [GradedPolynomial.from_gen(sig, field_gen(sig, f, tuple(unit))) for f in range(sig.num_fields)]
    return ContactDerivation(sig, horiz, vert, EVEN)


def coordinate_vector(sig: Signature, mu: int) -> ContactDerivation:
    """Prolongation of d/dx^mu."""
    horiz = [GradedPolynomial.const(sig, 1 if nu == mu else 0) for nu in range(sig.n)]
    return ContactDerivation(sig, horiz, None, EVEN)


def field_vector(sig: Signature, field: str | int) -> ContactDerivation:
    """Prolongation of the constant shift d/ds^A; odd for an odd field."""
    fid = sig.field_index(field) if isinstance(field, str) else field
    vert = [GradedPolynomial.const(sig, 1 if f == fid else 0) for f in range(sig.num_fields)]
    return ContactDerivation(sig, None, vert, sig.field_parity(fid))
