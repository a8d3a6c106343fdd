"""Graded commutative coefficient ring and the storage shared with forms.

Every element is a finite sum of monomials over one alphabet of generators:

* base coordinates ``x^mu`` (degree 0, even)
* field jets ``s^A_L`` and mirror jets ``sbar^A_L`` (degree 0, parity of A)
* contact one-forms ``theta^A_L`` (degree 1, parity of A)
* horizontal one-forms ``dx^mu`` (degree 1, even)

A generator is the tuple ``(kind, index, counts, parity)`` and a monomial a
sorted tuple of ``(generator, exponent)`` pairs. Two generators a, b commute
up to ``(-1)**(deg a * deg b + par a * par b)``; those anticommuting with
themselves are nilpotent and only ever carry exponent 1.
Coefficients are exact ``Fraction``s.

Odd partial derivatives are LEFT derivatives throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping

from .multiindex import MultiIndex, counts_add
from .signature import EVEN, Signature

BASE, FIELD, AUX, THETA, DX = 0, 1, 2, 3, 4

Gen = tuple  # (kind, index, counts, parity)
Mono = tuple  # ((gen, exp), ...)

ONE_MONO: Mono = ()


class SignatureMismatch(ValueError):
    pass


def gen_deg(g: Gen) -> int:
    return 1 if g[0] >= THETA else 0


def gen_par(g: Gen) -> int:
    return g[3]


def is_nilpotent(g: Gen) -> bool:
    return (gen_deg(g) + g[3]) % 2 == 1


def base_gen(mu: int) -> Gen:
    return (BASE, mu, (), EVEN)


def dx_gen(mu: int) -> Gen:
    return (DX, mu, (), EVEN)


def field_gen(sig: Signature, fid: int, counts: tuple[int, ...], kind: int = FIELD) -> Gen:
    return (kind, fid, tuple(counts), sig.field_parity(fid))


def theta_gen(sig: Signature, fid: int, counts: tuple[int, ...]) -> Gen:
    return (THETA, fid, tuple(counts), sig.field_parity(fid))


# --- monomial arithmetic -------------------------------------------------------

@lru_cache(maxsize=1 << 18)
def mul_mono(m1: Mono, m2: Mono) -> tuple[int, Mono] | None:
    """Product of two normal-ordered monomials: (sign, monomial) or None if zero."""
    if not m1:
        return 1, m2
    if not m2:
        return 1, m1
    # suffix parities of m1: for each position, mod-2 sums of deg*e and par*e after it
    k = len(m1)
    sd = [0] * (k + 1)
    sp = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        g, e = m1[i]
        sd[i] = (sd[i + 1] + gen_deg(g) * e) & 1
        sp[i] = (sp[i + 1] + g[3] * e) & 1
    out = []
    sign = 0
    i = 0
    for g, e in m2:
        while i < k and m1[i][0] < g:
            out.append(m1[i])
            i += 1
        if i < k and m1[i][0] == g:
            if is_nilpotent(g):
                return None
            # g from m2 passes everything in m1 strictly after position i
            sign += e * (gen_deg(g) * sd[i + 1] + g[3] * sp[i + 1])
            out.append((g, m1[i][1] + e))
            i += 1
        else:
            sign += e * (gen_deg(g) * sd[i] + g[3] * sp[i])
            if out and out[-1][0] == g:  # pragma: no cover - defensive
                raise AssertionError("unsorted monomial")
            out.append((g, e))
    out.extend(m1[i:])
    return (-1 if sign & 1 else 1), tuple(out)


def mono_field_degree(m: Mono) -> int:
    return sum(e for g, e in m if g[0] in (FIELD, AUX))


def mono_bidegree(m: Mono) -> tuple[int, int]:
    k = sum(e for g, e in m if g[0] == THETA)
    h = sum(e for g, e in m if g[0] == DX)
    return k, h


def mono_parity(m: Mono) -> int:
    return sum(g[3] * e for g, e in m) & 1


def mono_jet_order(m: Mono) -> int:
    return max((sum(g[2]) for g, _ in m if g[0] in (FIELD, AUX, THETA)), default=0)


def _split_coeff(m: Mono) -> tuple[Mono, Mono]:
    """Split into (coefficient part, form-generator part); normal order keeps them contiguous."""
    for i, (g, _) in enumerate(m):
        if g[0] >= THETA:
            return m[:i], m[i:]
    return m, ()


# --- the element type -----------------------------------------------------------

def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficients must be int or Fraction, got {type(c).__name__}")


class GradedForm:
    """Finite sum of coefficient x monomial over a fixed signature."""

    __slots__ = ("sig", "terms", "_key")

    def __init__(self, sig: Signature, terms: Mapping[Mono, Fraction] | None = None):
        self.sig = sig
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = _as_fraction(c)
        self.terms = clean
        self._key = None

    # constructors
    @classmethod
    def zero(cls, sig: Signature):
        return cls(sig)

    @classmethod
    def const(cls, sig: Signature, c=1):
        return cls(sig, {ONE_MONO: _as_fraction(c)})

    @classmethod
    def from_gen(cls, sig: Signature, g: Gen, c=1):
        return cls(sig, {((g, 1),): _as_fraction(c)})

    # helpers
    def _new(self, terms, cls=None):
        return (cls or type(self))(self.sig, terms)

    def _check(self, other: GradedForm):
        if other.sig != self.sig:
            raise SignatureMismatch("operands live on different signatures")

    def _coerce(self, other):
        if isinstance(other, GradedForm):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return GradedPolynomial.const(self.sig, other)
        return NotImplemented

    def key(self):
        if self._key is None:
            self._key = tuple(sorted(self.terms.items()))
        return self._key

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return self._new(out, _result_cls(self, other))

    __radd__ = __add__

    def __neg__(self):
        return self._new({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._new({m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                r = mul_mono(m1, m2)
                if r is None:
                    continue
                s, m = r
                out[m] = out.get(m, 0) + s * c1 * c2
        return self._new(out, _result_cls(self, other))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = GradedPolynomial.const(self.sig, 1) if isinstance(self, GradedPolynomial) \
            else GradedForm.const(self.sig, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return self.key() == ((ONE_MONO, Fraction(other)),)
        if not isinstance(other, GradedForm):
            return NotImplemented
        return self.sig == other.sig and self.terms == other.terms

    def __hash__(self):
        return hash((self.sig, self.key()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        from .expr_io import print_value
        return f"{type(self).__name__}({print_value(self)!r})"

    def __str__(self):
        from .expr_io import print_value
        return print_value(self)

    # structure
    def bidegrees(self) -> set[tuple[int, int]]:
        return {mono_bidegree(m) for m in self.terms}

    def parities(self) -> set[int]:
        return {mono_parity(m) for m in self.terms}

    def parity(self) -> int:
        """Grassmann parity; raises if the element is not homogeneous."""
        ps = self.parities()
        if len(ps) > 1:
            raise ValueError("element is not parity-homogeneous")
        return ps.pop() if ps else EVEN

    def jet_order(self) -> int:
        return max((mono_jet_order(m) for m in self.terms), default=0)

    def field_degrees(self) -> set[int]:
        return {mono_field_degree(m) for m in self.terms}

    def map_terms(self, fn: Callable[[Mono, Fraction], Fraction]):
        return self._new({m: fn(m, c) for m, c in self.terms.items()})

    def filter(self, pred: Callable[[Mono], bool]):
        return self._new({m: c for m, c in self.terms.items() if pred(m)})

    def as_poly(self) -> GradedPolynomial:
        for m in self.terms:
            if mono_bidegree(m) != (0, 0):
                raise ValueError("element has form generators")
        return GradedPolynomial(self.sig, self.terms)

    def as_form(self) -> GradedForm:
        return GradedForm(self.sig, self.terms)

    def with_signature(self, sig: Signature):
        """Reinterpret on a compatible signature (same fields, n; aux flag may differ)."""
        if sig.base_dim != self.sig.base_dim or sig.fields != self.sig.fields:
            raise SignatureMismatch("incompatible signature")
        return type(self)(sig, self.terms)

    def coefficient_split(self) -> dict[Mono, GradedPolynomial]:
        """Group as sum of poly * form-monomial (form part in normal order)."""
        out: dict[Mono, dict] = {}
        for m, c in self.terms.items():
            cm, fm = _split_coeff(m)
            out.setdefault(fm, {})[cm] = c
        return {fm: GradedPolynomial(self.sig, t) for fm, t in out.items()}


class GradedPolynomial(GradedForm):
    """Element of the coefficient ring: a (0,0)-form."""

    __slots__ = ()


def _result_cls(a, b):
    if isinstance(a, GradedPolynomial) and isinstance(b, GradedPolynomial):
        return GradedPolynomial
    return GradedForm


def mono_form(sig: Signature, m: Mono, c=1) -> GradedForm:
    cls = GradedPolynomial if mono_bidegree(m) == (0, 0) else GradedForm
    return cls(sig, {m: _as_fraction(c)})


# --- jet variables --------------------------------------------------------------

@dataclass(frozen=True)
class JetVariable:
    """A coordinate x^mu, a field jet, or a mirror jet."""

    kind: int  # BASE, FIELD or AUX
    index: int  # base index for BASE, roster index otherwise
    multi: MultiIndex | None
    parity: int

    @property
    def gen(self) -> Gen:
        if self.kind == BASE:
            return base_gen(self.index)
        return (self.kind, self.index, self.multi.counts, self.parity)

    @classmethod
    def from_gen(cls, g: Gen) -> JetVariable:
        if g[0] == BASE:
            return cls(BASE, g[1], None, EVEN)
        if g[0] in (FIELD, AUX):
            return cls(g[0], g[1], MultiIndex(g[2]), g[3])
        raise ValueError("not a coordinate generator")

    @classmethod
    def base(cls, mu: int) -> JetVariable:
        return cls(BASE, mu, None, EVEN)

    @classmethod
    def jet(cls, sig: Signature, field: str | int, indices: Iterable[int] = (), aux: bool = False):
        fid = sig.field_index(field) if isinstance(field, str) else field
        multi = MultiIndex.from_indices(sig.n, indices)
        return cls(AUX if aux else FIELD, fid, multi, sig.field_parity(fid))


def var(sig: Signature, field: str | int, indices: Iterable[int] = (), aux: bool = False) -> GradedPolynomial:
    """The polynomial consisting of a single jet variable."""
    v = JetVariable.jet(sig, field, indices, aux)
    if aux and not sig.aux_enabled:
        raise ValueError("mirror variables need an aux-enabled signature")
    return GradedPolynomial.from_gen(sig, v.gen)


def xcoord(sig: Signature, mu: int) -> GradedPolynomial:
    if not 0 <= mu < sig.n:
        raise IndexError(mu)
    return GradedPolynomial.from_gen(sig, base_gen(mu))


def const(sig: Signature, c=1) -> GradedPolynomial:
    return GradedPolynomial.const(sig, c)


# --- derivations on monomials ------------------------------------------------------

def apply_derivation(elem: GradedForm, d_deg: int, d_par: int,
                     image: Callable[[Gen], GradedForm | None]) -> GradedForm:
    """Extend a generator map to a graded derivation of bidegree (d_deg, d_par).

    D(a b) = D(a) b + (-1)**(d_deg*|a| + d_par*[a]) a D(b).
    """
    sig = elem.sig
    cache: dict = {}
    out: dict = {}
    one = GradedForm.const(sig, 1)
    for m, c in elem.terms.items():
        flat = [g for g, e in m for _ in range(e)]
        sign = 0
        for i, g in enumerate(flat):
            if g not in cache:
                cache[g] = image(g)
            img = cache[g]
            if img is not None and img.terms:
                prefix = _runs(flat[:i])
                suffix = _runs(flat[i + 1:])
                piece = GradedForm(sig, {prefix: 1}) if prefix else one
                piece = piece * img
                if suffix:
                    piece = piece * GradedForm(sig, {suffix: 1})
                s = -c if sign & 1 else c
                for pm, pc in piece.terms.items():
                    out[pm] = out.get(pm, 0) + s * pc
            sign += d_deg * gen_deg(g) + d_par * g[3]
    return GradedForm(sig, out)


def _runs(flat) -> Mono:
    out = []
    for g in flat:
        if out and out[-1][0] == g:
            out[-1] = (g, out[-1][1] + 1)
        else:
            out.append((g, 1))
    return tuple(out)


@lru_cache(maxsize=1 << 18)
def _partial_mono(m: Mono, v: Gen) -> tuple[int, Mono] | None:
    """Left partial derivative of a monomial: (integer factor, monomial)."""
    par_before = 0
    for i, (g, e) in enumerate(m):
        if g == v:
            rest = m[:i] + (((g, e - 1),) if e > 1 else ()) + m[i + 1:]
            factor = e * (-1 if (v[3] * par_before) & 1 else 1)
            return factor, rest
        par_before += g[3] * e
    return None


def partial(p: GradedForm, v: JetVariable | Gen) -> GradedForm:
    """Left graded partial derivative with respect to a coordinate.

    Acts on the coefficient factors; since coefficients precede form generators
    in normal order, no sign arises from contact or horizontal generators.
    """
    g = v.gen if isinstance(v, JetVariable) else v
    out: dict = {}
    for m, c in p.terms.items():
        r = _partial_mono(m, g)
        if r is None:
            continue
        f, rest = r
        out[rest] = out.get(rest, 0) + f * c
    return p._new(out)


@lru_cache(maxsize=1 << 18)
def _total_mono(m: Mono, lam: int) -> tuple:
    """Total derivative d_lam of one monomial (acts on jets, mirrors, thetas)."""
    out: dict = {}
    flat = [g for g, e in m for _ in range(e)]
    for i, g in enumerate(flat):
        kind = g[0]
        if kind == BASE:
            if g[1] != lam:
                continue
            img = ONE_MONO
        elif kind in (FIELD, AUX, THETA):
            img = (((kind, g[1], counts_add(g[2], lam), g[3]), 1),)
        else:
            continue
        r = mul_mono(_runs(flat[:i]), img)
        if r is None:
            continue
        s1, left = r
        r = mul_mono(left, _runs(flat[i + 1:]))
        if r is None:
            continue
        s2, full = r
        out[full] = out.get(full, 0) + s1 * s2
    return tuple((k, v) for k, v in out.items() if v)


def total_derivative(p: GradedForm, lam: int) -> GradedForm:
    """d_lam = partial_lam + sum over jets s_{lam+L} d/ds_L, extended to thetas."""
    if not 0 <= lam < p.sig.n:
        raise IndexError(f"base index {lam} out of range")
    out: dict = {}
    for m, c in p.terms.items():
        for mm, f in _total_mono(m, lam):
            out[mm] = out.get(mm, 0) + f * c
    return p._new(out)


def total_derivative_multi(p: GradedForm, counts) -> GradedForm:
    """d_L for a multi-index given by counts."""
    for mu, k in enumerate(counts):
        for _ in range(k):
            p = total_derivative(p, mu)
    return p


def euler_scale(p: GradedForm, weight: Callable[[int], Fraction] | Mapping[int, Fraction]) -> GradedForm:
    """Scale each monomial by weight(field degree); base coordinates do not count."""
    get = weight if callable(weight) else None
    out = {}
    for m, c in p.terms.items():
        k = mono_field_degree(m)
        if get is not None:
            try:
                w = get(k)
            except ZeroDivisionError:
                raise ValueError(f"no weight for field degree {k}") from None
        else:
            if k not in weight:
                raise ValueError(f"no weight for field degree {k}")
            w = weight[k]
        out[m] = c * w
    return p._new(out)


def inverse_degree(k: int) -> Fraction:
    """The weight k -> 1/k that a radial integral of dl/l leaves on degree-k terms."""
    if k == 0:
        raise ValueError("no weight for field degree 0")
    return Fraction(1, k)


def poly_mul(p: GradedPolynomial, q: GradedPolynomial) -> GradedPolynomial:
    return p * q


def field_variables(sig: Signature, elem: GradedForm) -> set[Gen]:
    out = set()
    for m in elem.terms:
        for g, _ in m:
            if g[0] in (FIELD, AUX):
                out.add(g)
    return out
