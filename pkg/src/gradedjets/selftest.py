"""Seeded random instances and the property suites run by ``selftest``.

Each suite draws ``trials`` random cases from its own seeded stream, so a
suite's outcome does not depend on which other suites ran. A failing case is
minimized by deleting terms and lowering jet orders while it keeps failing.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .algebra import (
    AUX,
    BASE,
    FIELD,
    THETA,
    GradedForm,
    GradedPolynomial,
    base_gen,
    dx_gen,
    field_gen,
    mono_field_degree,
    partial,
    theta_gen,
    total_derivative,
)
from .derivations import ContactDerivation, lie
from .expr_io import format_report, parse_expr, print_value
from .forms import d_H, d_V, exterior_d, interior, project, theta, vol
from .homotopy import (
    density_homotopy_alt,
    dplus,
    horizontal_homotopy,
    lowering_homotopy,
    one_contact_homotopy,
    rho_kernel_homotopy,
)
from .signature import EVEN, ODD, Signature
from .variational import (
    PreconditionError,
    delta,
    euler_lagrange,
    first_variation,
    lepage,
    noether,
    rho,
)

EVEN_NAMES = ("y", "u", "v")
ODD_NAMES = ("c", "b", "k")


# --- random instances -------------------------------------------------------------------------

class RandomInstances:
    """Random signatures, polynomials, forms and derivations within fixed bounds."""

    def __init__(self, rng: random.Random, max_order: int = 3, max_degree: int = 4,
                 max_n: int = 3, max_fields: int = 3):
        self.rng = rng
        self.max_order = max_order
        self.max_degree = max_degree
        self.max_n = max_n
        self.max_fields = max_fields

    def signature(self, min_n: int = 1, parities=None) -> Signature:
        rng = self.rng
        n = rng.randint(min_n, self.max_n)
        if parities is None:
            k = rng.randint(1, self.max_fields)
            parities = [rng.randint(0, 1) for _ in range(k)]
        fields = []
        ie = io = 0
        for p in parities:
            if p == EVEN:
                fields.append((EVEN_NAMES[ie], EVEN))
                ie += 1
            else:
                fields.append((ODD_NAMES[io], ODD))
                io += 1
        return Signature(n, tuple(fields))

    def coefficient(self) -> Fraction:
        rng = self.rng
        num = rng.choice([-3, -2, -1, 1, 1, 1, 2, 3])
        return Fraction(num, rng.choice([1, 1, 1, 2, 3]))

    def counts(self, n: int, min_order: int = 0, max_order: int | None = None) -> tuple:
        top = self.max_order if max_order is None else max_order
        order = self.rng.randint(min_order, max(top, min_order))
        c = [0] * n
        for _ in range(order):
            c[self.rng.randrange(n)] += 1
        return tuple(c)

    def jet_gen(self, sig: Signature, fields=None, min_order: int = 0, kind: int = FIELD):
        fid = self.rng.choice(list(fields) if fields is not None else range(sig.num_fields))
        return field_gen(sig, fid, self.counts(sig.n, min_order), kind)

    def mono_poly(self, sig: Signature, degree: int, fields=None, min_order: int = 0,
                  allow_x: bool = True) -> GradedPolynomial:
        out = GradedPolynomial.const(sig, self.coefficient())
        for _ in range(degree):
            out = out * GradedPolynomial.from_gen(sig, self.jet_gen(sig, fields, min_order))
        if allow_x and self.rng.random() < 0.25:
            out = out * GradedPolynomial.from_gen(sig, base_gen(self.rng.randrange(sig.n)))
        return out

    def poly(self, sig: Signature, terms: int = 3, min_degree: int = 0, max_degree: int | None = None,
             parity: int | None = None, fields=None, min_order: int = 0, allow_x: bool = True,
             nonzero: bool = False) -> GradedPolynomial:
        top = self.max_degree if max_degree is None else max_degree
        fields = list(fields) if fields is not None else list(range(sig.num_fields))
        for _attempt in range(50):
            out = GradedPolynomial.zero(sig)
            for _ in range(self.rng.randint(1, terms)):
                for _try in range(20):
                    t = self.mono_poly(sig, self.rng.randint(min_degree, top), fields, min_order, allow_x)
                    if t and (parity is None or t.parity() == parity):
                        out = out + t
                        break
            if out or not nonzero:
                return out
        raise RuntimeError("could not draw a nonzero polynomial with the requested parity")

    def form(self, sig: Signature, k: int, m: int, terms: int = 3, parity: int | None = None,
             min_degree: int = 0, max_coeff_degree: int = 2, fields=None) -> GradedForm:
        """Random element of bidegree (k, m)."""
        out = GradedForm.zero(sig)
        for _attempt in range(50):
            for _ in range(self.rng.randint(1, terms)):
                for _try in range(20):
                    t = self._form_term(sig, k, m, min_degree, max_coeff_degree, fields)
                    if t and (parity is None or t.parity() == parity):
                        out = out + t
                        break
            if out:
                return out
        return out

    def _form_term(self, sig, k, m, min_degree, max_coeff_degree, fields):
        rng = self.rng
        coeff = self.mono_poly(sig, rng.randint(min_degree, max(min_degree, max_coeff_degree)), fields)
        out = GradedForm(sig, coeff.terms)
        for _ in range(k):
            th = GradedForm.from_gen(sig, theta_gen(sig, rng.choice(
                list(fields) if fields is not None else range(sig.num_fields)), self.counts(sig.n)))
            out = out * th
        for mu in sorted(rng.sample(range(sig.n), m)):
            out = out * GradedForm.from_gen(sig, dx_gen(mu))
        return out

    def derivation(self, sig: Signature, parity: int | None = None, vertical: bool = False,
                   terms: int = 2) -> ContactDerivation:
        rng = self.rng
        if parity is None:
            parity = rng.randint(0, 1)
        horiz = []
        for _ in range(sig.n):
            if vertical or rng.random() < 0.5:
                horiz.append(GradedPolynomial.zero(sig))
            else:
                horiz.append(self._poly_or_zero(sig, terms, parity, max_degree=2))
        vert = []
        for fid in range(sig.num_fields):
            want = (parity + sig.field_parity(fid)) & 1
            vert.append(self._poly_or_zero(sig, terms, want, max_degree=2))
        return ContactDerivation(sig, horiz, vert, parity)

    def _poly_or_zero(self, sig, terms, parity, max_degree):
        try:
            return self.poly(sig, terms, 0, max_degree, parity)
        except RuntimeError:
            return GradedPolynomial.zero(sig)


# --- shrinking -----------------------------------------------------------------------------------

def _lower_gen(g):
    for mu, c in enumerate(g[2]):
        if c:
            return g[:2] + (g[2][:mu] + (c - 1,) + g[2][mu + 1:],) + g[3:]
    return None


def _form_variants(f: GradedForm):
    """Smaller neighbours of a form: one term dropped, or one jet order lowered."""
    items = sorted(f.terms.items())
    for i in range(len(items)):
        yield GradedForm(f.sig, dict(items[:i] + items[i + 1:])) if not isinstance(f, GradedPolynomial) \
            else GradedPolynomial(f.sig, dict(items[:i] + items[i + 1:]))
    for i, (m, c) in enumerate(items):
        for j, (g, e) in enumerate(m):
            if g[0] not in (FIELD, AUX, THETA):
                continue
            low = _lower_gen(g)
            if low is None:
                continue
            single = type(f)(f.sig, {m[:j] + (((g, e - 1),) if e > 1 else ()) + m[j + 1:]: c})
            lowered = single * type(f)(f.sig, {((low, 1),): 1})
            rest = dict(items[:i] + items[i + 1:])
            yield type(f)(f.sig, rest) + lowered


def _case_variants(case: dict):
    for key, val in case.items():
        if isinstance(val, GradedForm):
            for v in _form_variants(val):
                yield {**case, key: v}
        elif isinstance(val, ContactDerivation):
            comps = list(val.horiz) + list(val.vert)
            for idx, comp in enumerate(comps):
                for v in _form_variants(comp):
                    new = comps[:idx] + [v] + comps[idx + 1:]
                    try:
                        d = ContactDerivation(val.sig, new[:val.sig.n], new[val.sig.n:], val.parity)
                    except ValueError:
                        continue
                    yield {**case, key: d}


def _case_size(case: dict) -> int:
    size = 0
    for val in case.values():
        if isinstance(val, GradedForm):
            size += sum(1 + sum(sum(g[2]) * e for g, e in m if len(g[2])) for m in val.terms)
        elif isinstance(val, ContactDerivation):
            size += sum(len(p.terms) for p in val.horiz + val.vert)
    return size


def shrink(case: dict, fails: Callable[[dict], bool], budget: int = 400) -> dict:
    """Greedy minimization: accept any smaller neighbour that still fails."""
    best = case
    steps = 0
    improved = True
    while improved and steps < budget:
        improved = False
        for cand in _case_variants(best):
            steps += 1
            if steps >= budget:
                break
            if _case_size(cand) >= _case_size(best):
                continue
            try:
                still = fails(cand)
            except PreconditionError:
                still = False
            if still:
                best = cand
                improved = True
                break
    return best


def describe_case(case: dict) -> str:
    parts = []
    for key, val in case.items():
        if isinstance(val, GradedForm):
            parts.append(f"{key} = {print_value(val)}")
        elif isinstance(val, ContactDerivation):
            from .expr_io import print_derivation
            parts.append(f"{key} = {print_derivation(val)}")
        elif isinstance(val, Signature):
            parts.append(f"signature = {val.header()}")
        else:
            parts.append(f"{key} = {val!r}")
    return "; ".join(parts)


# --- suites ------------------------------------------------------------------------------------

@dataclass
class SuiteResult:
    name: str
    trials: int
    passed: int = 0
    seconds: float = 0.0
    failures: list = field(default_factory=list)  # (check name, minimized case text)

    @property
    def ok(self) -> bool:
        return self.passed == self.trials and not self.failures


class Suite:
    """A named property: ``draw`` builds a case, ``check`` returns failed check names."""

    name = "suite"

    def __init__(self, max_order: int):
        self.max_order = max_order
        self.emitted: list = []

    def draw(self, gen: RandomInstances, trial: int) -> dict:
        raise NotImplementedError

    def check(self, case: dict) -> list[str]:
        raise NotImplementedError

    def emit(self, *values):
        for v in values:
            if isinstance(v, GradedForm):
                self.emitted.append(v)


def _eq(failed: list, label: str, a, b):
    if a != b:
        failed.append(label)


class BicomplexSuite(Suite):
    name = "bicomplex"

    def draw(self, gen, trial):
        sig = gen.signature()
        k = gen.rng.randint(0, 2)
        m = gen.rng.randint(0, sig.n)
        return {"sig": sig, "phi": gen.form(sig, k, m), "v": gen.derivation(sig)}

    def check(self, case):
        phi, v = case["phi"], case["v"]
        failed = []
        dh, dv = d_H(phi), d_V(phi)
        _eq(failed, "d_H^2 = 0", d_H(dh), 0)
        _eq(failed, "d_V^2 = 0", d_V(dv), 0)
        _eq(failed, "d_H d_V + d_V d_H = 0", d_H(dv) + d_V(dh), 0)
        d1 = exterior_d(phi)
        _eq(failed, "d^2 = 0", exterior_d(d1), 0)
        _eq(failed, "L_v d = d L_v", lie(v, d1), exterior_d(lie(v, phi)))
        self.emit(phi, dh, dv, d1)
        return failed


class ProjectorSuite(Suite):
    name = "projector"

    def draw(self, gen, trial):
        sig = gen.signature()
        k = gen.rng.randint(1, 2)
        return {"sig": sig, "psi": gen.form(sig, k, sig.n - 1, terms=2),
                "phi": gen.form(sig, k, sig.n, terms=2),
                "L": gen.form(sig, 0, sig.n, terms=2)}

    def check(self, case):
        psi, phi, L = case["psi"], case["phi"], case["L"]
        failed = []
        _eq(failed, "rho d_H = 0", rho(d_H(psi)), 0)
        r = rho(phi)
        _eq(failed, "rho^2 = rho", rho(r), r)
        _eq(failed, "delta^2 = 0", delta(delta(phi)), 0)
        _eq(failed, "delta^2 = 0 on densities", delta(delta(L)), 0)
        _eq(failed, "delta rho = rho d", delta(r), rho(exterior_d(phi)))
        self.emit(r, delta(phi))
        return failed


class EulerLagrangeSuite(Suite):
    name = "euler_lagrange"

    def draw(self, gen, trial):
        sig = gen.signature()
        return {"sig": sig, "L": gen.form(sig, 0, sig.n, terms=3, max_coeff_degree=3),
                "eta": gen.form(sig, 0, sig.n - 1, terms=2)}

    def check(self, case):
        L, eta = case["L"], case["eta"]
        failed = []
        el = euler_lagrange(L)
        _eq(failed, "delta L = EL form", delta(L), el.as_form)
        _eq(failed, "EL form is a source form", rho(el.as_form), el.as_form)
        _eq(failed, "EL(d_H eta) = 0", euler_lagrange(d_H(eta)).as_form, 0)
        sig = L.sig
        if len(L.parities()) == 1:
            q = L.parity()
            for name, e in el.components.items():
                if e.parities() - {(q + sig.field_parity(sig.field_index(name))) & 1}:
                    failed.append("parity of E_A")
        self.emit(*el.components.values(), el.as_form)
        return failed


class LepageSuite(Suite):
    name = "lepage"

    def draw(self, gen, trial):
        sig = gen.signature()
        parity = trial & 1
        if parity == ODD and all(p == EVEN for _, p in sig.fields):
            sig = Signature(sig.n, sig.fields + (("c", ODD),))
        lag = gen.poly(sig, 3, 1, parity=parity, nonzero=True)
        return {"sig": sig, "L": lag * vol(sig)}

    def check(self, case):
        L = case["L"]
        res = lepage(L)
        self.emit(res.Xi)
        if d_V(L) != delta(L) - d_H(res.Xi):
            return ["dL = delta L - d_H Xi"]
        return []


class FirstVariationSuite(Suite):
    name = "first_variation"

    def draw(self, gen, trial):
        sig = gen.signature()
        v = gen.derivation(sig, parity=trial & 1)
        lag = gen.poly(sig, 2, 1, 3, parity=gen.rng.randint(0, 1))
        return {"sig": sig, "v": v, "L": lag * vol(sig)}

    def check(self, case):
        fv = first_variation(case["v"], case["L"])
        self.emit(fv.lie_term, fv.el_term, fv.boundary_term, fv.dV_term)
        return [] if fv.holds else ["first variational formula"]


class HomotopySuite(Suite):
    name = "homotopy"
    kinds = ("horizontal", "density", "one_contact", "rho_kernel")

    def draw(self, gen, trial):
        kind = self.kinds[trial % 4]
        min_n = 2 if kind in ("horizontal", "one_contact") else 1
        sig = gen.signature(min_n=min_n)
        if kind == "horizontal":
            m = gen.rng.randint(1, sig.n - 1)
            src = gen.form(sig, 0, m - 1, terms=2, min_degree=1)
        elif kind == "density":
            src = gen.form(sig, 0, sig.n - 1, terms=2, min_degree=1)
        elif kind == "one_contact":
            m = gen.rng.randint(1, sig.n - 1)
            src = gen.form(sig, 1, m - 1, terms=2)
        else:
            src = gen.form(sig, 1, sig.n - 1, terms=2)
        return {"sig": sig, "kind": kind, "xi": src}

    def check(self, case):
        kind, src = case["kind"], case["xi"]
        target = d_H(src)
        failed = []
        order = target.jet_order()
        outs = []
        if kind in ("horizontal", "density"):
            res = horizontal_homotopy(target)
            outs.append(("primary", res.xi))
            _eq(failed, "no base remainder", res.base_remainder, 0)
            if kind == "density":
                outs.append(("alternative density", density_homotopy_alt(target)))
            else:
                outs.append(("lowering series", lowering_homotopy(target)))
        elif kind == "one_contact":
            outs.append(("one-contact", one_contact_homotopy(target)))
        else:
            outs.append(("rho-kernel", rho_kernel_homotopy(target)))
        for label, xi in outs:
            _eq(failed, f"{label}: d_H xi' = d_H xi", d_H(xi), target)
            if xi.jet_order() > 2 * order + 1:
                failed.append(f"{label}: jet order bound")
            self.emit(xi)
        self.emit(target)
        return failed


class BracketSuite(Suite):
    name = "dplus_bracket"

    def draw(self, gen, trial):
        sig = gen.signature()
        return {"sig": sig, "p": gen.poly(sig, 3, 1, nonzero=True),
                "nu": gen.rng.randrange(sig.n), "mu": gen.rng.randrange(sig.n)}

    def check(self, case):
        p, nu, mu = case["p"], case["nu"], case["mu"]
        if not p or p.filter(lambda m: mono_field_degree(m) == 0):
            return []
        br = dplus(nu, total_derivative(p, mu)) - total_derivative(dplus(nu, p), mu)
        self.emit(br)
        want = p if nu == mu else 0
        return [] if br == want else [f"[D+{nu}, d_{mu}] = delta"]


class NoetherSuite(Suite):
    """Random vertical variational symmetries.

    The first field gets a constant shift and the base Lagrangian depends on
    it only through derivatives; other components act on fields absent from
    the base Lagrangian; a d_H-exact term of field degree >= 2 is added.
    """

    name = "noether"

    def draw(self, gen, trial):
        rng = gen.rng
        sig = gen.signature()
        nf = sig.num_fields
        parity = sig.field_parity(0)
        spectators = [f for f in range(1, nf) if rng.random() < 0.5]
        used = [f for f in range(1, nf) if f not in spectators]
        lag = GradedPolynomial.zero(sig)
        for _ in range(rng.randint(1, 2)):
            for _try in range(20):
                t = GradedPolynomial.const(sig, gen.coefficient())
                for _ in range(rng.randint(1, 3)):
                    if used and rng.random() < 0.4:
                        t = t * GradedPolynomial.from_gen(sig, gen.jet_gen(sig, used))
                    else:
                        t = t * GradedPolynomial.from_gen(sig, gen.jet_gen(sig, [0], min_order=1))
                if t and t.parity() == EVEN:
                    lag = lag + t
                    break
        eta = gen.form(sig, 0, sig.n - 1, terms=2, parity=EVEN, min_degree=2, max_coeff_degree=3)
        L = lag * vol(sig) + d_H(eta)
        vert = [GradedPolynomial.zero(sig) for _ in range(nf)]
        vert[0] = GradedPolynomial.const(sig, gen.coefficient())
        for f in spectators:
            want = (parity + sig.field_parity(f)) & 1
            try:
                vert[f] = gen.poly(sig, 2, 1, 2, want, nonzero=True)
            except RuntimeError:
                pass
        return {"sig": sig, "v": ContactDerivation(sig, None, vert, parity), "L": L}

    def check(self, case):
        v, L = case["v"], case["L"]
        res = noether(v, L)
        self.emit(res.current, res.xi)
        _, vertical = v.split()
        rhs = -project(interior(vertical, delta(L)), 0, L.sig.n)
        failed = []
        _eq(failed, "d_H J = -v_V _| delta L", res.divergence, rhs)
        if not res.holds:
            failed.append("d_H J = sum c_A E_A vol")
        return failed


class SignLawSuite(Suite):
    name = "sign_laws"

    def draw(self, gen, trial):
        rng = gen.rng
        sig = gen.signature()
        ka, kb = rng.randint(0, 2), rng.randint(0, 2)
        ma, mb = rng.randint(0, sig.n), rng.randint(0, sig.n)
        pa, pb = rng.randint(0, 1), rng.randint(0, 1)
        if ODD not in {p for _, p in sig.fields}:
            pa = pb = EVEN
        return {"sig": sig, "a": gen.form(sig, ka, ma, 2, pa), "b": gen.form(sig, kb, mb, 2, pb),
                "p": gen.poly(sig, 2, 1, 3), "q": gen.poly(sig, 2, 0, 3),
                "v": gen.derivation(sig)}

    @staticmethod
    def _homog(f):
        bids = f.bidegrees()
        pars = f.parities()
        if len(bids) > 1 or len(pars) > 1:
            return None
        (k, m), = bids or {(0, 0)}
        return k + m, (pars.pop() if pars else EVEN)

    def check(self, case):
        a, b, p, q, v = case["a"], case["b"], case["p"], case["q"], case["v"]
        failed = []
        ha, hb = self._homog(a), self._homog(b)
        if ha and hb:
            sign = -1 if (ha[0] * hb[0] + ha[1] * hb[1]) & 1 else 1
            _eq(failed, "graded commutativity", a * b, (b * a) * sign)
            sd = -1 if ha[0] & 1 else 1
            _eq(failed, "d_H Leibniz", d_H(a * b), d_H(a) * b + a * d_H(b) * sd)
            _eq(failed, "d_V Leibniz", d_V(a * b), d_V(a) * b + a * d_V(b) * sd)
            si = -1 if (ha[0] + ha[1] * v.parity) & 1 else 1
            _eq(failed, "interior Leibniz", interior(v, a * b), interior(v, a) * b + a * interior(v, b) * si)
        _eq(failed, "associativity", (a * b) * p, a * (b * p))
        for g in sorted({g for m in p.terms for g, _ in m if g[0] != BASE}):
            for pp in p.parities():
                hp = p.filter(lambda m, pp=pp: (sum(x[3] * e for x, e in m) & 1) == pp)
                s = -1 if (g[3] * pp) & 1 else 1
                _eq(failed, "partial Leibniz", partial(hp * q, g), partial(hp, g) * q + hp * partial(q, g) * s)
        for lam in range(p.sig.n):
            _eq(failed, "total derivative Leibniz", total_derivative(p * q, lam),
                total_derivative(p, lam) * q + p * total_derivative(q, lam))
        self.emit(a * b, p * q)
        return failed


class ParserSuite(Suite):
    """Round trip of every value emitted by the other suites, plus report determinism."""

    name = "parser_round_trip"

    def __init__(self, max_order, values=None):
        super().__init__(max_order)
        self.values = values if values is not None else []

    def draw(self, gen, trial):
        sig = gen.signature()
        return {"sig": sig, "phi": gen.form(sig, gen.rng.randint(0, 2), gen.rng.randint(0, sig.n))}

    def check(self, case):
        failed = []
        phi = case["phi"]
        if parse_expr(print_value(phi), phi.sig) != phi:
            failed.append("parse(print(phi)) = phi")
        r1 = format_report("selftest", phi.sig, {"value": phi}, fmt="json")
        r2 = format_report("selftest", phi.sig, {"value": phi}, fmt="json")
        if r1 != r2:
            failed.append("deterministic report")
        return failed

    def check_emitted(self) -> list[str]:
        bad = []
        for v in self.values:
            text = print_value(v)
            if parse_expr(text, v.sig) != v or print_value(parse_expr(text, v.sig)) != text:
                bad.append(text)
        return bad


SUITES = [
    BicomplexSuite,
    ProjectorSuite,
    EulerLagrangeSuite,
    LepageSuite,
    FirstVariationSuite,
    HomotopySuite,
    BracketSuite,
    NoetherSuite,
    SignLawSuite,
]


def run_suite(suite: Suite, seed: int, trials: int, max_order: int, shrink_failures: bool = True) -> SuiteResult:
    rng = random.Random(f"{seed}:{suite.name}")
    gen = RandomInstances(rng, max_order=max_order)
    result = SuiteResult(suite.name, trials)
    start = time.perf_counter()
    for t in range(trials):
        case = shown = suite.draw(gen, t)
        try:
            failed = suite.check(case)
        except Exception as exc:  # any crash counts as a failure of this trial
            failed = [f"{type(exc).__name__}: {exc}"]
        if not failed:
            result.passed += 1
            continue
        if shrink_failures:
            def still_fails(c, label=failed[0]):
                try:
                    return bool(suite.check(c))
                except PreconditionError:
                    return False
                except Exception:
                    return True
            shown = shrink(case, still_fails)
        result.failures.append((failed[0], describe_case(shown)))
    result.seconds = time.perf_counter() - start
    return result


def run_selftest(max_order: int = 3, seed: int = 0, trials: int = 200, suites=None) -> list[SuiteResult]:
    if max_order < 1:
        raise ValueError("order must be >= 1")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    wanted = set(suites) if suites else None
    results = []
    emitted = []
    for cls in SUITES:
        s = cls(max_order)
        if wanted and s.name not in wanted:
            continue
        results.append(run_suite(s, seed, trials, max_order))
        emitted.extend(s.emitted)
    if not wanted or ParserSuite.name in wanted:
        ps = ParserSuite(max_order, emitted)
        res = run_suite(ps, seed, trials, max_order)
        start = time.perf_counter()
        for text in ps.check_emitted():
            res.failures.append(("parse(print(v)) = v on emitted value", text))
        res.seconds += time.perf_counter() - start
        results.append(res)
    return results


def theta_witnesses(sig_even: Signature | None = None, sig_odd: Signature | None = None) -> dict:
    """theta^even ^ theta^even = 0 and theta^odd ^ theta^odd != 0."""
    se = sig_even or Signature(1, (("y", EVEN),))
    so = sig_odd or Signature(1, (("c", ODD),))
    te = theta(se, 0)
    to = theta(so, 0)
    return {"even": te * te, "odd": to * to}


__all__ = [
    "RandomInstances",
    "SuiteResult",
    "SUITES",
    "run_suite",
    "run_selftest",
    "shrink",
    "theta_witnesses",
]
