"""Command-line front end.

Exit codes: 0 success, 1 parse or usage error, 2 precondition violation,
3 internal failure (a self-check did not hold).
"""

from __future__ import annotations

import argparse
import sys

from .derivations import DerivationError
from .expr_io import DSLError, format_report, parse, parse_derivation
from .forms import d_H
from .homotopy import HomotopyError, horizontal_homotopy, one_contact_homotopy, rho_kernel_homotopy
from .variational import (
    IdentityFailure,
    PreconditionError,
    euler_lagrange,
    first_variation,
    helmholtz,
    lepage,
    noether,
)

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 1, 2, 3

COMMANDS = ("el", "helmholtz", "trivial", "noether", "variation", "selftest")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gradedjets", description="Exact variational calculus on graded jet spaces.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("file", nargs="?", help="program file (header + expression)")
    p.add_argument("-e", "--expr", help="inline program text")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--max-order", type=int, default=8, help="jet order guard (default 8)")
    p.add_argument("--deriv", help='derivation, e.g. "deriv { dx0: 1; y: y[0] }"')
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--order", type=int, default=3, help="selftest jet-order bound K")
    p.add_argument("--suite", action="append", help="selftest: run only the named suite(s)")
    return p


def _read_program(args):
    if args.expr is not None and args.file is not None:
        raise UsageError("give either -e or a file, not both")
    if args.expr is not None:
        return args.expr
    if args.file is None:
        raise UsageError(f"{args.command} needs an input (-e TEXT or a file)")
    try:
        with open(args.file, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None


class _Guard(Exception):
    pass


def _guard(max_order, *values):
    for v in values:
        if v is not None and v.jet_order() > max_order:
            raise _Guard(f"jet order {v.jet_order()} exceeds --max-order {max_order}")


def _cmd_el(sig, value, args):
    el = euler_lagrange(value)
    result = {f"E_{name}": e for name, e in el.components.items()}
    result["source_form"] = el.as_form
    return result, {"delta_L": el.as_form}


def _cmd_helmholtz(sig, value, args):
    res = helmholtz(value)
    return {"variational": "true" if res.holds else "false", "projected": str(res.projected).lower()}, \
        {"delta_E": res.residual}


def _cmd_trivial(sig, value, args):
    bids = value.bidegrees()
    contact = {k for k, _ in bids}
    if contact <= {0}:
        res = horizontal_homotopy(value)
        return {"xi": res.xi, "base_remainder": res.base_remainder}, {"d_H_xi": d_H(res.xi)}
    if contact == {1}:
        m = {h for _, h in bids}
        if m == {sig.n}:
            xi = rho_kernel_homotopy(value)
        else:
            xi = one_contact_homotopy(value)
        return {"xi": xi}, {"d_H_xi": d_H(xi)}
    raise PreconditionError("trivial handles contact degree 0 or 1 only")


def _need_deriv(sig, args):
    if not args.deriv:
        raise UsageError(f"{args.command} needs --deriv")
    return parse_derivation(args.deriv, sig)


def _cmd_noether(sig, value, args):
    v = _need_deriv(sig, args)
    res = noether(v, value)
    result = {"current": res.current, "xi": res.xi, "lie_derivative": res.lie_term}
    certs = {"d_H_J": res.divergence}
    for name, c in res.coefficients.items():
        certs[f"coefficient_{name}"] = c
        certs[f"E_{name}"] = res.euler_lagrange.components[name]
    certs["identity"] = "d_H J = sum_A coefficient_A * E_A * vol"
    return result, certs


def _cmd_variation(sig, value, args):
    v = _need_deriv(sig, args)
    fv = first_variation(v, value)
    result = {"lie_term": fv.lie_term, "el_term": fv.el_term,
              "boundary_term": fv.boundary_term, "dV_term": fv.dV_term}
    return result, {"residual": fv.residual, "xi_lepage": lepage(value).Xi}


HANDLERS = {
    "el": _cmd_el,
    "helmholtz": _cmd_helmholtz,
    "trivial": _cmd_trivial,
    "noether": _cmd_noether,
    "variation": _cmd_variation,
}


def _selftest(args, out) -> int:
    from .selftest import SUITES, ParserSuite, run_selftest

    if args.order < 1:
        raise UsageError("--order must be >= 1")
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    names = {cls.name for cls in SUITES} | {ParserSuite.name}
    for s in args.suite or ():
        if s not in names:
            raise UsageError(f"unknown suite {s!r}; choose from {', '.join(sorted(names))}")
    results = run_selftest(args.order, args.seed, args.trials, args.suite)
    ok = True
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"{r.name}: {r.passed}/{r.trials} {status}", file=out)
        for label, case in r.failures[:3]:
            print(f"  counterexample ({label}, seed {args.seed}): {case}", file=out)
        ok = ok and r.ok
    return EXIT_OK if ok else EXIT_INTERNAL


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command == "selftest":
            return _selftest(args, out)
        if args.max_order < 0:
            raise UsageError("--max-order must be >= 0")
        prog = parse(_read_program(args))
        if prog.body is None:
            raise UsageError("program has no expression")
        value = prog.evaluate()
        _guard(args.max_order, value)
        result, certs = HANDLERS[args.command](prog.signature, value, args)
        _guard(args.max_order, *[v for v in result.values() if hasattr(v, "jet_order")])
        print(format_report(args.command, prog.signature, result, certs, args.format), file=out)
        return EXIT_OK
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    except DSLError as exc:
        print(str(exc), file=err)
        return EXIT_USAGE
    except DerivationError as exc:
        print(f"derivation error: {exc}", file=err)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=err)
        if exc.certificate is not None:
            from .expr_io import print_value
            print(f"certificate: {print_value(exc.certificate)}", file=err)
        return EXIT_PRECONDITION
    except _Guard as exc:
        print(f"precondition violated: {exc}", file=err)
        return EXIT_PRECONDITION
    except (IdentityFailure, HomotopyError) as exc:
        print(f"internal failure: {exc}", file=err)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
