"""Command line front end.  Exit codes: 0 pass, 1 a check failed, 2 bad input."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .barcobar import bar, check_bar_d2, cobar, rectify, triangle_identity
from .category import AInftyCategory, NotDg, check_catrel, cohomology, tensor_dg
from .functor import (AInftyFunctor, check_funrel, check_multirel, compose, functors_equal,
                      is_cohomologically_unital_multifunctor)
from .internal_hom import (build_counterexample, build_tensor_unit, equalizer_obstruction, p_after_n,
                           psi_roundtrip, restriction_matches, solve_bifunctor_N, surjective_cover)
from .strictify import gr_comparison, strictify_unital, verify_strict_unitality


class InputError(Exception):
    pass


class Output:
    def __init__(self, command: str, stream=None):
        self.command = command
        self.stream = stream or sys.stdout
        self.checks: dict = {}
        self.info: dict = {}

    def line(self, text: str = "") -> None:
        print(text, file=self.stream)

    def check(self, name: str, ok: bool, lines=()) -> bool:
        self.checks[name] = bool(ok)
        self.line(f"{'PASS' if ok else 'FAIL'} {name}")
        for ln in lines:
            self.line(f"  {ln}")
        return bool(ok)

    def report(self, name: str, rep) -> bool:
        lines = rep.lines()
        if rep.failure and "first_failure" not in self.info:
            self.info["first_failure"] = {k: str(v) for k, v in rep.failure.items()}
        return self.check(name, rep.ok, [ln.strip() for ln in lines])

    def finish(self) -> int:
        ok = all(self.checks.values())
        self.line("--- summary ---")
        self.line(json.dumps({"command": self.command, "ok": ok, "checks": self.checks, "info": self.info},
                             sort_keys=True))
        return 0 if ok else 1


def _load(path: str, kind: type, what: str):
    try:
        obj = io.load(path)
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from e
    except io.SchemaError as e:
        raise InputError(f"{path}: {e}") from e
    if not isinstance(obj, kind):
        raise InputError(f"{path}: expected a {what} document")
    return obj


def _category(path):
    return _load(path, AInftyCategory, "category")


def _functor(path):
    return _load(path, AInftyFunctor, "functor")


def cmd_check_cat(args, out: Output) -> None:
    a = _category(args.file)
    out.report(f"check_catrel {a.name} n<={args.nmax}", check_catrel(a, args.nmax, jobs=args.jobs))


def cmd_check_fun(args, out: Output) -> None:
    f = _functor(args.file)
    for name, a in (("source", f.source), ("target", f.target)):
        out.report(f"{name} relations", check_catrel(a, args.nmax, jobs=args.jobs))
    out.report(f"check_funrel {f.name} n<={args.nmax}", check_funrel(f, args.nmax))


def cmd_cohomology(args, out: Output) -> None:
    a = _category(args.file)
    rep = check_catrel(a, 3)
    if not out.report("m1 squares to zero and low relations", rep):
        return
    hc = cohomology(a)
    for x in sorted(a.objects, key=io._key):
        for y in sorted(a.objects, key=io._key):
            dims = hc.hom(x, y).dims()
            if dims:
                out.line(f"H({x!r}, {y!r}) = " + ", ".join(f"deg {d}: {n}" for d, n in sorted(dims.items())))
                out.info[f"{x!r}->{y!r}"] = {str(d): n for d, n in sorted(dims.items())}
    units = hc.units()
    out.check("H(A) unital", units is not None)


def cmd_bar(args, out: Output) -> None:
    a = _category(args.file)
    B = bar(a, args.weight)
    out.info["words"] = len(B.all_basis(args.weight))
    out.report(f"bar d^2 = 0 weight<={args.weight}", check_bar_d2(B))


def cmd_cobar(args, out: Output) -> None:
    a = _category(args.file)
    U = cobar(bar(a, args.weight), args.weight)
    out.info["generators"] = len(U.C.all_basis(args.weight))
    out.report(f"coB(B(A)) relations weight<={args.weight}", check_catrel(U, 3))


def cmd_compose(args, out: Output) -> None:
    f, g = _functor(args.f), _functor(args.g)
    if not io.categories_equal(f.target, g.source):
        raise InputError("target of F differs from source of G")
    g.source = f.target
    n = args.nmax
    hb, hd = compose(f, g, route="bar"), compose(f, g, route="direct")
    out.check("bar and direct composition agree", functors_equal(hb, hd, n))
    out.report(f"check_funrel(G o F) n<={n}", check_funrel(hb, n))
    if args.out:
        io.dump(hb.tabulate(n), args.out)
        out.info["written"] = args.out


def cmd_rectify(args, out: Output) -> None:
    a = _category(args.file)
    R = rectify(a, args.weight)
    out.report("nu relations", check_funrel(R.nu, min(args.weight, 3)))
    if a.is_dg():
        out.report("eta o nu = id", triangle_identity(a, args.weight))


def cmd_strictify(args, out: Output) -> None:
    a = _category(args.file)
    s = strictify_unital(a, args.weight)
    out.check("ideal stabilized", s.stabilized)
    for name, ok in verify_strict_unitality(s).items():
        out.check(name, ok)
    out.report("gr comparison", gr_comparison(s))


def cmd_solve_n(args, out: Output) -> None:
    a1, a2 = _category(args.a1), _category(args.a2)
    try:
        d = build_tensor_unit(a1, a2)
    except (ValueError, NotDg) as e:
        raise InputError(str(e)) from e
    for name, ok in d.checks.items():
        out.check(name, ok)
    N = solve_bifunctor_N(d, args.arity)
    out.report(f"multifunctor relations weight<={args.arity}", check_multirel(N, args.arity))
    PN = p_after_n(d, N)
    out.check("P o N cohomologically unital", is_cohomologically_unital_multifunctor(PN))
    out.check("restrictions of P o N strict", restriction_matches(d, PN, 0, args.arity)
              and restriction_matches(d, PN, 1, args.arity))
    if args.out:
        io.dump(N, args.out)
        out.info["written"] = args.out


def cmd_counterexample(args, out: Output) -> None:
    b = build_counterexample()
    for name, ok in b.checks(args.nmax).items():
        out.check(name, ok)
    out.report("equalizer obstruction for a surjective cover", equalizer_obstruction(surjective_cover(), b))
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        for name, x in (("A", b.A), ("A_prime", b.A_prime), ("A0", b.A0), ("F1", b.F1), ("F2", b.F2),
                        ("J1", b.J1), ("J2", b.J2)):
            io.dump(x, d / f"{name}.json")
        out.info["written"] = str(d)


def cmd_psi(args, out: Output) -> None:
    a1, a2, a3 = _category(args.a1), _category(args.a2), _category(args.a3)
    f = _functor(args.f)
    try:
        d = build_tensor_unit(a1, a2)
    except (ValueError, NotDg) as e:
        raise InputError(str(e)) from e
    if not io.categories_equal(f.source, d.tensor) or not io.categories_equal(f.target, a3):
        raise InputError("F must be a functor A1 (x) A2 -> A3")
    f.source, f.target = d.tensor, a3
    N = solve_bifunctor_N(d, args.arity)
    rep = psi_roundtrip(d, f, N, weight=args.weight, n_max=args.nmax)
    for name, ok in rep.checks.items():
        out.check(name, ok)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ainfty", description="Finite checks for A-infinity categories.")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for relation checks")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        s = sub.add_parser(name, help=help_)
        s.set_defaults(fn=fn)
        return s

    s = add("check-cat", cmd_check_cat, "check the A-infinity relations")
    s.add_argument("file")
    s.add_argument("--nmax", type=int, default=4)
    s = add("check-fun", cmd_check_fun, "check the functor relations")
    s.add_argument("file")
    s.add_argument("--nmax", type=int, default=4)
    s = add("cohomology", cmd_cohomology, "cohomology dimensions of every hom")
    s.add_argument("file")
    for name, fn, h in (("bar", cmd_bar, "bar construction and d^2 = 0"),
                        ("cobar", cmd_cobar, "cobar of the bar construction"),
                        ("rectify", cmd_rectify, "U^inf(A) with nu and the triangle identity"),
                        ("strictify", cmd_strictify, "strictly unital replacement")):
        s = add(name, fn, h)
        s.add_argument("file")
        s.add_argument("--weight", type=int, default=3)
    s = add("compose", cmd_compose, "compose two functors (G o F)")
    s.add_argument("f")
    s.add_argument("g")
    s.add_argument("--nmax", type=int, default=4)
    s.add_argument("--out")
    s = add("solve-n", cmd_solve_n, "solve for the bifunctor N")
    s.add_argument("a1")
    s.add_argument("a2")
    s.add_argument("--arity", type=int, default=3)
    s.add_argument("--out")
    s = add("counterexample", cmd_counterexample, "the non-equalizer example")
    s.add_argument("--nmax", type=int, default=8)
    s.add_argument("--out")
    s = add("psi", cmd_psi, "F = F o P o I and the witness F' ~ F' o I o P")
    for x in ("a1", "a2", "a3", "f"):
        s.add_argument(x)
    s.add_argument("--arity", type=int, default=3)
    s.add_argument("--weight", type=int, default=1)
    s.add_argument("--nmax", type=int, default=3)
    return p


def main(argv=None, stream=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    out = Output(args.command, stream)
    try:
        args.fn(args, out)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return out.finish()


if __name__ == "__main__":
    sys.exit(main())
