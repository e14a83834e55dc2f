"""Acceptance criteria, one timed test each.  Every test prints a PASS/FAIL line."""

import itertools
import random
import time

from ainfty import check_catrel, cohomology
from ainfty.barcobar import (adjunction_transpose, bar, bar_functor, check_bar_d2, per_weight_cohomology,
                             rectify, triangle_identity)
from ainfty.category import reduce
from ainfty.fun import check_transport, random_prenat
from ainfty.functor import (check_multirel, identity_functor, is_cohomologically_unital_multifunctor)
from ainfty.internal_hom import (build_counterexample, build_tensor_unit, equalizer_obstruction, p_after_n,
                                 psi_roundtrip, rectify_multifunctor, restriction_matches, solve_bifunctor_N,
                                 surjective_cover)
from ainfty.strictify import gr_comparison, strictify_unital, verify_strict_unitality
from ainfty.zoo import PT, RandomDgConfig, cone, dual, dual2, ground, interval, random_ainfty, random_complex, \
    random_dg

from test_barcobar import perturb

RESULTS: list = []
SMALL = RandomDgConfig(max_objects=2, max_layer1=2, max_layer2=1)
WIDE = RandomDgConfig(max_objects=3, max_layer1=2, max_layer2=1)


def record(name, limit, run):
    t = time.perf_counter()
    checks = run()
    dt = time.perf_counter() - t
    ok = all(checks.values()) and dt < limit
    bad = [k for k, v in checks.items() if not v]
    if dt >= limit:
        bad.append(f"time {dt:.1f}s >= {limit}s")
    line = f"{'PASS' if ok else 'FAIL'} {name} ({dt:.2f}s / {limit}s)" + (f" failed: {bad}" if bad else "")
    print(line)
    RESULTS.append(line)
    assert ok, line


def test_c01_relation_checker():
    def run():
        a = dual2()
        caught = True
        for args in itertools.product(a.all_basis(), repeat=3):
            for out in a.all_basis():
                mult = {k: dict(t) for k, t in a.mult.items()}
                mult[3] = {args: {out: 1}}
                rep = check_catrel(a.with_mult(mult, arity_bound=3), 8)
                caught &= not rep.ok and rep.failure is not None
        return {"dual2 n<=8": check_catrel(dual2(), 8).ok, "dual n<=8": check_catrel(dual(), 8).ok,
                "every m3 injection caught": caught}
    record("C1 relation-checker soundness", 1, run)


def test_c02_counterexample():
    def run():
        b = build_counterexample()
        checks = b.checks(8)
        rep = equalizer_obstruction(surjective_cover(), b)
        checks["(F1 o g)^2 != (F2 o g)^2"] = rep.ok and rep.failure["kind"] == "obstruction"
        return checks
    record("C2 counterexample fidelity", 5, run)


def test_c03_bar_cobar():
    def run():
        d2 = mutants = broken = higher = trips = True
        n_broken = n_higher = 0
        for seed in range(20):
            rng = random.Random(seed)
            a, _ = random_ainfty(rng, 4, WIDE)
            n_higher += any(a.mult.get(k) for k in (3, 4))
            d2 &= check_bar_d2(bar(a, 4)).ok
            b = perturb(rng, a)
            if b is not None and not check_catrel(b, 4).ok:
                n_broken += 1
                mutants &= not check_bar_d2(bar(b, 4)).ok
        for seed in range(20):
            rng = random.Random(1000 + seed)
            _, g = random_ainfty(rng, 3, SMALL)
            W = 3
            G = bar_functor(g, W)
            tau = adjunction_transpose(G, "twisting", W)
            F = adjunction_transpose(tau, "cobar", W)
            G2 = adjunction_transpose(F, "cofunctor", W)
            tau2 = adjunction_transpose(adjunction_transpose(tau, "cofunctor", W), "twisting", W)
            trips &= (G2.values == G.values and adjunction_transpose(G2, "cobar", W).table == F.table
                      and tau2.values == tau.values)
        broken = n_broken >= 5
        higher = n_higher >= 5
        return {"d2 = 0 on 20 instances": d2, "d2 != 0 on every mutant": mutants,
                "at least 5 violating mutants": broken, "at least 5 with higher m": higher,
                "adjunction round trips": trips}
    record("C3 bar/cobar correctness", 60, run)


def test_c04_triangle():
    def run():
        ok, n, seed = True, 0, 0
        while n < 10:
            b = random_dg(random.Random(seed), SMALL)
            seed += 1
            if len(b.all_basis()) < 3:
                continue
            ok &= triangle_identity(b, 6).ok
            n += 1
        d = build_tensor_unit(interval(), ground())
        r = rectify_multifunctor(solve_bifunctor_N(d, 3), 3)
        return {"eta o nu = id, weight 6, 10 categories": ok, "rectified multifunctor unique": r.checks["unique"]}
    record("C4 triangle identities", 60, run)


def test_c05_quasi_isomorphism():
    def run():
        checks = {}
        r = reduce(dual())
        dims = per_weight_cohomology(rectify(r, 6).U, (PT,), (PT,), range(1, 7))
        want = {d: n for d, n in cohomology(r).hom(PT, PT).dims().items() if n}
        checks["reduced dual"] = dims[1] == want and all(not dims[w] for w in range(2, 7))
        seeds = [s for s in range(100) if random_complex(random.Random(s), dim=3).mult.get(1)][:3]
        for s in seeds:
            a = random_complex(random.Random(s), dim=3)
            dims = per_weight_cohomology(rectify(a, 6).U, (PT,), (PT,), range(1, 7))
            h = {d: n for d, n in cohomology(a).hom(PT, PT).dims().items() if n}
            checks[f"complex {s}"] = dims[1] == h and all(not dims[w] for w in range(2, 7))
        return checks
    record("C5 quasi-isomorphism per weight", 120, run)


def test_c06_strictification():
    def run():
        checks = {}
        for make in (ground, interval):
            s = strictify_unital(make(), 5)
            checks[f"{make.__name__} stabilized"] = s.stabilized
            for k, v in verify_strict_unitality(s).items():
                checks[f"{make.__name__}: {k}"] = v
            checks[f"{make.__name__}: gr comparison"] = gr_comparison(s).ok
        return checks
    record("C6 strictification", 120, run)


def test_c07_tensor_unit():
    def run():
        checks = {}
        for m1, m2 in [(ground, ground), (interval, ground), (interval, cone)]:
            d = build_tensor_unit(m1(), m2())
            tag = f"{m1.__name__}x{m2.__name__}"
            for k, v in d.checks.items():
                checks[f"{tag}: {k}"] = v
            PN = p_after_n(d, solve_bifunctor_N(d, 3))
            checks[f"{tag}: restrictions"] = restriction_matches(d, PN, 0, 3) and restriction_matches(d, PN, 1, 3)
        return checks
    record("C7 tensor unit", 10, run)


def test_c08_n_solver():
    def run():
        checks = {}
        for m1, m2 in [(ground, ground), (interval, cone), (cone, interval)]:
            d = build_tensor_unit(m1(), m2())
            tag = f"{m1.__name__}x{m2.__name__}"
            N = solve_bifunctor_N(d, 4)
            checks[f"{tag}: relations"] = check_multirel(N, 4).ok
            checks[f"{tag}: P o N unital"] = is_cohomologically_unital_multifunctor(p_after_n(d, N))
        return checks
    record("C8 N-solver", 120, run)


def test_c09_transport():
    def run():
        ok = True
        for seed in range(50):
            rng = random.Random(seed)
            _, g = random_ainfty(rng, 3, SMALL)
            ok &= check_transport(random_prenat(rng, g, g, rng.choice([-1, 0, 1]), 3), 3).ok
        return {"transport on 50 prenats": ok}
    record("C9 Nat = coDer transport", 30, run)


def test_c10_psi():
    def run():
        checks = {}
        for m1, m2 in [(ground, ground), (interval, ground)]:
            d = build_tensor_unit(m1(), m2())
            rep = psi_roundtrip(d, identity_functor(d.tensor), solve_bifunctor_N(d, 3))
            for k, v in rep.checks.items():
                checks[f"{m1.__name__}x{m2.__name__}: {k}"] = v
        return checks
    record("C10 Psi injectivity mechanism", 60, run)
