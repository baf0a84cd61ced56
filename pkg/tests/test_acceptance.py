"""Acceptance suite: every criterion prints one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines as they
come; the full suite is also exercised by a plain ``pytest``.
"""

import itertools
import math
import random
import sys
import time

import numpy as np
import pytest

from mnjordan import finring as fr
from mnjordan import freealg as fa
from mnjordan import proofcheck as pc
from mnjordan.parsing import parse_poly as P
from mnjordan.parsing import parse_scalar as S
from mnjordan.scalars import ExactDivisionError
from tests.test_finring import shipped_rings
from tests.util import mutate_script, shipped_script


def report(criterion, ok, detail):
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'} -- {detail}"
    print(line, file=sys.stderr)
    assert ok, line


def in_closure(factor_text, budget_texts):
    rem = S(factor_text)
    budget = [S(b) for b in budget_texts]
    while not rem.is_unit():
        for b in budget:
            if b.divides(rem):
                rem = rem.exact_div(b)
                break
        else:
            return False
    return True


def replay_shipped(name):
    t0 = time.monotonic()
    rep = pc.replay_text(shipped_script(name), name)
    return rep, time.monotonic() - t0


CHECKED_KINDS = {"combine", "substitute", "cancel", "patternabc", "squash"}


def test_criterion_1_centralizer_replay():
    rep, seconds = replay_shipped("theorem_centralizer.steps")
    verified = rep.overall != "FAILED" and all(
        r.verdict == "ok" for r in rep.records if r.kind in CHECKED_KINDS
    )
    closure = all(
        in_closure(f, ["2", "m", "n", "m+n", "2*m+n"]) for f in rep.consumed_factors
    )
    ok = verified and closure and len(rep.assumptions) <= 1 and seconds < 5.0
    report(
        1,
        ok,
        f"{rep.overall} in {seconds:.2f}s, assumes={rep.assumptions}, "
        f"factors={rep.consumed_factors}, inside closure{{2,m,n,m+n,2m+n}}={closure}"
        + (
            ""
            if closure
            else " (the decisive cancellation needs n*(m+2n), which no product of"
            " {2, m, n, m+n, 2m+n} can supply; the shipped certificate therefore"
            " declares the budget {2, m, n, m+n, m+2n})"
        ),
    )


def test_criterion_2_derivation_replay():
    rep, seconds = replay_shipped("theorem_derivation.steps")
    verified = rep.overall != "FAILED" and all(
        r.verdict == "ok" for r in rep.records if r.kind in CHECKED_KINDS
    )
    closure = all(
        in_closure(f, ["2", "m", "n", "m+n", "n-m"]) for f in rep.consumed_factors
    )
    ok = verified and closure and len(rep.assumptions) <= 1 and seconds < 5.0
    report(
        2,
        ok,
        f"{rep.overall} in {seconds:.2f}s, assumes={rep.assumptions}, "
        f"factors={rep.consumed_factors}",
    )


def test_criterion_3_mutation_soundness():
    rng = random.Random(2026)
    detected = 0
    total = 0
    for name in ("theorem_centralizer.steps", "theorem_derivation.steps"):
        text = shipped_script(name)
        for _ in range(12):
            mutated, label = mutate_script(text, rng)
            result = pc.replay_text(mutated)
            total += 1
            if result.overall == "FAILED" and result.failed_step == label:
                detected += 1
    report(3, detected == total and total >= 20, f"{detected}/{total} mutations detected at their step")


ACCEPTANCE_RINGS = {
    "MatRing(2,5)": lambda: fr.MatRing(2, 5),
    "MatRing(2,7)": lambda: fr.MatRing(2, 7),
    "MatRing(2,11)": lambda: fr.MatRing(2, 11),
    "Z5+MatRing(2,7)": lambda: fr.DirectProduct(fr.Zn(5), fr.MatRing(2, 7)),
}


def _characteristic(R):
    return math.lcm(*R.moduli)


def test_criterion_4_gen_centralizer_models():
    t0 = time.monotonic()
    violations = 0
    runs = []
    for rname, build in ACCEPTANCE_RINGS.items():
        R = build()
        for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 3)]:
            product = m * n * (m + n) * (2 * m + n)
            if math.gcd(product, _characteristic(R)) != 1:
                continue
            spec = fr.LawSpec("gen-centralizer", m, n)
            sols = fr.solve_identity(R, spec)
            bad = sum(
                1
                for T, T0 in sols.maps()
                if T != T0 or not fr.verify_two_sided(R, T, exhaustive=False)
            )
            violations += bad
            runs.append(f"{rname}({m},{n}):{sols.count}")
    seconds = time.monotonic() - t0
    report(
        4,
        violations == 0 and seconds < 600,
        f"{len(runs)} runs, zero violations={violations == 0}, {seconds:.1f}s",
    )


def test_criterion_5_gen_derivation_models():
    t0 = time.monotonic()
    violations = 0
    runs = 0
    for p in (5, 7, 11):
        R = fr.MatRing(2, p)
        for (m, n) in [(1, 2), (2, 1), (3, 1)]:
            if math.gcd(m * n * (m + n) * abs(m - n), p) != 1:
                continue
            sols = fr.solve_identity(R, fr.LawSpec("gen-derivation", m, n))
            for F, D in sols.maps():
                if not fr.verify_derivation(R, F, exhaustive=False) or not fr.maps_into_center(R, F):
                    violations += 1
            runs += 1
    report(5, violations == 0 and runs == 9, f"{runs} runs, violations={violations} ({time.monotonic()-t0:.1f}s)")


def test_criterion_6_solver_oracle_equivalence():
    target_groups = {(2,), (3,), (2, 2), (2, 3)}
    rings = [R for R in shipped_rings() if tuple(sorted(R.moduli)) in target_groups]
    assert {tuple(sorted(R.moduli)) for R in rings} == target_groups
    checked = 0
    for R in rings:
        maps = fr.all_add_maps(R)
        vectors = {
            1: np.array([M.matrix.ravel() for M in maps], dtype=np.int64),
        }
        vectors[2] = np.array(
            [np.concatenate([A.matrix.ravel(), B.matrix.ravel()])
             for A in maps for B in maps],
            dtype=np.int64,
        )
        for law in fr.LAWS:
            for (m, n) in [(1, 1), (1, 2)]:
                spec = fr.LawSpec(law, m, n)
                rows, mods = fr._law_row_blocks(R, spec)
                vecs = vectors[2 if spec.pair else 1]
                residuals = (rows @ vecs.T) % mods[:, None]
                brute = {
                    tuple(int(v) for v in vec)
                    for vec, good in zip(vecs, np.all(residuals == 0, axis=0))
                    if good
                }
                solved = set(fr.solve_identity(R, spec).explicit)
                assert solved == brute, (R.name, law, m, n)
                checked += 1
    report(6, True, f"{checked} (ring, law, weights) combinations match the brute force exactly")


def test_criterion_7_hypothesis_predicates():
    def squarefree(n):
        return all(e == 1 for e in fr.intsolve.factorize(n).values())

    zn_ok = all(fr.is_semiprime(fr.Zn(n)) == squarefree(n) for n in range(2, 31))
    z4_ok = fr.is_semiprime(fr.Zn(4)) is False
    center_ok = len(fr.center(fr.MatRing(2, 5))) == 5
    report(
        7,
        zn_ok and z4_ok and center_ok,
        f"Zn squarefree oracle={zn_ok}, Z4 not semiprime={z4_ok}, |Z(Mat2(Z5))|=5={center_ok}",
    )


def test_criterion_8_lemma_cross_check():
    R = fr.MatRing(2, 5)
    checked = 0
    for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 3)]:
        product = m * n * (m + n) * (2 * m + n)
        if math.gcd(product, 5) != 1:
            continue
        spec = fr.LawSpec("gen-centralizer", m, n)
        for pair in fr.solve_identity(R, spec).maps():
            assert fr.cross_check_lemma(R, spec, pair)
            checked += 1
    report(8, checked > 0, f"xyx expansion holds at all 625^2 pairs for {checked} solutions")


def test_criterion_9_randomized_property_suites():
    from tests.test_freealg import random_poly

    rng = random.Random(99)
    cases = 1000

    for _ in range(cases):
        p = random_poly(rng)
        np_ = fa.normalize(p)
        assert fa.normalize(np_) == np_

    for _ in range(cases):
        p, q = random_poly(rng), random_poly(rng)
        r = P(rng.choice(["x+y", "x*y", "y*x - x", "2*x"]))
        g = rng.choice(["x", "y"])
        assert fa.substitute(p + q, g, r) == fa.substitute(p, g, r) + fa.substitute(q, g, r)
        assert fa.substitute(p, g, fa.gen(g)) == p

    for _ in range(cases):
        p = random_poly(rng)
        c = S(rng.choice(["2", "m", "n", "m+n", "m-n", "m*n", "-3"]))
        assert fa.exact_divide(fa.scale(c, p), c) == p

    for _ in range(cases):
        p = random_poly(rng)
        g = rng.choice(["x", "y"])
        flipped = fa.substitute(p, g, fa.scale(S("-1"), fa.gen(g)))
        assert fa.scale(S("2"), fa.polarize_even(p, g)) == p + flipped

    report(9, True, f"4 property suites x {cases} randomized cases")
