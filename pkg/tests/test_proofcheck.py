import random

import pytest

from mnjordan import freealg as fa
from mnjordan import proofcheck as pc
from mnjordan.parsing import parse_poly as P
from tests.util import mutate_script, shipped_script


def replay_lines(*lines):
    return pc.replay_text("\n".join(lines))


def test_parse_script_structure():
    script = pc.parse_script(
        "theorem demo\n"
        "budget 2 m\n"
        "# comment\n"
        "step a define law=centralizer map=T0 => (m+n)*T0[x^2] - m*T0[x]*x - n*x*T0[x]\n"
        "goal a\n"
    )
    assert script.name == "demo"
    assert [str(b) for b in script.budget] == ["2", "m"]
    assert [s.label for s in script.steps] == ["a"]
    assert script.goals == ["a"]


def test_parse_errors():
    with pytest.raises(pc.ScriptError):
        pc.parse_script("step a frobnicate => 0")
    with pytest.raises(pc.ScriptError):
        pc.parse_script("step a define law=centralizer map=T0\n")  # no =>
    with pytest.raises(pc.ScriptError):
        pc.parse_script("step a substitute use=new99 gen=x with=y => 0")
    with pytest.raises(pc.ScriptError):
        pc.parse_script("unknown_directive hello")
    with pytest.raises(pc.ScriptError):
        pc.parse_script(
            "step a assume => T[x]\nstep a assume => T[x]\n"
        )  # duplicate label


def test_empty_script_fails_cleanly():
    report = pc.replay(pc.parse_script(""))
    assert report.overall == "FAILED"
    assert not report.records
    assert "goal" in report.error


def test_goal_must_be_a_verified_step():
    with pytest.raises(pc.ScriptError):
        pc.parse_script("goal nowhere\n")


def test_define_and_license_flow():
    report = replay_lines(
        "budget 2 m n m+n",
        "step d define law=derivation map=D => (m+n)*D[x^2] - 2*m*D[x]*x - 2*n*x*D[x]",
        "step lic external d-central-derivation use=d => 0",
        "step leib assume => D[x*y] - x*D[y] - y*D[x]",
        "goal leib",
    )
    # after the license the assumed body normalizes to zero, so three steps pass
    assert report.overall == "VERIFIED-WITH-ASSUMPTIONS"


def test_define_rejects_wrong_instance():
    report = replay_lines(
        "step d define law=derivation map=D => (m+n)*D[x^2] - 2*m*D[x]*x - n*x*D[x]",
        "goal d",
    )
    assert report.overall == "FAILED"
    assert report.failed_step == "d"
    assert "claimed - computed" in report.error


def test_license_requires_the_right_define():
    report = replay_lines(
        "step w define law=centralizer map=T => (m+n)*T[x^2] - m*T[x]*x - n*x*T[x]",
        "step lic external t0-two-sided use=w => 0",
        "goal lic",
    )
    assert report.overall == "FAILED"
    assert "kind" in report.error


def test_cancel_respects_budget_and_exactness():
    base = [
        "budget m",
        "step a assume => 2*m*T[x]*y",
    ]
    ok = replay_lines(*base, "step b cancel use=a factor=m => 2*T[x]*y", "goal b")
    assert ok.overall == "VERIFIED-WITH-ASSUMPTIONS"
    out_of_budget = replay_lines(
        *base, "step b cancel use=a factor=2*m => T[x]*y", "goal b"
    )
    assert out_of_budget.overall == "FAILED"
    assert "closure" in out_of_budget.error
    inexact = replay_lines(
        "budget 2 m", *base[1:], "step b cancel use=a factor=2*m^2 => T[x]*y", "goal b"
    )
    assert inexact.overall == "FAILED"
    assert "not exact" in inexact.error


def test_patternabc_and_squash_shapes():
    lines = [
        "budget 2",
        "step a assume => T[x]*y*x - x*y*T[x]",
        "step b patternabc use=a gen=y a=T[x] b=x c=-T[x] => 0",
    ]
    report = replay_lines(*lines, "goal b")
    # T[x]*y*x + x*y*(-T[x]) matches the shape; emits (T[x]-T[x])*y*x = 0
    assert report.records[-1].verdict == "ok"

    bad = replay_lines(
        "step a assume => T[x]*y*x",
        "step b patternabc use=a gen=y a=T[x] b=x c=-T[x] => 0",
        "goal b",
    )
    assert bad.overall == "FAILED"

    squash = replay_lines(
        "step a assume => T[x]*y*T[x]",
        "step w squash use=a gen=y w=T[x] => T[x]",
        "goal w",
    )
    assert squash.records[-1].verdict == "ok"
    bad_squash = replay_lines(
        "step a assume => T[x]*y*T[y]",
        "step w squash use=a gen=y w=T[x] => T[x]",
        "goal w",
    )
    assert bad_squash.overall == "FAILED"


def test_pattern_witnesses_must_avoid_the_middle_generator():
    report = replay_lines(
        "step a assume => T[y]*y*x + x*y*T[y]",
        "step b patternabc use=a gen=y a=T[y] b=x c=T[y] => 2*T[y]*y*x",
        "goal b",
    )
    assert report.overall == "FAILED"
    assert "must not contain" in report.error


def test_commuting_external_shape():
    dd = fa.normalize(
        fa.commutator(fa.commutator(P("T[x]"), P("x")), P("x")), fa.NO_RULES
    )
    report = replay_lines(
        "step a assume => " + dd.to_text(),
        "step c external commuting use=a map=T => T[x]*x - x*T[x]",
        "goal c",
    )
    assert report.records[-1].verdict == "ok"
    report = replay_lines(
        "step a assume => T[x]*x - x*T[x]",
        "step c external commuting use=a map=T => T[x]*x - x*T[x]",
        "goal c",
    )
    assert report.overall == "FAILED"


def test_combine_soundness_forward_random():
    rng = random.Random(7)
    from mnjordan.parsing import parse_scalar
    from tests.test_freealg import random_poly

    for _ in range(25):
        bodies = [random_poly(rng) for _ in range(3)]
        coeffs = [rng.choice(["1", "-1", "m", "n", "m+n", "2"]) for _ in range(3)]
        contexts = [rng.choice(["", "x", "y", "x*y"]) for _ in range(3)]
        witness_text = []
        total = fa.NCPoly.zero()
        for i, (body, c, u) in enumerate(zip(bodies, coeffs, contexts)):
            left = f"{u}*" if u else ""
            witness_text.append(f"({c})*{left}[a{i}]")
            part = fa.scale(parse_scalar(c), body)
            if u:
                part = fa.mul(P(u), part)
            total = total + part
        # no license steps appear in this synthetic script
        total = fa.normalize(total, fa.NO_RULES)
        lines = [f"step a{i} assume => {b.to_text()}" for i, b in enumerate(bodies)]
        lines.append(
            "step c combine " + " + ".join(witness_text) + " => " + total.to_text()
        )
        lines.append("goal c")
        good = replay_lines(*lines)
        assert good.overall == "VERIFIED-WITH-ASSUMPTIONS", good.error

        # perturb one coefficient of the claimed polynomial: must be rejected
        perturbed = total + P("x*y")
        lines[-2] = (
            "step c combine " + " + ".join(witness_text) + " => " + perturbed.to_text()
        )
        bad = replay_lines(*lines)
        assert bad.overall == "FAILED"
        assert bad.failed_step == "c"


def test_replay_is_deterministic():
    text = shipped_script("theorem_derivation.steps")
    r1 = pc.replay_text(text)
    r2 = pc.replay_text(text)
    assert r1.to_json()["steps"] == r2.to_json()["steps"]
    assert r1.consumed_factors == r2.consumed_factors


def test_shipped_scripts_verify_with_one_assumption():
    for name in ("theorem_centralizer.steps", "theorem_derivation.steps"):
        report = pc.replay_text(shipped_script(name), name)
        assert report.overall == "VERIFIED-WITH-ASSUMPTIONS"
        assert len(report.assumptions) == 1
        assert "commuting" in report.external_theorems


def test_torsion_accounting_stays_inside_the_declared_budget():
    from mnjordan.parsing import parse_scalar

    for name in ("theorem_centralizer.steps", "theorem_derivation.steps"):
        script = pc.parse_script(shipped_script(name), name)
        report = pc.replay(script)
        for factor in report.consumed_factors:
            rem = parse_scalar(factor)
            while not rem.is_unit():
                for b in script.budget:
                    if b.divides(rem):
                        rem = rem.exact_div(b)
                        break
                else:
                    raise AssertionError(f"{factor} escapes the budget of {name}")


def test_final_steps_reach_the_squash_conclusions():
    # the step before the final squash derives F(x)*y*F(x) = 0 in both scripts
    cent = pc.parse_script(shipped_script("theorem_centralizer.steps"))
    deri = pc.parse_script(shipped_script("theorem_derivation.steps"))
    cent_claims = {s.label: s.claimed_text for s in cent.steps}
    deri_claims = {s.label: s.claimed_text for s in deri.steps}
    assert P(cent_claims["fsq_pre"]) == P("F[x]*y*F[x]")
    assert P(deri_claims["fcsq_pre"]) == P("Fc[x]*y*Fc[x]")


def test_corrupting_a_script_fails_at_that_step():
    rng = random.Random(3)
    text = shipped_script("theorem_centralizer.steps")
    mutated, label = mutate_script(text, rng)
    report = pc.replay_text(mutated)
    assert report.overall == "FAILED"
    assert report.failed_step == label
