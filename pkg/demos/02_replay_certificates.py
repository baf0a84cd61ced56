"""Replay the two shipped theorem certificates and print their audits.

Each script derives, step by verified step, that a generalized weighted
Jordan centralizer is a two-sided centralizer (first script) and that a
generalized weighted Jordan derivation is a derivation into the center
(second script).  The audit lists each torsion factor consumed by a
cancellation, the external theorems invoked as audited axioms, and the one
step per script that is assumed rather than derived.
"""

from importlib import resources

from mnjordan import proofcheck

for name in ("theorem_centralizer.steps", "theorem_derivation.steps"):
    text = resources.files("mnjordan").joinpath("proofs", name).read_text()
    report = proofcheck.replay_text(text, name)
    print("=" * 72)
    print(report.to_text())
    print()
