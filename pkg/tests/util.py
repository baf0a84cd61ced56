"""Shared helpers for the test suite."""

from importlib import resources

from mnjordan import freealg as fa
from mnjordan.parsing import parse_poly
from mnjordan.scalars import ScalarPoly


def shipped_script(name: str) -> str:
    return resources.files("mnjordan").joinpath("proofs", name).read_text()


def mutate_script(text: str, rng, label: str | None = None):
    """Bump one coefficient of one claimed identity; return (text, step label).

    Assume steps are skipped: their claims are unverified by design, so a
    corruption there surfaces at the first step that uses them instead.
    """
    lines = text.splitlines()
    candidates = []
    for i, line in enumerate(lines):
        stripped = line.split("#", 1)[0].strip()
        if not stripped.startswith("step ") or "=>" not in stripped:
            continue
        head, _, claimed = stripped.partition("=>")
        parts = head.split()
        if parts[2] == "assume":
            continue
        poly = parse_poly(claimed.strip())
        if poly.is_zero():
            continue
        if label is not None and parts[1] != label:
            continue
        candidates.append((i, parts[1], head.strip(), poly))
    i, step_label, head, poly = rng.choice(candidates)
    word = rng.choice(sorted(poly.terms, key=fa.word_key))
    bumped = poly + fa.NCPoly.word(word, ScalarPoly.const(1))
    lines[i] = f"{head} => {bumped.to_text()}"
    return "\n".join(lines) + "\n", step_label
