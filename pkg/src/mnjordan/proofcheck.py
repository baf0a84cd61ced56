"""Certificate checker for equational proof scripts.

A proof script is a line-oriented file::

    theorem <name>
    budget <factor> <factor> ...
    step <label> <kind> <args...> => <claimed polynomial>
    goal <label>

Each step cites previously verified identities and claims the polynomial
resulting from one primitive move.  The checker recomputes that move with
the free-algebra engine and accepts the step only if the claimed polynomial
is exactly the computed one (after normalization under the currently
licensed rewrite rules).  No search happens anywhere: the script carries
every witness.

Step kinds
----------

define        claimed is an instance of one of the four defining laws, or a
              map-difference introduction (``diff=F,T,T0`` meaning F = T - T0).
substitute    ``use=L gen=g with=P``: replace g by P in identity L.
polarize      ``use=L gen=g``: even part in g; consumes the factor 2.
mulleft /     ``use=L by=TERM``: multiply by a single term from that side.
mulright
combine       witness list ``c1*u1*[L1 | x -> P]*v1 + c2*[L2] + ...``;
              claimed = normalize of the witness sum.
cancel        ``use=L factor=C``: exact division by C; C must factor over
              the script's torsion budget.
patternabc    ``use=L gen=g a=A b=B c=C``: L must read A*g*B + B*g*C = 0;
              emits (A+C)*g*B = 0 (semiprimeness of the coefficient lemma).
squash        ``use=L gen=g w=W``: L must read W*g*W = 0; emits W = 0
              (semiprimeness).
external      one of the named audited theorems:
              ``commuting use=L map=M``   from [[M(x),x],x] = 0 emit [M(x),x] = 0
              ``t0-two-sided use=L``      license the two-sided collapse rule
              ``d-central-derivation use=L``  license the derivation rules
assume        emits the claimed identity unverified (flagged in the report).
"""

from __future__ import annotations

import json
import re
import time
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

from . import freealg
from .freealg import (
    MAP_KINDS,
    NO_RULES,
    RULE_CENTRAL_DERIVATION,
    RULE_TWO_SIDED,
    NCPoly,
)
from .parsing import ParseError, Witness, parse_monomial, parse_poly, parse_scalar, parse_witnesses
from .scalars import ExactDivisionError, ScalarPoly


class ScriptError(ValueError):
    """Malformed proof script (syntax, unknown kinds, undefined labels)."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class CheckError(ValueError):
    """A step failed verification."""


STEP_KINDS = {
    "define",
    "substitute",
    "polarize",
    "mulleft",
    "mulright",
    "combine",
    "cancel",
    "patternabc",
    "squash",
    "external",
    "assume",
}

EXTERNAL_THEOREMS = {
    "commuting": "an additive map with [[M(x),x],x] = 0 on a 2-torsion free "
                 "semiprime ring is commuting",
    "t0-two-sided": "a weighted Jordan centralizer on an mn(m+n)-torsion free "
                    "semiprime ring is a two-sided centralizer",
    "d-central-derivation": "a weighted Jordan derivation on an mn(m+n)|m-n|-"
                            "torsion free semiprime ring is a derivation into "
                            "the center",
}

LAW_TEMPLATES = {
    "centralizer": "(m+n)*{M}[x^2] - m*{M}[x]*x - n*x*{M}[x]",
    "gen-centralizer": "(m+n)*{M}[x^2] - m*{M}[x]*x - n*x*{M0}[x]",
    "derivation": "(m+n)*{M}[x^2] - 2*m*{M}[x]*x - 2*n*x*{M}[x]",
    "gen-derivation": "(m+n)*{M}[x^2] - 2*m*{M}[x]*x - 2*n*x*{M0}[x]",
}


@dataclass
class Identity:
    label: str
    body: NCPoly
    provenance: str
    hypotheses: FrozenSet[str] = frozenset()


@dataclass
class Step:
    label: str
    kind: str
    args: Dict[str, str]
    claimed_text: str
    line: int


@dataclass
class ProofScript:
    name: str
    budget: List[ScalarPoly]
    steps: List[Step]
    goals: List[str]


@dataclass
class StepRecord:
    step: str
    kind: str
    verdict: str
    factors: List[str] = field(default_factory=list)
    axioms: List[str] = field(default_factory=list)
    assumed: bool = False
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "step": self.step,
            "kind": self.kind,
            "verdict": self.verdict,
            "factors": self.factors,
            "axioms": self.axioms,
        }


@dataclass
class AuditReport:
    script: str
    overall: str
    records: List[StepRecord]
    consumed_factors: List[str]
    external_theorems: List[str]
    assumptions: List[str]
    failed_step: Optional[str] = None
    error: str = ""
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {
            "script": self.script,
            "overall": self.overall,
            "failed_step": self.failed_step,
            "error": self.error,
            "consumed_factors": self.consumed_factors,
            "external_theorems": self.external_theorems,
            "assumptions": self.assumptions,
            "seconds": round(self.seconds, 3),
            "steps": [r.to_json() for r in self.records],
        }

    def to_text(self) -> str:
        lines = [f"script: {self.script}"]
        for r in self.records:
            extra = ""
            if r.factors:
                extra += "  factors: " + ", ".join(r.factors)
            if r.axioms:
                extra += "  axioms: " + ", ".join(r.axioms)
            if r.assumed:
                extra += "  ASSUMED"
            lines.append(f"  {r.verdict:4s}  {r.step:10s} {r.kind}{extra}")
            if r.detail and r.verdict == "FAIL":
                lines.append(f"        {r.detail}")
        lines.append(f"consumed torsion factors: {', '.join(self.consumed_factors) or 'none'}")
        lines.append(f"external theorems: {', '.join(self.external_theorems) or 'none'}")
        lines.append(f"assumptions: {', '.join(self.assumptions) or 'none'}")
        lines.append(f"overall: {self.overall}")
        return "\n".join(lines)


# -- script parsing ---------------------------------------------------------------

_KEY_RE = re.compile(r"(\w[\w-]*)=")


def _split_args(rest: str, line: int) -> Dict[str, str]:
    """Split ``key=value key=value`` where values run to the next key."""
    out: Dict[str, str] = {}
    matches = list(_KEY_RE.finditer(rest))
    head = rest[: matches[0].start()].strip() if matches else rest.strip()
    if head:
        out[""] = head
    for i, m in enumerate(matches):
        end = matches[i + 1].start() if i + 1 < len(matches) else len(rest)
        out[m.group(1)] = rest[m.end() : end].strip()
    return out


def parse_script(text: str, name: str = "<script>") -> ProofScript:
    theorem = name
    budget: List[ScalarPoly] = []
    steps: List[Step] = []
    goals: List[str] = []
    labels = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "theorem":
            theorem = rest or theorem
        elif head == "budget":
            try:
                budget = [parse_scalar(tok) for tok in rest.split()]
            except ParseError as exc:
                raise ScriptError(f"bad budget entry: {exc}", line_no) from None
        elif head == "goal":
            goals.append(rest)
        elif head == "step":
            body, sep, claimed = rest.partition("=>")
            if not sep:
                raise ScriptError("step has no '=>' claimed polynomial", line_no)
            parts = body.strip().split(None, 2)
            if len(parts) < 2:
                raise ScriptError("step needs a label and a kind", line_no)
            label, kind = parts[0], parts[1]
            argtext = parts[2] if len(parts) > 2 else ""
            if kind not in STEP_KINDS:
                raise ScriptError(f"unknown step kind {kind!r}", line_no)
            if label in labels:
                raise ScriptError(f"duplicate label {label!r}", line_no)
            labels.add(label)
            steps.append(Step(label, kind, _split_args(argtext, line_no), claimed.strip(), line_no))
        else:
            raise ScriptError(f"unknown directive {head!r}", line_no)
    script = ProofScript(theorem, budget, steps, goals)
    _check_references(script)
    return script


def _references(step: Step) -> List[str]:
    refs = []
    if "use" in step.args:
        refs.append(step.args["use"])
    if step.kind == "combine":
        for w in parse_witnesses(step.args.get("", "")):
            refs.append(w.label)
    return refs


def _check_references(script: ProofScript) -> None:
    seen = set()
    for step in script.steps:
        try:
            refs = _references(step)
        except ParseError as exc:
            raise ScriptError(f"bad combine witnesses: {exc}", step.line) from None
        for ref in refs:
            if ref not in seen:
                raise ScriptError(
                    f"step {step.label!r} cites {ref!r} before it is defined", step.line
                )
        seen.add(step.label)
    for goal in script.goals:
        if goal not in seen:
            raise ScriptError(f"goal {goal!r} is not a step label")


# -- the checker -------------------------------------------------------------------


class _Env:
    def __init__(self, budget: List[ScalarPoly]):
        self.identities: Dict[str, Identity] = {}
        self.rules: FrozenSet[str] = NO_RULES
        self.budget = budget

    def body(self, label: str) -> NCPoly:
        return freealg.normalize(self.identities[label].body, self.rules)


def _difference_text(claimed: NCPoly, computed: NCPoly) -> str:
    diff = claimed - computed
    terms = []
    for w, c in diff.sorted_terms():
        terms.append(f"({c}) * {NCPoly.word(w).to_text()}")
    return "claimed - computed = " + "  +  ".join(terms)


def _require_match(claimed: NCPoly, computed: NCPoly, what: str) -> None:
    if claimed != computed:
        raise CheckError(f"{what}: {_difference_text(claimed, computed)}")


def _budget_factor_check(factor: ScalarPoly, budget: List[ScalarPoly]) -> None:
    """factor must be a unit times a product of budget members."""
    if not budget:
        raise CheckError("cancel used but the script declares no torsion budget")
    rem = factor
    progress = True
    while not rem.is_unit():
        if not progress:
            raise CheckError(
                f"factor {factor} does not lie in the multiplicative closure "
                f"of the budget {{{', '.join(str(b) for b in budget)}}}; stuck at {rem}"
            )
        progress = False
        for b in budget:
            try:
                rem = rem.exact_div(b)
                progress = True
                break
            except ExactDivisionError:
                continue


def check_step(env: _Env, step: Step) -> Tuple[Identity, StepRecord]:
    try:
        claimed = freealg.normalize(parse_poly(step.claimed_text), env.rules)
    except (ParseError, freealg.NormalizeError) as exc:
        raise CheckError(f"bad claimed polynomial: {exc}") from None
    record = StepRecord(step.label, step.kind, "ok")
    hypotheses: set = set()
    kind = step.kind
    args = step.args

    def cited() -> NCPoly:
        label = args.get("use")
        if label is None:
            raise CheckError("step needs use=<label>")
        return env.body(label)

    if kind == "define":
        computed, provenance = _define_body(env, args)
        _require_match(claimed, computed, "definition instance mismatch")
        return Identity(step.label, claimed, provenance), record

    if kind == "substitute":
        g = args.get("gen", "")
        with_text = args.get("with")
        if with_text is None:
            raise CheckError("substitute needs with=<polynomial>")
        repl = parse_poly(with_text)
        computed = freealg.normalize(freealg.substitute(cited(), g, repl), env.rules)
        _require_match(claimed, computed, "substitution result mismatch")

    elif kind == "polarize":
        g = args.get("gen", "")
        computed = freealg.normalize(freealg.polarize_even(cited(), g), env.rules)
        _require_match(claimed, computed, "even-part mismatch")
        # keeping only the doubled even part silently halves, which needs
        # 2-torsion freeness
        record.factors.append("2")
        hypotheses.add("factor:2")
        _budget_factor_check(ScalarPoly.const(2), env.budget)

    elif kind in ("mulleft", "mulright"):
        term = args.get("by")
        if term is None:
            raise CheckError(f"{kind} needs by=<term>")
        coeff, word = parse_monomial(term)
        factor = NCPoly.word(word, coeff)
        base = cited()
        product = freealg.mul(factor, base) if kind == "mulleft" else freealg.mul(base, factor)
        computed = freealg.normalize(product, env.rules)
        _require_match(claimed, computed, "product mismatch")

    elif kind == "combine":
        try:
            witnesses = parse_witnesses(args.get("", ""))
        except ParseError as exc:
            raise CheckError(f"bad witness list: {exc}") from None
        total = NCPoly.zero()
        for w in witnesses:
            part = _witness_value(env, w)
            total = total + part
        computed = freealg.normalize(total, env.rules)
        _require_match(claimed, computed, "combination mismatch")

    elif kind == "cancel":
        factor_text = args.get("factor")
        if factor_text is None:
            raise CheckError("cancel needs factor=<scalar>")
        factor = parse_scalar(factor_text)
        _budget_factor_check(factor, env.budget)
        try:
            computed = freealg.exact_divide(cited(), factor)
        except ExactDivisionError as exc:
            raise CheckError(f"torsion cancellation is not exact: {exc}") from None
        computed = freealg.normalize(computed, env.rules)
        _require_match(claimed, computed, "quotient mismatch")
        record.factors.append(str(factor))
        hypotheses.add(f"factor:{factor}")

    elif kind == "patternabc":
        g = args.get("gen", "")
        a = freealg.normalize(parse_poly(args.get("a", "")), env.rules)
        b = freealg.normalize(parse_poly(args.get("b", "")), env.rules)
        c = freealg.normalize(parse_poly(args.get("c", "")), env.rules)
        for name, p in (("a", a), ("b", b), ("c", c)):
            if any(freealg.word_gen_degree(w, g) for w in p.terms):
                raise CheckError(f"pattern witness {name} must not contain {g}")
        gpoly = freealg.gen(g)
        shape = freealg.normalize(a * gpoly * b + b * gpoly * c, env.rules)
        _require_match(cited(), shape, "cited identity is not of the a*g*b + b*g*c shape")
        computed = freealg.normalize((a + c) * gpoly * b, env.rules)
        _require_match(claimed, computed, "emitted identity mismatch")
        record.axioms.append("pattern-lemma[semiprime]")
        hypotheses.add("semiprime")

    elif kind == "squash":
        g = args.get("gen", "")
        wpoly = freealg.normalize(parse_poly(args.get("w", "")), env.rules)
        if any(freealg.word_gen_degree(w, g) for w in wpoly.terms):
            raise CheckError(f"squash witness must not contain {g}")
        gpoly = freealg.gen(g)
        shape = freealg.normalize(wpoly * gpoly * wpoly, env.rules)
        _require_match(cited(), shape, "cited identity is not of the W*g*W shape")
        _require_match(claimed, wpoly, "emitted identity mismatch")
        record.axioms.append("semiprime-squash")
        hypotheses.add("semiprime")

    elif kind == "external":
        name = args.get("", "")
        if name not in EXTERNAL_THEOREMS:
            raise CheckError(f"unknown external theorem {name!r}")
        record.axioms.append(name)
        hypotheses.add(f"external:{name}")
        if name == "commuting":
            sym = args.get("map", "")
            if sym not in MAP_KINDS:
                raise CheckError(f"commuting needs map=<symbol>, got {sym!r}")
            mx = freealg.app(sym, freealg.gen("x"))
            x = freealg.gen("x")
            double = freealg.commutator(freealg.commutator(mx, x), x)
            _require_match(
                cited(),
                freealg.normalize(double, env.rules),
                "cited identity is not the double commutator [[M(x),x],x]",
            )
            computed = freealg.normalize(freealg.commutator(mx, x), env.rules)
            _require_match(claimed, computed, "emitted identity mismatch")
        elif name == "t0-two-sided":
            _require_license_input(env, args, "centralizer", "two-sided-centralizer")
            if not claimed.is_zero():
                raise CheckError("license steps claim 0")
            env.rules = env.rules | {RULE_TWO_SIDED}
        else:  # d-central-derivation
            _require_license_input(env, args, "derivation", "central-derivation")
            if not claimed.is_zero():
                raise CheckError("license steps claim 0")
            env.rules = env.rules | {RULE_CENTRAL_DERIVATION}

    elif kind == "assume":
        record.assumed = True
        record.axioms.append("assumption")
        hypotheses.add("assumption")

    else:  # pragma: no cover - kinds are validated at parse time
        raise CheckError(f"unhandled kind {kind}")

    return Identity(step.label, claimed, f"step:{kind}", frozenset(hypotheses)), record


def _define_body(env: _Env, args: Dict[str, str]) -> Tuple[NCPoly, str]:
    if "diff" in args:
        names = [s.strip() for s in args["diff"].split(",")]
        if len(names) != 3 or any(s not in MAP_KINDS for s in names):
            raise CheckError(f"diff needs three map symbols, got {args['diff']!r}")
        f, t, t0 = names
        body = parse_poly(f"{f}[x] - {t}[x] + {t0}[x]")
        return freealg.normalize(body, env.rules), f"define:diff:{f}={t}-{t0}"
    law = args.get("law")
    if law not in LAW_TEMPLATES:
        raise CheckError(f"unknown law {law!r}")
    if law.startswith("gen-"):
        names = [s.strip() for s in args.get("maps", "").split(",")]
        if len(names) != 2:
            raise CheckError("generalized laws need maps=<M>,<M0>")
        main, base = names
    else:
        main = base = args.get("map", "").strip()
    if main not in MAP_KINDS or base not in MAP_KINDS:
        raise CheckError(f"unknown map symbol in {args!r}")
    text = LAW_TEMPLATES[law].format(M=main, M0=base)
    return freealg.normalize(parse_poly(text), env.rules), f"define:{law}:{main},{base}"


def _require_license_input(env: _Env, args: Dict[str, str], law: str, kind: str) -> None:
    label = args.get("use")
    if label is None:
        raise CheckError("license steps cite the defining law with use=<label>")
    ident = env.identities[label]
    if not ident.provenance.startswith(f"define:{law}:"):
        raise CheckError(
            f"cited identity {label!r} is not a define of the {law} law "
            f"(provenance {ident.provenance})"
        )
    sym = ident.provenance.split(":")[-1].split(",")[0]
    if MAP_KINDS.get(sym) != kind:
        raise CheckError(f"map {sym!r} does not carry the {kind} kind")


def _witness_value(env: _Env, w: Witness) -> NCPoly:
    if w.label not in env.identities:
        raise CheckError(f"witness cites unknown identity {w.label!r}")
    body = env.body(w.label)
    if w.subst:
        body = freealg.substitute_multi(body, w.subst)
    if w.left is not None:
        body = freealg.mul(NCPoly.word(w.left), body)
    if w.right is not None:
        body = freealg.mul(body, NCPoly.word(w.right))
    return freealg.scale(w.coeff, body)


def replay(script: ProofScript) -> AuditReport:
    t0 = time.monotonic()
    env = _Env(script.budget)
    records: List[StepRecord] = []
    consumed: List[str] = []
    externals: List[str] = []
    assumptions: List[str] = []
    overall = "VERIFIED"
    failed = None
    error = ""
    for step in script.steps:
        try:
            ident, record = check_step(env, step)
        except (
            CheckError,
            ParseError,
            ExactDivisionError,
            freealg.NormalizeError,
            freealg.NestingError,
        ) as exc:
            record = StepRecord(step.label, step.kind, "FAIL", detail=str(exc))
            records.append(record)
            overall = "FAILED"
            failed = step.label
            error = str(exc)
            break
        env.identities[step.label] = ident
        records.append(record)
        consumed.extend(record.factors)
        for ax in record.axioms:
            if ax in EXTERNAL_THEOREMS and ax not in externals:
                externals.append(ax)
        if record.assumed:
            assumptions.append(step.label)
    if overall != "FAILED":
        missing = [g for g in script.goals if g not in env.identities]
        if missing or not script.goals:
            overall = "FAILED"
            error = (
                f"goal {missing[0]!r} was never verified" if missing else "script declares no goal"
            )
        elif assumptions:
            overall = "VERIFIED-WITH-ASSUMPTIONS"
    return AuditReport(
        script=script.name,
        overall=overall,
        records=records,
        consumed_factors=consumed,
        external_theorems=externals,
        assumptions=assumptions,
        failed_step=failed,
        error=error,
        seconds=time.monotonic() - t0,
    )


def replay_text(text: str, name: str = "<script>") -> AuditReport:
    return replay(parse_script(text, name))


def report_to_json_text(report: AuditReport) -> str:
    return json.dumps(report.to_json(), indent=2)
