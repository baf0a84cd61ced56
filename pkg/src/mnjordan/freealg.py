"""Noncommutative polynomials over ring generators and opaque additive maps.

A monomial is an ordered word of atoms.  An atom is either a generator
(``x`` or ``y``) or the application of one of a fixed set of additive map
symbols to a word, e.g. ``T[x*y*x]``.  Polynomials map monomials to exact
Z[m, n] coefficients (see :mod:`mnjordan.scalars`); there is deliberately no
unit monomial because the rings under study need not be unital.

Map symbols carry a rewriting kind:

* ``T``, ``F``, ``Fc`` are opaque -- nothing is known beyond additivity;
* ``T0`` is a two-sided centralizer -- a monomial ``u*T0[w]*v`` collapses to
  ``T0[u*w*v]``;
* ``D`` is a derivation into the center -- ``D[w]`` expands by the Leibniz
  rule and ``D[...]`` atoms commute past everything.

:func:`normalize` applies these rules to a fixpoint and is the canonical
form behind polynomial equality tests.  The centralizer/derivation rules can
be switched off individually, which the proof checker uses to model the fact
that they are licensed by external theorems rather than free.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Mapping, Tuple, Union

from .scalars import ONE, ExactDivisionError, ScalarPoly

GENERATORS = ("x", "y")

# kind per map symbol; fixed alphabet for the whole package
MAP_KINDS: Dict[str, str] = {
    "T": "opaque",
    "T0": "two-sided-centralizer",
    "D": "central-derivation",
    "F": "opaque",
    "Fc": "opaque",
}

RULE_TWO_SIDED = "t0-two-sided"
RULE_CENTRAL_DERIVATION = "d-central-derivation"
ALL_RULES: FrozenSet[str] = frozenset({RULE_TWO_SIDED, RULE_CENTRAL_DERIVATION})
NO_RULES: FrozenSet[str] = frozenset()


class NormalizeError(ValueError):
    """A rewrite rule was applied to a nested shape it is not defined for."""


class NestingError(ValueError):
    """A substitution would nest a generator inside a map applied to it."""


@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class App:
    sym: str
    arg: "Monomial"


Atom = Union[Gen, App]
Monomial = Tuple[Atom, ...]


def atom_key(a: Atom):
    if isinstance(a, Gen):
        return (0, a.name)
    return (1, a.sym, word_key(a.arg))


def word_key(w: Monomial):
    return (len(w), tuple(atom_key(a) for a in w))


class NCPoly:
    """Finite map from monomials to nonzero ScalarPoly coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Dict[Monomial, ScalarPoly] | None = None):
        clean: Dict[Monomial, ScalarPoly] = {}
        if terms:
            for w, c in terms.items():
                if c:
                    clean[w] = c
        self.terms = clean
        self._hash = None

    @staticmethod
    def zero() -> "NCPoly":
        return NCPoly()

    @staticmethod
    def word(w: Iterable[Atom], coeff: ScalarPoly = ONE) -> "NCPoly":
        return NCPoly({tuple(w): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, NCPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(
                self, "_hash", hash(frozenset((w, c) for w, c in self.terms.items()))
            )
        return self._hash  # type: ignore[return-value]

    def __add__(self, other: "NCPoly") -> "NCPoly":
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        res = NCPoly.__new__(NCPoly)
        res.terms = out
        res._hash = None
        return res

    def __neg__(self) -> "NCPoly":
        res = NCPoly.__new__(NCPoly)
        res.terms = {w: -c for w, c in self.terms.items()}
        res._hash = None
        return res

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def __mul__(self, other: "NCPoly | ScalarPoly | int") -> "NCPoly":
        if isinstance(other, int):
            other = ScalarPoly.const(other)
        if isinstance(other, ScalarPoly):
            return scale(other, self)
        return mul(self, other)

    def __rmul__(self, other: "ScalarPoly | int") -> "NCPoly":
        if isinstance(other, int):
            other = ScalarPoly.const(other)
        return scale(other, self)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: word_key(t[0]))

    def to_text(self) -> str:
        from .parsing import poly_to_text

        return poly_to_text(self)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"NCPoly({self.to_text()})"


# -- constructors -------------------------------------------------------------


def gen(name: str) -> NCPoly:
    if name not in GENERATORS:
        raise ValueError(f"unknown generator {name!r}")
    return NCPoly.word((Gen(name),))


def app(sym: str, arg: NCPoly) -> NCPoly:
    """Apply a map symbol to a polynomial, expanding by additivity."""
    if sym not in MAP_KINDS:
        raise ValueError(f"unknown map symbol {sym!r}")
    out: Dict[Monomial, ScalarPoly] = {}
    for w, c in arg.terms.items():
        key = (App(sym, w),)
        s = out.get(key)
        s = c if s is None else s + c
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return NCPoly(out)


# -- ring operations -----------------------------------------------------------


def add(p: NCPoly, q: NCPoly) -> NCPoly:
    return p + q


def negate(p: NCPoly) -> NCPoly:
    return -p


def scale(c: ScalarPoly, p: NCPoly) -> NCPoly:
    if not c:
        return NCPoly.zero()
    return NCPoly({w: c * k for w, k in p.terms.items()})


def mul(p: NCPoly, q: NCPoly) -> NCPoly:
    out: Dict[Monomial, ScalarPoly] = {}
    for w1, c1 in p.terms.items():
        for w2, c2 in q.terms.items():
            w = w1 + w2
            c = c1 * c2
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return NCPoly(out)


def commutator(p: NCPoly, q: NCPoly) -> NCPoly:
    return mul(p, q) - mul(q, p)


# -- degree bookkeeping --------------------------------------------------------


def atom_gen_degree(a: Atom, g: str) -> int:
    if isinstance(a, Gen):
        return 1 if a.name == g else 0
    return word_gen_degree(a.arg, g)


def word_gen_degree(w: Monomial, g: str) -> int:
    return sum(atom_gen_degree(a, g) for a in w)


# -- substitution ---------------------------------------------------------------


def _check_no_nesting(r: NCPoly, g: str) -> None:
    def scan_word(w: Monomial) -> None:
        for a in w:
            if isinstance(a, App):
                if word_gen_degree(a.arg, g) > 0:
                    raise NestingError(
                        f"replacement contains {a.sym}[...] with {g} inside its argument"
                    )
                scan_word(a.arg)

    for w in r.terms:
        scan_word(w)


def substitute_multi(p: NCPoly, mapping: Mapping[str, NCPoly]) -> NCPoly:
    """Simultaneously replace generators by polynomials, everywhere.

    Occurrences inside map arguments are replaced too; maps distribute over
    the resulting sums by additivity and scalars pull out by homogeneity.
    """
    for g, r in mapping.items():
        if g not in GENERATORS:
            raise ValueError(f"unknown generator {g!r}")
        _check_no_nesting(r, g)

    def sub_word(w: Monomial) -> NCPoly:
        poly: NCPoly | None = None
        for a in w:
            if isinstance(a, Gen):
                ap = mapping.get(a.name)
                if ap is None:
                    ap = NCPoly.word((a,))
            else:
                ap = app(a.sym, sub_word(a.arg))
            poly = ap if poly is None else mul(poly, ap)
        assert poly is not None
        return poly

    out = NCPoly.zero()
    for w, c in p.terms.items():
        out = out + scale(c, sub_word(w))
    return out


def substitute(p: NCPoly, g: str, r: NCPoly) -> NCPoly:
    return substitute_multi(p, {g: r})


# -- parity filter ---------------------------------------------------------------


def polarize_even(p: NCPoly, g: str) -> NCPoly:
    """Half of p + p[g -> -g]: keep the monomials of even total g-degree."""
    return NCPoly(
        {w: c for w, c in p.terms.items() if word_gen_degree(w, g) % 2 == 0}
    )


# -- normalization ----------------------------------------------------------------

_norm_cache: Dict[Tuple[Monomial, FrozenSet[str]], NCPoly] = {}


def normalize(p: NCPoly, rules: FrozenSet[str] = ALL_RULES) -> NCPoly:
    """Canonical form under the rewrite rules enabled in ``rules``.

    Rules: two-sided collapse for T0 atoms, Leibniz expansion plus
    centrality for D atoms.  Opaque atoms are untouched apart from
    recursive normalization of their arguments.
    """
    out = NCPoly.zero()
    for w, c in p.terms.items():
        out = out + scale(c, _norm_word(w, rules))
    return out


def _norm_word(w: Monomial, rules: FrozenSet[str]) -> NCPoly:
    cached = _norm_cache.get((w, rules))
    if cached is not None:
        return cached
    poly: NCPoly | None = None
    for a in w:
        ap = _norm_atom(a, rules)
        poly = ap if poly is None else mul(poly, ap)
    assert poly is not None
    out = NCPoly.zero()
    for w2, c in poly.terms.items():
        out = out + scale(c, _post_word(w2, rules))
    _norm_cache[(w, rules)] = out
    return out


def _norm_atom(a: Atom, rules: FrozenSet[str]) -> NCPoly:
    if isinstance(a, Gen):
        return NCPoly.word((a,))
    argpoly = _norm_word(a.arg, rules)
    kind = MAP_KINDS[a.sym]
    out = NCPoly.zero()
    for w, c in argpoly.terms.items():
        if kind == "central-derivation" and RULE_CENTRAL_DERIVATION in rules:
            if any(isinstance(b, App) for b in w):
                raise NormalizeError(
                    f"no rule for {a.sym} applied to a word containing a map atom: "
                    f"{a.sym}[{NCPoly.word(w).to_text()}]"
                )
            if len(w) > 1:
                for i in range(len(w)):
                    piece = w[:i] + (App(a.sym, (w[i],)),) + w[i + 1 :]
                    out = out + scale(c, _post_word(piece, rules))
                continue
        out = out + NCPoly.word((App(a.sym, w),), c)
    return out


def _is_central(a: Atom) -> bool:
    return isinstance(a, App) and MAP_KINDS[a.sym] == "central-derivation"


def _post_word(w: Monomial, rules: FrozenSet[str]) -> NCPoly:
    if RULE_TWO_SIDED in rules and len(w) > 1:
        for i, a in enumerate(w):
            if isinstance(a, App) and MAP_KINDS[a.sym] == "two-sided-centralizer":
                collapsed = App(a.sym, w[:i] + a.arg + w[i + 1 :])
                return _norm_word((collapsed,), rules)
    if RULE_CENTRAL_DERIVATION in rules and len(w) > 1:
        central = [a for a in w if _is_central(a)]
        if central:
            rest = [a for a in w if not _is_central(a)]
            # A derivation into the center kills commutators:
            # D(a)*[a,b] = D(a*[a,b]) = D([a, a*b]) = 0, so with alphabet
            # {x, y} generator letters commute in any monomial carrying a
            # D factor.  Only runs between opaque atoms may sort;
            # generators do not commute past opaque map values.
            sorted_rest = []
            run = []
            for a in rest:
                if isinstance(a, Gen):
                    run.append(a)
                else:
                    sorted_rest.extend(sorted(run, key=atom_key))
                    run = []
                    sorted_rest.append(a)
            sorted_rest.extend(sorted(run, key=atom_key))
            w = tuple(sorted_rest) + tuple(sorted(central, key=atom_key))
    return NCPoly.word(w)


# -- exact division ----------------------------------------------------------------


def exact_divide(p: NCPoly, c: ScalarPoly) -> NCPoly:
    """q with scale(c, q) == p; exact in every coefficient or an error."""
    if not c:
        raise ZeroDivisionError("division of an NCPoly by the zero scalar")
    out: Dict[Monomial, ScalarPoly] = {}
    for w, k in sorted(p.terms.items(), key=lambda t: word_key(t[0])):
        try:
            out[w] = k.exact_div(c)
        except ExactDivisionError as exc:
            raise ExactDivisionError(
                f"coefficient of monomial {NCPoly.word(w).to_text()} "
                f"is not divisible by {c}: {exc}"
            ) from None
    return NCPoly(out)
