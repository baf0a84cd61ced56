"""Finite rings, additive maps, and exhaustive verification of the theorems.

A finite ring is an additive group Z_{d1} + ... + Z_{dk} with structure
constants c[i][j] giving the basis products e_i * e_j.  Elements are residue
tuples.  Additive maps are integer matrices M with M[i][j] * d_j == 0 mod
d_i, acting columnwise on residue tuples.

The four defining laws (weighted Jordan centralizer / derivation and their
generalized versions) are linear in the unknown map(s) once the ring element
is fixed, so imposing a law at every ring element is a finite linear system
over the mixed-modulus group of matrix entries.  solve_identity builds that
system and solves it exactly, prime by prime.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from . import intsolve

PAIR_SCAN_BOUND = 10_000       # |R| limit for quadratic element scans
TRIPLE_SCAN_BOUND = 2_000      # |R| limit for the primeness scan
SOLVE_BOUND = 100_000          # |R| limit for building the linear system
MAX_SOLUTIONS = 10**6          # enumeration cutoff for solution sets

LAWS = ("centralizer", "gen-centralizer", "derivation", "gen-derivation")

Element = Tuple[int, ...]


class RingConstructionError(ValueError):
    """Structure constants that do not define an associative ring."""


class RingSizeError(ValueError):
    """An exhaustive operation was asked about a ring above its size bound."""


class FinRing:
    def __init__(self, moduli: Sequence[int], constants, name: str = ""):
        self.moduli = tuple(int(d) for d in moduli)
        if any(d < 2 for d in self.moduli):
            raise RingConstructionError("additive moduli must be at least 2")
        k = len(self.moduli)
        self.constants = np.array(constants, dtype=np.int64).reshape(k, k, k)
        self._mods = np.array(self.moduli, dtype=np.int64)
        self.constants %= self._mods
        self.name = name or f"ring{self.moduli}"
        self._elements: Optional[np.ndarray] = None
        self._validate()

    # -- construction checks -------------------------------------------------

    def _validate(self) -> None:
        k = self.k
        for i in range(k):
            for j in range(k):
                prod = self.constants[i, j]
                if np.any((self.moduli[i] * prod) % self._mods) or np.any(
                    (self.moduli[j] * prod) % self._mods
                ):
                    raise RingConstructionError(
                        f"product e{i}*e{j} is incompatible with the moduli"
                    )
        for i in range(k):
            for j in range(k):
                for l in range(k):
                    left = self.mul(tuple(self.constants[i, j]), self.basis(l))
                    right = self.mul(self.basis(i), tuple(self.constants[j, l]))
                    if left != right:
                        raise RingConstructionError(
                            f"associativity fails on basis triple (e{i}, e{j}, e{l})"
                        )

    # -- basic structure -------------------------------------------------------

    @property
    def k(self) -> int:
        return len(self.moduli)

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    def zero(self) -> Element:
        return (0,) * self.k

    def basis(self, i: int) -> Element:
        return tuple(1 if j == i else 0 for j in range(self.k))

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.moduli))

    def neg(self, a: Element) -> Element:
        return tuple((-x) % d for x, d in zip(a, self.moduli))

    def smul(self, c: int, a: Element) -> Element:
        return tuple((c * x) % d for x, d in zip(a, self.moduli))

    def mul(self, a: Element, b: Element) -> Element:
        acc = np.einsum("i,j,ijt->t", np.array(a, dtype=np.int64),
                        np.array(b, dtype=np.int64), self.constants)
        return tuple(int(v) for v in acc % self._mods)

    def elements(self) -> List[Element]:
        return [tuple(int(v) for v in row) for row in self.element_array()]

    def element_array(self) -> np.ndarray:
        if self._elements is None:
            ranges = [np.arange(d, dtype=np.int64) for d in self.moduli]
            grids = np.meshgrid(*ranges, indexing="ij")
            self._elements = np.stack([g.ravel() for g in grids], axis=1)
        return self._elements

    def element_index(self, a: Element) -> int:
        idx = 0
        for v, d in zip(a, self.moduli):
            idx = idx * d + (v % d)
        return idx

    def mul_rows(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Row-by-row products of two (n, k) arrays of elements."""
        return np.einsum("ri,rj,ijt->rt", A, B, self.constants) % self._mods

    def __repr__(self) -> str:
        return f"FinRing({self.name}, order={self.order})"


# -- constructors ----------------------------------------------------------------


def Zn(n: int) -> FinRing:
    return FinRing([n], [[[1]]], name=f"Z{n}")


def MatRing(k: int, n: int) -> FinRing:
    """k x k matrices over Z_n with the matrix-unit basis E_ab."""
    kk = k * k
    constants = np.zeros((kk, kk, kk), dtype=np.int64)
    for a in range(k):
        for b in range(k):
            for c in range(k):
                for d in range(k):
                    if b == c:
                        constants[a * k + b, c * k + d, a * k + d] = 1
    return FinRing([n] * kk, constants, name=f"Mat{k}(Z{n})")


def DirectProduct(*rings: FinRing) -> FinRing:
    moduli: List[int] = []
    offsets = []
    for R in rings:
        offsets.append(len(moduli))
        moduli.extend(R.moduli)
    k = len(moduli)
    constants = np.zeros((k, k, k), dtype=np.int64)
    for R, off in zip(rings, offsets):
        kk = R.k
        constants[off : off + kk, off : off + kk, off : off + kk] = R.constants
    name = "+".join(R.name for R in rings)
    return FinRing(moduli, constants, name=name)


def FromTable(moduli: Sequence[int], constants, name: str = "") -> FinRing:
    return FinRing(moduli, constants, name=name)


def from_spec(spec: Union[dict, str]) -> FinRing:
    """Build a ring from a JSON spec dict or a path to one."""
    if isinstance(spec, str):
        with open(spec) as fh:
            spec = json.load(fh)
    if "kind" in spec:
        kind = spec["kind"]
        if kind == "Zn":
            return Zn(int(spec["n"]))
        if kind == "Mat":
            return MatRing(int(spec.get("k", 2)), int(spec["p"]))
        if kind == "product":
            return DirectProduct(*(from_spec(sub) for sub in spec["of"]))
        raise RingConstructionError(f"unknown ring kind {kind!r}")
    return FromTable(spec["moduli"], spec["mult"], name=spec.get("name", ""))


# -- hypothesis predicates ---------------------------------------------------------


def is_semiprime(R: FinRing, bound: int = PAIR_SCAN_BOUND) -> bool:
    """No nonzero a with a*x*a == 0 for every x (exhaustive)."""
    if R.order > bound:
        raise RingSizeError(f"|R| = {R.order} exceeds the scan bound {bound}")
    E = R.element_array()
    cand = E[1:]
    for x in E:
        if cand.shape[0] == 0:
            return True
        ax = np.einsum("ci,j,ijt->ct", cand, x, R.constants) % R._mods
        axa = np.einsum("ct,ci,tiu->cu", ax, cand, R.constants) % R._mods
        cand = cand[~np.any(axa != 0, axis=1)]
    return cand.shape[0] == 0


def is_prime(R: FinRing, bound: int = TRIPLE_SCAN_BOUND) -> bool:
    """No nonzero a, b with a*x*b == 0 for every x (exhaustive)."""
    if R.order > bound:
        raise RingSizeError(f"|R| = {R.order} exceeds the scan bound {bound}")
    E = R.element_array()
    for a in E[1:]:
        cand = E[1:]
        for x in E:
            if cand.shape[0] == 0:
                break
            ax = np.einsum("i,j,ijt->t", a, x, R.constants) % R._mods
            axb = np.einsum("t,ci,tiu->cu", ax, cand, R.constants) % R._mods
            cand = cand[np.all(axb == 0, axis=1)]
        if cand.shape[0]:
            return False
    return True


def is_torsion_free(R: FinRing, t: int, verify_bound: int = 1000) -> bool:
    """Multiplication by t is injective on the additive group."""
    if t < 2:
        raise ValueError("torsion factors start at 2")
    free = all(math.gcd(t, d) == 1 for d in R.moduli)
    if R.order <= verify_bound:
        E = R.element_array()
        killed = np.all((t * E) % R._mods == 0, axis=1)
        scan = not np.any(killed[1:])
        assert scan == free
    return free


def center(R: FinRing, bound: int = PAIR_SCAN_BOUND) -> List[Element]:
    """All z commuting with every element (equivalently, with the basis)."""
    if R.order > bound:
        raise RingSizeError(f"|R| = {R.order} exceeds the scan bound {bound}")
    E = R.element_array()
    ze = np.einsum("zj,jit->zit", E, R.constants) % R._mods  # z * e_i
    ez = np.einsum("zj,ijt->zit", E, R.constants) % R._mods  # e_i * z
    mask = np.all(ze == ez, axis=(1, 2))
    return [tuple(int(v) for v in row) for row in E[mask]]


# -- additive maps ------------------------------------------------------------------


class AddMap:
    """Additive endomorphism given by an integer matrix: column j is the
    image of the basis element e_j, rows reduced mod the target moduli."""

    __slots__ = ("ring", "matrix")

    def __init__(self, ring: FinRing, matrix):
        self.ring = ring
        M = np.array(matrix, dtype=np.int64).reshape(ring.k, ring.k)
        M %= np.array(ring.moduli, dtype=np.int64)[:, None]
        for i in range(ring.k):
            for j in range(ring.k):
                if (M[i, j] * ring.moduli[j]) % ring.moduli[i]:
                    raise ValueError(
                        f"entry ({i},{j}) violates the additive-map condition"
                    )
        self.matrix = M

    @staticmethod
    def zero(ring: FinRing) -> "AddMap":
        return AddMap(ring, np.zeros((ring.k, ring.k), dtype=np.int64))

    @staticmethod
    def identity(ring: FinRing) -> "AddMap":
        return AddMap(ring, np.eye(ring.k, dtype=np.int64))

    @staticmethod
    def scalar(ring: FinRing, c: int) -> "AddMap":
        return AddMap(ring, c * np.eye(ring.k, dtype=np.int64))

    def __call__(self, a: Element) -> Element:
        v = (self.matrix @ np.array(a, dtype=np.int64)) % self.ring._mods
        return tuple(int(x) for x in v)

    def apply_rows(self, A: np.ndarray) -> np.ndarray:
        return (A @ self.matrix.T) % self.ring._mods

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AddMap)
            and self.ring.moduli == other.ring.moduli
            and np.array_equal(self.matrix, other.matrix)
        )

    def __hash__(self) -> int:
        return hash((self.ring.moduli, self.matrix.tobytes()))

    def __repr__(self) -> str:
        return f"AddMap({self.matrix.tolist()})"


def all_add_maps(R: FinRing) -> List[AddMap]:
    """Every additive endomorphism; feasible only for tiny rings."""
    choices: List[List[int]] = []
    for i in range(R.k):
        for j in range(R.k):
            di, dj = R.moduli[i], R.moduli[j]
            step = di // math.gcd(di, dj)
            choices.append(list(range(0, di, step)))
    total = math.prod(len(c) for c in choices)
    if total > MAX_SOLUTIONS:
        raise RingSizeError(f"{total} additive maps is too many to enumerate")
    out = []
    for combo in itertools.product(*choices):
        out.append(AddMap(R, np.array(combo, dtype=np.int64).reshape(R.k, R.k)))
    return out


# -- the defining laws ---------------------------------------------------------------


@dataclass(frozen=True)
class LawSpec:
    law: str
    m: int
    n: int

    def __post_init__(self):
        if self.law not in LAWS:
            raise ValueError(f"unknown law {self.law!r}; expected one of {LAWS}")
        if self.m < 1 or self.n < 1:
            raise ValueError("the weights m, n must be positive")

    @property
    def pair(self) -> bool:
        return self.law.startswith("gen-")

    def torsion_product(self) -> int:
        m, n = self.m, self.n
        if self.law == "centralizer":
            return m * n * (m + n)
        if self.law == "gen-centralizer":
            # the replayed proof consumes {2, m, n, m+n, m+2n}; the cited
            # prime-ring antecedent uses m+2n as well
            return m * n * (m + n) * (m + 2 * n)
        return m * n * (m + n) * abs(m - n)


def _law_row_blocks(R: FinRing, spec: LawSpec) -> Tuple[np.ndarray, np.ndarray]:
    """Equation rows for the law imposed at every ring element.

    Returns (rows, row_mods): rows has shape (Q, n_maps*k*k) with slot
    ordering (map, i, j); row r states sum_s rows[r, s]*u_s == 0 modulo
    row_mods[r].
    """
    k = R.k
    m, n = spec.m, spec.n
    X = R.element_array()
    C = R.constants
    eye = np.eye(k, dtype=np.int64)
    X2 = np.einsum("ri,rj,ijt->rt", X, X, C) % R._mods
    EX = np.einsum("rj,ijt->rit", X, C)  # e_i * x
    XE = np.einsum("rj,jit->rit", X, C)  # x * e_i
    of_x2 = np.einsum("ti,rj->rtij", eye, X2)      # coeff of M(x^2)
    mx_x = np.einsum("rj,rit->rtij", X, EX)        # coeff of M(x)*x
    x_mx = np.einsum("rj,rit->rtij", X, XE)        # coeff of x*M(x)

    def flat(block: np.ndarray) -> np.ndarray:
        return block.reshape(X.shape[0] * k, k * k)

    if spec.law == "centralizer":
        rows = flat((m + n) * of_x2 - m * mx_x - n * x_mx)
    elif spec.law == "derivation":
        rows = flat((m + n) * of_x2 - 2 * m * mx_x - 2 * n * x_mx)
    elif spec.law == "gen-centralizer":
        main = flat((m + n) * of_x2 - m * mx_x)
        base = flat(-n * x_mx)
        base_law = flat((m + n) * of_x2 - m * mx_x - n * x_mx)
        rows = np.vstack(
            [
                np.hstack([main, base]),
                np.hstack([np.zeros_like(base_law), base_law]),
            ]
        )
    else:  # gen-derivation
        main = flat((m + n) * of_x2 - 2 * m * mx_x)
        base = flat(-2 * n * x_mx)
        base_law = flat((m + n) * of_x2 - 2 * m * mx_x - 2 * n * x_mx)
        rows = np.vstack(
            [
                np.hstack([main, base]),
                np.hstack([np.zeros_like(base_law), base_law]),
            ]
        )
    reps = rows.shape[0] // k
    row_mods = np.tile(R._mods, reps)
    return rows, row_mods


def _hom_rows(R: FinRing, n_maps: int) -> Tuple[np.ndarray, np.ndarray]:
    k = R.k
    n_slots = n_maps * k * k
    rows = []
    mods = []
    for b in range(n_maps):
        for i in range(k):
            for j in range(k):
                if R.moduli[j] % R.moduli[i] == 0:
                    continue  # condition is vacuous
                row = np.zeros(n_slots, dtype=np.int64)
                row[b * k * k + i * k + j] = R.moduli[j]
                rows.append(row)
                mods.append(R.moduli[i])
    if not rows:
        return np.zeros((0, n_slots), dtype=np.int64), np.zeros(0, dtype=np.int64)
    return np.array(rows, dtype=np.int64), np.array(mods, dtype=np.int64)


@dataclass
class SolutionSet:
    ring: FinRing
    spec: LawSpec
    n_maps: int
    slot_mods: np.ndarray
    count: int
    generators: List[Tuple[Tuple[int, ...], int]]
    explicit: Optional[List[Tuple[int, ...]]]
    meta: Dict[str, object] = field(default_factory=dict)

    def maps(self) -> List:
        """Solutions as AddMap objects (pairs for generalized laws)."""
        if self.explicit is None:
            raise RingSizeError(
                f"solution set has {self.count} elements; only generators "
                f"are available"
            )
        k = self.ring.k
        out = []
        for vec in self.explicit:
            mats = [
                np.array(vec[b * k * k : (b + 1) * k * k], dtype=np.int64).reshape(k, k)
                for b in range(self.n_maps)
            ]
            maps = [AddMap(self.ring, M) for M in mats]
            out.append(maps[0] if self.n_maps == 1 else tuple(maps))
        return out

    def contains(self, vec: Sequence[int]) -> bool:
        v = tuple(int(a) % int(d) for a, d in zip(vec, self.slot_mods))
        if self.explicit is not None:
            return v in set(self.explicit)
        raise RingSizeError("membership needs the explicit enumeration")


def _vector_of_maps(maps: Sequence[AddMap]) -> Tuple[int, ...]:
    return tuple(int(v) for M in maps for v in M.matrix.ravel())


def solve_identity(
    R: FinRing,
    spec: LawSpec,
    max_solutions: int = MAX_SOLUTIONS,
    size_bound: int = SOLVE_BOUND,
) -> SolutionSet:
    """All additive maps (or pairs) satisfying the law at every element."""
    if R.order > size_bound:
        raise RingSizeError(f"|R| = {R.order} exceeds the solver bound {size_bound}")
    n_maps = 2 if spec.pair else 1
    k = R.k
    n_slots = n_maps * k * k
    law_rows, law_mods = _law_row_blocks(R, spec)
    hom_rows, hom_mods = _hom_rows(R, n_maps)
    rows = np.vstack([law_rows, hom_rows]) if hom_rows.size else law_rows
    row_mods = np.concatenate([law_mods, hom_mods])
    slot_mods = np.array(
        [R.moduli[i] for _ in range(n_maps) for i in range(k) for _ in range(k)],
        dtype=np.int64,
    )

    primes: Dict[int, int] = {}
    for d in R.moduli:
        for q, e in intsolve.factorize(d).items():
            primes[q] = max(primes.get(q, 0), e)

    per_prime = []
    meta: Dict[str, object] = {"primes": {}}
    count = 1
    for q, e in sorted(primes.items()):
        slots_q = [s for s in range(n_slots) if slot_mods[s] % q == 0]
        keep = row_mods % q == 0
        sub = rows[np.ix_(keep, slots_q)]
        if e == 1:
            basis = intsolve.gf_nullspace(sub, q)
            count_q = q ** basis.shape[0]
            elements_q = None
            if count_q <= max_solutions:
                elements_q = _span_gf(basis, q)
            gens_q = [(tuple(int(v) for v in b), q) for b in basis]
            meta["primes"][str(q)] = {"exponent": 1, "nullity": int(basis.shape[0])}
        else:
            M = q**e
            scale = np.array([M // (q ** _vq(int(mq), q)) for mq in row_mods[keep]],
                             dtype=np.int64)
            scaled = (sub * scale[:, None]) % M
            gens = intsolve.kernel_mod(scaled.tolist(), M, len(slots_q))
            raw = intsolve.enumerate_group(gens, M, len(slots_q), max_solutions * 64)
            seen = set()
            for u in raw:
                proj = tuple(
                    int(u[a]) % (q ** _vq(int(slot_mods[s]), q))
                    for a, s in enumerate(slots_q)
                )
                seen.add(proj)
            elements_q = sorted(seen)
            count_q = len(elements_q)
            gens_q = [(g, o) for (gvec, o) in gens for g in [tuple(gvec)]]
            meta["primes"][str(q)] = {"exponent": e, "kernel": len(raw)}
        per_prime.append((q, e, slots_q, gens_q, elements_q, count_q))
        count *= count_q

    generators = _lift_generators(per_prime, slot_mods)
    explicit = None
    if count <= max_solutions and all(p[4] is not None for p in per_prime):
        explicit = _combine_primes(per_prime, slot_mods, n_slots)
    return SolutionSet(
        ring=R,
        spec=spec,
        n_maps=n_maps,
        slot_mods=slot_mods,
        count=count,
        generators=generators,
        explicit=explicit,
        meta=meta,
    )


def _vq(n: int, q: int) -> int:
    v = 0
    while n % q == 0 and n:
        n //= q
        v += 1
    return v


def _span_gf(basis: np.ndarray, q: int) -> List[Tuple[int, ...]]:
    dim, width = basis.shape
    out = [np.zeros(width, dtype=np.int64)]
    for b in basis:
        out = [(v + c * b) % q for v in out for c in range(q)]
    return [tuple(int(x) for x in v) for v in out]


def _lift_generators(per_prime, slot_mods) -> List[Tuple[Tuple[int, ...], int]]:
    gens = []
    n_slots = len(slot_mods)
    for q, e, slots_q, gens_q, _, _ in per_prime:
        for gvec, order in gens_q:
            full = [0] * n_slots
            for a, s in enumerate(slots_q):
                d = int(slot_mods[s])
                qe = q ** _vq(d, q)
                rest = d // qe
                # CRT lift: congruent to gvec[a] mod q^e-part, 0 elsewhere
                full[s] = (gvec[a] * rest * pow(rest, -1, qe)) % d
            gens.append((tuple(full), order))
    return gens


def _combine_primes(per_prime, slot_mods, n_slots) -> List[Tuple[int, ...]]:
    lists = []
    for q, e, slots_q, _, elements_q, _ in per_prime:
        lifted = []
        for u in elements_q:
            full = [0] * n_slots
            for a, s in enumerate(slots_q):
                d = int(slot_mods[s])
                qe = q ** _vq(d, q)
                rest = d // qe
                full[s] = (u[a] * rest * pow(rest, -1, qe)) % d
            lifted.append(tuple(full))
        lists.append(lifted)
    out = []
    for combo in itertools.product(*lists):
        acc = [0] * n_slots
        for vec in combo:
            acc = [(a + b) % int(d) for a, b, d in zip(acc, vec, slot_mods)]
        out.append(tuple(acc))
    return sorted(set(out))


# -- conclusion checks ---------------------------------------------------------------


def verify_two_sided(R: FinRing, T: AddMap, exhaustive: Optional[bool] = None) -> bool:
    """T(xy) = T(x)y = xT(y) for all x, y.

    Both sides are biadditive in (x, y), so the condition holds everywhere
    exactly when it holds on basis pairs; that tensor identity is what is
    checked.  With exhaustive=True (or by default on small rings) the full
    pair scan is run as well.
    """
    C, M = R.constants, T.matrix
    t_of_xy = np.einsum("ts,ijs->ijt", M, C) % R._mods
    tx_y = np.einsum("si,sjt->ijt", M, C) % R._mods
    x_ty = np.einsum("sj,ist->ijt", M, C) % R._mods
    ok = bool(np.all(t_of_xy == tx_y) and np.all(t_of_xy == x_ty))
    if exhaustive or (exhaustive is None and R.order <= 200):
        ok2 = all(
            T(R.mul(x, y)) == R.mul(T(x), y) == R.mul(x, T(y))
            for x in R.elements()
            for y in R.elements()
        )
        assert ok2 == ok
    return ok


def verify_derivation(R: FinRing, D: AddMap, exhaustive: Optional[bool] = None) -> bool:
    """D(xy) = D(x)y + xD(y) for all x, y (checked on basis pairs)."""
    C, M = R.constants, D.matrix
    d_of_xy = np.einsum("ts,ijs->ijt", M, C)
    dx_y = np.einsum("si,sjt->ijt", M, C)
    x_dy = np.einsum("sj,ist->ijt", M, C)
    ok = bool(np.all((d_of_xy - dx_y - x_dy) % R._mods == 0))
    if exhaustive or (exhaustive is None and R.order <= 200):
        ok2 = all(
            D(R.mul(x, y)) == R.add(R.mul(D(x), y), R.mul(x, D(y)))
            for x in R.elements()
            for y in R.elements()
        )
        assert ok2 == ok
    return ok


def maps_into_center(R: FinRing, D: AddMap) -> bool:
    """Every value D(x) commutes with every ring element."""
    k = R.k
    for j in range(k):
        v = np.array(D(R.basis(j)), dtype=np.int64)
        ve = np.einsum("j,jit->it", v, R.constants) % R._mods
        ev = np.einsum("j,ijt->it", v, R.constants) % R._mods
        if not np.array_equal(ve, ev):
            return False
    return True


def _law_residual(R: FinRing, spec: LawSpec, maps: Sequence[AddMap]) -> bool:
    """True when the maps satisfy the defining law at every element."""
    rows, row_mods = _law_row_blocks(R, spec)
    vec = np.array(_vector_of_maps(maps), dtype=np.int64)
    return bool(np.all((rows @ vec) % row_mods == 0))


# -- the xyx expansion, checked numerically -------------------------------------------

LEMMA_TEXTS = {
    "centralizer": (
        "2*(m+n)^2*T[x*y*x] - m*n*T[x]*x*y - m*(2*m+n)*T[x]*y*x + m*n*T[y]*x^2"
        " - 2*m*n*x*T[y]*x + m*n*x^2*T[y] - n*(m+2*n)*x*y*T[x] - m*n*y*x*T[x]"
    ),
    "gen-centralizer": (
        "2*(m+n)^2*T[x*y*x] - m*n*T[x]*x*y - m*(2*m+n)*T[x]*y*x + m*n*T[y]*x^2"
        " - 2*m*n*x*T0[y]*x + m*n*x^2*T0[y] - n*(m+2*n)*x*y*T0[x] - m*n*y*x*T0[x]"
    ),
    "derivation": (
        "(m+n)^2*F[x*y*x] - m*(n-m)*F[x]*x*y - m*(m-n)*F[y]*x^2 - n*(n-m)*x^2*D[y]"
        " - n*(m-n)*y*x*D[x] - m*(3*m+n)*F[x]*y*x - 4*m*n*x*D[y]*x"
        " - n*(3*n+m)*x*y*D[x]"
    ),
    "gen-derivation": (
        "(m+n)^2*F[x*y*x] - m*(n-m)*F[x]*x*y - m*(m-n)*F[y]*x^2 - n*(n-m)*x^2*D[y]"
        " - n*(m-n)*y*x*D[x] - m*(3*m+n)*F[x]*y*x - 4*m*n*x*D[y]*x"
        " - n*(3*n+m)*x*y*D[x]"
    ),
}


class PairEvaluator:
    """Evaluate polynomial identities at every pair (x, y) of ring elements.

    Products and map applications become integer-array gathers over index
    tables, so one instance amortizes the table construction across many
    identities and maps.
    """

    def __init__(self, R: FinRing, pair_bound: int = 3000):
        if R.order > pair_bound:
            raise RingSizeError(f"|R| = {R.order} exceeds the pair bound {pair_bound}")
        self.ring = R
        E = R.element_array()
        self.E = E
        num = E.shape[0]
        self.num = num
        self._radix = np.array(
            [math.prod(R.moduli[i + 1 :]) for i in range(R.k)], dtype=np.int64
        )
        self.mul_table = np.empty((num, num), dtype=np.int64)
        for a in range(num):
            prods = np.einsum("i,rj,ijt->rt", E[a], E, R.constants) % R._mods
            self.mul_table[a] = prods @ self._radix
        self._xs = np.repeat(np.arange(num, dtype=np.int64), num)
        self._ys = np.tile(np.arange(num, dtype=np.int64), num)

    def map_table(self, M: AddMap) -> np.ndarray:
        return M.apply_rows(self.E) @ self._radix

    def first_violation(
        self, poly, maps: Dict[str, AddMap], m: int, n: int
    ) -> Optional[Tuple[Element, Element]]:
        from .freealg import Gen

        R = self.ring
        tables = {sym: self.map_table(M) for sym, M in maps.items()}
        base = {"x": self._xs, "y": self._ys}

        def eval_word(word) -> np.ndarray:
            acc = None
            for atom in word:
                if isinstance(atom, Gen):
                    idx = base[atom.name]
                else:
                    if atom.sym not in tables:
                        raise ValueError(f"no concrete map bound to {atom.sym}")
                    idx = tables[atom.sym][eval_word(atom.arg)]
                acc = idx if acc is None else self.mul_table[acc, idx]
            return acc

        total = np.zeros((self.num * self.num, R.k), dtype=np.int64)
        for word, coeff in poly.terms.items():
            c = coeff.evaluate(m, n)
            if all(c % d == 0 for d in R.moduli):
                continue
            total += c * self.E[eval_word(word)]
        total %= R._mods
        bad = np.nonzero(np.any(total != 0, axis=1))[0]
        if bad.size == 0:
            return None
        b = int(bad[0])
        return (
            tuple(int(v) for v in self.E[b // self.num]),
            tuple(int(v) for v in self.E[b % self.num]),
        )


def evaluate_identity_on_pairs(
    R: FinRing,
    poly,
    maps: Dict[str, AddMap],
    m: int,
    n: int,
    pair_bound: int = 3000,
) -> Optional[Tuple[Element, Element]]:
    """Evaluate an NCPoly identity at every (x, y); None or first violation."""
    return PairEvaluator(R, pair_bound).first_violation(poly, maps, m, n)


def cross_check_lemma(
    R: FinRing,
    spec: LawSpec,
    maps: Union[AddMap, Tuple[AddMap, AddMap]],
    pair_bound: int = 3000,
) -> bool:
    """Check the xyx-expansion identity at every pair for given solutions.

    Precondition: the maps satisfy the defining law (raises otherwise).
    This validates numerically the expansion the proof checker uses.
    """
    from .parsing import parse_poly

    pair = isinstance(maps, tuple)
    map_list = list(maps) if pair else [maps]
    if pair != spec.pair:
        raise ValueError("map arity does not match the law")
    if not _law_residual(R, spec, map_list):
        raise ValueError("the given maps do not satisfy the defining law")
    if spec.law.endswith("derivation"):
        bound = {"F": map_list[0], "D": map_list[-1]}
    else:
        bound = {"T": map_list[0], "T0": map_list[-1]}
    poly = parse_poly(LEMMA_TEXTS[spec.law])
    violation = evaluate_identity_on_pairs(R, poly, bound, spec.m, spec.n, pair_bound)
    return violation is None


# -- theorem-level reports ------------------------------------------------------------


@dataclass
class TheoremReport:
    ring: str
    law: str
    m: int
    n: int
    hypotheses: Dict[str, object]
    applicable: bool
    solution_count: int
    violations: List[dict]
    verdict: str

    def to_json(self) -> dict:
        return {
            "ring": self.ring,
            "law": self.law,
            "m": self.m,
            "n": self.n,
            "hypotheses": self.hypotheses,
            "applicable": self.applicable,
            "solution_count": self.solution_count,
            "violations": self.violations,
            "verdict": self.verdict,
        }


def _conclusion_violations(R: FinRing, spec: LawSpec, sols: SolutionSet) -> List[dict]:
    out = []
    for entry in sols.maps():
        if spec.law == "centralizer":
            T = entry
            if not verify_two_sided(R, T, exhaustive=False):
                out.append({"map": T.matrix.tolist(), "reason": "not two-sided"})
        elif spec.law == "gen-centralizer":
            T, T0 = entry
            if T != T0:
                out.append(
                    {"map": T.matrix.tolist(), "base": T0.matrix.tolist(),
                     "reason": "T differs from its base map"}
                )
            elif not verify_two_sided(R, T, exhaustive=False):
                out.append({"map": T.matrix.tolist(), "reason": "not two-sided"})
        elif spec.law == "derivation":
            D = entry
            if not verify_derivation(R, D, exhaustive=False):
                out.append({"map": D.matrix.tolist(), "reason": "not a derivation"})
            elif not maps_into_center(R, D):
                out.append({"map": D.matrix.tolist(), "reason": "values not central"})
        else:
            F, D = entry
            if F != D:
                out.append(
                    {"map": F.matrix.tolist(), "base": D.matrix.tolist(),
                     "reason": "F differs from its base map"}
                )
            elif not verify_derivation(R, F, exhaustive=False):
                out.append({"map": F.matrix.tolist(), "reason": "not a derivation"})
            elif not maps_into_center(R, F):
                out.append({"map": F.matrix.tolist(), "reason": "values not central"})
    return out


def check_theorem(
    R: FinRing,
    spec: LawSpec,
    max_solutions: int = MAX_SOLUTIONS,
    scan_bound: int = PAIR_SCAN_BOUND,
) -> TheoremReport:
    """Evaluate the theorem hypotheses and verify its conclusion exhaustively."""
    if spec.law.endswith("derivation") and spec.m == spec.n:
        raise ValueError("the derivation theorems need distinct weights m and n")
    product = spec.torsion_product()
    hyp: Dict[str, object] = {"torsion_product": product}
    try:
        hyp["semiprime"] = is_semiprime(R, scan_bound)
    except RingSizeError:
        hyp["semiprime"] = None
    hyp["torsion_free"] = is_torsion_free(R, product) if product > 1 else True
    applicable = bool(hyp["semiprime"]) and bool(hyp["torsion_free"])
    sols = solve_identity(R, spec, max_solutions=max_solutions)
    violations = _conclusion_violations(R, spec, sols) if sols.explicit is not None else []
    if applicable:
        verdict = "conclusion-verified" if not violations else "COUNTEREXAMPLE"
    else:
        verdict = (
            "hypotheses-not-met; conclusion holds anyway"
            if not violations
            else "hypotheses-not-met; conclusion fails"
        )
    return TheoremReport(
        ring=R.name,
        law=spec.law,
        m=spec.m,
        n=spec.n,
        hypotheses=hyp,
        applicable=applicable,
        solution_count=sols.count,
        violations=violations,
        verdict=verdict,
    )


def search_family(rings: Iterable[FinRing], spec: LawSpec, **kwargs) -> List[TheoremReport]:
    """check_theorem rows over a family of rings."""
    return [check_theorem(R, spec, **kwargs) for R in rings]


def family_zn(max_n: int) -> List[FinRing]:
    return [Zn(n) for n in range(2, max_n + 1)]


def family_mat2(primes: Sequence[int]) -> List[FinRing]:
    return [MatRing(2, p) for p in primes]


def family_products(max_n: int) -> List[FinRing]:
    out = []
    for a in range(2, max_n + 1):
        for b in range(a, max_n + 1):
            out.append(DirectProduct(Zn(a), Zn(b)))
    return out
