"""Kernels of integer linear systems over mixed-modulus abelian groups.

The functional-identity solver reduces to: find all u in Z_{d(0)} x ... x
Z_{d(N-1)} with sum_s A[r,s] * u[s] == 0 (mod M[r]) for every row r.  The
system is split by primes.  A prime appearing to the first power everywhere
is handled by vectorized Gaussian elimination over GF(q); prime powers go
through an exact Hermite/Smith reduction over the integers (only small
systems ever take that path here).
"""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

import numpy as np


def factorize(n: int) -> Dict[int, int]:
    out: Dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def gf_nullspace(rows: np.ndarray, q: int) -> np.ndarray:
    """Basis of {u : rows @ u == 0 mod q} for prime q; shape (dim, N)."""
    A = np.array(rows, dtype=np.int64) % q
    if A.size == 0:
        n_cols = A.shape[1] if A.ndim == 2 else 0
        return np.eye(n_cols, dtype=np.int64)
    A = np.unique(A, axis=0)
    n_rows, n_cols = A.shape
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            A[[r, pr]] = A[[pr, r]]
        inv = pow(int(A[r, c]), q - 2, q)
        A[r] = (A[r] * inv) % q
        col = A[:, c].copy()
        col[r] = 0
        A -= np.outer(col, A[r])
        A %= q
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    free = [c for c in range(n_cols) if c not in pivots]
    basis = np.zeros((len(free), n_cols), dtype=np.int64)
    for bi, fc in enumerate(free):
        basis[bi, fc] = 1
        for ri, pc in enumerate(pivots):
            basis[bi, pc] = (-A[ri, fc]) % q
    return basis


def _hnf_rows(mat: List[List[int]]) -> List[List[int]]:
    """Row Hermite form (echelon over Z) by Euclidean row operations."""
    mat = [row[:] for row in mat if any(row)]
    if not mat:
        return []
    n_cols = len(mat[0])
    r = 0
    for c in range(n_cols):
        piv = None
        for i in range(r, len(mat)):
            if mat[i][c]:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        for i in range(r + 1, len(mat)):
            while mat[i][c]:
                quot = mat[r][c] // mat[i][c]
                mat[r] = [a - quot * b for a, b in zip(mat[r], mat[i])]
                mat[r], mat[i] = mat[i], mat[r]
        if mat[r][c] < 0:
            mat[r] = [-a for a in mat[r]]
        for i in range(r):
            quot = mat[i][c] // mat[r][c]
            if quot:
                mat[i] = [a - quot * b for a, b in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    return [row for row in mat[:r] if any(row)]


def _diagonalize_with_cols(mat: List[List[int]]) -> Tuple[List[int], List[List[int]]]:
    """Diagonalize an integer matrix by unimodular row and column operations.

    Returns (diag, V) with U * mat * V diagonal for some unimodular U; only
    the column transform V is needed to describe kernels, and the kernel
    computation does not require the Smith divisibility chain.  diag is
    padded with zeros up to the column count.
    """
    A = [row[:] for row in mat]
    n_rows = len(A)
    n_cols = len(A[0]) if A else 0
    V = [[1 if i == j else 0 for j in range(n_cols)] for i in range(n_cols)]

    def col_combine(c1: int, c2: int, quot: int) -> None:
        # column c1 -= quot * column c2
        for row in A:
            row[c1] -= quot * row[c2]
        for row in V:
            row[c1] -= quot * row[c2]

    def col_swap(c1: int, c2: int) -> None:
        for row in A:
            row[c1], row[c2] = row[c2], row[c1]
        for row in V:
            row[c1], row[c2] = row[c2], row[c1]

    diag: List[int] = []
    t = 0
    while t < min(n_rows, n_cols):
        piv = None
        for i in range(t, n_rows):
            for j in range(t, n_cols):
                if A[i][j]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        A[t], A[piv[0]] = A[piv[0]], A[t]
        if piv[1] != t:
            col_swap(t, piv[1])
        dirty = True
        while dirty:
            dirty = False
            # clear column t below the pivot.  When the pivot divides the
            # entry, eliminate into that row (no other entries of column t
            # change); otherwise run a Euclid step, which shrinks the pivot.
            for i in range(t + 1, n_rows):
                while A[i][t]:
                    if A[t][t] and A[i][t] % A[t][t] == 0:
                        quot = A[i][t] // A[t][t]
                        A[i] = [a - quot * b for a, b in zip(A[i], A[t])]
                    else:
                        quot = A[t][t] // A[i][t]
                        A[t] = [a - quot * b for a, b in zip(A[t], A[i])]
                        A[t], A[i] = A[i], A[t]
                        dirty = True
            # clear row t right of the pivot, same discipline
            for j in range(t + 1, n_cols):
                while A[t][j]:
                    if A[t][t] and A[t][j] % A[t][t] == 0:
                        col_combine(j, t, A[t][j] // A[t][t])
                    else:
                        col_combine(t, j, A[t][t] // A[t][j])
                        col_swap(t, j)
                        dirty = True
        if A[t][t] < 0:
            for row in A:
                row[t] = -row[t]
            for row in V:
                row[t] = -row[t]
        diag.append(A[t][t])
        t += 1
    while len(diag) < n_cols:
        diag.append(0)
    return diag, V


def kernel_mod(rows: Sequence[Sequence[int]], modulus: int, n_cols: int
               ) -> List[Tuple[List[int], int]]:
    """Generators of {u in Z_modulus^n : rows @ u == 0 mod modulus}.

    Returns independent generators as (vector, order) pairs; every kernel
    element is a unique combination sum c_g * g with 0 <= c_g < order_g.
    """
    mat = [list(map(int, r)) for r in rows]
    mat += [[modulus if j == i else 0 for j in range(n_cols)] for i in range(n_cols)]
    H = _hnf_rows(mat)
    diag, V = _diagonalize_with_cols(H)
    gens: List[Tuple[List[int], int]] = []
    for i in range(n_cols):
        d = diag[i] if i < len(diag) else 0
        g = int(np.gcd(d, modulus)) if d else modulus
        order = g
        if order == 1:
            continue
        scale = modulus // g
        vec = [(V[r][i] * scale) % modulus for r in range(n_cols)]
        gens.append((vec, order))
    return gens


def enumerate_group(gens: List[Tuple[List[int], int]], modulus: int, n_cols: int,
                    limit: int) -> List[Tuple[int, ...]]:
    """All elements generated by independent (vector, order) pairs."""
    total = 1
    for _, order in gens:
        total *= order
    if total > limit:
        raise OverflowError(f"kernel has {total} elements, above the limit {limit}")
    elems = [tuple([0] * n_cols)]
    for vec, order in gens:
        new = []
        for base in elems:
            acc = list(base)
            new.append(base)
            for _ in range(order - 1):
                acc = [(a + b) % modulus for a, b in zip(acc, vec)]
                new.append(tuple(acc))
        elems = new
    return elems
