"""Smith normal forms of Gram matrices, exact over Z or local mod l^N."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rings import PRECISION_CAP, PrecisionError, val_int

EXACT_LIMIT = 256
LOCAL_START = 8
_INT64_SAFE = 2 ** 31


@dataclass
class SNFResult:
    """X A Y^T = diag(diag) with X = P and Y = Q^T.

    In LOCAL mode the identity holds mod l^N, ``diag`` holds l^{a_i} u_i
    reduced mod l^N, and ``units`` holds u_i mod l^(N - a_i)."""

    P: np.ndarray
    Q: np.ndarray
    diag: list
    vals: list
    mode: str
    ell: int
    precision: int | None = None
    units: list | None = None

    @property
    def X(self) -> np.ndarray:
        return self.P

    @property
    def Y(self) -> np.ndarray:
        return self.Q.T

    @property
    def m(self) -> int:
        return len(self.vals)

    @property
    def mode_label(self) -> str:
        return self.mode if self.mode == "EXACT" else f"LOCAL({self.precision})"


def _pivot_key(x: int, ell: int):
    return (val_int(x, ell), abs(x))


def snf_exact(A: np.ndarray, ell: int) -> SNFResult:
    """Z-Smith form with unimodular P, Q.

    Each stage pivots on the entry of least l-valuation (then least absolute
    value, then row-major position), clears its row and column by division
    with remainder, and enforces divisibility of the remaining block."""
    A = np.array(A, dtype=object)
    m = A.shape[0]
    if A.shape != (m, m):
        raise ValueError("square matrix expected")
    P = np.identity(m, dtype=object)
    Q = np.identity(m, dtype=object)
    for t in range(m):
        block = A[t:, t:]
        units = np.argwhere((block == 1) | (block == -1))
        if len(units):
            # (0, 1) is the least possible key: first unit in row-major order
            best = units[0]
        else:
            nz = np.argwhere(block != 0)
            if nz.size == 0:
                raise ValueError("singular matrix: no Smith form with nonzero diagonal")
            best = min(nz, key=lambda ij: (_pivot_key(int(block[ij[0], ij[1]]), ell), int(ij[0]), int(ij[1])))
        i, j = int(best[0]) + t, int(best[1]) + t
        while True:
            if i != t:
                A[[t, i]] = A[[i, t]]
                P[[t, i]] = P[[i, t]]
            if j != t:
                A[:, [t, j]] = A[:, [j, t]]
                Q[:, [t, j]] = Q[:, [j, t]]
            piv = A[t, t]
            quot = np.array([x // piv for x in A[t + 1:, t]], dtype=object)
            if quot.size and any(quot):
                A[t + 1:] -= np.outer(quot, A[t])
                P[t + 1:] -= np.outer(quot, P[t])
            quot = np.array([x // piv for x in A[t, t + 1:]], dtype=object)
            if quot.size and any(quot):
                A[:, t + 1:] -= np.outer(A[:, t], quot)
                Q[:, t + 1:] -= np.outer(Q[:, t], quot)
            # Euclidean descent: a nonzero remainder is smaller than the pivot
            rem = [(abs(A[k, t]), k, t) for k in range(t + 1, m) if A[k, t]]
            rem += [(abs(A[t, k]), t, k) for k in range(t + 1, m) if A[t, k]]
            if rem:
                _, i, j = min(rem)
                continue
            if abs(piv) == 1:
                break
            rest = A[t + 1:, t + 1:]
            bad = np.argwhere(np.vectorize(lambda x: x % piv != 0, otypes=[bool])(rest)) if rest.size else []
            if not len(bad):
                break
            r = int(bad[0][0]) + t + 1
            A[t] += A[r]
            P[t] += P[r]
            i, j = t, t
        if A[t, t] < 0:
            A[t] = -A[t]
            P[t] = -P[t]
    diag = [int(A[i, i]) for i in range(m)]
    vals = [int(val_int(x, ell)) for x in diag]
    return SNFResult(P, Q, diag, vals, "EXACT", ell)


def _local_once(A: np.ndarray, ell: int, N: int) -> SNFResult | None:
    """Elimination over Z/l^N; None when the precision saturates."""
    mod = ell ** N
    dtype = np.int64 if mod < _INT64_SAFE else object
    R = np.array(A, dtype=dtype) % mod
    m = R.shape[0]
    P = np.identity(m, dtype=dtype)
    Q = np.identity(m, dtype=dtype)
    level = 0
    vals = [0] * m
    units = [1] * m
    for t in range(m):
        while True:
            block = R[t:, t:]
            hit = np.argwhere(block % ell != 0)
            if len(hit):
                break
            if level >= N - 1:
                return None
            # the whole block is divisible by l: descend one level
            R[t:, t:] = block // ell
            level += 1
        i, j = int(hit[0][0]) + t, int(hit[0][1]) + t
        if i != t:
            R[[t, i]] = R[[i, t]]
            P[[t, i]] = P[[i, t]]
        if j != t:
            R[:, [t, j]] = R[:, [j, t]]
            Q[:, [t, j]] = Q[:, [j, t]]
        wmod = ell ** (N - level)
        u = int(R[t, t]) % wmod
        uinv = pow(u, -1, wmod)
        col = (R[t + 1:, t] * uinv) % wmod
        if col.any():
            R[t + 1:, t:] = (R[t + 1:, t:] - np.outer(col, R[t, t:])) % wmod
            P[t + 1:] = (P[t + 1:] - np.outer(col, P[t])) % mod
        row = (R[t, t + 1:] * uinv) % wmod
        if row.any():
            Q[:, t + 1:] = (Q[:, t + 1:] - np.outer(Q[:, t], row)) % mod
            R[t, t + 1:] = 0
        vals[t] = level
        units[t] = u
    if max(vals) > N - 2:
        return None
    order = sorted(range(m), key=lambda k: (vals[k], k))
    P = P[order]
    Q = Q[:, order]
    vals = [vals[k] for k in order]
    units = [units[k] for k in order]
    diag = [(ell ** v * u) % mod for v, u in zip(vals, units)]
    return SNFResult(P, Q, diag, vals, "LOCAL", ell, N, units)


def snf_local(A: np.ndarray, ell: int, start: int = LOCAL_START) -> SNFResult:
    N = start
    while N <= PRECISION_CAP:
        out = _local_once(A, ell, N)
        if out is not None:
            return out
        N *= 2
    raise PrecisionError(f"local Smith form needs precision beyond {PRECISION_CAP}")


def snf(A: np.ndarray, ell: int, mode: str = "AUTO") -> SNFResult:
    mode = mode.upper()
    if mode == "AUTO":
        mode = "EXACT" if np.asarray(A).shape[0] <= EXACT_LIMIT else "LOCAL"
    if mode == "EXACT":
        return snf_exact(A, ell)
    if mode == "LOCAL":
        return snf_local(A, ell)
    raise ValueError(f"unknown Smith form mode {mode!r}")


def check_snf(A: np.ndarray, res: SNFResult) -> bool:
    """X A Y^T == D (exactly, or mod l^N in LOCAL mode)."""
    Ao = np.asarray(A, dtype=object)
    prod = np.asarray(res.P, dtype=object) @ Ao @ np.asarray(res.Q, dtype=object)
    D = np.zeros_like(prod)
    for i, x in enumerate(res.diag):
        D[i, i] = x
    if res.mode == "EXACT":
        return bool((prod == D).all())
    mod = res.ell ** res.precision
    return bool(((prod - D) % mod == 0).all())
