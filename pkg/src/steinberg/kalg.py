"""Dense linear algebra over K = F_{l^d}.

A K-array has shape (d', ...) with d' in {1, d}: slice k holds the
coefficient of x^k in the polynomial basis of K.  d' = 1 marks arrays with
entries in the prime field, which keeps integer action matrices cheap.
Products run through float64 BLAS; every intermediate is an integer below
2^53, so the results are exact.
"""
from __future__ import annotations

import numpy as np

from .rings import KField


class KAlg:
    def __init__(self, K: KField):
        self.K = K
        self.ell = K.ell
        self.d = K.d
        d = self.d
        # x^k in coordinates, k < 2d - 1
        red = np.zeros((max(2 * d - 1, 1), d), dtype=np.int64)
        cur = [1] + [0] * (d - 1)
        mod = [int(c) for c in K.modulus]
        for k in range(2 * d - 1):
            red[k] = cur
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(c - top * m) % self.ell for c, m in zip(cur, mod[:d])]
        self._red = red

    # --- conversions -------------------------------------------------------------

    def from_codes(self, codes) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        out = np.empty((self.d,) + codes.shape, dtype=np.int64)
        for k in range(self.d):
            out[k] = (codes // self.ell ** k) % self.ell
        return out

    def to_codes(self, arr) -> np.ndarray:
        arr = self.full(arr)
        w = self.ell ** np.arange(self.d, dtype=np.int64)
        return np.tensordot(w, arr, axes=(0, 0))

    def from_coords_last(self, coords) -> np.ndarray:
        """(..., d) coordinate layout -> (d, ...)."""
        return np.moveaxis(np.asarray(coords, dtype=np.int64) % self.ell, -1, 0)

    def prime(self, M) -> np.ndarray:
        return (np.asarray(M, dtype=np.int64) % self.ell)[None]

    def full(self, a) -> np.ndarray:
        a = np.asarray(a)
        if a.shape[0] == self.d:
            return a
        out = np.zeros((self.d,) + a.shape[1:], dtype=np.int64)
        out[0] = a[0]
        return out

    def scalar(self, code: int) -> np.ndarray:
        return self.from_codes(np.array(code))

    def zeros(self, *shape) -> np.ndarray:
        return np.zeros((self.d,) + shape, dtype=np.int64)

    def eye(self, m: int) -> np.ndarray:
        out = self.zeros(m, m)
        out[0] = np.eye(m, dtype=np.int64)
        return out

    # --- arithmetic -----------------------------------------------------------------

    def _combine(self, parts):
        """Sum of x^k * parts[k], reduced into (d, ...)."""
        if len(parts) <= self.d:
            out = np.zeros((len(parts),) + parts[0].shape, dtype=np.float64)
            for k, c in enumerate(parts):
                out[k] = c
            return np.mod(out, self.ell).astype(np.int64)
        out = np.zeros((self.d,) + parts[0].shape, dtype=np.float64)
        for k, c in enumerate(parts):
            c = np.mod(c, self.ell)
            for t in range(self.d):
                if self._red[k, t]:
                    out[t] += self._red[k, t] * c
        return np.mod(out, self.ell).astype(np.int64)

    def _bilinear(self, a, b, op):
        da, db = a.shape[0], b.shape[0]
        parts = [None] * (da + db - 1)
        fa = [a[i].astype(np.float64) if a[i].any() else None for i in range(da)]
        fb = [b[j].astype(np.float64) if b[j].any() else None for j in range(db)]
        shape = None
        for i in range(da):
            for j in range(db):
                if fa[i] is None or fb[j] is None:
                    continue
                prod = op(fa[i], fb[j])
                shape = prod.shape
                parts[i + j] = prod if parts[i + j] is None else parts[i + j] + prod
        if shape is None:
            shape = op(np.zeros(a.shape[1:]), np.zeros(b.shape[1:])).shape
        parts = [np.zeros(shape) if p is None else p for p in parts]
        return self._combine(parts)

    def matmul(self, a, b) -> np.ndarray:
        return self._bilinear(np.asarray(a), np.asarray(b), np.matmul)

    def mul(self, a, b) -> np.ndarray:
        """Elementwise product with broadcasting."""
        return self._bilinear(np.asarray(a), np.asarray(b), np.multiply)

    def add(self, a, b) -> np.ndarray:
        a, b = np.asarray(a), np.asarray(b)
        if a.shape[0] != b.shape[0]:
            a, b = self.full(a), self.full(b)
        return (a + b) % self.ell

    def sub(self, a, b) -> np.ndarray:
        a, b = np.asarray(a), np.asarray(b)
        if a.shape[0] != b.shape[0]:
            a, b = self.full(a), self.full(b)
        return (a - b) % self.ell

    def neg(self, a) -> np.ndarray:
        return (-np.asarray(a)) % self.ell

    def inv_codes(self, codes) -> np.ndarray:
        return self.K.inv_table[np.asarray(codes)]

    def is_zero(self, a) -> bool:
        return not np.asarray(a).any()

    def transpose(self, a) -> np.ndarray:
        return np.swapaxes(a, -1, -2)

    # --- echelon forms ------------------------------------------------------------------

    def rref(self, a) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form of a (d', r, c) matrix; zero rows dropped."""
        A = np.array(a, dtype=np.int64, copy=True)
        r, c = A.shape[1], A.shape[2]
        pivots = []
        row = 0
        for col in range(c):
            if row == r:
                break
            nz = np.nonzero(A[:, row:, col].any(axis=0))[0]
            if nz.size == 0:
                continue
            pr = row + int(nz[0])
            if pr != row:
                A[:, [row, pr]] = A[:, [pr, row]]
            code = int(self.to_codes(A[:, row, col][:, None])[0])
            inv = self.scalar(self.K.inv(code))[: A.shape[0]]
            A[:, row] = self.mul(inv[:, None], A[:, row])
            colv = A[:, :, col].copy()
            colv[:, row] = 0
            if colv.any():
                A = self.sub(A, self.mul(colv[:, :, None], A[:, row][:, None, :]))
            pivots.append(col)
            row += 1
        return A[:, :row], pivots

    def rank(self, a) -> int:
        return len(self.rref(a)[1])

    def nullspace(self, a) -> np.ndarray:
        """Rows spanning {x : a x = 0} for a (d', r, c) matrix."""
        a = np.asarray(a)
        c = a.shape[2]
        R, piv = self.rref(a)
        free = [j for j in range(c) if j not in set(piv)]
        out = self.zeros(len(free), c) if R.shape[0] == self.d else np.zeros((1, len(free), c), dtype=np.int64)
        for k, j in enumerate(free):
            out[0, k, j] = 1
            for i, pc in enumerate(piv):
                out[:, k, pc] = (-R[:, i, j]) % self.ell
        return out

    def inverse(self, a) -> np.ndarray:
        a = np.asarray(a)
        m = a.shape[1]
        aug = np.concatenate([self.full(a), self.eye(m)], axis=2)
        R, piv = self.rref(aug)
        if len(piv) < m or piv[m - 1] != m - 1:
            raise np.linalg.LinAlgError("singular matrix over K")
        return R[:, :, m:]


class Echelon:
    """A growing subspace of K^D kept in reduced row echelon form."""

    def __init__(self, alg: KAlg, D: int):
        self.alg = alg
        self.D = D
        self.basis = np.zeros((1, 0, D), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, V) -> np.ndarray:
        """V minus its projection onto the span along the pivot coordinates."""
        V = np.asarray(V)
        if not self.pivots or V.shape[1] == 0:
            return V
        coef = V[:, :, self.pivots]
        return self.alg.sub(V, self.alg.matmul(coef, self.basis))

    def add(self, V) -> np.ndarray:
        """Insert the rows of V; returns the new independent rows (in RREF)."""
        alg = self.alg
        W = self.reduce(V)
        W = W[:, np.asarray(W).any(axis=0).any(axis=1)] if W.shape[1] else W
        if W.shape[1] == 0:
            return W
        R, piv = alg.rref(W)
        if not piv:
            return R
        B = self.basis
        if self.pivots:
            coef = B[:, :, piv]
            if coef.any():
                B = alg.sub(B, alg.matmul(coef, R))
        if B.shape[0] != R.shape[0]:
            B, R = alg.full(B), alg.full(R)
        allb = np.concatenate([B, R], axis=1)
        allp = self.pivots + piv
        order = np.argsort(allp, kind="stable")
        self.basis = allb[:, order]
        self.pivots = [allp[i] for i in order]
        return R

    def contains(self, v) -> bool:
        v = np.asarray(v)
        if v.ndim == 2:
            v = v[:, None, :]
        return not self.reduce(v).any()
