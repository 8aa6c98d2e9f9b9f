"""The Steinberg lattice I = ZGe with basis {ue : u in U}.

Coordinates follow the basis order of ``GLn.U``.  Integer vectors have shape
(m,), cyclotomic vectors shape (m, p-1) (canonical coefficients of Z[zeta_p]),
and K-vectors shape (m, d) (coordinates over F_l).  Every generator acts by
an integer matrix, so the same sparse action serves all three rings.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np
import scipy.sparse as sp

from .group import GLn, Root, fadd, fmatmul, perm_sign, positive_roots, root_sum
from .rings import CycInt, KField, cyc_canon, cyc_lift, cyc_reduce_array


# --- characters of U -------------------------------------------------------------

@dataclass(frozen=True)
class UCharacter:
    """lambda(u) = nu(sum_r c_r u_{i,i+1}) with nu(a) = zeta_p^Tr(a).

    ``coeffs[i-1]`` is the GF(q) code c_r for r = [i, i+1]."""

    coeffs: tuple

    @property
    def J(self) -> tuple:
        return tuple(i + 1 for i, c in enumerate(self.coeffs) if c)

    @property
    def trivial(self) -> bool:
        return not any(self.coeffs)

    def inverse(self, F) -> "UCharacter":
        return UCharacter(tuple(F.neg(c) for c in self.coeffs))

    def times(self, other: "UCharacter", F) -> "UCharacter":
        return UCharacter(tuple(F.add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    @classmethod
    def on_root(cls, n: int, i: int, c: int) -> "UCharacter":
        """lambda[r] for r = [i, i+1] and the base character twisted by c."""
        coeffs = [0] * (n - 1)
        coeffs[i - 1] = c
        return cls(tuple(coeffs))

    @classmethod
    def representative(cls, n: int, J) -> "UCharacter":
        """A fixed character with J(lambda) = J (coefficient 1 on J)."""
        return cls(tuple(int(i in J) for i in range(1, n)))


def all_characters(n: int, q: int):
    for coeffs in itertools.product(range(q), repeat=n - 1):
        yield UCharacter(tuple(coeffs))


# --- operator expressions ---------------------------------------------------------

@dataclass(frozen=True)
class GroupElem:
    g: np.ndarray = field(compare=False)


@dataclass(frozen=True)
class RootSum:
    r: Root


@dataclass(frozen=True)
class TwistedRootSum:
    """sum_a nu(c a) t_r(a): the root sum twisted by the character nu(c .)."""
    r: Root
    c: int


@dataclass(frozen=True)
class ComplementSum:
    r: Root
    s: Root


@dataclass(frozen=True)
class Scalar:
    z: object


@dataclass(frozen=True)
class GramTable:
    n: int
    q: int
    c: tuple

    def __getitem__(self, k):
        return self.c[k]


class SteinbergLattice:
    def __init__(self, n: int, q: int):
        self.G = GLn(n, q)
        self.n, self.q = n, q
        self.F = self.G.F
        self.p = self.G.p
        self.m = self.G.order_U
        self._gram: GramTable | None = None

    def __repr__(self):
        return f"SteinbergLattice(n={self.n}, q={self.q})"

    @property
    def U(self) -> np.ndarray:
        return self.G.U

    # --- U translations ------------------------------------------------------

    def translation(self, u: np.ndarray) -> np.ndarray:
        """perm with perm[k] = index(u * U[k])."""
        return self.G.index_of(fmatmul(self.F, u, self.U))

    def translate(self, u: np.ndarray, x: np.ndarray) -> np.ndarray:
        y = np.zeros_like(x)
        y[self.translation(u)] = x
        return y

    # --- the Gram table -------------------------------------------------------

    @cached_property
    def _signed_perms(self):
        n = self.n
        out = []
        for perm in itertools.permutations(range(n)):
            out.append((np.array(perm), perm_sign(perm)))
        return out

    def gram_c(self, w: np.ndarray) -> int:
        """f(we, e) with f(e, e) = n!.

        Sum of sign(s) sign(t) over pairs of permutation matrices with
        s^{-1} w t in B.  For fixed s the matrix t is forced: column j of
        (s^{-1} w) t must have its lowest nonzero entry in row j.  Only the
        zero pattern of w matters."""
        return self._gram_pattern(tuple(int(bool(w[i, j])) for (i, j) in self.G.positions))

    @lru_cache(maxsize=None)
    def _gram_pattern(self, pattern) -> int:
        n = self.n
        nz = np.eye(n, dtype=bool)
        for bit, (i, j) in zip(pattern, self.G.positions):
            nz[i, j] = bool(bit)
        total = 0
        rows = np.arange(n)
        for perm, sign in self._signed_perms:
            M = nz[perm, :]  # (s^{-1} w)[i, :] = w[s(i), :]
            low = np.where(M.any(axis=0), n - 1 - np.argmax(M[::-1, :], axis=0), -1)
            if np.array_equal(np.sort(low), rows):
                total += sign * perm_sign(low)
        return total

    def gram_table(self) -> GramTable:
        if self._gram is None:
            self._gram = self._compute_gram_table()
        return self._gram

    def install_gram_table(self, table: GramTable):
        """Use a precomputed (e.g. cached) table; shape and c(1) = n! are checked."""
        if (table.n, table.q) != (self.n, self.q) or len(table.c) != self.m:
            raise ValueError("Gram table does not match the lattice")
        if table.c[0] != math.factorial(self.n):
            raise ValueError("Gram table is not normalized: c(1) != n!")
        self._gram = table

    def _compute_gram_table(self) -> GramTable:
        patterns = (self.U[:, [i for i, _ in self.G.positions], [j for _, j in self.G.positions]] != 0)
        c = tuple(self._gram_pattern(tuple(int(b) for b in row)) for row in patterns)
        return GramTable(self.n, self.q, c)

    def gram_matrix(self, table: GramTable | None = None) -> np.ndarray:
        """A[u, v] = c(u^{-1} v) as an int64 matrix (entries bounded by n!)."""
        table = table or self.gram_table()
        c = np.array(table.c, dtype=np.int64)
        inverses = self.G.u_inverse_stack(self.U)
        A = np.empty((self.m, self.m), dtype=np.int64)
        for k in range(self.m):
            A[k] = c[self.G.index_of(fmatmul(self.F, inverses[k], self.U))]
        return A

    # --- generator actions ------------------------------------------------------

    @lru_cache(maxsize=None)
    def _action_coo(self, label) -> tuple:
        """(rows, cols, data) of the integer matrix of a generator."""
        F, G, U, m = self.F, self.G, self.U, self.m
        cols = np.arange(m)
        kind = label[0]
        if kind == "t":
            rows = self.translation(G.generator_matrix(label))
            return rows, cols, np.ones(m, dtype=np.int64)
        if kind == "h":
            h = G.generator_matrix(label)
            conj = fmatmul(F, fmatmul(F, h, U), G.inv(h))
            return G.index_of(conj), cols, np.ones(m, dtype=np.int64)
        if kind != "w":
            raise ValueError(f"unknown generator {label!r}")
        i = label[1] - 1
        c = U[:, i, i + 1]
        # u'' = u t_r(-c): column i+1 gets -c times column i
        upp = U.copy()
        upp[:, :, i + 1] = fadd(F, U[:, :, i + 1], F.mul_table[F.neg_table[c][:, None], U[:, :, i]])
        v = upp.copy()
        v[:, [i, i + 1], :] = v[:, [i + 1, i], :]
        v[:, :, [i, i + 1]] = v[:, :, [i + 1, i], ]
        v_idx = G.index_of(v)
        nz = c != 0
        # w_r t_r(c) e = t_r(c^{-1}) e - e for the permutation matrix w_r;
        # v t_r(c^{-1}): column i+1 gets c^{-1} times column i
        s = F.inv_table[c]
        vt = v.copy()
        vt[:, :, i + 1] = fadd(F, v[:, :, i + 1], F.mul_table[s[:, None], v[:, :, i]])
        vt_idx = G.index_of(vt)
        rows = np.concatenate([v_idx, vt_idx[nz]])
        cc = np.concatenate([cols, cols[nz]])
        data = np.concatenate([-np.ones(m, dtype=np.int64), np.ones(int(nz.sum()), dtype=np.int64)])
        return rows, cc, data

    @lru_cache(maxsize=None)
    def action(self, label) -> sp.csr_matrix:
        rows, cols, data = self._action_coo(label)
        return sp.csr_matrix((data, (rows, cols)), shape=(self.m, self.m), dtype=np.int64)

    def act_matrix(self, label) -> np.ndarray:
        return self.action(label).toarray()

    def act_gen(self, label, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x)
        if x.dtype == object:
            rows, cols, data = self._action_coo(label)
            out = np.zeros_like(x)
            scale = data.reshape((-1,) + (1,) * (x.ndim - 1)).astype(object)
            np.add.at(out, rows, scale * x[cols])
            return out
        return self.action(label) @ x

    def act_word(self, word, x: np.ndarray) -> np.ndarray:
        for label in reversed(word):
            x = self.act_gen(label, x)
        return x

    def act_element(self, g: np.ndarray, x: np.ndarray) -> np.ndarray:
        if self.G.is_unitriangular(g):
            return self.translate(g, x)
        return self.act_word(self.G.gl_word(g), x)

    # --- distinguished vectors -------------------------------------------------------

    def e_vector(self, trailing=()) -> np.ndarray:
        x = np.zeros((self.m,) + tuple(trailing), dtype=np.int64)
        x[(0,) + (0,) * len(trailing)] = 1
        return x

    def basis_vector(self, k: int, trailing=()) -> np.ndarray:
        x = np.zeros((self.m,) + tuple(trailing), dtype=np.int64)
        x[(k,) + (0,) * len(trailing)] = 1
        return x

    @cached_property
    def _trace_table(self) -> np.ndarray:
        return np.array([self.F.trace(a) for a in self.F.elements()], dtype=np.int64)

    def char_exponents(self, lam: UCharacter) -> np.ndarray:
        """Tr(sum_r c_r u_{i,i+1}) for every u, so lambda(u) = zeta^result."""
        F = self.F
        s = np.zeros(self.m, dtype=np.int64)
        for i, c in enumerate(lam.coeffs):
            if c:
                s = F.add_table[s, F.mul_table[c, self.U[:, i, i + 1]]]
        return self._trace_table[s]

    def build_E(self, lam: UCharacter) -> np.ndarray:
        """E_lambda = sum_u lambda(u) ue, as canonical Z[zeta_p] coordinates."""
        k = self.char_exponents(lam)
        cyc = np.zeros((self.m, self.p), dtype=np.int64)
        cyc[np.arange(self.m), k] = 1
        return cyc_canon(cyc)

    def build_E_K(self, lam: UCharacter, K: KField, factor_index: int = 0) -> np.ndarray:
        return cyc_reduce_array(self.build_E(lam), K, factor_index)

    # --- the form ---------------------------------------------------------------------

    def f_eval(self, x: np.ndarray, y: np.ndarray, A: np.ndarray):
        """f(x, y) = sum_{u,v} x_u y_v c(u^{-1} v) for integer or cyclotomic vectors."""
        if x.ndim == 1 and y.ndim == 1:
            return int(np.asarray(x, dtype=object) @ (A.astype(object) @ np.asarray(y, dtype=object)))
        if x.ndim == 1:
            x = _int_to_cyc(x, self.p)
        if y.ndim == 1:
            y = _int_to_cyc(y, self.p)
        return cyc_pair(x, A.astype(object) @ y.astype(object), self.p)

    # --- operator expressions ----------------------------------------------------------

    @lru_cache(maxsize=None)
    def _root_translations(self, r: Root) -> tuple:
        return tuple(self.translation(self.G.t_elem(r, a)) for a in self.F.elements())

    def complement_elements(self, r: Root, s: Root) -> list[np.ndarray]:
        """Elements of the product of X_t, t in Phi+ minus {r, s, r+s},
        multiplied in height-then-lex root order."""
        rs = root_sum(r, s)
        if self.n < 3 or rs is None or not (r.simple and s.simple) or r == s:
            raise ValueError(f"({r}, {s}) must be distinct non-orthogonal simple roots")
        roots = [t for t in positive_roots(self.n) if t not in (r, s, rs)]
        out = []
        for vals in itertools.product(self.F.elements(), repeat=len(roots)):
            g = self.G.identity()
            for t, a in zip(roots, vals):
                g = self.G.mul(g, self.G.t_elem(t, a))
            out.append(g)
        return out

    def operator_apply(self, expr, x: np.ndarray) -> np.ndarray:
        """Apply an operator product; the rightmost atom acts first."""
        for atom in reversed(list(expr)):
            x = self._apply_atom(atom, x)
        return x

    def _apply_atom(self, atom, x):
        if isinstance(atom, Scalar):
            z = atom.z
            if isinstance(z, CycInt):
                return cyc_scale(x, z)
            return x * z
        if isinstance(atom, GroupElem):
            return self.act_element(np.asarray(atom.g), x)
        if isinstance(atom, RootSum):
            return self._root_sum(atom.r, x, None)
        if isinstance(atom, TwistedRootSum):
            if x.ndim != 2 or x.shape[1] != max(self.p - 1, 1):
                raise ValueError("twisted root sums need Z[zeta_p] coordinates")
            return self._root_sum(atom.r, x, atom.c)
        if isinstance(atom, ComplementSum):
            out = np.zeros_like(x)
            for g in self.complement_elements(atom.r, atom.s):
                out = out + self.translate(g, x)
            return out
        raise TypeError(f"unknown operator atom {atom!r}")

    def _root_sum(self, r: Root, x, c):
        if not r.positive:
            terms = [self.act_element(self.G.t_elem(r, a), x) for a in self.F.elements()]
        else:
            terms = []
            for a, perm in zip(self.F.elements(), self._root_translations(r)):
                y = np.zeros_like(x)
                y[perm] = x
                terms.append(y)
        if c is None:
            return sum(terms[1:], terms[0])
        out = np.zeros((x.shape[0], self.p), dtype=x.dtype)
        for a, y in zip(self.F.elements(), terms):
            k = self.F.trace(self.F.mul(c, a))
            out = out + np.roll(cyc_lift(y), k, axis=-1)
        return cyc_canon(out)


# --- cyclotomic vector helpers --------------------------------------------------------

def _int_to_cyc(x: np.ndarray, p: int) -> np.ndarray:
    out = np.zeros((x.shape[0], max(p - 1, 1)), dtype=x.dtype)
    out[:, 0] = x
    return out


def cyc_pair(x: np.ndarray, y: np.ndarray, p: int) -> CycInt:
    """sum_k x_k y_k for canonical coordinate arrays of shape (m, p-1)."""
    a = cyc_lift(np.asarray(x, dtype=object))
    b = cyc_lift(np.asarray(y, dtype=object))
    C = a.T @ b  # (p, p)
    out = [0] * p
    for i in range(p):
        for j in range(p):
            out[(i + j) % p] += C[i, j]
    return CycInt.from_cyclic(out, p)


def cyc_scale(x: np.ndarray, z: CycInt) -> np.ndarray:
    cyc = cyc_lift(x)
    out = np.zeros_like(cyc)
    for k, c in enumerate(z.cyclic()):
        if c:
            out = out + c * np.roll(cyc, k, axis=-1)
    return cyc_canon(out)


def cyc_vector_to_list(x: np.ndarray, p: int) -> list[CycInt]:
    return [CycInt(tuple(int(c) for c in row), p) for row in np.asarray(x)]


# --- the expansion oracle ------------------------------------------------------------------

def expand_e(G: GLn) -> dict:
    """e = (sum sign(s) s)(sum_b b) as {matrix bytes: coefficient}."""
    F = G.F
    borel = []
    for diag in itertools.product(list(F.nonzero()), repeat=G.n):
        h = G.diag(diag)
        for u in G.U:
            borel.append(G.mul(u, h))
    e = {}
    for perm, s in G.weyl():
        sign = perm_sign(perm)
        for b in borel:
            key = G.mul(s, b).tobytes()
            assert key not in e
            e[key] = sign
    return e, len(borel)


def left_multiply(G: GLn, g: np.ndarray, elem: dict) -> dict:
    out = {}
    n = G.n
    for key, c in elem.items():
        h = np.frombuffer(key, dtype=np.int64).reshape(n, n)
        out[G.mul(g, h).tobytes()] = c
    return out


def canonical_pairing(x: dict, y: dict) -> int:
    return sum(c * y.get(k, 0) for k, c in x.items())


def gram_matrix_by_expansion(n: int, q: int) -> np.ndarray:
    """|U| x |U| matrix of (ue, ve) / |B| from the explicit group-algebra
    expansion of e; only feasible for tiny n, q."""
    G = GLn(n, q)
    e, order_B = expand_e(G)
    translates = [left_multiply(G, u, e) for u in G.U]
    m = len(translates)
    A = np.zeros((m, m), dtype=np.int64)
    for i in range(m):
        for j in range(i, m):
            val = canonical_pairing(translates[i], translates[j])
            assert val % order_B == 0
            A[i, j] = A[j, i] = val // order_B
    return A


@lru_cache(maxsize=16)
def lattice(n: int, q: int) -> SteinbergLattice:
    return SteinbergLattice(n, q)
