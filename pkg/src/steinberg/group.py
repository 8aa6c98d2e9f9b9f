"""Type A root data and matrices in GL_n(q).

Matrices are numpy integer arrays of field-element codes (see ``rings.GF``).
Roots are 1-based pairs [i, j] = e_i - e_j.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .rings import GF, prime_power, val_int


@dataclass(frozen=True, order=True)
class Root:
    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError("[i, i] is not a root")

    @property
    def positive(self) -> bool:
        return self.i < self.j

    @property
    def simple(self) -> bool:
        return self.j == self.i + 1

    @property
    def height(self) -> int:
        return self.j - self.i

    def __neg__(self):
        return Root(self.j, self.i)

    def __repr__(self):
        return f"[{self.i},{self.j}]"


def simple_root(i: int) -> Root:
    return Root(i, i + 1)


def root_sum(r: Root, s: Root) -> Root | None:
    """The root r + s, or None when the formal sum is not a root."""
    if r.j == s.i and r.i != s.j:
        return Root(r.i, s.j)
    if s.j == r.i and s.i != r.j:
        return Root(s.i, r.j)
    return None


def root_orth(r: Root, s: Root) -> bool:
    """Euclidean orthogonality of e_i - e_j and e_k - e_l."""
    def coord(x, k):
        return (x.i == k) - (x.j == k)
    return sum(coord(r, k) * coord(s, k) for k in {r.i, r.j, s.i, s.j}) == 0


def root_apply(w, r: Root) -> Root:
    """w([i, j]) = [w(i), w(j)] for a permutation given as a 1-based mapping
    (dict or tuple where w[k-1] is the image of k)."""
    if isinstance(w, dict):
        return Root(w[r.i], w[r.j])
    return Root(w[r.i - 1], w[r.j - 1])


def positive_roots(n: int, order: str = "height") -> list[Root]:
    roots = [Root(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    if order == "height":
        roots.sort(key=lambda r: (r.height, r.i))
    return roots


def all_roots(n: int) -> list[Root]:
    return [Root(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]


def perm_sign(perm) -> int:
    perm = list(perm)
    sign, seen = 1, [False] * len(perm)
    for k in range(len(perm)):
        if not seen[k]:
            length, x = 0, k
            while not seen[x]:
                seen[x] = True
                x = perm[x]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


# --- matrix arithmetic over GF(q) ---------------------------------------------

def fmatmul(F: GF, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Product of (stacks of) matrices over F."""
    if F.e == 1:
        return np.matmul(A, B) % F.p
    A, B = np.broadcast_arrays(A[..., :, :, None], B[..., None, :, :])
    prods = F.mul_table[A, B]
    out = prods[..., 0, :]
    add = F.add_table
    for k in range(1, prods.shape[-2]):
        out = add[out, prods[..., k, :]]
    return out


def fneg(F: GF, A: np.ndarray) -> np.ndarray:
    return F.neg_table[A]


def fadd(F: GF, A, B) -> np.ndarray:
    return F.add_table[A, B]


def finv(F: GF, g: np.ndarray) -> np.ndarray:
    """Inverse of a single matrix by Gauss-Jordan; raises on singular input."""
    n = g.shape[0]
    A = [[int(x) for x in row] + [int(i == k) for k in range(n)] for i, row in enumerate(g)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            raise ValueError("singular matrix")
        A[c], A[piv] = A[piv], A[c]
        inv = F.inv(A[c][c])
        A[c] = [F.mul(inv, x) for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[r], A[c])]
    return np.array([row[n:] for row in A], dtype=np.int64)


def fdet(F: GF, g: np.ndarray) -> int:
    n = g.shape[0]
    A = [[int(x) for x in row] for row in g]
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = F.neg(det)
        det = F.mul(det, A[c][c])
        inv = F.inv(A[c][c])
        for r in range(c + 1, n):
            if A[r][c]:
                f = F.mul(A[r][c], inv)
                A[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[r], A[c])]
    return det


class GLn:
    """GL_n(q) with its standard subgroups, generators, and the basis
    indexing of the unitriangular group U."""

    def __init__(self, n: int, q: int):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.q = q
        self.p, self.e = prime_power(q)
        self.F = GF(self.p, self.e)
        self.positions = [(i, j) for i in range(n) for j in range(i + 1, n)]
        self.N = len(self.positions)
        self.order_U = q ** self.N

    def __repr__(self):
        return f"GL({self.n},{self.q})"

    # --- elements ------------------------------------------------------------

    def identity(self) -> np.ndarray:
        return np.eye(self.n, dtype=np.int64)

    def mul(self, *gs) -> np.ndarray:
        out = gs[0]
        for g in gs[1:]:
            out = fmatmul(self.F, out, g)
        return out

    def inv(self, g):
        return finv(self.F, g)

    def det(self, g):
        return fdet(self.F, g)

    def t_elem(self, r: Root, a: int) -> np.ndarray:
        g = self.identity()
        g[r.i - 1, r.j - 1] = a
        return g

    def w_elem(self, r: Root) -> np.ndarray:
        g = self.identity()
        i, j = r.i - 1, r.j - 1
        g[[i, j]] = g[[j, i]]
        return g

    def perm_matrix(self, perm) -> np.ndarray:
        """Permutation matrix sending e_k to e_{perm[k]} (0-based tuple)."""
        g = np.zeros((self.n, self.n), dtype=np.int64)
        for k, pk in enumerate(perm):
            g[pk, k] = 1
        return g

    def h_elem(self, i: int, c: int) -> np.ndarray:
        g = self.identity()
        g[i - 1, i - 1] = c
        return g

    def diag(self, entries) -> np.ndarray:
        g = np.zeros((self.n, self.n), dtype=np.int64)
        g[np.arange(self.n), np.arange(self.n)] = entries
        return g

    def in_B(self, g) -> bool:
        g = np.asarray(g)
        return bool(np.all(np.tril(g, -1) == 0) and np.all(np.diag(g) != 0))

    def is_unitriangular(self, g) -> bool:
        g = np.asarray(g)
        return bool(np.all(np.tril(g, -1) == 0) and np.all(np.diag(g) == 1))

    def u_factor(self, u: np.ndarray, r: Root) -> tuple[np.ndarray, int]:
        """u = u'' t_r(c) with c = u[i, i+1] and u''[i, i+1] = 0."""
        if not r.simple:
            raise ValueError(f"{r} is not a simple root")
        c = int(u[r.i - 1, r.j - 1])
        return self.mul(u, self.t_elem(r, self.F.neg(c))), c

    # --- basis index of U ----------------------------------------------------

    def u_index(self, u) -> int:
        k = 0
        for (i, j) in self.positions:
            k = k * self.q + int(u[i, j])
        return k

    def u_decode(self, k: int) -> np.ndarray:
        u = self.identity()
        for (i, j) in reversed(self.positions):
            u[i, j] = k % self.q
            k //= self.q
        return u

    @cached_property
    def U(self) -> np.ndarray:
        """All of U as a stack (|U|, n, n) in basis order."""
        m = self.order_U
        stack = np.broadcast_to(np.eye(self.n, dtype=np.int64), (m, self.n, self.n)).copy()
        k = np.arange(m)
        for pos, (i, j) in enumerate(reversed(self.positions)):
            stack[:, i, j] = (k // self.q ** pos) % self.q
        return stack

    def index_of(self, stack: np.ndarray) -> np.ndarray:
        """Vectorized UniIndex of a stack of unitriangular matrices."""
        k = np.zeros(stack.shape[:-2], dtype=np.int64)
        for (i, j) in self.positions:
            k = k * self.q + stack[..., i, j]
        return k

    def u_inverse_stack(self, stack: np.ndarray) -> np.ndarray:
        """Inverse of unitriangular matrices: sum of (-N)^k."""
        eye = np.eye(self.n, dtype=np.int64)
        negN = fneg(self.F, np.where(eye.astype(bool), 0, stack))
        out = np.broadcast_to(eye, stack.shape).copy()
        power = out
        for _ in range(self.n - 1):
            power = fmatmul(self.F, power, negN)
            out = fadd(self.F, out, power)
        return out

    # --- generators ------------------------------------------------------------

    @cached_property
    def additive_basis(self) -> list[int]:
        return [self.p ** k for k in range(self.e)]

    @property
    def mult_generator(self) -> int:
        return self.F.generator

    def generator_labels(self, minimal: bool = False) -> list[tuple]:
        """Labels ('t', i, a), ('w', i), ('h', i, c) of the fixed generators.

        With ``minimal`` only a generating subset is returned: t_r(a) for a
        in an additive basis of GF(q), every w_r, and h_1(c)."""
        n, c = self.n, self.mult_generator
        avals = self.additive_basis if minimal else list(self.F.nonzero())
        labels = [("t", i, a) for i in range(1, n) for a in avals]
        labels += [("w", i) for i in range(1, n)]
        if minimal:
            if self.q > 2:
                labels.append(("h", 1, c))
        else:
            labels += [("h", i, c) for i in range(1, n + 1)]
        return labels

    def generator_matrix(self, label) -> np.ndarray:
        kind = label[0]
        if kind == "t":
            return self.t_elem(simple_root(label[1]), label[2])
        if kind == "w":
            return self.w_elem(simple_root(label[1]))
        if kind == "h":
            return self.h_elem(label[1], label[2])
        raise ValueError(f"unknown generator {label!r}")

    def inverse_label_word(self, label) -> list[tuple]:
        kind = label[0]
        if kind == "t":
            return [("t", label[1], self.F.neg(label[2]))]
        if kind == "w":
            return [label]
        return [("h", label[1], self.F.inv(label[2]))]

    def word_product(self, word) -> np.ndarray:
        out = self.identity()
        for label in word:
            out = self.mul(out, self.generator_matrix(label))
        return out

    # --- words ---------------------------------------------------------------------

    def _root_element_word(self, i: int, j: int, a: int) -> list[tuple]:
        """Word for t_{[i,j]}(a), i < j (1-based), via w t w^{-1} = t_{w(r)}."""
        if a == 0:
            return []
        if j == i + 1:
            return [("t", i, a)]
        return [("w", j - 1)] + self._root_element_word(i, j - 1, a) + [("w", j - 1)]

    def unitriangular_word(self, u: np.ndarray) -> list[tuple]:
        """Clear columns right-to-left by column operations; u is the
        product of the inverse operations in reverse order."""
        F = self.F
        A = u.copy()
        ops = []
        for j in range(self.n - 1, 0, -1):
            for i in range(j - 1, -1, -1):
                c = int(A[i, j])
                if c:
                    A = self.mul(A, self.t_elem(Root(i + 1, j + 1), F.neg(c)))
                    ops.append((i + 1, j + 1, c))
        word = []
        for i, j, c in reversed(ops):
            word += self._root_element_word(i, j, c)
        return word

    def bruhat_split(self, g: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """g = u1 m u2 with u1, u2 unitriangular and m monomial."""
        F = self.F
        A = g.copy()
        L, R = self.identity(), self.identity()
        used = set()
        for j in range(self.n):
            rows = [k for k in range(self.n) if k not in used and A[k, j]]
            if not rows:
                raise ValueError("singular matrix")
            k = max(rows)
            pinv = F.inv(int(A[k, j]))
            for i in range(k):
                if A[i, j]:
                    t = self.t_elem(Root(i + 1, k + 1), F.neg(F.mul(int(A[i, j]), pinv)))
                    A, L = self.mul(t, A), self.mul(t, L)
            for jj in range(j + 1, self.n):
                if A[k, jj]:
                    t = self.t_elem(Root(j + 1, jj + 1), F.neg(F.mul(int(A[k, jj]), pinv)))
                    A, R = self.mul(A, t), self.mul(R, t)
            used.add(k)
        return self.inv(L), A, self.inv(R)

    def monomial_word(self, m: np.ndarray) -> list[tuple]:
        F, n = self.F, self.n
        cols = [int(np.nonzero(m[i])[0][0]) for i in range(n)]
        word = []
        c = self.mult_generator
        for i in range(n):
            d = int(m[i, cols[i]])
            if d != 1:
                word += [("h", i + 1, c)] * int(F.log[d])
        # P = perm_matrix(pi) with pi(cols[i]) = i; bubble-sort pi's one-line
        # form by adjacent swaps pi -> pi o s_a, then P = W_{a_m} ... W_{a_1}
        pi = [0] * n
        for i in range(n):
            pi[cols[i]] = i
        swaps = []
        changed = True
        while changed:
            changed = False
            for k in range(n - 1):
                if pi[k] > pi[k + 1]:
                    pi[k], pi[k + 1] = pi[k + 1], pi[k]
                    swaps.append(k + 1)
                    changed = True
        return word + [("w", a) for a in reversed(swaps)]

    def gl_word(self, g: np.ndarray, order: str = "direct") -> list[tuple]:
        """A word in the fixed generators whose product is g.

        ``order="inverse"`` decomposes g^{-1} instead and inverts that word,
        giving an independent second word for the same element."""
        g = np.asarray(g, dtype=np.int64)
        if self.det(g) == 0:
            raise ValueError("singular matrix")
        if order == "inverse":
            word = []
            for label in reversed(self.gl_word(self.inv(g))):
                word += self.inverse_label_word(label)
            return word
        u1, m, u2 = self.bruhat_split(g)
        return self.unitriangular_word(u1) + self.monomial_word(m) + self.unitriangular_word(u2)

    # --- enumeration (small cases only) -----------------------------------------------

    def elements(self):
        """Every element of GL_n(q); intended for n, q tiny."""
        for entries in itertools.product(range(self.q), repeat=self.n * self.n):
            g = np.array(entries, dtype=np.int64).reshape(self.n, self.n)
            if self.det(g):
                yield g

    def weyl(self):
        """(perm, matrix) for every permutation of 0..n-1."""
        for perm in itertools.permutations(range(self.n)):
            yield perm, self.perm_matrix(perm)


# --- parabolic subgroups --------------------------------------------------------

def q_integer(m: int, q: int) -> int:
    return sum(q ** k for k in range(m))


def q_factorial(m: int, q: int) -> int:
    out = 1
    for k in range(1, m + 1):
        out *= q_integer(k, q)
    return out


def blocks(J, n: int) -> list[int]:
    """Sizes of the maximal runs of consecutive simple roots in J."""
    sizes, run = [], 0
    for i in range(1, n):
        if i in J:
            run += 1
        elif run:
            sizes.append(run)
            run = 0
    if run:
        sizes.append(run)
    return sizes


def borel_index(n: int, q: int) -> int:
    return q_factorial(n, q)


def parabolic_order_over_B(J, n: int, q: int) -> int:
    """[P_J : B]: product of q-factorials of the Levi blocks."""
    out = 1
    for b in blocks(J, n):
        out *= q_factorial(b + 1, q)
    return out


def parabolic_index(J, n: int, q: int) -> int:
    """[G : P_J]."""
    whole, part = borel_index(n, q), parabolic_order_over_B(J, n, q)
    assert whole % part == 0
    return whole // part


@dataclass(frozen=True)
class ParabolicTable:
    n: int
    q: int
    ell: int
    rows: tuple  # (J, [P_J:B], [G:P_J], nu_l([G:P_J])) with J a sorted tuple

    @property
    def kappa1(self) -> int:
        return self.valuation(())

    @property
    def kappa2(self) -> int:
        if self.n < 2:
            return self.kappa1
        return self.valuation((1,))

    @property
    def X(self) -> tuple[int, ...]:
        return tuple(sorted({row[3] for row in self.rows}))

    def valuation(self, J) -> int:
        J = tuple(sorted(J))
        for row in self.rows:
            if row[0] == J:
                return row[3]
        raise KeyError(J)

    def attaining(self, k: int) -> list[tuple]:
        return [row[0] for row in self.rows if row[3] == k]


@lru_cache(maxsize=None)
def build_parabolic_table(n: int, q: int, ell: int) -> ParabolicTable:
    p, _ = prime_power(q)
    if ell == p:
        raise ValueError(f"l = {ell} equals the characteristic of GF({q})")
    rows = []
    simple = range(1, n)
    for size in range(n):
        for J in itertools.combinations(simple, size):
            over = parabolic_order_over_B(J, n, q)
            idx = parabolic_index(J, n, q)
            rows.append((J, over, idx, val_int(idx, ell)))
    return ParabolicTable(n, q, ell, tuple(rows))


def is_adjacent_pair(J) -> bool:
    return len(J) == 2 and abs(J[0] - J[1]) == 1
