"""Finite-dimensional representations over K given by generator matrices.

Vectors are rows; a generator matrix M acts on column coordinates, so a
block of row vectors V maps to V M^T.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .kalg import Echelon, KAlg
from .rings import GF, prime_power

LINE_CAP = 100_000
FORM_SEARCH_CAP = 1_000_000
FORM_SAMPLES = 128
SPIN_CHUNK = 128


class CapExceeded(RuntimeError):
    pass


@dataclass
class ModRep:
    alg: KAlg
    gens: dict  # label -> (d', D, D)
    n: int
    q: int
    factor_index: int = 0
    provenance: str = ""
    dim_: int | None = None

    @property
    def dim(self) -> int:
        if self.dim_ is not None:
            return self.dim_
        return next(iter(self.gens.values())).shape[1]

    @property
    def labels(self) -> list:
        return list(self.gens)

    def act_rows(self, label, V) -> np.ndarray:
        return self.alg.matmul(V, self.alg.transpose(self.gens[label]))

    def t_labels(self) -> list:
        return [lab for lab in self.gens if lab[0] == "t"]

    def conjugate(self, T) -> "ModRep":
        """The same module in the basis given by the columns of T."""
        alg = self.alg
        Ti = alg.inverse(T)
        gens = {lab: alg.matmul(Ti, alg.matmul(M, T)) for lab, M in self.gens.items()}
        return ModRep(alg, gens, self.n, self.q, self.factor_index, self.provenance + " (conjugated)")

    def dual(self) -> "ModRep":
        """M* with matrices rho(g^{-1})^T."""
        alg = self.alg
        gens = {lab: alg.transpose(alg.inverse(M)) for lab, M in self.gens.items()}
        return ModRep(alg, gens, self.n, self.q, self.factor_index, "dual of " + self.provenance)


@dataclass
class Submodule:
    basis: np.ndarray  # (d', s, D) reduced echelon rows
    pivots: list
    ambient_dim: int

    @property
    def dim(self) -> int:
        return len(self.pivots)


# --- characters of U with values in K -------------------------------------------------

def char_value(rep: ModRep, lam, i: int, a: int) -> int:
    """lambda(t_r(a)) as a K code, r = [i, i+1]."""
    F = _fq(rep.q)
    z = rep.alg.K.zeta_image(rep.factor_index)
    return rep.alg.K.pow(z, F.trace(F.mul(lam.coeffs[i - 1], a)))


@lru_cache(maxsize=None)
def _fq(q):
    return GF(*prime_power(q))


# --- spinning -------------------------------------------------------------------------

def spin(vectors, rep: ModRep, target: int | None = None) -> Submodule:
    """Smallest generator-invariant subspace containing the rows of ``vectors``.

    ``target`` stops early once that dimension is reached."""
    alg = rep.alg
    D = rep.dim
    E = Echelon(alg, D)
    V = np.asarray(vectors)
    if V.ndim == 2:
        V = V[:, None, :]
    if V.shape[1] == 0:
        return Submodule(E.basis, [], D)
    frontier = E.add(V)
    labels = rep.labels
    stop = D if target is None else target
    while frontier.shape[1] and E.dim < stop:
        fresh = []
        for lab in labels:
            imgs = rep.act_rows(lab, frontier)
            for s in range(0, imgs.shape[1], SPIN_CHUNK):
                new = E.add(imgs[:, s:s + SPIN_CHUNK])
                if new.shape[1]:
                    fresh.append(new)
                if E.dim >= stop:
                    break
            if E.dim >= stop:
                break
        if not fresh:
            break
        dd = max(f.shape[0] for f in fresh)
        fresh = [alg.full(f) if f.shape[0] != dd else f for f in fresh]
        frontier = np.concatenate(fresh, axis=1)
    return Submodule(E.basis, list(E.pivots), D)


# --- eigen-lines ------------------------------------------------------------------------

def eigenspace(rep: ModRep, lam) -> np.ndarray:
    """Rows spanning the common kernel of rho(t_r(a)) - lambda(t_r(a))."""
    alg = rep.alg
    D = rep.dim
    N = None  # rows spanning the current kernel, (d', s, D)
    for lab in rep.t_labels():
        _, i, a = lab
        lv = alg.scalar(char_value(rep, lam, i, a))
        M = alg.sub(alg.full(rep.gens[lab]), alg.mul(lv[:, None, None], alg.eye(D)))
        if N is None:
            N = alg.nullspace(M)
        else:
            if N.shape[1] == 0:
                break
            img = alg.matmul(N, alg.transpose(M))  # rows: (M n)^T
            coef = alg.nullspace(alg.transpose(img))  # combos c with sum c_k (M n_k) = 0
            N = alg.matmul(coef, N) if coef.shape[1] else np.zeros((1, 0, D), dtype=np.int64)
        if N.shape[1] == 0:
            break
    if N is None:
        N = alg.eye(D)
    return N


def _projective_points(alg: KAlg, s: int):
    """Normalized coefficient vectors (first nonzero = 1) of K^s."""
    qk = alg.K.q
    for lead in range(s):
        for rest in itertools.product(range(qk), repeat=s - lead - 1):
            yield [0] * lead + [1] + list(rest)


def u_eigen_lines(rep: ModRep, lam, cap: int = LINE_CAP) -> list:
    """Each line as a (d', 1, D) spanning row."""
    alg = rep.alg
    if rep.dim == 0:
        return []
    N = eigenspace(rep, lam)
    s = N.shape[1]
    if s == 0:
        return []
    qk = alg.K.q
    count = (qk ** s - 1) // (qk - 1)
    if count > cap:
        raise CapExceeded(f"eigenspace of dimension {s} has {count} lines (cap {cap})")
    if s == 1:
        return [N]
    out = []
    for coeffs in _projective_points(alg, s):
        c = alg.from_codes(np.array(coeffs))[:, None, :]
        out.append(alg.matmul(c, alg.full(N)))
    return out


def all_characters_of(rep: ModRep):
    from .lattice import all_characters
    return all_characters(rep.n, rep.q)


def eigen_lines_all(rep: ModRep, cap: int = LINE_CAP):
    """(lambda, line) for every U-eigen-line of rep."""
    out = []
    for lam in all_characters_of(rep):
        for line in u_eigen_lines(rep, lam, cap):
            out.append((lam, line))
    return out


# --- irreducibility and composition series -----------------------------------------------

def is_irreducible(rep: ModRep, lines=None) -> bool:
    """Every eigen-line must generate the whole module.

    ``lines`` may supply a precomputed list of eigen-lines."""
    D = rep.dim
    if D == 0:
        return False
    if lines is None:
        lines = [ln for _, ln in eigen_lines_all(rep)]
    if not lines:
        raise AssertionError("nonzero module without a U-eigen-line")
    for line in lines:
        if spin(line, rep).dim < D:
            return False
    return True


def restrict(rep: ModRep, sub: Submodule, provenance: str = "") -> ModRep:
    """Action on the submodule in the coordinates of its echelon basis."""
    alg = rep.alg
    B = sub.basis
    gens = {}
    for lab in rep.labels:
        img = rep.act_rows(lab, B)  # (d, s, D)
        gens[lab] = alg.transpose(img[:, :, sub.pivots])
    return ModRep(alg, gens, rep.n, rep.q, rep.factor_index, provenance or f"sub of dim {sub.dim}", sub.dim)


def quotient(rep: ModRep, sub: Submodule, provenance: str = "") -> ModRep:
    """Action on rep/sub in the complement basis {e_j : j not a pivot}."""
    alg = rep.alg
    D = rep.dim
    comp = [j for j in range(D) if j not in set(sub.pivots)]
    E = Echelon(alg, D)
    E.basis, E.pivots = sub.basis, list(sub.pivots)
    unit = np.zeros((1, len(comp), D), dtype=np.int64)
    unit[0, np.arange(len(comp)), comp] = 1
    gens = {}
    for lab in rep.labels:
        img = E.reduce(rep.act_rows(lab, unit))
        gens[lab] = alg.transpose(img[:, :, comp])
    return ModRep(alg, gens, rep.n, rep.q, rep.factor_index,
                  provenance or f"quotient of dim {len(comp)}", len(comp))


def proper_eigen_spin(rep: ModRep):
    """An eigen-line whose spin is a proper nonzero submodule, or None."""
    lines = eigen_lines_all(rep)
    if rep.dim and not lines:
        raise AssertionError("nonzero module without a U-eigen-line")
    for _, line in lines:
        S = spin(line, rep)
        if S.dim < rep.dim:
            return S
    return None


@dataclass
class CompSeries:
    factors: list  # ModRep, bottom to top
    hom: list = field(default_factory=list)
    self_dual: list = field(default_factory=list)

    @property
    def dims(self) -> list:
        return [f.dim for f in self.factors]


def composition_series(rep: ModRep, with_homs: bool = False) -> CompSeries:
    def rec(r):
        if r.dim == 0:
            return []
        S = proper_eigen_spin(r)
        if S is None:
            return [r]
        return rec(restrict(r, S)) + rec(quotient(r, S))

    series = CompSeries(rec(rep))
    if with_homs:
        fs = series.factors
        series.hom = [[hom_dim(a, b) for b in fs] for a in fs]
        series.self_dual = [self_dual_check(f, irreducible=True) for f in fs]
    return series


def socle(rep: ModRep) -> Submodule:
    """Sum of the spins of eigen-lines that generate irreducible submodules."""
    alg = rep.alg
    E = Echelon(alg, rep.dim)
    for _, line in eigen_lines_all(rep):
        if E.dim and E.contains(line[:, 0]):
            continue
        S = spin(line, rep)
        if is_irreducible(restrict(rep, S)):
            E.add(S.basis)
    return Submodule(E.basis, list(E.pivots), rep.dim)


# --- homomorphisms ------------------------------------------------------------------------

def _tracked_spin(rep1: ModRep, rep2: ModRep):
    """Basis of rep1 built by spinning seeds, with each vector's derivation.

    Returns (V, derivations, seeds): V rows in derivation order; a
    derivation is ('seed', k) or (label, parent index); seeds are
    (vector, candidate rows in rep2)."""
    alg = rep1.alg
    D1 = rep1.dim
    E = Echelon(alg, D1)
    rows, derivs, seeds = [], [], []

    def grow(v, cand):
        if E.contains(v):
            return
        seeds.append((v, cand))
        queue = [len(rows)]
        E.add(v[:, None, :])
        rows.append(alg.full(v))
        derivs.append(("seed", len(seeds) - 1))
        while queue and E.dim < D1:
            i = queue.pop(0)
            for lab in rep1.labels:
                w = rep1.act_rows(lab, rows[i][:, None, :])[:, 0]
                if not E.contains(w):
                    E.add(w[:, None, :])
                    queue.append(len(rows))
                    rows.append(alg.full(w))
                    derivs.append((lab, i))

    for lam in all_characters_of(rep1):
        if E.dim == D1:
            break
        N1 = eigenspace(rep1, lam)
        if N1.shape[1] == 0:
            continue
        N2 = eigenspace(rep2, lam)
        for k in range(N1.shape[1]):
            grow(alg.full(N1)[:, k], alg.full(N2))
    for j in range(D1):
        if E.dim == D1:
            break
        v = alg.zeros(D1)
        v[0, j] = 1
        grow(v, alg.eye(rep2.dim))
    V = np.stack(rows, axis=1)
    return V, derivs, seeds


def hom_space(rep1: ModRep, rep2: ModRep) -> list:
    """A K-basis of Hom_G(rep1, rep2), each a (d, D2, D1) matrix."""
    alg = rep1.alg
    D1, D2 = rep1.dim, rep2.dim
    if D1 == 0 or D2 == 0:
        return []
    V, derivs, seeds = _tracked_spin(rep1, rep2)
    offsets = np.cumsum([0] + [c.shape[1] for _, c in seeds])
    s = int(offsets[-1])
    if s == 0:
        return []
    # Phi[i] = (s, D2): phi(v_i) = sum_t x_t Phi[i][t]
    Phi = np.zeros((alg.d, D1, s, D2), dtype=np.int64)
    for i, dv in enumerate(derivs):
        if dv[0] == "seed":
            k = dv[1]
            cand = seeds[k][1]
            Phi[:, i, offsets[k]:offsets[k + 1]] = cand
        else:
            lab, par = dv
            Phi[:, i] = alg.full(alg.matmul(Phi[:, par], alg.transpose(rep2.gens[lab])))
    Vinv = alg.inverse(alg.transpose(V))  # columns of V^T are the v_i
    blocks = []
    for lab in rep1.labels:
        # C[i, j]: rho1(g) v_i = sum_j C[i, j] v_j
        img = rep1.act_rows(lab, V)  # rows rho1(g) v_i
        C = alg.transpose(alg.matmul(Vinv, alg.transpose(img)))
        left = alg.matmul(Phi.reshape(alg.d, D1 * s, D2), alg.transpose(rep2.gens[lab]))
        left = alg.full(left).reshape(alg.d, D1, s, D2)
        right = alg.full(alg.matmul(C, Phi.reshape(alg.d, D1, s * D2))).reshape(alg.d, D1, s, D2)
        R = alg.sub(left, right)  # (d, D1, s, D2)
        blocks.append(np.moveaxis(R, 2, 1).reshape(alg.d, s, D1 * D2))
    Rall = np.concatenate(blocks, axis=2)  # x R = 0
    sol = alg.nullspace(alg.transpose(Rall))  # rows x
    out = []
    for x in range(sol.shape[1]):
        xv = alg.full(sol)[:, x]
        # images of v_i, then phi in standard coordinates: phi V^T = images^T
        imgs = alg.full(alg.matmul(xv[:, None, None, :], Phi))[:, :, 0, :]  # (d, D1, D2)
        phi = alg.matmul(alg.transpose(imgs), Vinv)  # (d, D2, D1)
        out.append(alg.full(phi))
    return out


def hom_dim(rep1: ModRep, rep2: ModRep) -> int:
    return len(hom_space(rep1, rep2))


UNKNOWN = "UNKNOWN"


def self_dual_check(rep: ModRep, irreducible: bool | None = None, rng=None):
    """True/False, or UNKNOWN when a random search finds no nondegenerate form.

    Invariant bilinear forms correspond to module maps rep -> rep*."""
    alg = rep.alg
    D = rep.dim
    if D == 0:
        return True
    space = hom_space(rep, rep.dual())
    if irreducible is None:
        irreducible = is_irreducible(rep)
    if irreducible:
        return bool(space)
    s = len(space)
    if s == 0:
        return False
    qk = alg.K.q
    total = (qk ** s - 1) // (qk - 1)
    if total <= FORM_SEARCH_CAP:
        for coeffs in _projective_points(alg, s):
            M = _combo(alg, space, coeffs)
            if alg.rank(M) == D:
                return True
        return False
    rng = rng or np.random.default_rng(0)
    for _ in range(FORM_SAMPLES):
        coeffs = rng.integers(0, qk, size=s)
        if alg.rank(_combo(alg, space, coeffs)) == D:
            return True
    return UNKNOWN


def _combo(alg, mats, coeffs):
    out = alg.zeros(*mats[0].shape[1:])
    for c, M in zip(coeffs, mats):
        if c:
            out = alg.add(out, alg.mul(alg.scalar(int(c))[:, None, None], M))
    return out


def invariant_form_check(rep: ModRep, G: np.ndarray) -> bool:
    """rho(g)^T G rho(g) == G for every generator."""
    alg = rep.alg
    for M in rep.gens.values():
        if not np.array_equal(alg.full(alg.matmul(alg.transpose(M), alg.matmul(G, M))), alg.full(G)):
            return False
    return True
