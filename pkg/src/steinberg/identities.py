"""Exact checks of group-algebra identities on lattice vectors.

Operator products are read as written: the rightmost factor acts first.
Weyl elements are the permutation matrices w_r by default; ``weyl="signed"``
uses the Chevalley representatives n_r = w_r h_i(-1) instead.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .group import GLn, Root, all_roots, root_apply, root_orth, root_sum, simple_root
from .lattice import ComplementSum, GroupElem, RootSum, TwistedRootSum, UCharacter, lattice

SAMPLE_LIMIT_Q = 4
SAMPLES = 4


@dataclass
class IdentityCase:
    name: str
    params: dict
    verdict: bool
    counterexample: dict | None = None

    def as_dict(self) -> dict:
        return {"name": self.name, "params": self.params,
                "verdict": "EQUAL" if self.verdict else "NOT EQUAL",
                "counterexample": self.counterexample}


def _compare(name, params, lhs, rhs) -> IdentityCase:
    lhs, rhs = np.asarray(lhs), np.asarray(rhs)
    if lhs.shape == rhs.shape and np.array_equal(lhs, rhs):
        return IdentityCase(name, params, True)
    if lhs.shape != rhs.shape:
        return IdentityCase(name, params, False, {"shape": [list(lhs.shape), list(rhs.shape)]})
    diff = np.nonzero((lhs != rhs).reshape(lhs.shape[0], -1).any(axis=1))[0]
    k = int(diff[0])
    return IdentityCase(name, params, False, {
        "index": k, "lhs": np.atleast_1d(lhs[k]).tolist(), "rhs": np.atleast_1d(rhs[k]).tolist(),
        "differing": int(diff.size)})


def _mat_case(name, params, lhs, rhs) -> IdentityCase:
    if np.array_equal(lhs, rhs):
        return IdentityCase(name, params, True)
    return IdentityCase(name, params, False, {"lhs": lhs.tolist(), "rhs": rhs.tolist()})


# --- group identities -------------------------------------------------------------------

def commutator_sign(r: Root, s: Root) -> int:
    """nu(r, s): 0 for r = [i,i+1], s = [i+1,i+2]; 1 for the reversed pair."""
    if r.j == s.i:
        return 0
    if s.j == r.i:
        return 1
    raise ValueError(f"{r} and {s} are not adjacent")


def verify_group_identity(name: str, n: int, q: int) -> list[IdentityCase]:
    G = GLn(n, q)
    F = G.F
    out = []
    if name == "conj":
        for perm, w in G.weyl():
            winv = G.inv(w)
            for r in all_roots(n):
                wr = root_apply(tuple(k + 1 for k in perm), r)
                for a in F.elements():
                    lhs = G.mul(w, G.t_elem(r, a), winv)
                    out.append(_mat_case("conj", {"n": n, "q": q, "w": list(perm), "r": str(r), "a": a},
                                         lhs, G.t_elem(wr, a)))
        return out
    if name == "commu":
        if n < 3:
            raise ValueError("the commutator identity needs n >= 3")
        for i in range(1, n - 1):
            for r, s in [(simple_root(i), simple_root(i + 1)), (simple_root(i + 1), simple_root(i))]:
                nu = commutator_sign(r, s)
                rs = root_sum(r, s)
                for a in F.elements():
                    for b in F.elements():
                        x, y = G.t_elem(r, a), G.t_elem(s, b)
                        lhs = G.mul(x, y, G.inv(x), G.inv(y))
                        c = F.mul(a, b)
                        if nu:
                            c = F.neg(c)
                        out.append(_mat_case("commu", {"n": n, "q": q, "r": str(r), "s": str(s),
                                                       "a": a, "b": b, "nu": nu},
                                             lhs, G.t_elem(rs, c)))
        return out
    raise ValueError(f"unknown group identity {name!r}")


# --- lattice identities ---------------------------------------------------------------------

def weyl_element(L, i: int, weyl: str = "permutation") -> np.ndarray:
    G = L.G
    w = G.w_elem(simple_root(i))
    if weyl == "permutation":
        return w
    if weyl == "signed":
        return G.mul(w, G.h_elem(i, G.F.neg(1)))
    raise ValueError(f"unknown Weyl representative {weyl!r}")


def verify_lattice_identity(name: str, n: int, q: int, variant: str | None = None) -> list[IdentityCase]:
    """hola, hola2 and hola3 over all simple r and nonzero a.

    hola2 variants: 'permutation' checks w_r t_r(a) e = t_r(a^{-1}) e - e,
    'signed' checks n_r t_r(a) e = t_r(-a^{-1}) e - e, and 'literal' checks
    w_r t_r(a) e = t_r(-a^{-1}) e - e, which holds only in characteristic 2."""
    L = lattice(n, q)
    G, F = L.G, L.F
    e = L.e_vector()
    out = []
    for i in range(1, n):
        r = simple_root(i)
        if name == "hola":
            for weyl in ("permutation", "signed"):
                lhs = L.act_element(weyl_element(L, i, weyl), e)
                out.append(_compare("hola", {"n": n, "q": q, "r": str(r), "weyl": weyl}, lhs, -e))
        elif name == "hola2":
            variants = [variant] if variant else ["permutation", "signed"]
            for var in variants:
                weyl = "signed" if var == "signed" else "permutation"
                w = weyl_element(L, i, weyl)
                for a in F.nonzero():
                    b = F.inv(a) if var == "permutation" else F.neg(F.inv(a))
                    lhs = L.act_element(w, L.translate(G.t_elem(r, a), e))
                    rhs = L.translate(G.t_elem(r, b), e) - e
                    out.append(_compare("hola2", {"n": n, "q": q, "r": str(r), "a": a, "variant": var},
                                        lhs, rhs))
        elif name == "hola3":
            for weyl in ("permutation", "signed"):
                w = GroupElem(weyl_element(L, i, weyl))
                lhs = L.operator_apply([w, RootSum(r)], e)
                xe = L.operator_apply([RootSum(r)], e)
                out.append(_compare("hola3", {"n": n, "q": q, "r": str(r), "weyl": weyl},
                                    lhs, xe - (q + 1) * e))
        else:
            raise ValueError(f"unknown lattice identity {name!r}")
    return out


# --- the E_lambda identities -----------------------------------------------------------------

def adjacent_pairs(n: int) -> list[tuple[int, int]]:
    """Ordered pairs (i, j) of distinct non-orthogonal simple roots."""
    out = []
    for i in range(1, n - 1):
        out += [(i, i + 1), (i + 1, i)]
    return sorted(out)


def _check_pair(n: int, i: int, j: int):
    if n < 3:
        raise ValueError("these identities need n >= 3")
    r, s = simple_root(i), simple_root(j)
    if r == s or root_orth(r, s) or root_sum(r, s) is None:
        raise ValueError(f"{r} and {s} must be distinct and non-orthogonal simple roots")
    return r, s, root_sum(r, s)


def _char(n: int, entries: dict) -> UCharacter:
    coeffs = [0] * (n - 1)
    for i, c in entries.items():
        coeffs[i - 1] = c
    return UCharacter(tuple(coeffs))


def character_twists(q: int, F) -> list[int]:
    """Nonzero c for the characters nu(c .): all when q <= 4, else 4 samples."""
    nz = list(F.nonzero())
    if q <= SAMPLE_LIMIT_Q:
        return nz
    step = max(1, len(nz) // SAMPLES)
    return nz[::step][:SAMPLES]


def verify_ex1(n: int, q: int, lam: int, mu: int, i: int, j: int,
               weyl: str = "permutation") -> list[IdentityCase]:
    """Both outer members of the two chains: the E_{lambda[s]} chain and
    the (q^2 + q + 1) E_{mu[r] lambda[s]} chain, started from E_{lambda[r]}."""
    L = lattice(n, q)
    r, s, rs = _check_pair(n, i, j)
    if not (lam and mu):
        raise ValueError("lambda and mu must be nontrivial")
    wr, ws = GroupElem(weyl_element(L, i, weyl)), GroupElem(weyl_element(L, j, weyl))
    E_r = L.build_E(_char(n, {i: lam}))
    E_s = L.build_E(_char(n, {j: lam}))
    E_mix = L.build_E(_char(n, {i: mu, j: lam}))
    scal = q * q + q + 1
    params = {"n": n, "q": q, "lambda": lam, "mu": mu, "r": str(r), "s": str(s), "weyl": weyl}
    out = []
    lhs = L.operator_apply([RootSum(r), wr, RootSum(s), ws], E_r)
    out.append(_compare("ex1_first", {**params, "member": "first"}, lhs, E_s))
    lhs = L.operator_apply([RootSum(r), RootSum(rs), wr, ws], E_r)
    out.append(_compare("ex1_first", {**params, "member": "third"}, lhs, E_s))
    lhs = L.operator_apply([TwistedRootSum(r, mu), wr, RootSum(s), ws], E_r)
    out.append(_compare("ex1_second", {**params, "member": "first"}, lhs, scal * E_mix))
    lhs = L.operator_apply([TwistedRootSum(r, mu), RootSum(rs), wr, ws], E_r)
    out.append(_compare("ex1_second", {**params, "member": "third"}, lhs, scal * E_mix))
    return out


def verify_ex2(n: int, q: int, lam: int, mu: int, i: int, j: int,
               weyl: str = "permutation") -> list[IdentityCase]:
    """Both outer members of the chain started from E_{lambda[r] mu[s]}."""
    L = lattice(n, q)
    r, s, rs = _check_pair(n, i, j)
    if not (lam and mu):
        raise ValueError("lambda and mu must be nontrivial")
    wr, ws = GroupElem(weyl_element(L, i, weyl)), GroupElem(weyl_element(L, j, weyl))
    chi = _char(n, {i: lam, j: mu})
    if chi.J != tuple(sorted((i, j))):
        raise AssertionError("the product character must have J = {r, s}")
    E_rs = L.build_E(chi)
    E_s = L.build_E(_char(n, {j: lam}))
    params = {"n": n, "q": q, "lambda": lam, "mu": mu, "r": str(r), "s": str(s), "weyl": weyl}
    out = []
    lhs = L.operator_apply([RootSum(r), wr, RootSum(s), ws], E_rs)
    out.append(_compare("ex2", {**params, "member": "first"}, lhs, E_s))
    lhs = L.operator_apply([RootSum(r), RootSum(rs), wr, ws], E_rs)
    out.append(_compare("ex2", {**params, "member": "third"}, lhs, E_s))
    return out


def verify_c7(n: int, q: int, lam: int, i: int, j: int, weyl: str = "permutation") -> IdentityCase:
    """X_{r+s} w_r w_s E_{lambda[r]} against the complement-sum combination."""
    L = lattice(n, q)
    r, s, rs = _check_pair(n, i, j)
    if not lam:
        raise ValueError("lambda must be nontrivial")
    wr, ws = GroupElem(weyl_element(L, i, weyl)), GroupElem(weyl_element(L, j, weyl))
    E_r = L.build_E(_char(n, {i: lam}))
    E_s = L.build_E(_char(n, {j: lam}))
    e = L.e_vector((max(L.p - 1, 1),))
    lhs = L.operator_apply([RootSum(rs), wr, ws], E_r)
    core = L.operator_apply([ComplementSum(r, s), RootSum(rs), TwistedRootSum(s, lam)], e)
    rhs = (q * q + q + 1) * core - (q + 1) * E_s
    return _compare("c7", {"n": n, "q": q, "lambda": lam, "r": str(r), "s": str(s), "weyl": weyl},
                    lhs, rhs)


def verify_theorems(n: int, q: int, weyl: str = "permutation") -> list[IdentityCase]:
    """ex1, ex2 and c7 over every adjacent ordered pair and the character sweep."""
    L = lattice(n, q)
    twists = character_twists(q, L.F)
    out = []
    for i, j in adjacent_pairs(n):
        for lam in twists:
            for mu in twists:
                out += verify_ex1(n, q, lam, mu, i, j, weyl)
                out += verify_ex2(n, q, lam, mu, i, j, weyl)
            out.append(verify_c7(n, q, lam, i, j, weyl))
    return out


def verify_all(n: int, q: int) -> list[IdentityCase]:
    """Everything that applies at (n, q)."""
    out = verify_group_identity("conj", n, q)
    if n >= 3:
        out += verify_group_identity("commu", n, q)
    for name in ("hola", "hola2", "hola3"):
        out += verify_lattice_identity(name, n, q)
    if n >= 3:
        out += verify_theorems(n, q)
    return out
