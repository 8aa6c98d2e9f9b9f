"""The K-representation I-bar and the checks built on it."""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .filtration import FactorModule, Filtration, get_filtration
from .kalg import Echelon, KAlg
from .lattice import UCharacter, all_characters, lattice
from .rep import (UNKNOWN, CapExceeded, ModRep, composition_series, hom_dim, is_irreducible,
                  self_dual_check, socle, spin, u_eigen_lines)
from .rings import make_K, prime_power

__all__ = [
    "mod_rep", "spin", "u_eigen_lines", "is_irreducible", "composition_series", "hom_dim",
    "self_dual_check", "gow_conjecture", "casa_check", "module_suite", "explore_socle",
    "level_lines", "UNKNOWN", "CapExceeded",
]


def _check_ell(q: int, ell: int):
    p, _ = prime_power(q)
    if ell == p:
        raise ValueError(f"l = {ell} equals the characteristic of GF({q})")


@lru_cache(maxsize=32)
def mod_rep(n: int, q: int, ell: int, factor_index: int = 0, minimal: bool = True) -> ModRep:
    """I-bar in the basis {u e-bar}: the integer actions reduced mod l."""
    _check_ell(q, ell)
    L = lattice(n, q)
    alg = KAlg(make_K(ell, L.p))
    gens = {lab: alg.prime(L.act_matrix(lab)) for lab in L.G.generator_labels(minimal=minimal)}
    return ModRep(alg, gens, n, q, factor_index, f"I-bar for n={n}, q={q}, l={ell}")


def e_bar(n: int, q: int, ell: int, lam: UCharacter, factor_index: int = 0) -> np.ndarray:
    """E_lambda-bar in the basis {u e-bar}, as a (d, 1, m) row."""
    L = lattice(n, q)
    K = make_K(ell, L.p)
    alg = KAlg(K)
    return alg.from_coords_last(L.build_E_K(lam, K, factor_index))[:, None, :]


# --- lines in filtration subquotients ---------------------------------------------------

def level_lines(F: Filtration, fm: FactorModule, orbit_reps: bool = False) -> list:
    """(lambda, image of E_lambda-bar) for lo <= c_lambda < hi.

    These span the U-eigen-lines of the subquotient: the lambda^{-1}
    eigenspace of I-bar is the line through E_lambda-bar and l does not
    divide |U|.  With ``orbit_reps`` one character per J is used; the torus
    permutes the characters with a given J transitively."""
    out = []
    seen = set()
    for lam in all_characters(F.n, F.q):
        c = F.c_lambda(lam)
        if not fm.lo <= c < fm.hi:
            continue
        if orbit_reps:
            if lam.J in seen:
                continue
            seen.add(lam.J)
            lam = UCharacter.representative(F.n, lam.J)
        out.append((lam, F.e_image(lam, fm)))
    return out


def _levels(F: Filtration):
    return [k for k in F.table.X]


# --- the Gow conjecture experiment -----------------------------------------------------------------------

def gow_conjecture(n: int, q: int, ell: int, mode: str = "AUTO", orbit_reps: bool | None = None,
                   factor_index: int = 0) -> list:
    """Per level k in X: eigen-line verdict and the parabolic-sum criterion."""
    _check_ell(q, ell)
    F = get_filtration(n, q, ell, mode, factor_index)
    if orbit_reps is None:
        orbit_reps = F.L.m > 64
    out = []
    for k in _levels(F):
        fm = F.factor_module(k)
        D = fm.dim
        lines = level_lines(F, fm, orbit_reps)
        spins = {}
        eig = True
        for lam, v in lines:
            S = spin(v, fm.rep)
            spins[lam] = S
            if S.dim < D:
                eig = False
        # criterion: some P whose E_P lies in the span generated by every E_Q
        parab = sorted({lam.J for lam, _ in lines})
        reps = {J: UCharacter.representative(n, J) for J in parab}
        for J, lam in reps.items():
            if lam not in spins:
                spins[lam] = spin(F.e_image(lam, fm), fm.rep)
        crit = False
        witness = None
        for JP in parab:
            vP = F.e_image(reps[JP], fm)
            ok = True
            for JQ in parab:
                S = spins[reps[JQ]]
                E = Echelon(F.alg, D)
                E.basis, E.pivots = S.basis, list(S.pivots)
                if not E.contains(vP[:, 0]):
                    ok = False
                    break
            if ok:
                crit, witness = True, JP
                break
        out.append({
            "k": k, "dimM": D, "irreducible": eig, "criterion": crit,
            "criterion_witness": list(witness) if witness is not None else None,
            "agree": eig == crit, "lines": len(lines), "orbit_reps": orbit_reps,
            "parabolics": [list(J) for J in parab],
        })
    return out


# --- S2/S1 irreducible when l | q + 1 ---------------------------------------------------

def casa_check(n: int, q: int, ell: int, mode: str = "AUTO", orbit_reps: bool | None = None) -> dict:
    _check_ell(q, ell)
    if (q + 1) % ell:
        raise ValueError(f"l = {ell} does not divide q + 1 = {q + 1}")
    F = get_filtration(n, q, ell, mode)
    k1, k2 = F.table.kappa1, F.table.kappa2
    fm = F.range_module(k2, k1)
    if orbit_reps is None:
        orbit_reps = F.L.m > 64
    lines = [v for _, v in level_lines(F, fm, orbit_reps)]
    irr = is_irreducible(fm.rep, lines)
    return {"n": n, "q": q, "ell": ell, "kappa1": k1, "kappa2": k2, "dim": fm.dim,
            "nonzero": fm.dim > 0, "irreducible": irr}


# --- module checks -----------------------------------------------------------------------------

def module_suite(n: int, q: int, ell: int, mode: str = "AUTO", full_limit: int = 64) -> dict:
    """Multiplicity freedom, self-duality and complete reducibility checks.

    The full composition series of I-bar is computed when |U| <= full_limit;
    larger cases run the factor-level checks only."""
    _check_ell(q, ell)
    F = get_filtration(n, q, ell, mode)
    out = {"n": n, "q": q, "ell": ell, "levels": []}
    orbit = F.L.m > full_limit
    for k in _levels(F):
        fm = F.factor_module(k)
        checks = F.factor_form_checks(fm)
        lines = level_lines(F, fm, orbit_reps=False)
        E = Echelon(F.alg, fm.dim)
        for _, v in lines:
            if E.dim == fm.dim:
                break
            if not E.contains(v[:, 0]):
                E.add(spin(v, fm.rep).basis)
        witness = E.dim == fm.dim
        irr = is_irreducible(fm.rep, [v for _, v in level_lines(F, fm, orbit)])
        self_dual = checks["form_identity"] and checks["gram_nondegenerate"] and checks["gram_invariant"]
        if irr:
            factors_self_dual = self_dual
        else:
            series = composition_series(fm.rep)
            factors_self_dual = all(self_dual_check(f, irreducible=True) is True for f in series.factors)
        out["levels"].append({"k": k, "dim": fm.dim, **checks, "self_dual": self_dual,
                              "complete_reducibility_witness": witness, "irreducible": irr,
                              "factors_self_dual": factors_self_dual})
    if F.L.m <= full_limit:
        rep = mod_rep(n, q, ell)
        series = composition_series(rep)
        fs = series.factors
        homs = [[hom_dim(a, b) for b in fs] for a in fs]
        multiplicity_free = all((homs[i][j] > 0) == (i == j) for i in range(len(fs)) for j in range(len(fs)))
        irr = len(fs) == 1
        sd = self_dual_check(rep, irreducible=irr)
        factors_sd = [self_dual_check(f, irreducible=True) for f in fs]
        out.update({
            "full": True,
            "factor_dims": [f.dim for f in fs],
            "hom_matrix": homs,
            "multiplicity_free": multiplicity_free,
            "ibar_irreducible": irr,
            "ibar_self_dual": sd,
            "self_dual_iff_irreducible": (sd is True) == irr if sd != UNKNOWN else None,
            "factors_self_dual": all(x is True for x in factors_sd),
        })
    else:
        out["full"] = False
    lv = out["levels"]
    ok = all(x["self_dual"] and x["form_identity"] and x["complete_reducibility_witness"]
             and x["factors_self_dual"] for x in lv)
    if out["full"]:
        ok = ok and out["multiplicity_free"] and out["self_dual_iff_irreducible"] is True \
            and out["factors_self_dual"]
    out["ok"] = bool(ok)
    return out


# --- socle exploration ---------------------------------------------------------------------------

def explore_socle(n: int, q: int, ell: int, mode: str = "AUTO") -> list:
    """Compare socle(I-bar / S_i) with S_{i+1} / S_i, S_i = I-bar(k_i) for
    the attained levels k_1 > k_2 > ...  (S_0 = 0).  Reported, not asserted."""
    _check_ell(q, ell)
    F = get_filtration(n, q, ell, mode)
    levels = sorted(F.levels(), reverse=True)
    top = int(F.vals.max()) + 1
    cuts = [top] + levels  # S_0 = I-bar(top) = 0
    out = []
    for i in range(len(levels)):
        hi, nxt = cuts[i], cuts[i + 1]
        fm = F.range_module(0, hi)
        soc = socle(fm.rep)
        # S_{i+1}/S_i: the coordinates with nxt <= a < hi
        inside = np.nonzero(F.vals[fm.indices] >= nxt)[0]
        target = np.zeros((1, len(inside), fm.dim), dtype=np.int64)
        target[0, np.arange(len(inside)), inside] = 1
        E = Echelon(F.alg, fm.dim)
        E.basis, E.pivots = soc.basis, list(soc.pivots)
        same = soc.dim == len(inside) and all(E.contains(target[:, j]) for j in range(len(inside)))
        out.append({"i": i, "quotient_by": f"I({hi})", "next": f"I({nxt})",
                    "socle_dim": soc.dim, "layer_dim": len(inside), "agree": bool(same)})
    return out
