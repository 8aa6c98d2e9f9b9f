"""The filtration I-bar(k) of the reduction of the Steinberg lattice.

With X A Y'^T = diag(l^{a_i}) the classes of the x_i with a_i >= k span
I-bar(k).  The x-coordinate c_j of any z in I is f(z, y'_j) / l^{a_j}, so
subquotient actions and memberships only need W = Y' A, never X^{-1}.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .group import build_parabolic_table, parabolic_index
from .kalg import KAlg
from .lattice import GramTable, UCharacter, cyc_pair, lattice
from .rep import ModRep, invariant_form_check
from .rings import CycInt, INFINITY, cyc_valuation, make_K, padic_ctx
from .snf import SNFResult, check_snf, snf

_FLOAT_EXACT = 2 ** 52


@dataclass
class FiltrationReport:
    n: int
    q: int
    ell: int
    vals_histogram: dict
    levels: list  # dicts: k, dimIk, dimMk, inX
    X: tuple
    kappa1: int
    kappa2: int
    gow5_levels_match: bool
    steinberg_simple: bool
    steinberg_simple_expected: bool
    mode: str
    det_valuation: int
    factor_index: int = 0
    cache: str | None = None

    def dim_I(self, k: int) -> int:
        return sum(c for v, c in self.vals_histogram.items() if v >= k)

    def dim_M(self, k: int) -> int:
        return self.vals_histogram.get(k, 0)

    def as_dict(self) -> dict:
        out = {
            "n": self.n, "q": self.q, "ell": self.ell,
            "levels": [{"k": lv["k"], "dimM": lv["dimMk"]} for lv in self.levels if lv["dimMk"]],
            "all_levels": [{"k": lv["k"], "dimI": lv["dimIk"], "dimM": lv["dimMk"], "inX": lv["inX"]}
                           for lv in self.levels],
            "vals_histogram": {str(k): v for k, v in sorted(self.vals_histogram.items())},
            "X": list(self.X), "kappa1": self.kappa1, "kappa2": self.kappa2,
            "gow5_levels_match": self.gow5_levels_match,
            "steinberg_simple": self.steinberg_simple,
            "steinberg_simple_expected": self.steinberg_simple_expected,
            "det_valuation": self.det_valuation,
            "snf_mode": self.mode,
        }
        if self.cache is not None:
            out["cache"] = self.cache
        return out


@dataclass
class FactorModule:
    """I-bar(lo) / I-bar(hi) in the x-bar basis of the levels lo <= a_i < hi."""

    lo: int
    hi: int
    indices: np.ndarray  # positions in the Smith basis
    rep: ModRep
    form: np.ndarray  # f-bar against the y-bar basis (only for hi = lo + 1)
    gram: np.ndarray  # f-bar on the x-bar basis

    @property
    def k(self) -> int:
        return self.lo

    @property
    def dim(self) -> int:
        return len(self.indices)


class Filtration:
    """Everything derived from one Smith form of the Gram matrix at l."""

    def __init__(self, n: int, q: int, ell: int, gram: GramTable | None = None,
                 mode: str = "AUTO", factor_index: int = 0, minimal: bool = True):
        self.L = lattice(n, q)
        self.n, self.q, self.ell = n, q, ell
        self.table = build_parabolic_table(n, q, ell)
        self.gram = gram or self.L.gram_table()
        self.A = self.L.gram_matrix(self.gram)
        self.snf: SNFResult = snf(self.A, ell, mode)
        self.vals = np.array(self.snf.vals, dtype=np.int64)
        self.factor_index = factor_index
        self.K = make_K(ell, self.L.p)
        self.alg = KAlg(self.K)
        self.minimal = minimal
        self.prec = int(self.vals.max()) + 1
        self.mod = ell ** self.prec
        units = self._units()
        self.X = np.array(np.asarray(self.snf.X, dtype=object) % self.mod, dtype=np.int64)
        Y = np.asarray(self.snf.Y, dtype=object) % self.mod
        Yp = np.array([(Y[j] * units[j]) % self.mod for j in range(len(units))], dtype=np.int64)
        self.W = self._modmatmul(Yp, self.A)  # rows: f(., y'_j) mod l^prec

    def _units(self) -> list:
        """u_j^{-1} mod l^prec with d_j = l^{a_j} u_j."""
        out = []
        for dj, aj in zip(self.snf.diag, self.snf.vals):
            if self.snf.mode == "EXACT":
                u = int(dj) // self.ell ** aj
            else:
                u = int(self.snf.units[len(out)])
            out.append(pow(u % self.mod, -1, self.mod))
        return out

    def _modmatmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64) % self.mod
        b = np.asarray(b, dtype=np.int64)
        bound = float(self.mod) * float(np.abs(b).max() if b.size else 0) * a.shape[-1]
        if bound < _FLOAT_EXACT:
            return np.mod(a.astype(np.float64) @ b.astype(np.float64), self.mod).astype(np.int64)
        return np.array((a.astype(object) @ b.astype(object)) % self.mod, dtype=np.int64)

    # --- the report ------------------------------------------------------------------

    def report(self) -> FiltrationReport:
        hist = Counter(int(v) for v in self.vals)
        kap1 = self.table.kappa1
        top = max(kap1, max(hist)) + 1
        levels = []
        for k in range(top + 1):
            levels.append({"k": k, "dimIk": sum(c for v, c in hist.items() if v >= k),
                           "dimMk": hist.get(k, 0), "inX": k in self.table.X})
        attained = tuple(sorted(k for k, c in hist.items() if c))
        simple = attained == (0,)
        full_index = parabolic_index((), self.n, self.q)
        return FiltrationReport(
            self.n, self.q, self.ell, dict(sorted(hist.items())), levels, self.table.X,
            kap1, self.table.kappa2, attained == self.table.X, simple,
            full_index % self.ell != 0, self.snf.mode_label, int(self.vals.sum()),
            self.factor_index)

    def levels(self) -> tuple:
        return tuple(sorted(set(int(v) for v in self.vals)))

    def check_snf(self) -> bool:
        return check_snf(self.A, self.snf)

    # --- coordinates ---------------------------------------------------------------------

    def x_coords_int(self, z: np.ndarray) -> np.ndarray:
        """x-bar coordinates (mod l) of an integer lattice vector."""
        f = self._modmatmul(self.W, np.asarray(z)[:, None])[:, 0]
        return self._descale(f)

    def _descale(self, f: np.ndarray) -> np.ndarray:
        scale = self.ell ** self.vals
        if np.any(f % scale):
            raise ArithmeticError("vector is not in the lattice")
        return (f // scale) % self.ell

    def x_coords_cyc(self, z: np.ndarray) -> np.ndarray:
        """x-bar coordinates of a Z[zeta_p] lattice vector, as a (d, m) K-array."""
        fz = self._modmatmul(self.W, np.asarray(z))  # (m, p-1) cyclotomic, mod l^prec
        ctx = padic_ctx(self.K, self.factor_index, max(self.prec, 1))
        emb = np.array(ctx.embed_array(fz), dtype=object) % self.mod  # (m, d)
        scale = np.array([self.ell ** int(v) for v in self.vals], dtype=object)[:, None]
        if np.any(emb % scale != 0):
            raise ArithmeticError("vector is not in the lattice")
        return np.array((emb // scale) % self.ell, dtype=np.int64).T

    def membership_level(self, coords: np.ndarray) -> int | float:
        """Largest k with the vector in I-bar(k) (INFINITY for 0)."""
        nz = np.asarray(coords).reshape(-1, len(self.vals)).any(axis=0)
        if not nz.any():
            return INFINITY
        return int(self.vals[nz].min())

    # --- subquotients ------------------------------------------------------------------

    def indices(self, lo: int, hi: int) -> np.ndarray:
        return np.nonzero((self.vals >= lo) & (self.vals < hi))[0]

    def labels(self) -> list:
        return self.L.G.generator_labels(minimal=self.minimal)

    def range_module(self, lo: int, hi: int, check: bool = False) -> FactorModule:
        idx = self.indices(lo, hi)
        if idx.size == 0:
            raise ValueError(f"I-bar({lo}) / I-bar({hi}) is zero")
        Xs = self.X[idx]  # (D, m)
        Ws = self.W[idx]  # (D, m)
        scale = (self.ell ** self.vals[idx])[:, None]
        low = np.nonzero(self.vals < lo)[0]
        gens = {}
        for lab in self.labels():
            img = np.asarray(self.L.action(lab) @ Xs.T)  # columns g x_i
            f = self._modmatmul(Ws, img)
            if np.any(f % scale):
                raise ArithmeticError("action left the lattice")
            gens[lab] = ((f // scale) % self.ell)[None]
            if check and low.size:
                flow = self._modmatmul(self.W[low], img)
                if np.any((flow // (self.ell ** self.vals[low])[:, None]) % self.ell):
                    raise AssertionError(f"I({lo}) is not stable under {lab}")
            if check:
                above = np.nonzero(self.vals >= hi)[0]
                if above.size:
                    img_up = np.asarray(self.L.action(lab) @ self.X[above].T)
                    fu = self._modmatmul(Ws, img_up)
                    if np.any((fu // scale) % self.ell):
                        raise AssertionError(f"I({hi}) is not stable under {lab}")
        rep = ModRep(self.alg, gens, self.n, self.q, self.factor_index,
                     f"I({lo})/I({hi}) for n={self.n}, q={self.q}, l={self.ell}", len(idx))
        form = ((self._modmatmul(Ws, Xs.T) // scale) % self.ell)
        gram = self._modmatmul(Xs, self._modmatmul(self.A, Xs.T))
        if hi == lo + 1:
            gram = (gram // self.ell ** lo) % self.ell
        else:
            gram = np.zeros((len(idx), len(idx)), dtype=np.int64)
        return FactorModule(lo, hi, idx, rep, form, gram)

    def factor_module(self, k: int, check: bool = False) -> FactorModule:
        if k > self.table.kappa1 or not np.any(self.vals == k):
            raise ValueError(f"M({k}) is zero for n={self.n}, q={self.q}, l={self.ell}")
        return self.range_module(k, k + 1, check)

    def whole(self) -> FactorModule:
        return self.range_module(0, int(self.vals.max()) + 1)

    def factor_form_checks(self, fm: FactorModule) -> dict:
        D = fm.dim
        alg = self.alg
        G = alg.prime(fm.gram)
        return {
            "form_identity": bool(np.array_equal(fm.form % self.ell, np.eye(D, dtype=np.int64))),
            "gram_nondegenerate": alg.rank(G) == D,
            "gram_invariant": invariant_form_check(fm.rep, G),
        }

    # --- E_lambda ------------------------------------------------------------------------------

    def c_lambda(self, lam: UCharacter) -> int:
        return self.table.valuation(lam.J)

    def e_coords(self, lam: UCharacter) -> np.ndarray:
        """x-bar coordinates of E_lambda-bar over K, shape (d, m)."""
        return self.x_coords_cyc(self.L.build_E(lam))

    def e_image(self, lam: UCharacter, fm: FactorModule) -> np.ndarray:
        """Image of E_lambda-bar in a subquotient, as a (d, 1, D) row."""
        c = self.e_coords(lam)
        return c[:, None, fm.indices]

    def e_lambda_checks(self, lam: UCharacter) -> dict:
        L = self.L
        c = self.c_lambda(lam)
        E = L.build_E(lam)
        AE = self.A @ E
        vals = []
        for row in AE:
            x = CycInt(tuple(int(v) for v in row), L.p)
            if not x.is_zero():
                vals.append(cyc_valuation(x, self.K, self.factor_index))
        min_val = min(vals) if vals else INFINITY
        coords = self.e_coords(lam)
        level = self.membership_level(coords)
        at_c = coords[:, self.vals == c]
        Einv = L.build_E(lam.inverse(L.F))
        pairing = cyc_pair(E, self.A @ Einv, L.p)
        expected = L.m * parabolic_index(lam.J, self.n, self.q)
        diff = pairing - CycInt.from_int(expected, L.p)
        dv = cyc_valuation(diff, self.K, self.factor_index)
        return {
            "lambda": list(lam.coeffs),
            "J": list(lam.J),
            "c_lambda": c,
            "min_val": min_val,
            "min_val_ok": min_val == c,
            "membership_level": level,
            "in_Ic": level >= c,
            "not_in_Ic1": level == c,
            "image_nonzero": bool(at_c.any()),
            "pairing": str(pairing),
            "pairing_congruence": dv >= c + 1,
        }


@lru_cache(maxsize=32)
def get_filtration(n: int, q: int, ell: int, mode: str = "AUTO", factor_index: int = 0) -> Filtration:
    return Filtration(n, q, ell, mode=mode, factor_index=factor_index)


def filtration(n: int, q: int, ell: int, gram: GramTable | None = None, mode: str = "AUTO") -> FiltrationReport:
    if gram is None:
        return get_filtration(n, q, ell, mode).report()
    return Filtration(n, q, ell, gram=gram, mode=mode).report()


def factor_module(k: int, n: int, q: int, ell: int, mode: str = "AUTO", check: bool = True) -> FactorModule:
    return get_filtration(n, q, ell, mode).factor_module(k, check)


def e_lambda_checks(lam: UCharacter, n: int, q: int, ell: int, mode: str = "AUTO") -> dict:
    return get_filtration(n, q, ell, mode).e_lambda_checks(lam)
