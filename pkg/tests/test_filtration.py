import itertools

import numpy as np
import pytest

from steinberg.filtration import Filtration, filtration, get_filtration
from steinberg.group import build_parabolic_table
from steinberg.lattice import all_characters, lattice
from steinberg.rep import invariant_form_check

from conftest import rank_mod


def _dim_Ibar_brute(A, ell, k):
    """Oracle: dim of the image mod l of {x : A x = 0 mod l^k}, by enumeration mod l^k."""
    m = A.shape[0]
    mod = ell ** k
    kept = []
    for x in itertools.product(range(ell ** max(k, 1)), repeat=m):
        x = np.array(x)
        if not ((A @ x) % mod).any():
            kept.append(x % ell)
    return rank_mod(np.array(kept), ell) if kept else 0


@pytest.mark.parametrize("n,q,ell,kmax", [(2, 2, 3, 2), (2, 3, 2, 3), (2, 4, 5, 2), (2, 5, 3, 2),
                                          (2, 5, 2, 2), (2, 4, 3, 1), (3, 2, 3, 1)])
def test_dims_by_enumeration(n, q, ell, kmax):
    A = lattice(n, q).gram_matrix()
    rep = filtration(n, q, ell)
    for k in range(kmax + 1):
        assert rep.dim_I(k) == _dim_Ibar_brute(A, ell, k)


@pytest.mark.parametrize("n,q,ell", [(3, 2, 3), (3, 3, 2), (3, 4, 5), (4, 2, 3), (3, 2, 7)])
def test_dim_I1_is_corank(n, q, ell):
    A = lattice(n, q).gram_matrix()
    assert filtration(n, q, ell).dim_I(1) == A.shape[0] - rank_mod(A, ell)


GRID = [(n, q, ell) for n, q in [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (3, 4), (4, 2)]
        for ell in (2, 3, 5, 7) if q % ell]


@pytest.mark.parametrize("n,q,ell", GRID)
def test_levels_are_X(n, q, ell):
    rep = filtration(n, q, ell)
    T = build_parabolic_table(n, q, ell)
    assert rep.gow5_levels_match
    assert tuple(k for k, c in sorted(rep.vals_histogram.items()) if c) == T.X
    assert rep.dim_I(T.kappa1 + 1) == 0
    assert rep.steinberg_simple == (T.kappa1 == 0)


@pytest.mark.parametrize("n,q,ell", [(2, 2, 3), (3, 2, 3), (2, 3, 2), (3, 3, 2), (4, 2, 3)])
def test_smith_basis_coordinates(n, q, ell):
    F = get_filtration(n, q, ell)
    assert F.check_snf()
    for j in range(0, F.L.m, max(1, F.L.m // 8)):
        c = F.x_coords_int(F.X[j])
        expect = np.zeros(F.L.m, dtype=np.int64)
        expect[j] = 1
        assert np.array_equal(c, expect)


@pytest.mark.parametrize("n,q,ell", [(2, 2, 3), (3, 2, 3), (2, 3, 2), (3, 3, 2), (3, 4, 5), (4, 2, 3)])
def test_factor_modules(n, q, ell):
    F = get_filtration(n, q, ell)
    for k in F.levels():
        fm = F.factor_module(k, check=True)
        checks = F.factor_form_checks(fm)
        assert checks == {"form_identity": True, "gram_nondegenerate": True, "gram_invariant": True}
        # the action matrices are invertible and the Gram form is invariant
        assert invariant_form_check(fm.rep, F.alg.prime(fm.gram))
    with pytest.raises(ValueError):
        F.factor_module(F.table.kappa1 + 1)


@pytest.mark.parametrize("n,q,ell", [(2, 2, 3), (3, 2, 3), (2, 3, 2), (3, 3, 2), (2, 5, 3), (3, 2, 7)])
def test_E_lambda_facts(n, q, ell):
    F = get_filtration(n, q, ell)
    for lam in all_characters(n, q):
        r = F.e_lambda_checks(lam)
        assert r["min_val_ok"] and r["not_in_Ic1"] and r["image_nonzero"] and r["pairing_congruence"]


def test_explicit_gram_table_argument():
    L = lattice(2, 3)
    F = Filtration(2, 3, 2, gram=L.gram_table())
    assert F.report().vals_histogram == get_filtration(2, 3, 2).report().vals_histogram


def test_local_mode_matches_exact():
    a = filtration(3, 3, 2, mode="EXACT")
    b = filtration(3, 3, 2, mode="LOCAL")
    assert a.vals_histogram == b.vals_histogram
    assert b.mode.startswith("LOCAL")
