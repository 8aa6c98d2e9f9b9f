import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from steinberg.lattice import lattice
from steinberg.snf import check_snf, snf, snf_exact, snf_local

from conftest import bareiss_det, rank_mod, val


def _random_sym(rng, m, lo=-6, hi=7):
    B = rng.integers(lo, hi, (m, m))
    return B + B.T


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7), st.sampled_from([2, 3, 5]), st.integers(0, 10 ** 6))
def test_exact_snf_random(m, ell, seed):
    rng = np.random.default_rng(seed)
    A = _random_sym(rng, m)
    det = bareiss_det(A)
    if det == 0:
        return
    res = snf_exact(A, ell)
    assert check_snf(A, res)
    assert sum(res.vals) == val(det, ell)
    assert list(res.vals) == sorted(res.vals)
    # the number of a_i >= k is the corank of A mod l when k = 1
    assert sum(v >= 1 for v in res.vals) == m - rank_mod(A, ell)
    # unimodular transforms
    assert abs(bareiss_det(np.asarray(res.P, dtype=object))) == 1
    assert abs(bareiss_det(np.asarray(res.Q, dtype=object))) == 1


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 7), st.sampled_from([2, 3, 7]), st.integers(0, 10 ** 6))
def test_local_agrees_with_exact(m, ell, seed):
    rng = np.random.default_rng(seed)
    A = _random_sym(rng, m)
    if bareiss_det(A) == 0:
        return
    ex, lo = snf_exact(A, ell), snf_local(A, ell)
    assert check_snf(A, lo)
    assert list(ex.vals) == list(lo.vals)


@pytest.mark.parametrize("n,q,ell", [(2, 2, 3), (3, 2, 3), (3, 2, 7), (2, 3, 2), (3, 3, 2), (4, 2, 3), (2, 5, 3)])
def test_gram_snf_modes_agree(n, q, ell):
    A = lattice(n, q).gram_matrix()
    ex, lo = snf(A, ell, "EXACT"), snf(A, ell, "LOCAL")
    assert check_snf(A, ex) and check_snf(A, lo)
    assert list(ex.vals) == list(lo.vals)
    # oracle: the number of nonzero valuations is the corank mod l
    assert sum(v >= 1 for v in ex.vals) == A.shape[0] - rank_mod(A, ell)


@pytest.mark.parametrize("n,q,ell", [(2, 2, 3), (3, 2, 3), (2, 3, 2)])
def test_gram_det_valuation(n, q, ell):
    A = lattice(n, q).gram_matrix()
    assert sum(snf(A, ell).vals) == val(bareiss_det(A), ell)


def test_known_small_case():
    A = lattice(2, 2).gram_matrix()
    assert A.tolist() == [[2, 1], [1, 2]]
    assert snf(A, 3).vals == [0, 1]


def test_bad_mode():
    with pytest.raises(ValueError):
        snf(np.eye(2, dtype=np.int64), 3, "FAST")
