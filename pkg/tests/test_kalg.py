import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from steinberg.kalg import Echelon, KAlg
from steinberg.rings import make_K

KS = [(2, 3), (3, 2), (7, 3), (3, 5), (2, 5), (5, 3)]


def _mat_codes(K, A, B):
    """Oracle: matrix product with scalar field operations on codes."""
    r, k = A.shape
    c = B.shape[1]
    out = np.zeros((r, c), dtype=np.int64)
    for i in range(r):
        for j in range(c):
            s = 0
            for t in range(k):
                s = K.add(s, K.mul(int(A[i, t]), int(B[t, j])))
            out[i, j] = s
    return out


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(KS), st.integers(1, 5), st.integers(1, 5), st.integers(1, 5), st.integers(0, 10 ** 6))
def test_matmul_matches_scalar_oracle(lp, r, k, c, seed):
    K = make_K(*lp)
    alg = KAlg(K)
    rng = np.random.default_rng(seed)
    A = rng.integers(0, K.q, (r, k))
    B = rng.integers(0, K.q, (k, c))
    got = alg.to_codes(alg.matmul(alg.from_codes(A), alg.from_codes(B)))
    assert np.array_equal(got, _mat_codes(K, A, B))


@pytest.mark.parametrize("lp", KS)
def test_prime_field_arrays_mix_with_full(lp):
    K = make_K(*lp)
    alg = KAlg(K)
    rng = np.random.default_rng(1)
    M = rng.integers(0, K.ell, (4, 4))
    B = rng.integers(0, K.q, (4, 3))
    got = alg.to_codes(alg.matmul(alg.prime(M), alg.from_codes(B)))
    assert np.array_equal(got, _mat_codes(K, M, B))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(KS), st.integers(1, 6), st.integers(1, 6), st.integers(0, 10 ** 6))
def test_rank_nullspace(lp, r, c, seed):
    K = make_K(*lp)
    alg = KAlg(K)
    rng = np.random.default_rng(seed)
    A = alg.from_codes(rng.integers(0, K.q, (r, c)) * (rng.random((r, c)) < 0.6))
    N = alg.nullspace(A)
    assert alg.rank(A) + N.shape[1] == c
    if N.shape[1]:
        assert not alg.matmul(A, alg.transpose(N)).any()
        assert alg.rank(N) == N.shape[1]


@pytest.mark.parametrize("lp", KS)
def test_inverse(lp):
    K = make_K(*lp)
    alg = KAlg(K)
    rng = np.random.default_rng(3)
    done = 0
    while done < 5:
        A = alg.from_codes(rng.integers(0, K.q, (4, 4)))
        if alg.rank(A) < 4:
            with pytest.raises(np.linalg.LinAlgError):
                alg.inverse(A)
            continue
        assert np.array_equal(alg.full(alg.matmul(A, alg.inverse(A))), alg.full(alg.eye(4)))
        done += 1


def test_echelon_membership():
    K = make_K(2, 3)
    alg = KAlg(K)
    E = Echelon(alg, 4)
    v = alg.from_codes(np.array([[1, 2, 0, 3]]))
    w = alg.from_codes(np.array([[0, 1, 1, 0]]))
    E.add(v)
    E.add(w)
    assert E.dim == 2
    s = alg.add(alg.mul(alg.scalar(2)[:, None, None], v), w)
    assert E.contains(s[:, 0])
    assert not E.contains(alg.from_codes(np.array([0, 0, 0, 1])))
    assert E.add(s).shape[1] == 0
