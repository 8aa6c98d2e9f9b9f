import math

import numpy as np
import pytest

from steinberg.group import simple_root
from steinberg.lattice import (CycInt, UCharacter, all_characters, canonical_pairing, cyc_scale,
                               expand_e, gram_matrix_by_expansion, lattice, left_multiply)

ORACLE = [(2, 2), (2, 3), (3, 2), (2, 4), (2, 5), (3, 3)]


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (3, 4), (4, 2), (4, 3)])
def test_gram_normalization(n, q):
    L = lattice(n, q)
    assert L.gram_c(L.G.identity()) == math.factorial(n)
    assert L.gram_table().c[0] == math.factorial(n)


@pytest.mark.parametrize("n,q", ORACLE)
def test_gram_matches_expansion(n, q):
    L = lattice(n, q)
    assert np.array_equal(L.gram_matrix(), gram_matrix_by_expansion(n, q))


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (3, 2), (2, 4)])
def test_action_matches_expansion(n, q):
    """(A M)[v, u] = (g ue, ve) / |B| computed in the group algebra."""
    L = lattice(n, q)
    G = L.G
    e, order_B = expand_e(G)
    ue = [left_multiply(G, u, e) for u in G.U]
    A = L.gram_matrix()
    for lab in G.generator_labels():
        g = G.generator_matrix(lab)
        AM = A @ L.act_matrix(lab)
        for u in range(L.m):
            gue = left_multiply(G, g, ue[u])
            col = [canonical_pairing(gue, ue[v]) for v in range(L.m)]
            assert all(c % order_B == 0 for c in col)
            assert np.array_equal(AM[:, u], np.array(col) // order_B)


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (2, 5), (3, 2), (3, 3), (3, 4), (4, 2)])
def test_form_invariance(n, q):
    L = lattice(n, q)
    A = L.gram_matrix()
    for lab in L.G.generator_labels():
        M = L.act_matrix(lab)
        assert np.array_equal(M.T @ A @ M, A)


@pytest.mark.parametrize("n,q", [(2, 3), (3, 2), (3, 3), (2, 4)])
def test_action_is_a_homomorphism(n, q):
    L = lattice(n, q)
    G = L.G
    rng = np.random.default_rng(7)
    x = rng.integers(-3, 4, L.m)
    mats = []
    while len(mats) < 6:
        g = rng.integers(0, q, (n, n))
        if G.det(g):
            mats.append(g)
    for g, h in zip(mats, mats[1:]):
        lhs = L.act_element(G.mul(g, h), x)
        rhs = L.act_element(g, L.act_element(h, x))
        assert np.array_equal(lhs, rhs)
        # two independent words for the same element agree
        assert np.array_equal(L.act_word(G.gl_word(g, "inverse"), x), L.act_element(g, x))


@pytest.mark.parametrize("n,q", [(2, 3), (3, 2), (3, 3), (2, 5), (3, 4)])
def test_E_lambda_is_a_U_eigenvector(n, q):
    """u E_lambda = lambda(u)^{-1} E_lambda."""
    L = lattice(n, q)
    for lam in all_characters(n, q):
        E = L.build_E(lam)
        k = L.char_exponents(lam)
        for u in range(0, L.m, max(1, L.m // 9)):
            lhs = L.translate(L.U[u], E)
            rhs = cyc_scale(E, CycInt.zeta(L.p, -int(k[u])))
            assert np.array_equal(lhs, rhs)


@pytest.mark.parametrize("n,q", [(2, 3), (3, 2), (3, 3)])
def test_longest_element_and_simple_reflections(n, q):
    L = lattice(n, q)
    e = L.e_vector()
    for i in range(1, n):
        assert np.array_equal(L.act_gen(("w", i), e), -e)
    assert np.array_equal(L.e_vector(), L.basis_vector(0))


def test_character_conventions():
    ch = UCharacter.on_root(4, 2, 3)
    assert ch.coeffs == (0, 3, 0) and ch.J == (2,)
    assert UCharacter.representative(4, (1, 3)).coeffs == (1, 0, 1)
    assert UCharacter((0, 0)).trivial
    assert len(list(all_characters(3, 4))) == 16
    assert simple_root(2).i == 2
