import numpy as np
import pytest

from steinberg.identities import (_compare, adjacent_pairs, character_twists, commutator_sign,
                                  verify_all, verify_c7, verify_ex1, verify_ex2,
                                  verify_group_identity, verify_lattice_identity, verify_theorems)
from steinberg.group import simple_root
from steinberg.lattice import lattice


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (3, 2), (3, 3), (3, 4), (4, 2)])
def test_everything_holds(n, q):
    cases = verify_all(n, q)
    assert cases
    bad = [c.as_dict() for c in cases if not c.verdict]
    assert not bad, bad[:3]


@pytest.mark.parametrize("n,q", [(3, 2), (3, 3), (3, 4), (4, 2)])
def test_theorems_with_signed_representatives(n, q):
    assert all(c.verdict for c in verify_theorems(n, q, "signed"))


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 3), (3, 4)])
def test_hola2_literal_reading_needs_characteristic_two(n, q):
    """w_r t_r(a) e = t_r(-a^{-1}) e - e with the permutation matrix w_r."""
    cases = verify_lattice_identity("hola2", n, q, "literal")
    p = lattice(n, q).p
    assert all(c.verdict == (p == 2) for c in cases)
    if p != 2:
        assert cases[0].counterexample is not None


def test_commutator_convention():
    r, s = simple_root(1), simple_root(2)
    assert commutator_sign(r, s) == 0 and commutator_sign(s, r) == 1
    with pytest.raises(ValueError):
        commutator_sign(simple_root(1), simple_root(3))
    assert all(c.verdict for c in verify_group_identity("commu", 4, 3))


def test_bad_arguments():
    with pytest.raises(ValueError):
        verify_ex1(2, 3, 1, 1, 1, 2)
    with pytest.raises(ValueError):
        verify_ex1(4, 2, 1, 1, 1, 3)  # orthogonal pair
    with pytest.raises(ValueError):
        verify_c7(3, 3, 0, 1, 2)  # trivial character
    with pytest.raises(ValueError):
        verify_group_identity("commu", 2, 3)
    with pytest.raises(ValueError):
        verify_lattice_identity("nope", 2, 2)


def test_counterexample_record():
    c = _compare("x", {}, np.array([1, 2, 3]), np.array([1, 5, 3]))
    assert not c.verdict and c.counterexample["index"] == 1
    assert c.as_dict()["verdict"] == "NOT EQUAL"


def test_wrong_scalar_is_detected():
    """Perturbing the right side of the second chain must fail."""
    n, q = 3, 3
    cases = verify_ex1(n, q, 1, 2, 1, 2)
    assert all(c.verdict for c in cases)
    L = lattice(n, q)
    from steinberg.lattice import GroupElem, RootSum, TwistedRootSum, UCharacter
    from steinberg.identities import weyl_element
    E_r = L.build_E(UCharacter((1, 0)))
    lhs = L.operator_apply([TwistedRootSum(simple_root(1), 2), GroupElem(weyl_element(L, 1)),
                            RootSum(simple_root(2)), GroupElem(weyl_element(L, 2))], E_r)
    wrong = (q * q + q) * L.build_E(UCharacter((2, 1)))
    assert not _compare("ex1", {}, lhs, wrong).verdict


def test_sweep_policy():
    F = lattice(2, 5).F
    assert character_twists(4, lattice(2, 4).F) == [1, 2, 3]
    assert len(character_twists(5, F)) == 4
    assert adjacent_pairs(4) == [(1, 2), (2, 1), (2, 3), (3, 2)]


@pytest.mark.parametrize("n,q", [(3, 5), (4, 3)])
def test_sampled_larger_cases(n, q):
    assert all(c.verdict for c in verify_theorems(n, q))
    assert all(c.verdict for i, j in adjacent_pairs(n) for c in verify_ex2(n, q, 1, 1, i, j))
