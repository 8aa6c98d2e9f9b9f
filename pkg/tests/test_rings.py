import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from steinberg.rings import (GF, CycInt, INFINITY, cyc_reduce, cyc_reduce_array, cyc_valuation,
                             is_prime, make_K, prime_power, val_int)

FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2), (7, 1)]


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    for bad in (1, 6, 12, 0):
        with pytest.raises(ValueError):
            prime_power(bad)


def test_is_prime_matches_trial_division():
    primes = [k for k in range(60) if k > 1 and all(k % d for d in range(2, k))]
    assert [k for k in range(60) if is_prime(k)] == primes


@pytest.mark.parametrize("p,e", FIELDS)
def test_field_axioms_exhaustive(p, e):
    F = GF(p, e)
    E = list(F.elements())
    for a, b in itertools.product(E, E):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.sub(F.add(a, b), b) == a
    for a in F.nonzero():
        assert F.mul(a, F.inv(a)) == 1
    # associativity and distributivity on a sample of triples
    for a, b, c in itertools.islice(itertools.product(E, E, E), 600):
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


@pytest.mark.parametrize("p,e", FIELDS)
def test_multiplicative_group_cyclic_and_frobenius(p, e):
    F = GF(p, e)
    assert max(F.mult_order(a) for a in F.nonzero()) == F.q - 1
    for a, b in itertools.product(F.elements(), F.elements()):
        assert F.pow(F.add(a, b), p) == F.add(F.pow(a, p), F.pow(b, p))


@pytest.mark.parametrize("p,e", FIELDS)
def test_trace_is_additive_and_onto(p, e):
    F = GF(p, e)
    for a, b in itertools.product(F.elements(), F.elements()):
        assert F.trace(F.add(a, b)) == (F.trace(a) + F.trace(b)) % p
    assert {F.trace(a) for a in F.elements()} == set(range(p))


def _cyc(p):
    return st.lists(st.integers(-20, 20), min_size=p - 1, max_size=p - 1).map(lambda c: CycInt(tuple(c), p))


def _poly_mod_phi(a, b, p):
    """Oracle: multiply cyclic representatives as polynomials, reduce by x^p - 1 then Phi_p."""
    prod = np.convolve(a.cyclic(), b.cyclic())
    cyc = [0] * p
    for i, c in enumerate(prod):
        cyc[i % p] += int(c)
    top = cyc[-1]
    return tuple(c - top for c in cyc[:-1])


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5, 7]).flatmap(lambda p: st.tuples(_cyc(p), _cyc(p), _cyc(p))))
def test_cyclotomic_ring_laws(xyz):
    x, y, z = xyz
    p = x.p
    assert (x * y).coeffs == _poly_mod_phi(x, y, p)
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x - x == CycInt.from_int(0, p)


def test_zeta_relation():
    for p in (3, 5, 7):
        z = CycInt.zeta(p)
        assert z ** p == CycInt.from_int(1, p)
        assert sum((z ** k for k in range(p)), CycInt.from_int(0, p)).is_zero()


@pytest.mark.parametrize("ell,p", [(2, 3), (3, 2), (2, 5), (3, 5), (2, 7), (3, 7), (5, 3), (7, 3), (11, 5)])
def test_K_has_primitive_pth_root(ell, p):
    K = make_K(ell, p)
    assert K.q == ell ** K.d and (K.q - 1) % p == 0
    for i in range(len(K.root_exponents)):
        z = K.zeta_image(i)
        assert K.mult_order(z) == p


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(2, 3), (2, 5), (3, 7), (5, 3), (2, 7)]).flatmap(
    lambda lp: st.tuples(st.just(lp), _cyc(lp[1]), _cyc(lp[1]))))
def test_reduction_is_a_ring_map(args):
    (ell, p), x, y = args
    K = make_K(ell, p)
    for i in range(len(K.root_exponents)):
        assert cyc_reduce(x + y, K, i) == K.add(cyc_reduce(x, K, i), cyc_reduce(y, K, i))
        assert cyc_reduce(x * y, K, i) == K.mul(cyc_reduce(x, K, i), cyc_reduce(y, K, i))
        arr = cyc_reduce_array(np.array([x.coeffs]), K, i)[0]
        assert K.from_coords(arr) == cyc_reduce(x, K, i)


def _norm(x: CycInt) -> int:
    """Oracle: product of the Galois conjugates zeta -> zeta^k."""
    p = x.p
    out = CycInt.from_int(1, p)
    for k in range(1, p):
        cyc = [0] * p
        for i, c in enumerate(x.cyclic()):
            cyc[(i * k) % p] += c
        out = out * CycInt.from_cyclic(cyc, p)
    assert all(c == 0 for c in out.coeffs[1:])
    return out.coeffs[0]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 3), (2, 5), (3, 5), (2, 7), (3, 7), (5, 3), (7, 3), (5, 7)]).flatmap(
    lambda lp: st.tuples(st.just(lp), _cyc(lp[1]), st.integers(0, 3))))
def test_valuation_against_norm(args):
    (ell, p), x, k = args
    if x.is_zero():
        return
    x = x * CycInt.from_int(ell ** k, p)
    K = make_K(ell, p)
    vals = [cyc_valuation(x, K, i) for i in range(len(K.root_exponents))]
    assert min(vals) >= k
    assert K.d * sum(vals) == val_int(_norm(x), ell)


def test_val_int():
    assert val_int(0, 3) == INFINITY
    assert val_int(18, 3) == 2
    assert val_int(-8, 2) == 3


def test_K_identity_depends_on_p():
    """Same field F_7 for p = 2 and p = 3, but different roots of unity."""
    a, b = make_K(7, 2), make_K(7, 3)
    assert a.q == b.q == 7
    assert a != b and hash(a) != hash(b)
    from steinberg.rings import padic_ctx
    assert padic_ctx(a).p == 2 and padic_ctx(b).p == 3
    assert GF(2, 2) != make_K(2, 3) and make_K(2, 3) != GF(2, 2)
