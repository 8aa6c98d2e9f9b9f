"""Exact coefficient rings.

Integers are plain Python ints.  ``CycInt`` is an element of Z[zeta_p],
``GF`` a finite field given by a fixed irreducible modulus, ``KField`` the
residue field F_{l^d} carrying a distinguished primitive p-th root of unity,
and ``PadicCtx`` a fixed-precision unramified completion of Z[zeta_p] at a
prime above l.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

INFINITY = float("inf")

PRECISION_START = 32
PRECISION_CAP = 4096


class PrecisionError(ArithmeticError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p**e, or raise ValueError."""
    for p in range(2, q + 1):
        if q % p == 0:
            e, m = 0, q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1 or not is_prime(p):
                break
            return p, e
    raise ValueError(f"{q} is not a prime power")


def val_int(x: int, ell: int) -> int | float:
    """l-adic valuation of an integer; INFINITY for zero."""
    x = int(x)
    if x == 0:
        return INFINITY
    k = 0
    while x % ell == 0:
        x //= ell
        k += 1
    return k


def multiplicative_order(a: int, m: int) -> int:
    a %= m
    if a == 0:
        raise ValueError("not a unit")
    k, x = 1, a
    while x != 1:
        x = x * a % m
        k += 1
    return k


# --- polynomials over GF(p), coefficient lists low -> high -------------------

def _ptrim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmod(f, g, p):
    f = _ptrim(c % p for c in f)
    g = _ptrim(c % p for c in g)
    inv = pow(g[-1], -1, p)
    while len(f) >= len(g):
        c = f[-1] * inv % p
        s = len(f) - len(g)
        for i, gi in enumerate(g):
            f[s + i] = (f[s + i] - c * gi) % p
        f = _ptrim(f)
    return f


def _monic_polys(p, deg):
    """Monic polynomials of degree ``deg`` in the deterministic order:
    lower coefficients read as the base-p number sum c_i p^i."""
    for code in range(p ** deg):
        low = [(code // p ** i) % p for i in range(deg)]
        yield low + [1]


def _is_irreducible(f, p):
    deg = len(f) - 1
    for k in range(1, deg // 2 + 1):
        for g in _monic_polys(p, k):
            if not _pmod(f, g, p):
                return False
    return True


@lru_cache(maxsize=None)
def conway_free_modulus(p: int, e: int) -> tuple[int, ...]:
    """Smallest monic irreducible polynomial of degree e over GF(p)."""
    if e == 1:
        return (0, 1)
    for f in _monic_polys(p, e):
        if _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("unreachable")


TABLE_LIMIT = 1024  # larger fields add by coordinates instead of a q x q table


class GF:
    """The field GF(p^e) with elements encoded as ints 0..q-1.

    The code of an element c_0 + c_1 x + ... is sum c_i p^i, so the integer
    order is the lexicographic order of (c_{e-1}, ..., c_0).
    """

    def __init__(self, p: int, e: int = 1):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        self.p = p
        self.e = e
        self.q = p ** e
        self.modulus = conway_free_modulus(p, e)
        q = self.q
        digits = np.array([[(x // p ** i) % p for i in range(e)] for x in range(q)],
                          dtype=np.int64).reshape(q, e)
        self._digits = digits
        self._weights = p ** np.arange(e, dtype=np.int64)
        # x^k reduced, k < 2e - 1, for coordinate multiplication
        red = []
        for k in range(2 * e - 1):
            mono = [0] * k + [1]
            r = _pmod(mono, list(self.modulus), p) if k >= e else mono
            red.append(r + [0] * (e - len(r)))
        self._reduce = np.array(red, dtype=np.int64).reshape(2 * e - 1, e)
        self._build_log_tables()

    def _build_log_tables(self):
        q = self.q
        for g in range(1, q):
            seen, x = [], 1
            for _ in range(q - 1):
                seen.append(x)
                x = self._mul_slow(x, g)
            if len(set(seen)) == q - 1:
                break
        self.generator = g
        self.exp = np.array(seen + seen, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        log[np.array(seen)] = np.arange(q - 1)
        self.log = log

    def _mul_slow(self, a, b):
        ca, cb = self.coords(a), self.coords(b)
        prod = np.zeros(2 * self.e - 1, dtype=np.int64)
        for i in range(self.e):
            prod[i:i + self.e] += ca[i] * cb
        return self.from_coords(prod @ self._reduce % self.p)

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return type(other) is GF and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash(("GF", self.p, self.e))

    def elements(self):
        return range(self.q)

    def nonzero(self):
        return range(1, self.q)

    # --- coordinates -----------------------------------------------------

    def coords(self, a):
        return self._digits[a]

    def from_coords(self, c):
        c = np.asarray(c, dtype=np.int64) % self.p
        return c @ self._weights if c.ndim > 1 else int(c @ self._weights)

    # --- tables ----------------------------------------------------------

    @cached_property
    def add_table(self):
        d = self._digits
        s = (d[:, None, :] + d[None, :, :]) % self.p
        return (s @ self._weights).astype(np.int64)

    @cached_property
    def neg_table(self):
        return ((-self._digits) % self.p) @ self._weights

    @cached_property
    def mul_table(self):
        q = self.q
        la = self.log
        t = self.exp[(la[:, None] + la[None, :]) % (q - 1)]
        t[0, :] = 0
        t[:, 0] = 0
        return t

    @cached_property
    def inv_table(self):
        t = np.zeros(self.q, dtype=np.int64)
        t[1:] = self.exp[(-self.log[1:]) % (self.q - 1)]
        return t

    # --- scalar arithmetic -------------------------------------------------

    def add(self, a, b):
        if self.q > TABLE_LIMIT:
            return self.from_coords(self._digits[a] + self._digits[b])
        return int(self.add_table[a, b])

    def sub(self, a, b):
        if self.q > TABLE_LIMIT:
            return self.from_coords(self._digits[a] - self._digits[b])
        return int(self.add_table[a, self.neg_table[b]])

    def neg(self, a):
        return int(self.neg_table[a])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[b]])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return int(self.inv_table[a])

    def pow(self, a, k):
        if a == 0:
            return 0 if k > 0 else 1
        return int(self.exp[(self.log[a] * k) % (self.q - 1)])

    def one(self):
        return 1

    def from_int(self, k: int):
        """Image of the integer k under Z -> GF(q)."""
        return self.from_coords([k % self.p] + [0] * (self.e - 1))

    def trace(self, a) -> int:
        """Absolute trace to GF(p), as an int in 0..p-1."""
        s, x = 0, a
        for _ in range(self.e):
            s = self.add(s, x)
            x = self.pow(x, self.p)
        return int(self.coords(s)[0])

    def mult_order(self, a) -> int:
        return (self.q - 1) // np.gcd(int(self.log[a]), self.q - 1)


FqField = GF


# --- cyclotomic integers -------------------------------------------------------

def cyc_canon(arr: np.ndarray) -> np.ndarray:
    """Canonical form of elements of Z[x]/(x^p - 1) mapped to Z[zeta_p].

    ``arr`` has trailing axis of length p; returns trailing length p-1."""
    arr = np.asarray(arr)
    return arr[..., :-1] - arr[..., -1:]


def cyc_lift(arr: np.ndarray) -> np.ndarray:
    """Canonical p-1 coefficients -> length-p cyclic representative."""
    arr = np.asarray(arr)
    pad = np.zeros(arr.shape[:-1] + (1,), dtype=arr.dtype)
    return np.concatenate([arr, pad], axis=-1)


def cyc_shift(arr: np.ndarray, k: int) -> np.ndarray:
    """Multiply cyclic representatives (trailing length p) by zeta^k."""
    return np.roll(arr, k, axis=-1)


@dataclass(frozen=True)
class CycInt:
    """c_0 + c_1 zeta + ... + c_{p-2} zeta^{p-2} in Z[zeta_p]."""

    coeffs: tuple
    p: int

    def __post_init__(self):
        if len(self.coeffs) != max(self.p - 1, 1):
            raise ValueError("coefficient vector must have length p-1")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @classmethod
    def from_int(cls, k: int, p: int) -> "CycInt":
        return cls((k,) + (0,) * (max(p - 1, 1) - 1), p)

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> "CycInt":
        cyc = [0] * p
        cyc[k % p] = 1
        return cls.from_cyclic(cyc, p)

    @classmethod
    def from_cyclic(cls, cyc, p: int) -> "CycInt":
        top = cyc[-1]
        return cls(tuple(c - top for c in cyc[:-1]), p)

    def cyclic(self) -> list:
        return list(self.coeffs) + [0]

    def _check(self, other):
        if isinstance(other, int):
            return CycInt.from_int(other, self.p)
        if not isinstance(other, CycInt):
            return NotImplemented
        if other.p != self.p:
            raise ValueError(f"mismatched primes {self.p} and {other.p}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return CycInt(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.p)

    __radd__ = __add__

    def __neg__(self):
        return CycInt(tuple(-a for a in self.coeffs), self.p)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.p
        a, b = self.cyclic(), other.cyclic()
        out = [0] * p
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[(i + j) % p] += ai * bj
        return CycInt.from_cyclic(out, p)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = CycInt.from_int(1, self.p)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z^{i}")
        return f"CycInt[{self.p}](" + (" + ".join(terms) or "0") + ")"


def cyc_arith(op: str, x: CycInt, y: CycInt | None = None) -> CycInt:
    if op == "neg":
        return -x
    return {"add": x.__add__, "sub": x.__sub__, "mul": x.__mul__}[op](y)


def additive_char(a: int, F: GF) -> CycInt:
    """zeta_p ** Tr(a): the fixed nontrivial character of GF(q)^+."""
    return CycInt.zeta(F.p, F.trace(a))


# --- the residue field K --------------------------------------------------------

class KField(GF):
    """F_{l^d}, d = ord_p(l), with a distinguished element omega of order p."""

    def __init__(self, ell: int, p: int):
        if ell == p:
            raise ValueError("residue characteristic must differ from p")
        if not (is_prime(ell) and is_prime(p)):
            raise ValueError("l and p must be prime")
        d = multiplicative_order(ell, p)
        super().__init__(ell, d)
        self.ell = ell
        self.cyc_p = p
        self.d = d
        k = (self.q - 1) // p
        for x0 in self.nonzero():
            w = self.pow(x0, k)
            if w != 1:
                self.omega = w
                break
        # irreducible factors of Phi_p mod l <-> orbits of j under j -> l*j
        orbits, seen = [], set()
        for j in range(1, p):
            if j in seen:
                continue
            orb, x = [], j
            while x not in orb:
                orb.append(x)
                x = x * ell % p
            seen.update(orb)
            orbits.append(orb)
        factors = []
        for orb in orbits:
            poly = [1]  # coefficients in K, low -> high
            for j in orb:
                root = self.pow(self.omega, j)
                nxt = [0] * (len(poly) + 1)
                for i, c in enumerate(poly):
                    nxt[i + 1] = self.add(nxt[i + 1], c)
                    nxt[i] = self.sub(nxt[i], self.mul(root, c))
                poly = nxt
            coeffs = tuple(int(self.coords(c)[0]) for c in poly)
            assert all(self.from_int(c) == pc for c, pc in zip(coeffs, poly))
            factors.append((coeffs, min(orb)))
        factors.sort(key=lambda fc: sum(c * ell ** i for i, c in enumerate(fc[0])))
        self.phi_factors = [f for f, _ in factors]
        self.root_exponents = [j for _, j in factors]

    def __repr__(self):
        return f"K(l={self.ell}, d={self.d}, p={self.cyc_p})"

    # omega and the factor order depend on p, so K(7, 2) != K(7, 3)
    def __eq__(self, other):
        return isinstance(other, KField) and (self.ell, self.cyc_p) == (other.ell, other.cyc_p)

    def __hash__(self):
        return hash(("K", self.ell, self.cyc_p))

    def zeta_image(self, factor_index: int = 0) -> int:
        if not 0 <= factor_index < len(self.root_exponents):
            raise IndexError(f"factor index {factor_index} out of range "
                             f"(Phi_{self.cyc_p} has {len(self.root_exponents)} factors mod {self.ell})")
        return self.pow(self.omega, self.root_exponents[factor_index])


@lru_cache(maxsize=None)
def make_K(ell: int, p: int) -> KField:
    return KField(ell, p)


def cyc_reduce(x: CycInt, K: KField, factor_index: int = 0) -> int:
    """Image of x under Z[zeta_p] -> K, zeta -> a root of the selected factor."""
    z = K.zeta_image(factor_index)
    out, zi = 0, 1
    for c in x.coeffs:
        out = K.add(out, K.mul(K.from_int(c), zi))
        zi = K.mul(zi, z)
    return out


def cyc_reduce_array(arr: np.ndarray, K: KField, factor_index: int = 0) -> np.ndarray:
    """Vectorized reduction of canonical coefficient arrays (..., p-1) into
    K-coordinate arrays (..., d)."""
    arr = np.asarray(arr)
    z = K.zeta_image(factor_index)
    pw = np.array([K.coords(K.pow(z, i)) for i in range(arr.shape[-1])], dtype=np.int64)
    red = np.mod(arr, K.ell).astype(np.int64)
    return (red @ pw) % K.ell


# --- fixed-precision unramified completion ------------------------------------------

@dataclass(frozen=True)
class Saturated:
    """Valuation signal: the image vanished to the working precision N."""

    precision: int


class PadicCtx:
    """(Z/l^N)[t]/(M(t)) with M a lift of the modulus of K, plus the
    Teichmuller lift of the chosen root of Phi_p."""

    def __init__(self, K: KField, factor_index: int = 0, precision: int = PRECISION_START):
        self.K = K
        self.ell = K.ell
        self.p = K.cyc_p
        self.d = K.d
        self.N = precision
        self.factor_index = factor_index
        self.mod = self.ell ** precision
        self.modulus = [int(c) for c in K.modulus]
        root = [int(c) for c in K.coords(K.zeta_image(factor_index))]
        # x -> x^(l^d) converges l-adically to the Teichmuller representative
        z = root
        for _ in range(precision):
            z = self.pow(z, self.ell ** self.d)
        self.root = z
        self._powers = [self.pow(z, i) for i in range(max(self.p - 1, 1))]

    def with_precision(self, N: int) -> "PadicCtx":
        return PadicCtx(self.K, self.factor_index, N)

    def mul(self, a, b):
        d, m = self.d, self.mod
        prod = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        # reduce by the monic lift of the modulus
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i in range(d):
                    prod[k - d + i] -= c * self.modulus[i]
        return [x % m for x in prod[:d]]

    def pow(self, a, k):
        out = [1] + [0] * (self.d - 1)
        base = list(a)
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def embed(self, x: CycInt) -> list:
        out = [0] * self.d
        for c, zi in zip(x.coeffs, self._powers):
            if c:
                out = [(o + c * z) % self.mod for o, z in zip(out, zi)]
        return out

    def embed_array(self, arr) -> np.ndarray:
        """Embed canonical coefficient arrays (..., p-1) -> object arrays (..., d)."""
        arr = np.asarray(arr, dtype=object)
        pw = np.array(self._powers, dtype=object)
        return (arr @ pw) % self.mod

    def val(self, coords) -> int | Saturated:
        v = min((val_int(c, self.ell) for c in coords), default=INFINITY)
        if v == INFINITY or v >= self.N:
            return Saturated(self.N)
        return int(v)

    def reduce_scaled(self, coords, k: int) -> np.ndarray:
        """(image / l^k) mod l as K-coordinates; requires valuation >= k."""
        scale = self.ell ** k
        out = []
        for c in coords:
            if c % scale:
                raise ValueError("element is not divisible by l^k")
            out.append((c // scale) % self.ell)
        return np.array(out, dtype=np.int64)


def cyc_val(x: CycInt, ctx: PadicCtx) -> int | float | Saturated:
    """Valuation of x at the chosen prime above l, at the precision of ctx."""
    if x.is_zero():
        return INFINITY
    return ctx.val(ctx.embed(x))


def cyc_valuation(x: CycInt, K: KField, factor_index: int = 0) -> int | float:
    """cyc_val with precision escalation: N = 32, doubled on saturation, capped."""
    if x.is_zero():
        return INFINITY
    N = PRECISION_START
    while N <= PRECISION_CAP:
        v = cyc_val(x, padic_ctx(K, factor_index, N))
        if not isinstance(v, Saturated):
            return v
        N *= 2
    raise PrecisionError(f"valuation of {x} exceeds precision cap {PRECISION_CAP}")


@lru_cache(maxsize=None)
def padic_ctx(K: KField, factor_index: int = 0, N: int = PRECISION_START) -> PadicCtx:
    return PadicCtx(K, factor_index, N)

