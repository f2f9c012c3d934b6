"""Finite fields GF(p^s) with integer-encoded elements.

An element is the integer ``c_0 + c_1 p + ... + c_{s-1} p^{s-1}`` where
``c_0 + c_1 x + ...`` is its residue modulo the field's defining polynomial.
Zero is ``0`` and one is ``1`` in every field.

Scalar operations take and return Python ints; the ``v*`` variants operate
elementwise on numpy arrays.
"""
import functools
import itertools
import logging
import math

import numpy as np

from .errors import (CapExceeded, DivisionByZero, EvenCharacteristic,
                     NonPrime, NotPrimePower)

log = logging.getLogger(__name__)

DEFAULT_CAP = 2 ** 20
TABLE_LIMIT = 1024       # full add/mul tables at or below this order
EAGER_LOG_LIMIT = 2 ** 16


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n):
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def factor_prime_power(q):
    """Return ``(p, s)`` with ``q == p**s``; raise NotPrimePower otherwise."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    p = prime_factors(q)[0]
    s = 0
    n = q
    while n % p == 0:
        n //= p
        s += 1
    if n != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return p, s


def prime_powers(lo, hi):
    return [q for q in range(max(lo, 2), hi + 1) if len(prime_factors(q)) == 1]


def l2(i):
    """2-adic valuation of ``i``; ``l2(0)`` is ``math.inf``."""
    if i == 0:
        return math.inf
    i = abs(i)
    v = 0
    while i % 2 == 0:
        i //= 2
        v += 1
    return v


# -- polynomials over GF(p) as coefficient lists, low degree first --------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a, m, p):
    a = _trim(a)
    m = _trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        coef = (a[-1] * inv_lead) % p
        shift = len(a) - len(m)
        for k, mk in enumerate(m):
            a[shift + k] = (a[shift + k] - coef * mk) % p
        a = _trim(a)
    return a


def _polymul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def is_irreducible(poly, p):
    """Trial division by every monic polynomial of degree <= deg/2."""
    poly = _trim(poly)
    n = len(poly) - 1
    if n < 1:
        return False
    for deg in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not _polymod(poly, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p, s):
    """Lexicographically first monic irreducible of degree ``s``.

    Coefficient tuples are compared constant term first.
    """
    for low in itertools.product(range(p), repeat=s):
        cand = list(low) + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FieldCtx:
    """Arithmetic context for GF(p^s).

    Instances are not mutated after construction (lazy tables aside) and can
    be shared freely.
    """

    def __init__(self, p, s, *, cap=DEFAULT_CAP, generator=None):
        if not is_prime(p):
            raise NonPrime(f"{p} is not prime")
        if s < 1:
            raise ValueError("extension degree must be positive")
        q = p ** s
        if q > cap:
            raise CapExceeded(f"q = {q} exceeds cap {cap}")
        self.p = p
        self.s = s
        self.q = q
        self.modulus = smallest_irreducible(p, s)
        self._pows = [p ** k for k in range(s)]
        if generator is None:
            generator = self._find_generator()
        elif not (0 < generator < q) or not self._is_generator(generator):
            raise ValueError(f"{generator} does not generate GF({q})^*")
        self.generator = generator
        self._add = self._mul = None
        if q <= EAGER_LOG_LIMIT:
            self._build_log_tables()
        if q <= TABLE_LIMIT:
            self._build_full_tables()

    def __repr__(self):
        return f"FieldCtx(p={self.p}, s={self.s})"

    # -- construction ----------------------------------------------------

    def to_digits(self, a):
        return [(a // pk) % self.p for pk in self._pows]

    def from_digits(self, digits):
        return sum((d % self.p) * pk for d, pk in zip(digits, self._pows))

    def _slow_mul(self, a, b):
        prod = _polymul(_trim(self.to_digits(a)), _trim(self.to_digits(b)), self.p)
        return self.from_digits(_polymod(prod, self.modulus, self.p))

    def _slow_pow(self, a, e):
        result = 1
        while e:
            if e & 1:
                result = self._slow_mul(result, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return result

    def _is_generator(self, g):
        n = self.q - 1
        if n == 1:
            return g == 1
        return all(self._slow_pow(g, n // r) != 1 for r in prime_factors(n))

    def _find_generator(self):
        for g in range(1, self.q):
            if self._is_generator(g):
                return g
        raise AssertionError("multiplicative group is not cyclic")

    def _mul_by_all(self, g):
        """Vector of ``a * g`` for every element ``a`` (digit arithmetic)."""
        p, s, q = self.p, self.s, self.q
        idx = np.arange(q, dtype=np.int64)
        digits = np.stack([(idx // pk) % p for pk in self._pows], axis=1)
        m = np.array(self.modulus[:s], dtype=np.int64)
        acc = np.zeros_like(digits)
        cur = digits
        for gj in self.to_digits(g):
            if gj:
                acc = (acc + gj * cur) % p
            top = cur[:, -1:].copy()
            shifted = np.concatenate([np.zeros((q, 1), np.int64), cur[:, :-1]], axis=1)
            cur = (shifted - top * m[None, :]) % p
        return acc @ np.array(self._pows, dtype=np.int64)

    def _build_log_tables(self):
        q = self.q
        step = self._mul_by_all(self.generator).tolist()
        exp = [1] * (q - 1)
        for k in range(1, q - 1):
            exp[k] = step[exp[k - 1]]
        logt = [-1] * q
        for k, a in enumerate(exp):
            logt[a] = k
        self._exp = np.array(exp, dtype=np.int64)
        self._log = np.array(logt, dtype=np.int64)
        self._exp.setflags(write=False)
        self._log.setflags(write=False)

    @property
    def exp_table(self):
        if not hasattr(self, "_exp"):
            self._build_log_tables()
        return self._exp

    @property
    def log_table(self):
        if not hasattr(self, "_log"):
            self._build_log_tables()
        return self._log

    def _build_full_tables(self):
        q = self.q
        idx = np.arange(q, dtype=np.int64)
        add = self._vadd_digits(idx[:, None], idx[None, :], 1)
        lg = self.log_table
        la = lg[:, None] + lg[None, :]
        mul = self.exp_table[la % (q - 1)]
        mul[0, :] = 0
        mul[:, 0] = 0
        self._add = add.astype(np.int64)
        self._mul = mul.astype(np.int64)
        self._add.setflags(write=False)
        self._mul.setflags(write=False)
        self._neg = self._vadd_digits(np.zeros(q, np.int64), idx, -1)
        self._neg.setflags(write=False)

    def _vadd_digits(self, a, b, sign):
        p = self.p
        if p == 2:
            return np.bitwise_xor(a, b)
        if self.s == 1:
            return (a + sign * b) % p
        res = 0
        for pk in self._pows:
            res = res + (((a // pk) % p + sign * ((b // pk) % p)) % p) * pk
        return res

    # -- scalar arithmetic -----------------------------------------------

    @property
    def order(self):
        return self.q

    def elements(self):
        return range(self.q)

    def add(self, a, b):
        if self._add is not None:
            return int(self._add[a, b])
        return int(self._vadd_digits(a, b, 1))

    def neg(self, a):
        if self._add is not None:
            return int(self._neg[a])
        return int(self._vadd_digits(0, a, -1))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self._mul is not None:
            return int(self._mul[a, b])
        if a == 0 or b == 0:
            return 0
        lg = self.log_table
        return int(self.exp_table[(lg[a] + lg[b]) % (self.q - 1)])

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return int(self.exp_table[(-self.log_table[a]) % (self.q - 1)])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        """``a**e``; exponents act modulo q-1 on nonzero bases, ``0**0 == 1``."""
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise DivisionByZero("zero to a negative power")
            return 0
        return int(self.exp_table[(int(self.log_table[a]) * e) % (self.q - 1)])

    def from_int(self, n):
        """Image of the integer ``n`` under Z -> GF(p)."""
        return n % self.p

    # -- vector arithmetic -----------------------------------------------

    def vadd(self, a, b):
        if self._add is not None:
            return self._add[a, b]
        return self._vadd_digits(np.asarray(a), np.asarray(b), 1)

    def vneg(self, a):
        if self._add is not None:
            return self._neg[a]
        return self._vadd_digits(np.zeros_like(np.asarray(a)), np.asarray(a), -1)

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        if self._mul is not None:
            return self._mul[a, b]
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        lg = self.log_table
        out = self.exp_table[(lg[a] + lg[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def power_map(self, e):
        """Array ``[x**e for x in GF(q)]`` with the ``0**0 == 1`` convention."""
        out = np.zeros(self.q, dtype=np.int64)
        out[0] = 1 if e == 0 else 0
        if self.q > 1:
            lg = self.log_table[1:]
            out[1:] = self.exp_table[(lg * e) % (self.q - 1)]
        return out

    # -- multiplicative structure ------------------------------------------

    def dlog(self, a):
        if a == 0:
            raise DivisionByZero("discrete log of zero")
        return int(self.log_table[a])

    def is_square(self, a):
        """True iff ``a`` is a nonzero square."""
        if a == 0:
            return False
        if self.p == 2:
            return True
        return self.dlog(a) % 2 == 0

    def cyclotomic_class(self, N, i):
        """``g^i`` times the nonzero ``N``-th powers.

        ``N`` is replaced by ``gcd(N, q-1)``, which leaves the set of nonzero
        N-th powers unchanged.
        """
        n = math.gcd(N, self.q - 1)
        if n != N:
            log.debug("cyclotomic order %d reduced to %d in GF(%d)", N, n, self.q)
        i %= n
        return frozenset(int(x) for x in self.exp_table[i::n])

    def class_index(self, a, N):
        """Index ``i`` with ``a`` in class ``C_i`` of order gcd(N, q-1)."""
        return self.dlog(a) % math.gcd(N, self.q - 1)

    def require_odd(self):
        if self.p == 2:
            raise EvenCharacteristic(f"GF({self.q}) has characteristic 2")


@functools.lru_cache(maxsize=None)
def field_new(p, s, cap=DEFAULT_CAP):
    """Cached field constructor: the same ``(p, s)`` gives the same context."""
    return FieldCtx(p, s, cap=cap)


def gf(q, cap=DEFAULT_CAP):
    p, s = factor_prime_power(q)
    return field_new(p, s, cap)


# -- quadratic cyclotomy ---------------------------------------------------

def cyclotomic_number2(ctx, i, j):
    """``|(1 + C_i) & C_j|`` for the square/nonsquare classes, by counting."""
    ctx.require_odd()
    ci = ctx.cyclotomic_class(2, i)
    cj = ctx.cyclotomic_class(2, j)
    return sum(1 for x in ci if ctx.add(1, x) in cj)


def cyclotomic_number2_closed(q, i, j):
    if q % 2 == 0:
        raise EvenCharacteristic(f"needs odd q, got {q}")
    if q % 4 == 1:
        return (q - 5) // 4 if (i, j) == (0, 0) else (q - 1) // 4
    return (q + 1) // 4 if (i, j) == (0, 1) else (q - 3) // 4


def cij_set(ctx, i, j):
    """Nonzero ``x`` with ``1 - x`` in ``C_i`` and ``1 + x`` in ``C_j``."""
    ctx.require_odd()
    ci = ctx.cyclotomic_class(2, i)
    cj = ctx.cyclotomic_class(2, j)
    return frozenset(x for x in range(1, ctx.q)
                     if ctx.sub(1, x) in ci and ctx.add(1, x) in cj)


def delta_ps(ctx):
    """1 if 2 is a nonzero square in the field, else 0."""
    ctx.require_odd()
    return 1 if ctx.is_square(ctx.from_int(2)) else 0


def delta_closed(p, s):
    if p == 2:
        raise EvenCharacteristic(f"needs odd p, got {p}")
    return 1 if s % 2 == 0 or p % 8 in (1, 7) else 0


def cij_sizes_closed(q, delta):
    """Sizes of ``C_{0,0}, C_{0,1}, C_{1,0}, C_{1,1}`` from the closed form."""
    if q % 4 == 1:
        base, side = (q - 5) // 4, (q - 1) // 4
    else:
        base, side = (q - 3) // 4, (q - 3) // 4
    return {(0, 0): base - delta, (0, 1): side, (1, 0): side, (1, 1): base + delta}
