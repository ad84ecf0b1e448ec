"""Small finite fields GF(q), q = p^m <= 64, backed by exhaustive tables.

Elements are encoded as integers in ``[0, q)``: the coefficient ``c_i`` of
``x^i`` in the polynomial basis contributes ``c_i * p**i``.  With this
encoding GF(4) is ``{0, 1, 2 = x, 3 = x + 1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np

MAX_Q = 64


class FieldError(ValueError):
    pass


def _factor_prime_power(q: int) -> tuple[int, int]:
    if not isinstance(q, (int, np.integer)) or isinstance(q, bool):
        raise FieldError(f"field size must be an integer, got {q!r}")
    q = int(q)
    if q < 2 or q > MAX_Q:
        raise FieldError(f"field size {q} outside supported range [2, {MAX_Q}]")
    p = next(f for f in range(2, q + 1) if q % f == 0)
    m, rest = 0, q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, m


def is_prime_power(q: int) -> bool:
    try:
        _factor_prime_power(q)
    except FieldError:
        return False
    return True


# Polynomials over GF(p) are coefficient lists, lowest degree first.

def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * c) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def _monic_polys(degree: int, p: int):
    for low in product(range(p), repeat=degree):
        yield list(low) + [1]


def is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg < 1 or poly[-1] % p == 0:
        return False
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(d, p):
            if not _poly_mod(poly, f, p):
                return False
    return True


def _poly_value(poly: list[int], p: int) -> int:
    return sum(c * p**i for i, c in enumerate(poly))


def smallest_irreducible(p: int, m: int) -> list[int]:
    """Monic irreducible of degree m with the smallest integer encoding."""
    candidates = sorted(_monic_polys(m, p), key=lambda f: _poly_value(f, p))
    for f in candidates:
        if is_irreducible(f, p):
            return f
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({p})")  # pragma: no cover


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """GF(q) with precomputed add/mul/neg/inv tables.

    Instances are cached per ``q`` (see :func:`field_new`), so identity
    comparison is a valid same-field test.
    """

    q: int
    p: int
    m: int
    reduction_poly: tuple[int, ...]
    add_table: np.ndarray = field(repr=False)
    mul_table: np.ndarray = field(repr=False)
    neg_table: np.ndarray = field(repr=False)
    inv_table: np.ndarray = field(repr=False)
    log_table: np.ndarray = field(repr=False)
    exp_table: np.ndarray = field(repr=False)

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __reduce__(self):
        return (field_new, (self.q,))

    @property
    def elements(self) -> range:
        return range(self.q)

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(self, value)

    def _check(self, *xs: int) -> None:
        for x in xs:
            if not 0 <= x < self.q:
                raise FieldError(f"{x} is not an element of GF({self.q})")

    def add(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        self._check(a)
        return int(self.neg_table[a])

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in a field")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        self._check(a)
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse in a field")
            return 1 if e == 0 else 0
        return int(self.exp_table[(int(self.log_table[a]) * e) % (self.q - 1)])


def _build_tables(p: int, m: int, poly: list[int]):
    q = p**m
    digits = [[(v // p**i) % p for i in range(m)] for v in range(q)]

    def encode(coefs):
        return sum(c * p**i for i, c in enumerate(coefs))

    add = np.empty((q, q), dtype=np.int64)
    mul = np.empty((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(q):
            add[a, b] = encode([(x + y) % p for x, y in zip(digits[a], digits[b])])
            prod = [0] * (2 * m - 1)
            for i, x in enumerate(digits[a]):
                for j, y in enumerate(digits[b]):
                    prod[i + j] = (prod[i + j] + x * y) % p
            rem = _poly_mod(prod, poly, p) if m > 1 else [prod[0] % p]
            mul[a, b] = encode(rem)
    neg = np.array([int(np.nonzero(add[a] == 0)[0][0]) for a in range(q)], dtype=np.int64)
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv[a] = int(np.nonzero(mul[a] == 1)[0][0])

    # First element of multiplicative order q - 1.
    for g in range(2 if q > 2 else 1, q):
        powers = [1]
        while len(powers) < q - 1:
            powers.append(int(mul[powers[-1], g]))
        if len(set(powers)) == q - 1:
            break
    else:  # pragma: no cover
        raise FieldError(f"no primitive element found in GF({q})")
    exp = np.array(powers + powers, dtype=np.int64)
    log = np.full(q, -1, dtype=np.int64)
    for e, v in enumerate(powers):
        log[v] = e
    for t in (add, mul, neg, inv, exp, log):
        t.setflags(write=False)
    return add, mul, neg, inv, log, exp


@lru_cache(maxsize=None)
def field_new(q: int) -> FieldSpec:
    p, m = _factor_prime_power(q)
    poly = smallest_irreducible(p, m) if m > 1 else []
    if m > 1 and not is_irreducible(poly, p):  # pragma: no cover
        raise FieldError(f"reduction polynomial {poly} is reducible")
    add, mul, neg, inv, log, exp = _build_tables(p, m, poly)
    return FieldSpec(p**m, p, m, tuple(poly), add, mul, neg, inv, log, exp)


@dataclass(frozen=True)
class FieldElement:
    """A value of GF(q) tied to its field; arithmetic between fields raises."""

    field: FieldSpec
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise FieldError(f"{self.value} is not an element of {self.field!r}")

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldError(f"cannot mix {self.field!r} and {other.field!r}")
            return other.value
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self.field(self.field.add(self.value, b))

    def __sub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self.field(self.field.sub(self.value, b))

    def __mul__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self.field(self.field.mul(self.value, b))

    def __truediv__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self.field(self.field.div(self.value, b))

    def __neg__(self):
        return self.field(self.field.neg(self.value))

    def __pow__(self, e: int):
        return self.field(self.field.pow(self.value, e))

    def inverse(self) -> FieldElement:
        return self.field(self.field.inv(self.value))

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value}@GF({self.field.q})"
