"""Exact coefficient domains: rationals and cyclotomic fields Q(zeta_m).

Rationals are :class:`fractions.Fraction`.  Cyclotomic numbers are stored as
a coefficient vector in the power basis ``1, z, ..., z^(phi(m)-1)`` of
``Q[z] / Phi_m(z)``.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction, "CycloNum"]

MAX_CYCLOTOMIC_ORDER = 64


class ArithError(ValueError):
    """Raised on out-of-range arguments to arithmetic helpers."""


# ---------------------------------------------------------------------------
# rationals


def rat(value) -> Fraction:
    """Coerce ``value`` (int, Fraction or ``"p/q"`` string) to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    if not isinstance(text, str):
        raise TypeError(f"rational must be serialized as a string, got {text!r}")
    return Fraction(text)


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q, low degree first

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _trim(out)


def _psub(a: Sequence, b: Sequence) -> list:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, bi in enumerate(b):
        out[i] -= bi
    return _trim(out)


def _pdivmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(x) for x in a]
    _trim(r)
    lead = Fraction(b[-1])
    q = [Fraction(0)] * max(0, len(r) - len(b) + 1)
    while len(r) >= len(b):
        shift = len(r) - len(b)
        f = r[-1] / lead
        q[shift] = f
        for i, bi in enumerate(b):
            r[shift + i] -= f * bi
        r.pop()
        _trim(r)
    return _trim(q), r


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first.

    Computed by dividing ``z^m - 1`` by Phi_d for every proper divisor d.
    """
    if not isinstance(m, int) or not 1 <= m <= MAX_CYCLOTOMIC_ORDER:
        raise ArithError(f"cyclotomic order must lie in [1, {MAX_CYCLOTOMIC_ORDER}], got {m}")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num, rem = _pdivmod(num, cyclotomic_polynomial(d))
            assert not rem
    return tuple(int(c) for c in num)


def euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


# ---------------------------------------------------------------------------
# cyclotomic numbers


class CycloNum:
    """An element of Q(zeta_m), reduced modulo the m-th cyclotomic polynomial."""

    __slots__ = ("m", "coeffs", "_hash")

    def __init__(self, m: int, coeffs: Iterable = ()):
        phi = cyclotomic_polynomial(m)
        deg = len(phi) - 1
        poly = _trim([rat(c) for c in coeffs])
        if len(poly) > deg:
            _, poly = _pdivmod(poly, phi)
        poly = list(poly) + [Fraction(0)] * (deg - len(poly))
        self.m = m
        self.coeffs: tuple[Fraction, ...] = tuple(Fraction(c) for c in poly)
        self._hash = None

    # constructors ---------------------------------------------------------
    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "CycloNum":
        """The power ``zeta_m^k`` (k may be negative)."""
        k %= m
        return cls(m, [0] * k + [1])

    @classmethod
    def from_rational(cls, m: int, q) -> "CycloNum":
        return cls(m, [rat(q)])

    # predicates -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ArithError(f"{self} is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "CycloNum":
        if isinstance(other, CycloNum):
            if other.m != self.m:
                raise ArithError(f"mixed cyclotomic orders {self.m} and {other.m}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return CycloNum(self.m, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNum(self.m, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(self.m, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNum(self.m, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return CycloNum(self.m, [a * other for a in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNum(self.m, _pmul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "CycloNum":
        return cyclo_inverse(self)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return CycloNum(self.m, [a / other for a in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * cyclo_inverse(other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * cyclo_inverse(self)

    def __pow__(self, k: int):
        if k < 0:
            return cyclo_inverse(self) ** (-k)
        result = CycloNum(self.m, [1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison / hashing --------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, CycloNum):
            return self.m == other.m and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_rational() and self.to_rational() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.to_rational()) if self.is_rational() else hash((self.m, self.coeffs))
        return self._hash

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else (f"z{self.m}" if k == 1 else f"z{self.m}^{k}")
            if not mono:
                terms.append(format_rational(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{format_rational(c)}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") or "0"

    # serialization ---------------------------------------------------------
    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "CycloNum":
        m = obj["m"]
        coeffs = [parse_rational(c) for c in obj["coeffs"]]
        if len(coeffs) != len(cyclotomic_polynomial(m)) - 1:
            raise ArithError(f"Q(zeta_{m}) element needs {len(cyclotomic_polynomial(m)) - 1} coefficients")
        return cls(m, coeffs)


def cyclo_inverse(a: CycloNum) -> CycloNum:
    """Multiplicative inverse via the extended Euclidean algorithm against Phi_m."""
    if a.is_zero():
        raise ZeroDivisionError("inverse of zero in a cyclotomic field")
    phi = [Fraction(c) for c in cyclotomic_polynomial(a.m)]
    # invariant: s * a == r  (mod phi)
    r0, r1 = phi, _trim(list(a.coeffs))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, rem = _pdivmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, _psub(s0, _pmul(q, s1))
    # r1 is a nonzero constant because Phi_m is irreducible
    c = r1[0]
    return CycloNum(a.m, [x / c for x in s1])


def to_json_scalar(c) -> str | dict:
    if isinstance(c, CycloNum):
        return c.to_json()
    return format_rational(c)


def from_json_scalar(obj):
    if isinstance(obj, dict):
        return CycloNum.from_json(obj)
    return parse_rational(obj)
