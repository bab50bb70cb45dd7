"""The shift algebra R_N = Q[t_1..t_N] * Z^N and its map from the localized Weyl algebra.

``sigma_i`` acts on polynomials by ``t_j -> t_j - delta_ij``; elements are
stored as ``{k: p_k(t)}`` meaning ``sum p_k(t) sigma^k`` and multiply by

    sigma^k p(t) = p(t - k) sigma^k.

``phi(sign, c)`` sends ``x_i -> sigma_i`` and
``d_i -> (t_i + 1 - c/2) sigma_i^-1 + (1 -+ sigma_i^-2)``.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from .arith import rat
from .laurent import LaurentPoly, ShapeError, format_poly, poly_from_json, poly_to_json
from .report import Check
from .weyl import WeylElement, epsilon, random_weyl

Shift = tuple[int, ...]


# ---------------------------------------------------------------------------
# affine substitutions on ordinary polynomials


@functools.lru_cache(maxsize=8192)
def _binomial_row(e: int, a: Fraction, s: int) -> tuple[tuple[int, Fraction], ...]:
    # (s*t + a)^e = sum_m C(e, m) s^m a^(e-m) t^m
    return tuple((m, comb(e, m) * Fraction(s) ** m * a ** (e - m)) for m in range(e + 1))


def affine_substitute(p: LaurentPoly, scale: Sequence[int], offset: Sequence) -> LaurentPoly:
    """``p(scale_1 t_1 + offset_1, ...)`` for scales in {+1, -1}; ``p`` must be a polynomial."""
    n = p.nvars
    offset = [rat(o) for o in offset]
    if all(s == 1 for s in scale) and not any(offset):
        return p
    out: dict[tuple[int, ...], Fraction] = {}
    for exp, c in p.items():
        partial: dict[tuple[int, ...], Fraction] = {(): c}
        for i, e in enumerate(exp):
            row = _binomial_row(e, offset[i], scale[i]) if e else ((0, Fraction(1)),)
            nxt: dict[tuple[int, ...], Fraction] = {}
            for key, v in partial.items():
                for m, w in row:
                    if w:
                        k2 = key + (m,)
                        nxt[k2] = nxt.get(k2, 0) + v * w
            partial = nxt
        for key, v in partial.items():
            s = out.get(key, 0) + v
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return LaurentPoly(n, out)


def translate(p: LaurentPoly, k: Sequence[int]) -> LaurentPoly:
    """``p(t - k)``."""
    if not any(k) or p.is_constant():
        return p
    return _translate_cached(p, tuple(k))


@functools.lru_cache(maxsize=1 << 16)
def _translate_cached(p: LaurentPoly, k: Shift) -> LaurentPoly:
    return affine_substitute(p, [1] * p.nvars, [-ki for ki in k])


# ---------------------------------------------------------------------------
# elements


class ShiftElement:
    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], LaurentPoly] | None = None):
        self.nvars = nvars
        clean: dict[Shift, LaurentPoly] = {}
        for k, p in (terms or {}).items():
            k = tuple(k)
            if len(k) != nvars:
                raise ShapeError(f"shift {k} does not have {nvars} entries")
            if not isinstance(p, LaurentPoly):
                p = LaurentPoly.constant(nvars, p)
            if p.nvars != nvars:
                raise ShapeError("coefficient polynomial has the wrong number of variables")
            if not p.is_polynomial():
                raise ValueError("coefficients must be ordinary polynomials in t")
            q = clean.get(k)
            q = p if q is None else q + p
            if q:
                clean[k] = q
            else:
                clean.pop(k, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, nvars: int) -> "ShiftElement":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c=1) -> "ShiftElement":
        return cls(nvars, {(0,) * nvars: LaurentPoly.constant(nvars, c)})

    @classmethod
    def sigma(cls, nvars: int, i: int, power: int = 1) -> "ShiftElement":
        k = [0] * nvars
        k[i] = power
        return cls(nvars, {tuple(k): LaurentPoly.constant(nvars, 1)})

    @classmethod
    def t(cls, nvars: int, i: int) -> "ShiftElement":
        return cls(nvars, {(0,) * nvars: LaurentPoly.var(nvars, i)})

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "ShiftElement":
        return cls(p.nvars, {(0,) * p.nvars: p})

    def items(self):
        return self._terms.items()

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def _lift(self, other):
        if isinstance(other, ShiftElement):
            if other.nvars != self.nvars:
                raise ShapeError(f"nvars mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return ShiftElement.constant(self.nvars, other)
        if isinstance(other, LaurentPoly):
            return ShiftElement.from_poly(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, p in other._terms.items():
            q = out[k] + p if k in out else p
            if q:
                out[k] = q
            else:
                out.pop(k, None)
        return ShiftElement._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return ShiftElement._raw(self.nvars, {k: -p for k, p in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "ShiftElement":
        c = rat(c)
        if not c:
            return ShiftElement.zero(self.nvars)
        return ShiftElement._raw(self.nvars, {k: p.scale(c) for k, p in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return shift_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return shift_mul(other, self)

    def __pow__(self, e: int):
        if e < 0:
            if len(self._terms) == 1:
                ((k, p),) = self._terms.items()
                if p.is_constant():
                    c = p.coefficient((0,) * self.nvars)
                    return ShiftElement(self.nvars, {tuple(ki * e for ki in k): LaurentPoly.constant(self.nvars, Fraction(1) / c**-e)})
            raise ValueError("negative powers only for scalar multiples of sigma^k")
        out = ShiftElement.constant(self.nvars, 1)
        base = self
        while e:
            if e & 1:
                out = shift_mul(out, base)
            e >>= 1
            if e:
                base = shift_mul(base, base)
        return out

    def __eq__(self, other):
        if isinstance(other, ShiftElement):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == ShiftElement.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda kv: kv[0], reverse=True)

    def __str__(self):
        if not self._terms:
            return "0"
        names = [f"t{i + 1}" for i in range(self.nvars)]
        pieces = []
        for k, p in self.sorted_items():
            sig = "*".join(f"S{i + 1}" if e == 1 else f"S{i + 1}^{e}" for i, e in enumerate(k) if e)
            ps = format_poly(p, names)
            if not sig:
                pieces.append(ps)
            elif ps == "1":
                pieces.append(sig)
            elif ps == "-1":
                pieces.append("-" + sig)
            elif len(p) == 1:
                pieces.append(f"{ps}*{sig}")
            else:
                pieces.append(f"({ps})*{sig}")
        return " + ".join(pieces).replace("+ -", "- ")

    def __repr__(self):
        return f"ShiftElement({self.nvars}, {self})"

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [{"sigma": list(k), "poly": poly_to_json(p)} for k, p in self.sorted_items()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ShiftElement":
        n = obj["nvars"]
        terms = {}
        for t in obj["terms"]:
            k = tuple(t["sigma"])
            if k in terms:
                raise ValueError(f"duplicate shift {k}")
            terms[k] = poly_from_json(t["poly"])
        return cls(n, terms)


def shift_mul(u: ShiftElement, v: ShiftElement) -> ShiftElement:
    if u.nvars != v.nvars:
        raise ShapeError(f"nvars mismatch: {u.nvars} vs {v.nvars}")
    out: dict[Shift, LaurentPoly] = {}
    moved: dict[tuple[Shift, Shift], LaurentPoly] = {}
    for k, p in u._terms.items():
        for l, q in v._terms.items():
            if (k, l) not in moved:
                moved[(k, l)] = translate(q, k)
            prod = p * moved[(k, l)]
            kl = tuple(a + b for a, b in zip(k, l))
            r = out[kl] + prod if kl in out else prod
            if r:
                out[kl] = r
            else:
                out.pop(kl, None)
    return ShiftElement._raw(u.nvars, out)


def epsilon_R(sign: str, c, i: int, u: ShiftElement) -> ShiftElement:
    """Involution ``sigma_i -> +-sigma_i^-1``, ``t_i -> c - t_i`` (``i`` 0-based)."""
    if sign not in ("plus", "minus"):
        raise ValueError("sign must be 'plus' or 'minus'")
    if not 0 <= i < u.nvars:
        raise IndexError(f"index {i} outside range for {u.nvars} generators")
    c = rat(c)
    n = u.nvars
    scale = [1] * n
    scale[i] = -1
    offset = [0] * n
    offset[i] = c
    out = {}
    for k, p in u._terms.items():
        q = affine_substitute(p, scale, offset)
        if sign == "minus" and k[i] % 2:
            q = -q
        k2 = k[:i] + (-k[i],) + k[i + 1 :]
        out[k2] = q
    return ShiftElement(n, out)


# ---------------------------------------------------------------------------
# the map from the localized Weyl algebra


def phi_d(sign: str, c, N: int, i: int) -> ShiftElement:
    """Image of ``d_i``: ``(t_i + 1 - c/2) sigma_i^-1 + 1 -+ sigma_i^-2``."""
    c = rat(c)
    pm = 1 if sign == "plus" else -1  # the -+ in front of sigma^-2 is -pm
    ti = LaurentPoly.var(N, i) + (1 - c / 2)
    k1 = [0] * N
    k1[i] = -1
    k2 = [0] * N
    k2[i] = -2
    return ShiftElement(
        N,
        {
            tuple(k1): ti,
            (0,) * N: LaurentPoly.constant(N, 1),
            tuple(k2): LaurentPoly.constant(N, -pm),
        },
    )


class PhiMap:
    """``phi(sign, c)`` with cached generator powers."""

    def __init__(self, sign: str, c, N: int):
        if sign not in ("plus", "minus"):
            raise ValueError("sign must be 'plus' or 'minus'")
        self.sign = sign
        self.c = rat(c)
        self.N = N
        self._dpow: dict[tuple[int, int], ShiftElement] = {}
        self._dgen = [phi_d(sign, self.c, N, i) for i in range(N)]

    def _d_power(self, i: int, b: int) -> ShiftElement:
        if (i, b) not in self._dpow:
            self._dpow[(i, b)] = self._dgen[i] ** b
        return self._dpow[(i, b)]

    def __call__(self, u: WeylElement) -> ShiftElement:
        if u.nvars != self.N:
            raise ShapeError(f"element has {u.nvars} variables, map expects {self.N}")
        N = self.N
        total = ShiftElement.zero(N)
        for (a, b), coef in u.items():
            term = ShiftElement(N, {a: LaurentPoly.constant(N, coef)})
            for i, bi in enumerate(b):
                if bi:
                    term = shift_mul(term, self._d_power(i, bi))
            total = total + term
        return total

    def check_relations(self) -> bool:
        N = self.N
        for i in range(N):
            x = ShiftElement.sigma(N, i)
            d = self._dgen[i]
            if d * x - x * d != ShiftElement.constant(N, 1):
                return False
            for j in range(N):
                if j != i:
                    y = ShiftElement.sigma(N, j)
                    e = self._dgen[j]
                    if d * y != y * d or d * e != e * d:
                        return False
        return True


def phi(sign: str, c, u: WeylElement) -> ShiftElement:
    """Image of ``u`` under the algebra map; the defining relations are checked first."""
    m = PhiMap(sign, c, u.nvars)
    if not m.check_relations():
        raise AssertionError("phi does not respect [d_i, x_j] = delta_ij")
    return m(u)


def phi_inverse(sign: str, c, generator: str, i: int, N: int = 1) -> WeylElement:
    """Preimage of ``sigma_i``, ``sigma_i^-1`` or ``t_i``.

    ``t_i`` pulls back to ``d_i x_i + c/2 - 1 - x_i +- x_i^-1`` (plus sign for
    the plus branch); this is forced by ``phi(d_i x_i) = t_i + 1 - c/2 + sigma_i -+ sigma_i^-1``.
    """
    c = rat(c)
    if generator == "sigma":
        return WeylElement.x(N, i)
    if generator == "sigma_inv":
        return WeylElement.x(N, i, -1)
    if generator != "t":
        raise ValueError(f"unknown generator {generator!r}")
    x = WeylElement.x(N, i)
    xinv = WeylElement.x(N, i, -1)
    d = WeylElement.d(N, i)
    pm = 1 if sign == "plus" else -1
    return d * x + (c / 2 - 1) - x + xinv.scale(pm)


def intertwined_d_image(sign: str, c, N: int = 1, i: int = 0) -> ShiftElement:
    """``-+(t - 1 - c/2) sigma + (1 -+ sigma^2)``, assembled term by term."""
    c = rat(c)
    mp = 1 if sign == "minus" else -1  # the -+ sign
    k1 = [0] * N
    k1[i] = 1
    k2 = [0] * N
    k2[i] = 2
    t_part = (LaurentPoly.var(N, i) - 1 - c / 2).scale(mp)
    return ShiftElement(
        N,
        {tuple(k1): t_part, (0,) * N: LaurentPoly.constant(N, 1), tuple(k2): LaurentPoly.constant(N, mp)},
    )


def verify_intertwining(sign: str, c, N: int, samples: int, rng) -> list[Check]:
    """Check ``epsilon_R o phi == phi o epsilon`` on generators and random elements."""
    if not 1 <= N <= 3:
        raise ValueError("N must lie in [1, 3]")
    c = rat(c)
    m = PhiMap(sign, c, N)
    checks: list[Check] = []
    tag = f"{sign},c={c}"
    for i in range(N):
        d = WeylElement.d(N, i)
        x = WeylElement.x(N, i)
        lhs = epsilon_R(sign, c, i, m(d))
        rhs = m(epsilon(sign, i, d))
        target = intertwined_d_image(sign, c, N, i)
        checks.append(Check(f"intertwine-d{i + 1}[{tag}]", lhs == target and rhs == target,
                            None if lhs == rhs == target else {"lhs": str(lhs), "rhs": str(rhs), "expected": str(target)}))
        lhs = epsilon_R(sign, c, i, m(x))
        rhs = m(epsilon(sign, i, x))
        expected = ShiftElement.sigma(N, i, -1).scale(1 if sign == "plus" else -1)
        checks.append(Check(f"intertwine-x{i + 1}[{tag}]", lhs == rhs == expected,
                            None if lhs == rhs == expected else {"lhs": str(lhs), "rhs": str(rhs)}))
    bad = None
    for _ in range(samples):
        u = random_weyl(rng, N)
        j = rng.randrange(N)
        lhs = epsilon_R(sign, c, j, m(u))
        rhs = m(epsilon(sign, j, u))
        if lhs != rhs:
            bad = {"u": str(u), "index": j + 1}
            break
    checks.append(Check(f"intertwine-random[{tag}]", bad is None, bad))
    return checks
