"""The Weyl algebra A_n and its localization at x_1 ... x_n, in normal form.

An element is stored as ``{(a, b): c}`` meaning ``sum c * x^a d^b`` with all
x factors to the left; ``a`` may be negative, ``b`` is nonnegative.  The only
rewrite rule is ``d x^a = x^a d + a x^(a-1)`` (valid for every integer ``a``),
iterated through the Leibniz formula

    d^b x^a = sum_k  C(b, k) * a(a-1)...(a-k+1) * x^(a-k) d^(b-k).
"""

from __future__ import annotations

import functools
import itertools
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from .arith import format_rational, parse_rational
from .groups import GroupElement, GroupSpec, InvariantViolation, UnsupportedVariantError, enumerate_group
from .laurent import LaurentPoly, ShapeError

Term = tuple[tuple[int, ...], tuple[int, ...]]


class ClearingError(ValueError):
    def __init__(self, message: str, residual: int):
        super().__init__(message)
        self.residual = residual


def falling(a: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= a - i
    return out


@functools.lru_cache(maxsize=4096)
def _commute(b: int, a: int) -> tuple[tuple[int, int], ...]:
    """``d^b x^a`` as ``((k, coeff), ...)`` meaning ``coeff * x^(a-k) d^(b-k)``."""
    out = []
    for k in range(b + 1):
        c = comb(b, k) * falling(a, k)
        if c:
            out.append((k, c))
    return tuple(out)


class WeylElement:
    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Term, object] | None = None):
        self.nvars = nvars
        clean: dict[Term, Fraction] = {}
        for (a, b), c in (terms or {}).items():
            a, b = tuple(a), tuple(b)
            if len(a) != nvars or len(b) != nvars:
                raise ShapeError(f"term {(a, b)} does not have {nvars} entries")
            if any(e < 0 for e in b):
                raise ValueError(f"derivative exponents must be nonnegative, got {b}")
            c = Fraction(c)
            if c:
                s = clean.get((a, b), 0) + c
                if s:
                    clean[(a, b)] = s
                else:
                    clean.pop((a, b), None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "WeylElement":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors -------------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "WeylElement":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c=1) -> "WeylElement":
        z = (0,) * nvars
        c = Fraction(c)
        return cls._raw(nvars, {(z, z): c} if c else {})

    @classmethod
    def monomial(cls, a: Sequence[int], b: Sequence[int], c=1) -> "WeylElement":
        return cls(len(a), {(tuple(a), tuple(b)): c})

    @classmethod
    def x(cls, nvars: int, i: int, power: int = 1) -> "WeylElement":
        a = [0] * nvars
        a[i] = power
        return cls.monomial(a, [0] * nvars)

    @classmethod
    def d(cls, nvars: int, i: int, power: int = 1) -> "WeylElement":
        b = [0] * nvars
        b[i] = power
        return cls.monomial([0] * nvars, b)

    @classmethod
    def from_laurent(cls, f: LaurentPoly) -> "WeylElement":
        """The multiplication operator by ``f``."""
        z = (0,) * f.nvars
        return cls._raw(f.nvars, {(e, z): Fraction(c) for e, c in f.items()})

    # accessors -------------------------------------------------------------------
    def items(self):
        return self._terms.items()

    @property
    def terms(self) -> dict[Term, Fraction]:
        return dict(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_polynomial(self) -> bool:
        """Membership in A_n (no negative x-exponents)."""
        return all(e >= 0 for (a, _), _c in self._terms.items() for e in a)

    def min_x_exponent(self) -> int:
        return min((e for (a, _), _c in self._terms.items() for e in a), default=0)

    def is_multiplication_operator(self) -> bool:
        return all(not any(b) for (_, b) in self._terms)

    def to_laurent(self) -> LaurentPoly:
        if not self.is_multiplication_operator():
            raise ValueError("element contains derivatives")
        return LaurentPoly(self.nvars, {a: c for (a, _), c in self._terms.items()})

    # arithmetic -------------------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, WeylElement):
            if other.nvars != self.nvars:
                raise ShapeError(f"nvars mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return WeylElement.constant(self.nvars, other)
        if isinstance(other, LaurentPoly):
            return WeylElement.from_laurent(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for t, c in other._terms.items():
            s = out.get(t, 0) + c
            if s:
                out[t] = s
            else:
                out.pop(t, None)
        return WeylElement._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement._raw(self.nvars, {t: -c for t, c in self._terms.items()})

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

    def scale(self, c) -> "WeylElement":
        c = Fraction(c)
        if not c:
            return WeylElement.zero(self.nvars)
        return WeylElement._raw(self.nvars, {t: v * c for t, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return weyl_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return weyl_mul(other, self)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are only available for x-monomials")
        out = WeylElement.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = weyl_mul(out, base)
            k >>= 1
            if k:
                base = weyl_mul(base, base)
        return out

    def __eq__(self, other):
        if isinstance(other, WeylElement):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == WeylElement.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def sorted_items(self):
        return sorted(self._terms.items(), reverse=True)

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for (a, b), c in self.sorted_items():
            fac = [f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(a) if e]
            fac += [f"d{i + 1}" if e == 1 else f"d{i + 1}^{e}" for i, e in enumerate(b) if e]
            mono = "*".join(fac)
            if not mono:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append("-" + mono)
            else:
                pieces.append(f"{c}*{mono}")
        return " + ".join(pieces).replace("+ -", "- ")

    def __repr__(self):
        return f"WeylElement({self.nvars}, {self})"

    def to_json(self) -> dict:
        return weyl_to_json(self)


def weyl_mul(u: WeylElement, v: WeylElement) -> WeylElement:
    if u.nvars != v.nvars:
        raise ShapeError(f"nvars mismatch: {u.nvars} vs {v.nvars}")
    n = u.nvars
    out: dict[Term, Fraction] = {}
    for (a1, b1), c1 in u._terms.items():
        for (a2, b2), c2 in v._terms.items():
            c = c1 * c2
            per_coord = [_commute(b1[i], a2[i]) for i in range(n)]
            for choice in itertools.product(*per_coord):
                coef = c
                a = []
                b = []
                for i, (k, m) in enumerate(choice):
                    coef *= m
                    a.append(a1[i] + a2[i] - k)
                    b.append(b1[i] - k + b2[i])
                key = (tuple(a), tuple(b))
                s = out.get(key, 0) + coef
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
    return WeylElement._raw(n, out)


def apply_to_laurent(u: WeylElement, f: LaurentPoly) -> LaurentPoly:
    """Act on Laurent polynomials: x^a multiplies, d_i differentiates."""
    if u.nvars != f.nvars:
        raise ShapeError("operator and polynomial have different numbers of variables")
    out: dict[tuple[int, ...], object] = {}
    for (a, b), c in u._terms.items():
        for r, fc in f.items():
            coef = c * fc
            for ri, bi in zip(r, b):
                if bi:
                    coef *= falling(ri, bi)
                    if not coef:
                        break
            if not coef:
                continue
            key = tuple(ri - bi + ai for ri, bi, ai in zip(r, b, a))
            s = out.get(key, 0) + coef
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return LaurentPoly(f.nvars, out)


# ---------------------------------------------------------------------------
# automorphisms


def _map_coordinate(u: WeylElement, j: int, image) -> WeylElement:
    """Replace the coordinate-``j`` factor ``x_j^a d_j^b`` of every term by ``image(a, b)``.

    ``image`` returns a one-variable element; factors in other coordinates
    commute with it, so the product is assembled by placing exponents.
    """
    out: dict[Term, Fraction] = {}
    for (a, b), c in u._terms.items():
        img = image(a[j], b[j])
        for ((p,), (q,)), ic in img._terms.items():
            na = a[:j] + (p,) + a[j + 1 :]
            nb = b[:j] + (q,) + b[j + 1 :]
            key = (na, nb)
            s = out.get(key, 0) + c * ic
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return WeylElement._raw(u.nvars, out)


@functools.lru_cache(maxsize=None)
def _epsilon_factor(sign: str, a: int, b: int) -> WeylElement:
    # image of x^a d^b in one variable
    s = -1 if sign == "minus" else 1
    x_img = WeylElement.monomial((-a,), (0,), s ** abs(a))
    return weyl_mul(x_img, _epsilon_d_power(sign, b))


@functools.lru_cache(maxsize=None)
def _epsilon_d_power(sign: str, b: int) -> WeylElement:
    # (-+ x^2 d)^b: minus sends d -> x^2 d, plus sends d -> -x^2 d
    gen = WeylElement.monomial((2,), (1,), 1 if sign == "minus" else -1)
    return gen**b


def epsilon(sign: str, j: int, u: WeylElement) -> WeylElement:
    """The involution ``x_j -> +-1/x_j``, ``d_j -> -+ x_j^2 d_j`` (``j`` 0-based)."""
    if sign not in ("plus", "minus"):
        raise ValueError("sign must be 'plus' or 'minus'")
    if not 0 <= j < u.nvars:
        raise IndexError(f"coordinate {j} outside range for {u.nvars} variables")
    return _map_coordinate(u, j, lambda a, b: _epsilon_factor(sign, a, b))


def relabel(u: WeylElement, perm: Sequence[int]) -> WeylElement:
    """Send ``x_i, d_i`` to ``x_perm[i], d_perm[i]``."""
    n = u.nvars
    out = {}
    for (a, b), c in u._terms.items():
        na = [0] * n
        nb = [0] * n
        for i, p in enumerate(perm):
            na[p] = a[i]
            nb[p] = b[i]
        out[(tuple(na), tuple(nb))] = c
    return WeylElement._raw(n, out)


def group_act_weyl(g: GroupElement, u: WeylElement, allow_linear: bool = False) -> WeylElement:
    """Induced action on differential operators.

    Torus variants permute the coordinate pairs and apply ``epsilon`` at each
    flipped slot.  The linear variant (``x_i -> -x_i``, ``d_i -> -d_i`` at flips)
    is rejected unless ``allow_linear`` is set.
    """
    if g.n != u.nvars:
        raise ShapeError(f"element of rank {g.n} cannot act on {u.nvars} variables")
    v = relabel(u, g.perm)
    if g.variant == "linear":
        if not allow_linear:
            raise UnsupportedVariantError("linear variant requested without allow_linear")
        out = {}
        for (a, b), c in v._terms.items():
            sign = 1
            for i, f in enumerate(g.flips):
                if f and (a[g.perm[i]] + b[g.perm[i]]) % 2:
                    sign = -sign
            out[(a, b)] = c if sign > 0 else -c
        return WeylElement._raw(u.nvars, out)
    sign = "minus" if g.variant == "torus-minus" else "plus"
    for i, f in enumerate(g.flips):
        if f:
            v = epsilon(sign, g.perm[i], v)
    return v


def reynolds_weyl(u: WeylElement, spec: GroupSpec, variant: str) -> WeylElement:
    elems = enumerate_group(spec, variant)
    total = WeylElement.zero(u.nvars)
    for g in elems:
        total = total + group_act_weyl(g, u, allow_linear=True)
    return total.scale(Fraction(1, len(elems)))


def is_invariant_weyl(u: WeylElement, spec: GroupSpec, variant: str) -> bool:
    return all(group_act_weyl(g, u, allow_linear=True) == u for g in enumerate_group(spec, variant))


def clear_discriminant(
    u: WeylElement,
    delta: LaurentPoly,
    kmax: int = 16,
    spec: GroupSpec | None = None,
    variant: str = "linear",
) -> tuple[int, WeylElement]:
    """Smallest ``k <= kmax`` with ``delta^k u`` in A_n, and that product.

    When ``spec`` is given and ``u`` is invariant, the result is checked to be
    invariant as well.
    """
    if not delta.is_polynomial():
        raise ValueError("discriminant must be an ordinary polynomial")
    if not 0 <= kmax <= 16:
        raise ValueError("kmax must lie in [0, 16]")
    left = WeylElement.from_laurent(delta)
    v = u
    k = 0
    while not v.is_polynomial():
        if k == kmax:
            raise ClearingError(
                f"delta^{kmax} does not clear the denominators; residual exponent {v.min_x_exponent()}",
                v.min_x_exponent(),
            )
        v = weyl_mul(left, v)
        k += 1
    if spec is not None and is_invariant_weyl(u, spec, variant):
        for g in enumerate_group(spec, variant):
            if group_act_weyl(g, v, allow_linear=True) != v:
                raise InvariantViolation(f"cleared element not fixed by {g}", g)
    return k, v


# ---------------------------------------------------------------------------
# serialization and sampling


def weyl_to_json(u: WeylElement) -> dict:
    return {
        "nvars": u.nvars,
        "terms": [{"x": list(a), "d": list(b), "coef": format_rational(c)} for (a, b), c in u.sorted_items()],
    }


def weyl_from_json(obj: dict) -> WeylElement:
    n = obj["nvars"]
    terms = {}
    for t in obj["terms"]:
        key = (tuple(t["x"]), tuple(t["d"]))
        if key in terms:
            raise ValueError(f"duplicate Weyl term {key}")
        terms[key] = parse_rational(t["coef"])
    return WeylElement(n, terms)


def random_weyl(rng, nvars: int, max_terms: int = 4, x_range=(-2, 2), d_max: int = 2, nonzero=False) -> WeylElement:
    """Random element: up to 4 terms, x-exponents in [-2, 2], d-exponents in [0, 2], p/q with |p| <= 9, q <= 4."""
    while True:
        terms = {}
        for _ in range(rng.randint(1 if nonzero else 0, max_terms)):
            a = tuple(rng.randint(*x_range) for _ in range(nvars))
            b = tuple(rng.randint(0, d_max) for _ in range(nvars))
            terms[(a, b)] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        u = WeylElement(nvars, terms)
        if u or not nonzero:
            return u
