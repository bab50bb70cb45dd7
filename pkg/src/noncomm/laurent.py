"""Sparse multivariate Laurent polynomials with exact coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .arith import CycloNum, from_json_scalar, rat, to_json_scalar

Exponent = tuple[int, ...]

MAX_TERMS = 10**6

# packed-key encoding used by the multiplication kernel
_SLOT_BITS = 40
_OFFSET = 1 << (_SLOT_BITS - 2)


class ShapeError(ValueError):
    """Operands live in rings with different numbers of variables."""


class UnsupportedError(ValueError):
    """Operation not defined for these arguments (e.g. inverse of a multi-term polynomial)."""


class EmptyPolynomialError(ValueError):
    pass


class InvalidActionError(ValueError):
    pass


class PoleError(ZeroDivisionError):
    """Evaluation at a zero coordinate of a variable that appears with a negative power."""


class TermLimitError(MemoryError):
    pass


def _is_scalar(c) -> bool:
    return isinstance(c, (int, Fraction, CycloNum)) and not isinstance(c, bool)


def _norm_coeff(c):
    if isinstance(c, int):
        return Fraction(c)
    return c


class LaurentPoly:
    """An element of ``K[x_1^{+-1}, ..., x_n^{+-1}]``.

    ``terms`` maps exponent tuples to nonzero coefficients.  Instances are
    treated as immutable; every operation returns a new polynomial.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | None = None):
        if nvars < 0:
            raise ShapeError("nvars must be nonnegative")
        self.nvars = nvars
        clean: dict[Exponent, object] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ShapeError(f"exponent {exp} does not have {nvars} entries")
            c = _norm_coeff(c)
            if c:
                clean[exp] = clean[exp] + c if exp in clean else c
                if not clean[exp]:
                    del clean[exp]
        if len(clean) > MAX_TERMS:
            raise TermLimitError(f"{len(clean)} terms exceeds the limit of {MAX_TERMS}")
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "LaurentPoly":
        # trusted constructor: keys are tuples of length nvars, values nonzero
        if len(terms) > MAX_TERMS:
            raise TermLimitError(f"{len(terms)} terms exceeds the limit of {MAX_TERMS}")
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors ------------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c=1) -> "LaurentPoly":
        c = _norm_coeff(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "LaurentPoly":
        exp = tuple(int(e) for e in exp)
        c = _norm_coeff(c)
        return cls._raw(len(exp), {exp: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int, power: int = 1) -> "LaurentPoly":
        """The variable ``x_i`` (0-based) raised to ``power``."""
        exp = [0] * nvars
        exp[i] = power
        return cls.monomial(exp)

    @classmethod
    def gens(cls, nvars: int) -> list["LaurentPoly"]:
        return [cls.var(nvars, i) for i in range(nvars)]

    # basic accessors -----------------------------------------------------------
    @property
    def terms(self) -> dict[Exponent, object]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_items(self) -> list[tuple[Exponent, object]]:
        """Terms in descending lex order of exponent."""
        return sorted(self._terms.items(), reverse=True)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, exp: Sequence[int]):
        return self._terms.get(tuple(exp), Fraction(0))

    def is_polynomial(self) -> bool:
        """True when no exponent is negative (the element lies in the polynomial ring)."""
        return all(e >= 0 for exp in self._terms for e in exp)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0,) * self.nvars in self._terms)

    def min_exponents(self) -> Exponent:
        if not self._terms:
            return (0,) * self.nvars
        return tuple(min(col) for col in zip(*self._terms))

    # arithmetic ------------------------------------------------------------------
    def _check(self, other: "LaurentPoly"):
        if self.nvars != other.nvars:
            raise ShapeError(f"nvars mismatch: {self.nvars} vs {other.nvars}")

    def _lift(self, other):
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if _is_scalar(other):
            return LaurentPoly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for exp, c in other._terms.items():
            if exp in out:
                s = out[exp] + c
                if s:
                    out[exp] = s
                else:
                    del out[exp]
            else:
                out[exp] = c
        return LaurentPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

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

    def scale(self, c) -> "LaurentPoly":
        c = _norm_coeff(c)
        if not c:
            return LaurentPoly.zero(self.nvars)
        out = {}
        for e, a in self._terms.items():
            p = a * c
            if p:
                out[e] = p
        return LaurentPoly._raw(self.nvars, out)

    def shift(self, exp: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial ``x^exp``."""
        exp = tuple(exp)
        if len(exp) != self.nvars:
            raise ShapeError("shift exponent has wrong length")
        return LaurentPoly._raw(
            self.nvars, {tuple(a + b for a, b in zip(e, exp)): c for e, c in self._terms.items()}
        )

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return _mul(self, other)

    def __rmul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if _is_scalar(other):
            return self.scale(Fraction(1) / other if not isinstance(other, CycloNum) else other.inverse())
        if isinstance(other, LaurentPoly) and len(other) == 1:
            return self * other ** -1
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("exponent must be an integer")
        if k < 0:
            if len(self._terms) != 1:
                raise UnsupportedError("negative power of a polynomial that is not a single term")
            ((exp, c),) = self._terms.items()
            inv = (Fraction(1) / c) if not isinstance(c, CycloNum) else c.inverse()
            return LaurentPoly._raw(self.nvars, {tuple(e * k for e in exp): inv ** -k})
        result = LaurentPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = _mul(result, base)
            k >>= 1
            if k:
                base = _mul(base, base)
        return result

    # equality --------------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        if _is_scalar(other):
            return self == LaurentPoly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self.nvars}, {format_poly(self)})"

    def __str__(self):
        return format_poly(self)

    # the rest is thin wrappers around module functions
    def lex_leading(self):
        return lex_leading(self)

    def evaluate(self, point):
        return evaluate(self, point)

    def to_json(self) -> dict:
        return poly_to_json(self)


def _mul(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    if not f._terms or not g._terms:
        return LaurentPoly.zero(f.nvars)
    n = f.nvars
    if len(f._terms) > len(g._terms):
        f, g = g, f
    if n == 0:
        c = f._terms[()] * g._terms[()]
        return LaurentPoly._raw(0, {(): c} if c else {})
    pack, unpack, base = _packer(n)
    fa = [(pack(e), c) for e, c in f._terms.items()]
    ga = [(pack(e), c) for e, c in g._terms.items()]
    # integer coefficients multiply far faster as ints than as Fractions
    integral = all(type(c) is Fraction and c.denominator == 1 for _, c in fa) and all(
        type(c) is Fraction and c.denominator == 1 for _, c in ga
    )
    if integral:
        fa = [(k, c.numerator) for k, c in fa]
        ga = [(k, c.numerator) for k, c in ga]
    acc: dict[int, object] = {}
    get = acc.get
    for ke, ce in fa:
        kshift = ke - base
        for kg, cg in ga:
            k = kshift + kg
            prev = get(k)
            acc[k] = ce * cg if prev is None else prev + ce * cg
        if len(acc) > MAX_TERMS:
            raise TermLimitError("product exceeds the term limit")
    if integral:
        out = {unpack(k): Fraction(c) for k, c in acc.items() if c}
    else:
        out = {unpack(k): c for k, c in acc.items() if c}
    return LaurentPoly._raw(n, out)


def _packer(n: int):
    weights = [1 << (_SLOT_BITS * i) for i in range(n)]
    base = sum(_OFFSET * w for w in weights)
    mask = (1 << _SLOT_BITS) - 1

    def pack(exp):
        return base + sum(e * w for e, w in zip(exp, weights))

    def unpack(k):
        return tuple(((k >> (_SLOT_BITS * i)) & mask) - _OFFSET for i in range(n))

    return pack, unpack, base


# ---------------------------------------------------------------------------
# operations


def lp_add(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    f._check(g)
    return f + g


def lp_mul(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    f._check(g)
    return f * g


def lp_pow(f: LaurentPoly, k: int) -> LaurentPoly:
    return f**k


def lex_key(exp: Sequence[int]) -> tuple[int, ...]:
    """Sort key for the lex order (first coordinate most significant)."""
    return tuple(exp)


def lex_leading(f: LaurentPoly):
    """Lexicographically greatest exponent in the support and its coefficient."""
    if f.is_zero():
        raise EmptyPolynomialError("the zero polynomial has no leading term")
    exp = max(f._terms)
    return exp, f._terms[exp]


# a signed monomial image x_i -> sign * x_target^power
MonomialImage = tuple[int, int, int]  # (target index, sign, power)


def substitute_monomial(f: LaurentPoly, images: Sequence[MonomialImage]) -> LaurentPoly:
    """Apply the ring endomorphism ``x_i -> sign_i * x_{target_i}^{power_i}``.

    ``images[i] = (target, sign, power)`` with sign and power in {+1, -1};
    targets must form a permutation so the map is an automorphism.
    """
    n = f.nvars
    if len(images) != n:
        raise ShapeError(f"expected {n} images, got {len(images)}")
    targets = [t for t, _, _ in images]
    if sorted(targets) != list(range(n)):
        raise InvalidActionError(f"variable images {targets} are not a bijection")
    for _, s, p in images:
        if s not in (1, -1) or p not in (1, -1):
            raise InvalidActionError("signs and powers must be +1 or -1")
    out: dict[Exponent, object] = {}
    for exp, c in f._terms.items():
        new = [0] * n
        negate = False
        for i, e in enumerate(exp):
            t, s, p = images[i]
            new[t] = p * e
            if s < 0 and e % 2:
                negate = not negate
        out[tuple(new)] = -c if negate else c
    return LaurentPoly._raw(n, out)


def inverse_images(images: Sequence[MonomialImage]) -> list[MonomialImage]:
    """Images of the inverse automorphism of :func:`substitute_monomial`."""
    n = len(images)
    inv: list[MonomialImage | None] = [None] * n
    for i, (t, s, p) in enumerate(images):
        # x_i -> s x_t^p with s, p = +-1 inverts to x_t -> s x_i^p
        inv[t] = (i, s, p)
    return inv  # type: ignore[return-value]


def elementary_symmetric(i: int, args: Sequence[LaurentPoly]) -> LaurentPoly:
    """e_i(args) expanded exactly."""
    n = len(args)
    if not 1 <= i <= n:
        raise IndexError(f"elementary symmetric index {i} outside [1, {n}]")
    nv = args[0].nvars
    # dynamic programming over prefixes: e_k(a_1..a_j)
    row = [LaurentPoly.constant(nv, 1)] + [LaurentPoly.zero(nv)] * i
    for a in args:
        for k in range(i, 0, -1):
            row[k] = row[k] + row[k - 1] * a
    return row[i]


def evaluate(f: LaurentPoly, point: Sequence) -> object:
    """Exact value of ``f`` at ``point`` (coordinates nonzero where powers are negative)."""
    if len(point) != f.nvars:
        raise ShapeError(f"point has {len(point)} coordinates, polynomial has {f.nvars} variables")
    pt = [rat(p) if not isinstance(p, CycloNum) else p for p in point]
    mins = f.min_exponents()
    for i, (p, lo) in enumerate(zip(pt, mins)):
        if lo < 0 and not p:
            raise PoleError(f"coordinate {i + 1} is zero but x{i + 1} appears with power {lo}")
    powers: list[dict[int, object]] = [dict() for _ in pt]
    total = Fraction(0)
    for exp, c in f._terms.items():
        term = c
        for i, e in enumerate(exp):
            if e:
                cache = powers[i]
                if e not in cache:
                    cache[e] = pt[i] ** e
                term = term * cache[e]
        total = total + term
    return total


def map_coefficients(f: LaurentPoly, fn: Callable) -> LaurentPoly:
    return LaurentPoly(f.nvars, {e: fn(c) for e, c in f._terms.items()})


# ---------------------------------------------------------------------------
# text and JSON formats


def format_poly(f: LaurentPoly, names: Sequence[str] | None = None) -> str:
    if f.is_zero():
        return "0"
    names = names or [f"x{i + 1}" for i in range(f.nvars)]
    pieces = []
    for exp, c in f.sorted_items():
        mono = "*".join(
            names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(exp) if e
        )
        if isinstance(c, CycloNum):
            cs = f"({c})"
        else:
            cs = str(c)
        if not mono:
            pieces.append(cs)
        elif c == 1:
            pieces.append(mono)
        elif c == -1:
            pieces.append("-" + mono)
        else:
            pieces.append(f"{cs}*{mono}")
    return " + ".join(pieces).replace("+ -", "- ")


def poly_to_json(f: LaurentPoly) -> dict:
    return {
        "nvars": f.nvars,
        "terms": [{"exp": list(e), "coef": to_json_scalar(c)} for e, c in f.sorted_items()],
    }


def poly_from_json(obj: dict) -> LaurentPoly:
    if not isinstance(obj, dict) or "nvars" not in obj or "terms" not in obj:
        raise ValueError("polynomial JSON needs 'nvars' and 'terms'")
    n = obj["nvars"]
    if not isinstance(n, int) or n < 0:
        raise ValueError("nvars must be a nonnegative integer")
    terms: dict[Exponent, object] = {}
    for t in obj["terms"]:
        exp = t["exp"]
        if not isinstance(exp, list) or not all(isinstance(e, int) and not isinstance(e, bool) for e in exp):
            raise ValueError(f"bad exponent {exp!r}")
        if len(exp) != n:
            raise ValueError(f"exponent {exp} does not have {n} entries")
        key = tuple(exp)
        if key in terms:
            raise ValueError(f"duplicate exponent {exp}")
        terms[key] = from_json_scalar(t["coef"])
    return LaurentPoly(n, terms)


def random_laurent(
    rng,
    nvars: int,
    max_terms: int = 6,
    exp_range: tuple[int, int] = (-3, 3),
    max_num: int = 9,
    max_den: int = 4,
    nonzero: bool = False,
) -> LaurentPoly:
    """Random Laurent polynomial: up to ``max_terms`` terms, coefficients p/q, |p| <= 9, q <= 4."""
    while True:
        k = rng.randint(1 if nonzero else 0, max_terms)
        terms = {}
        for _ in range(k):
            exp = tuple(rng.randint(*exp_range) for _ in range(nvars))
            terms[exp] = Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
        f = LaurentPoly(nvars, terms)
        if f or not nonzero:
            return f


def product(factors: Iterable[LaurentPoly], nvars: int) -> LaurentPoly:
    out = LaurentPoly.constant(nvars, 1)
    for f in factors:
        out = out * f
    return out


__all__ = [
    "LaurentPoly",
    "lp_add",
    "lp_mul",
    "lp_pow",
    "lex_leading",
    "substitute_monomial",
    "inverse_images",
    "elementary_symmetric",
    "evaluate",
    "poly_to_json",
    "poly_from_json",
    "random_laurent",
    "product",
    "ShapeError",
    "UnsupportedError",
    "EmptyPolynomialError",
    "InvalidActionError",
    "PoleError",
    "TermLimitError",
]
