"""Signed-permutation models of the Weyl groups S_n, B_n and D_n.

A :class:`GroupElement` acts on variables by ``x_i -> f_i(x_{perm[i]})`` where
``f_i`` is the identity when ``flips[i]`` is false and otherwise depends on the
action variant:

* ``linear``       x -> -x          (matrix action on the polynomial ring)
* ``torus-minus``  x -> -1/x        (the B_n action on the torus)
* ``torus-plus``   x ->  1/x        (the D_n action, also used for B_n)

Composition is defined so that ``act(g * h, f) == act(g, act(h, f))``.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .arith import rat
from .laurent import LaurentPoly, PoleError, ShapeError, substitute_monomial

VARIANTS = ("linear", "torus-minus", "torus-plus")
FAMILIES = ("S", "B", "D")
MAX_RANK = {"S": 8, "B": 6, "D": 6}
MAX_ORDER = 10**5


class GroupRangeError(ValueError):
    """The requested group is too large to enumerate."""


class InvariantViolation(AssertionError):
    """A certification check failed; ``witness`` carries the offending data."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class UnsupportedVariantError(ValueError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    family: str
    n: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        lo = 2 if self.family == "D" else 1
        if not isinstance(self.n, int) or self.n < lo:
            raise ValueError(f"{self.family}_n needs n >= {lo}, got {self.n}")

    @property
    def order(self) -> int:
        f = math.factorial(self.n)
        return {"S": f, "B": 2**self.n * f, "D": 2 ** (self.n - 1) * f}[self.family]

    @property
    def below_stated_rank(self) -> bool:
        """D_n with n < 4: the identities still hold but the group is degenerate."""
        return self.family == "D" and self.n < 4

    def __str__(self):
        return f"{self.family}{self.n}"


@dataclass(frozen=True)
class GroupElement:
    perm: tuple[int, ...]  # 0-based images
    flips: tuple[bool, ...]
    variant: str = "linear"

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise UnsupportedVariantError(f"unknown variant {self.variant!r}")
        if sorted(self.perm) != list(range(len(self.perm))) or len(self.flips) != len(self.perm):
            raise ValueError(f"invalid signed permutation {self.perm} / {self.flips}")

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int, variant: str = "linear") -> "GroupElement":
        return cls(tuple(range(n)), (False,) * n, variant)

    @classmethod
    def transposition(cls, n: int, i: int, j: int, variant: str = "linear", flip: bool = False):
        perm = list(range(n))
        perm[i], perm[j] = j, i
        flips = [False] * n
        if flip:
            flips[i] = flips[j] = True
        return cls(tuple(perm), tuple(flips), variant)

    @classmethod
    def flip(cls, n: int, *coords: int, variant: str = "linear") -> "GroupElement":
        flips = [False] * n
        for c in coords:
            flips[c] = not flips[c]
        return cls(tuple(range(n)), tuple(flips), variant)

    def is_identity(self) -> bool:
        return self.perm == tuple(range(self.n)) and not any(self.flips)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if other.n != self.n:
            raise ShapeError("rank mismatch in composition")
        perm = tuple(self.perm[other.perm[i]] for i in range(self.n))
        flips = tuple(other.flips[i] ^ self.flips[other.perm[i]] for i in range(self.n))
        return GroupElement(perm, flips, self.variant)

    def inverse(self) -> "GroupElement":
        inv = [0] * self.n
        for i, p in enumerate(self.perm):
            inv[p] = i
        flips = tuple(self.flips[inv[i]] for i in range(self.n))
        return GroupElement(tuple(inv), flips, self.variant)

    def with_variant(self, variant: str) -> "GroupElement":
        return GroupElement(self.perm, self.flips, variant)

    def num_flips(self) -> int:
        return sum(self.flips)

    def images(self):
        """Variable images in the format of :func:`substitute_monomial`."""
        sign, power = {"linear": (-1, 1), "torus-minus": (-1, -1), "torus-plus": (1, -1)}[self.variant]
        return [(p, sign, power) if f else (p, 1, 1) for p, f in zip(self.perm, self.flips)]

    def to_json(self) -> dict:
        return {"perm": [p + 1 for p in self.perm], "flips": list(self.flips)}

    @classmethod
    def from_json(cls, obj: dict, variant: str = "linear") -> "GroupElement":
        return cls(tuple(p - 1 for p in obj["perm"]), tuple(bool(f) for f in obj["flips"]), variant)

    def __str__(self):
        parts = []
        for i, (p, f) in enumerate(zip(self.perm, self.flips)):
            parts.append(f"x{i + 1}->{'~' if f else ''}x{p + 1}")
        return "[" + ", ".join(parts) + "]"


def perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def determinant(g: GroupElement) -> Fraction:
    """Determinant of the signed permutation matrix."""
    if g.variant != "linear":
        raise UnsupportedVariantError("determinant is defined for the linear variant")
    return Fraction(perm_sign(g.perm) * (-1) ** g.num_flips())


def _check_size(spec: GroupSpec):
    if spec.n > MAX_RANK[spec.family] or spec.order > MAX_ORDER:
        raise GroupRangeError(f"{spec} has order {spec.order}; enumeration bound exceeded")


@functools.lru_cache(maxsize=64)
def _enumerate_cached(family: str, n: int, variant: str) -> tuple[GroupElement, ...]:
    out = []
    for perm in itertools.permutations(range(n)):
        if family == "S":
            flip_sets: Iterator = iter([(False,) * n])
        else:
            flip_sets = itertools.product((False, True), repeat=n)
        for flips in flip_sets:
            if family == "D" and sum(flips) % 2:
                continue
            out.append(GroupElement(perm, tuple(flips), variant))
    return tuple(out)


def enumerate_group(spec: GroupSpec, variant: str = "linear") -> tuple[GroupElement, ...]:
    """All elements of the group, each exactly once."""
    if variant not in VARIANTS:
        raise UnsupportedVariantError(f"unknown variant {variant!r}")
    _check_size(spec)
    return _enumerate_cached(spec.family, spec.n, variant)


def generators(spec: GroupSpec, variant: str = "linear") -> list[GroupElement]:
    """Simple reflections: adjacent transpositions plus the family's extra generator."""
    n = spec.n
    gens = [GroupElement.transposition(n, i, i + 1, variant) for i in range(n - 1)]
    if spec.family == "B":
        gens.append(GroupElement.flip(n, n - 1, variant=variant))
    elif spec.family == "D":
        gens.append(GroupElement.transposition(n, n - 2, n - 1, variant, flip=True))
    return gens


def act(g: GroupElement, f: LaurentPoly) -> LaurentPoly:
    if f.nvars != g.n:
        raise ShapeError(f"element of rank {g.n} cannot act on {f.nvars} variables")
    return substitute_monomial(f, g.images())


def _flip_value(variant: str, v):
    if variant == "linear":
        return -v
    if v == 0:
        raise PoleError("zero coordinate under a torus action")
    return -1 / v if variant == "torus-minus" else 1 / v


def fixes_point(g: GroupElement, point: Sequence) -> bool:
    """True when substituting the images of ``g`` leaves ``point`` unchanged."""
    for i, (p, f) in enumerate(zip(g.perm, g.flips)):
        v = point[p]
        if f:
            v = _flip_value(g.variant, v)
        if v != point[i]:
            return False
    return True


def stabilizer(spec: GroupSpec, variant: str, point: Sequence) -> list[GroupElement]:
    point = [rat(p) for p in point]
    if len(point) != spec.n:
        raise ShapeError("point dimension does not match the group rank")
    if variant != "linear" and any(p == 0 for p in point):
        raise PoleError("torus actions need nonzero coordinates")
    return [g for g in enumerate_group(spec, variant) if fixes_point(g, point)]


# ---------------------------------------------------------------------------
# hyperplane arrangement data for the linear action


@dataclass(frozen=True)
class ReflectionData:
    forms: tuple[LaurentPoly, ...]
    orders: tuple[int, ...]
    reflections: tuple[GroupElement, ...]
    group_order: int = field(default=0)


def reflection_data(spec: GroupSpec) -> ReflectionData:
    """Root linear forms, their reflection orders, and the reflection through each."""
    _check_size(spec)
    n = spec.n
    x = LaurentPoly.gens(n)
    forms, refl = [], []
    for i in range(n):
        for j in range(i + 1, n):
            forms.append(x[i] - x[j])
            refl.append(GroupElement.transposition(n, i, j))
            if spec.family in ("B", "D"):
                forms.append(x[i] + x[j])
                refl.append(GroupElement.transposition(n, i, j, flip=True))
    if spec.family == "B":
        for i in range(n):
            forms.append(x[i])
            refl.append(GroupElement.flip(n, i))
    return ReflectionData(tuple(forms), (2,) * len(forms), tuple(refl), spec.order)


def skew_invariant_J(spec: GroupSpec, certify: bool = True):
    """Return ``(delta, J, Delta_lin)`` with ``Delta_lin = J**N``.

    With ``certify`` every element is checked for ``w.J == det(w) J`` and
    ``w.Delta_lin == Delta_lin``; a failure raises :class:`InvariantViolation`.
    """
    data = reflection_data(spec)
    n = spec.n
    delta = LaurentPoly.constant(n, 1)
    J = LaurentPoly.constant(n, 1)
    for form, order in zip(data.forms, data.orders):
        delta = delta * form
        J = J * form ** (order - 1)
    big = J ** data.group_order
    if certify:
        for w in enumerate_group(spec, "linear"):
            if act(w, J) != J.scale(determinant(w)):
                raise InvariantViolation(f"w.J != det(w) J for w = {w}", w)
            if act(w, big) != big:
                raise InvariantViolation(f"Delta_lin not fixed by w = {w}", w)
    return delta, J, big


def parse_group(text: str) -> GroupSpec:
    """Parse ``"B2"`` style names."""
    text = text.strip()
    return GroupSpec(text[0].upper(), int(text[1:]))


def group_spec_from_json(obj: dict) -> tuple[GroupSpec, str]:
    return GroupSpec(obj["family"], obj["n"]), obj.get("variant", "linear")


def group_spec_to_json(spec: GroupSpec, variant: str) -> dict:
    return {"family": spec.family, "n": spec.n, "variant": variant}
