"""Group algebras: cyclic groups over Q(zeta_m) and the symmetrizer of a Weyl group."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import CycloNum
from .groups import GroupElement, GroupSpec, InvariantViolation, enumerate_group


@dataclass(frozen=True)
class CyclicElement:
    """``sum_j coeffs[j] g^j`` in the group algebra of a cyclic group of order m."""

    m: int
    coeffs: tuple[CycloNum, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.m:
            raise ValueError(f"need {self.m} coefficients, got {len(self.coeffs)}")

    @classmethod
    def of(cls, m: int, coeffs: Sequence, field_order: int | None = None) -> "CyclicElement":
        fo = field_order or m
        vals = tuple(c if isinstance(c, CycloNum) else CycloNum(fo, [c]) for c in coeffs)
        return cls(m, vals)

    @classmethod
    def zero(cls, m: int) -> "CyclicElement":
        return cls.of(m, [0] * m)

    @classmethod
    def one(cls, m: int) -> "CyclicElement":
        return cls.of(m, [1] + [0] * (m - 1))

    @classmethod
    def generator(cls, m: int, power: int = 1) -> "CyclicElement":
        c = [0] * m
        c[power % m] = 1
        return cls.of(m, c)

    def __add__(self, other: "CyclicElement") -> "CyclicElement":
        return CyclicElement(self.m, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CyclicElement") -> "CyclicElement":
        return CyclicElement(self.m, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> "CyclicElement":
        return CyclicElement(self.m, tuple(a * c for a in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, CyclicElement):
            return self.scale(other)
        if other.m != self.m:
            raise ValueError("different cyclic groups")
        m = self.m
        zero = self.coeffs[0] * 0
        out = [zero] * m
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[(i + j) % m] = out[(i + j) % m] + a * b
        return CyclicElement(m, tuple(out))

    __rmul__ = scale

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "CyclicElement":
        return cls(obj["m"], tuple(CycloNum.from_json(c) for c in obj["coeffs"]))


def idempotents(m: int, certify: bool = True) -> list[CyclicElement]:
    """``e_i = (1/m) sum_j zeta_m^(-ij) g^j`` for i = 0..m-1, with ``det(g) = zeta_m``."""
    if not 2 <= m <= 24:
        raise ValueError("cyclic order must lie in [2, 24]")
    inv_m = Fraction(1, m)
    es = [
        CyclicElement(m, tuple(CycloNum.zeta(m, -i * j) * inv_m for j in range(m)))
        for i in range(m)
    ]
    if certify:
        one = CyclicElement.one(m)
        zero = CyclicElement.zero(m)
        total = zero
        for i, ei in enumerate(es):
            total = total + ei
            for j, ej in enumerate(es):
                prod = ei * ej
                if prod != (ei if i == j else zero):
                    raise InvariantViolation(f"e_{i} e_{j} has the wrong value", (i, j))
        if total != one:
            raise InvariantViolation("idempotents do not sum to 1")
    return es


@dataclass
class GroupAlgebraElement:
    """Finite-support element of Q[G] for an enumerated signed-permutation group."""

    coeffs: dict[GroupElement, Fraction]

    def __mul__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        out: dict[GroupElement, Fraction] = {}
        for g, a in self.coeffs.items():
            for h, b in other.coeffs.items():
                gh = g * h
                out[gh] = out.get(gh, 0) + a * b
        return GroupAlgebraElement({g: c for g, c in out.items() if c})

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    @classmethod
    def basis(cls, g: GroupElement) -> "GroupAlgebraElement":
        return cls({g: Fraction(1)})


def symmetrizer(spec: GroupSpec, certify: bool = True) -> GroupAlgebraElement:
    """``|G|^-1 sum_g g``; certified idempotent by full convolution."""
    elems = enumerate_group(spec, "linear")
    w = Fraction(1, len(elems))
    e = GroupAlgebraElement({g: w for g in elems})
    if certify and e * e != e:
        raise InvariantViolation(f"symmetrizer of {spec} is not idempotent")
    return e
