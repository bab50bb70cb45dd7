"""Invariants of B_n and D_n acting on the torus by signed inversions.

The decomposition routine is the constructive lex-descent argument: take the
lex-leading term ``c x^k`` of an invariant ``f``, subtract ``c`` times the
product of generators whose leading exponent is ``k``, and repeat.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arith import format_rational, parse_rational
from .groups import (
    GroupSpec,
    InvariantViolation,
    act,
    enumerate_group,
    generators,
)
from .laurent import LaurentPoly, elementary_symmetric, lex_leading

BASES = ("B-minus", "B-plus", "D")
MAX_STEPS = 10**5


class NotInvariantError(ValueError):
    """Input to :func:`decompose` is not invariant; ``monomial`` is the offending exponent."""

    def __init__(self, message: str, monomial=None):
        super().__init__(message)
        self.monomial = monomial


class NonTerminationError(RuntimeError):
    pass


class TheoryViolation(AssertionError):
    pass


def basis_group(basis: str) -> tuple[str, str]:
    """(family, variant) whose invariants a basis spans."""
    try:
        return {"B-minus": ("B", "torus-minus"), "B-plus": ("B", "torus-plus"), "D": ("D", "torus-plus")}[basis]
    except KeyError:
        raise ValueError(f"unknown basis {basis!r}; expected one of {BASES}") from None


# ---------------------------------------------------------------------------
# averaging


def reynolds(f: LaurentPoly, spec: GroupSpec, variant: str) -> LaurentPoly:
    """Average of ``g.f`` over the group."""
    elems = enumerate_group(spec, variant)
    total = LaurentPoly.zero(f.nvars)
    for g in elems:
        total = total + act(g, f)
    return total.scale(Fraction(1, len(elems)))


def is_invariant(f: LaurentPoly, spec: GroupSpec, variant: str, exhaustive: bool = False) -> bool:
    elems = enumerate_group(spec, variant) if exhaustive else generators(spec, variant)
    return all(act(g, f) == f for g in elems)


def _certify(f: LaurentPoly, spec: GroupSpec, variant: str, what: str):
    for g in generators(spec, variant):
        if act(g, f) != f:
            raise InvariantViolation(f"{what} is not fixed by generator {g}", g)


# ---------------------------------------------------------------------------
# generators


@functools.lru_cache(maxsize=None)
def bn_generators(n: int, sign: str = "minus") -> tuple[LaurentPoly, ...]:
    """``s_i = e_i(x_j - 1/x_j)`` (minus) or ``e_i(x_j + 1/x_j)`` (plus), i = 1..n."""
    if n < 1:
        raise ValueError("n must be positive")
    if sign not in ("minus", "plus"):
        raise ValueError("sign must be 'minus' or 'plus'")
    eps = -1 if sign == "minus" else 1
    args = [LaurentPoly.var(n, j) + LaurentPoly.var(n, j, -1).scale(eps) for j in range(n)]
    gens = tuple(elementary_symmetric(i, args) for i in range(1, n + 1))
    variant = "torus-" + sign
    for i, s in enumerate(gens):
        _certify(s, GroupSpec("B", n), variant, f"s_{i + 1}")
    return gens


@functools.lru_cache(maxsize=None)
def dn_generators(n: int) -> tuple[tuple[LaurentPoly, ...], LaurentPoly, LaurentPoly]:
    """``(s_1..s_{n-1}, Delta_plus, Delta_minus)`` for D_n."""
    if n < 2:
        raise ValueError("D_n needs n >= 2")
    plus = bn_generators(n, "plus")
    xs = [LaurentPoly.var(n, j) for j in range(n)]
    inv = [LaurentPoly.var(n, j, -1) for j in range(n)]
    prod_plus = LaurentPoly.constant(n, 1)
    prod_minus = LaurentPoly.constant(n, 1)
    for a, b in zip(xs, inv):
        prod_plus = prod_plus * (a + b)
        prod_minus = prod_minus * (a - b)
    half = Fraction(1, 2)
    dplus = (prod_plus + prod_minus).scale(half)
    dminus = (prod_plus - prod_minus).scale(half)
    spec = GroupSpec("D", n)
    for name, f in (("Delta+", dplus), ("Delta-", dminus)):
        _certify(f, spec, "torus-plus", name)
    lead_plus, lead_minus = lex_leading(dplus), lex_leading(dminus)
    if lead_plus != ((1,) * n, 1) or lead_minus != ((1,) * (n - 1) + (-1,), 1):
        raise TheoryViolation(f"unexpected leading terms {lead_plus}, {lead_minus}")
    return plus[:-1], dplus, dminus


def basis_generators(basis: str, n: int) -> tuple[LaurentPoly, ...]:
    if basis == "B-minus":
        return bn_generators(n, "minus")
    if basis == "B-plus":
        return bn_generators(n, "plus")
    if basis == "D":
        s, dp, dm = dn_generators(n)
        return s + (dp, dm)
    raise ValueError(f"unknown basis {basis!r}")


# ---------------------------------------------------------------------------
# decompositions


@dataclass
class Decomposition:
    """Polynomial in the generators of ``basis``: ``gen_exp -> coefficient``.

    For B bases ``gen_exp`` lists exponents of ``s_1..s_n``; for the D basis
    it lists ``s_1..s_{n-1}, Delta_plus, Delta_minus``.
    """

    basis: str
    nvars: int
    terms: dict[tuple[int, ...], Fraction] = field(default_factory=dict)

    def expand(self) -> LaurentPoly:
        gens = basis_generators(self.basis, self.nvars)
        powers: dict[tuple[int, int], LaurentPoly] = {}

        def power(i, a):
            if (i, a) not in powers:
                powers[(i, a)] = gens[i] ** a
            return powers[(i, a)]

        total = LaurentPoly.zero(self.nvars)
        for exps, c in self.terms.items():
            term = LaurentPoly.constant(self.nvars, c)
            for i, a in enumerate(exps):
                if a:
                    term = term * power(i, a)
            total = total + term
        return total

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def to_json(self) -> dict:
        return {
            "basis": self.basis,
            "nvars": self.nvars,
            "terms": [{"gen_exp": list(e), "coef": format_rational(c)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Decomposition":
        basis = obj["basis"]
        basis_group(basis)
        terms = {}
        for t in obj["terms"]:
            terms[tuple(t["gen_exp"])] = parse_rational(t["coef"])
        n = obj.get("nvars")
        if n is None:
            width = len(next(iter(terms))) if terms else 0
            n = width - 1 if basis == "D" else width
        return cls(basis, n, terms)

    def __str__(self):
        if self.basis == "D":
            names = [f"s{i + 1}" for i in range(self.nvars - 1)] + ["D+", "D-"]
        else:
            names = [f"s{i + 1}" for i in range(self.nvars)]
        pieces = []
        for exps, c in self.sorted_terms():
            mono = "*".join(names[i] if a == 1 else f"{names[i]}^{a}" for i, a in enumerate(exps) if a)
            if not mono:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append("-" + mono)
            else:
                pieces.append(f"{c}*{mono}")
        return " + ".join(pieces).replace("+ -", "- ") or "0"


def is_dominant(k: Sequence[int], flavor: str) -> bool:
    """B flavor: k_1 >= ... >= k_n >= 0.  D flavor: k_1 >= ... >= k_{n-1} >= |k_n|."""
    n = len(k)
    if flavor == "B":
        return all(k[i] >= k[i + 1] for i in range(n - 1)) and k[-1] >= 0
    if flavor == "D":
        return all(k[i] >= k[i + 1] for i in range(n - 2)) and (n < 2 or k[n - 2] >= abs(k[n - 1]))
    raise ValueError(f"unknown flavor {flavor!r}")


def generator_exponents(k: Sequence[int], basis: str) -> tuple[int, ...]:
    """Exponent vector over the basis generators whose product leads with ``x^k``."""
    n = len(k)
    if basis in ("B-minus", "B-plus"):
        return tuple(k[i] - k[i + 1] for i in range(n - 1)) + (k[-1],)
    last = k[-1]
    exps = [k[i] - k[i + 1] for i in range(n - 2)] + [k[n - 2] - abs(last)]
    # sign(0) taken as +, harmless since the exponent is then 0
    exps += [last, 0] if last >= 0 else [0, -last]
    return tuple(exps)


def decompose(
    f: LaurentPoly,
    basis: str,
    check_invariance: bool = True,
    trace: list | None = None,
) -> Decomposition:
    """Write an invariant Laurent polynomial as a polynomial in the basis generators.

    ``trace``, when given, receives the leading exponent seen at every step.
    """
    family, variant = basis_group(basis)
    n = f.nvars
    spec = GroupSpec(family, n)
    if check_invariance:
        for g in generators(spec, variant):
            diff = act(g, f) - f
            if diff:
                bad = lex_leading(diff)[0]
                raise NotInvariantError(f"input is not {spec} ({variant}) invariant; offending monomial {bad}", bad)
    gens = basis_generators(basis, n)
    powers: dict[tuple[int, int], LaurentPoly] = {}
    flavor = "D" if basis == "D" else "B"
    out: dict[tuple[int, ...], Fraction] = {}
    prev = None
    steps = 0
    while f:
        steps += 1
        if steps > MAX_STEPS:
            raise NonTerminationError(f"decomposition exceeded {MAX_STEPS} steps")
        k, c = lex_leading(f)
        if prev is not None and not k < prev:
            raise TheoryViolation(f"leading exponent did not descend: {prev} -> {k}")
        prev = k
        if trace is not None:
            trace.append(k)
        if not is_dominant(k, flavor):
            raise NotInvariantError(f"leading exponent {k} is not dominant; input is not invariant", k)
        exps = generator_exponents(k, basis)
        M = LaurentPoly.constant(n, 1)
        for i, a in enumerate(exps):
            if a:
                if (i, a) not in powers:
                    powers[(i, a)] = gens[i] ** a
                M = M * powers[(i, a)]
        f = f - M.scale(c)
        out[exps] = out.get(exps, Fraction(0)) + c
        if not out[exps]:
            del out[exps]
    return Decomposition(basis, n, out)


# ---------------------------------------------------------------------------
# orbit sums and discriminants


def orbit_sum(pi: Sequence[int], spec: GroupSpec, variant: str) -> LaurentPoly:
    """``lambda^-1 * sum_g g.x^pi`` with lambda the size of the stabilizer of the monomial."""
    pi = tuple(pi)
    if len(pi) != spec.n:
        raise ValueError("exponent length does not match the rank")
    if spec.family in ("B", "D") and not is_dominant(pi, spec.family):
        raise ValueError(f"{pi} is not dominant for {spec.family}")
    mono = LaurentPoly.monomial(pi)
    total = LaurentPoly.zero(spec.n)
    lam = 0
    for g in enumerate_group(spec, variant):
        img = act(g, mono)
        if img == mono:
            lam += 1
        total = total + img
    return total.scale(Fraction(1, lam))


def torus_discriminant_factors(n: int) -> list[LaurentPoly]:
    x2 = [LaurentPoly.var(n, i, 2) for i in range(n)]
    xm2 = [LaurentPoly.var(n, i, -2) for i in range(n)]
    factors = [x2[i] - xm2[j] for i in range(n) for j in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            factors.append(x2[i] - x2[j])
            factors.append(xm2[i] - xm2[j])
    factors += [x2[i] - xm2[i] for i in range(n)]
    return factors


@functools.lru_cache(maxsize=None)
def torus_discriminant(n: int, certify: bool = True) -> LaurentPoly:
    """The product of all ``x_i^2 - x_j^-2``, ``(x_i^2 - x_j^2)(x_i^-2 - x_j^-2)`` and ``x_i^2 - x_i^-2``."""
    if not 1 <= n <= 4:
        raise ValueError("torus discriminant is limited to n <= 4")
    delta = LaurentPoly.constant(n, 1)
    for fac in torus_discriminant_factors(n):
        delta = delta * fac
    if certify:
        for variant in ("torus-minus", "torus-plus"):
            _certify(delta, GroupSpec("B", n), variant, "torus discriminant")
        if n >= 2:
            _certify(delta, GroupSpec("D", n), "torus-plus", "torus discriminant")
    return delta


@dataclass
class DnRelation:
    p0: Decomposition
    p1: Decomposition
    P: LaurentPoly
    product: Decomposition  # Delta+ Delta- in the B-plus basis


def dn_relation(n: int) -> DnRelation:
    """Split ``Delta+ Delta- = p1(s) + s_n p0(s)`` and set ``P = Delta+ - p0``.

    The returned ``p0``/``p1`` use the B-plus basis with zero ``s_n`` exponent.
    """
    if not 2 <= n <= 4:
        raise ValueError("dn_relation supports 2 <= n <= 4")
    _, dplus, dminus = dn_generators(n)
    D = dplus * dminus
    dec = decompose(D, "B-plus")
    p0, p1 = {}, {}
    for exps, c in dec.terms.items():
        top = exps[-1]
        if top > 1:
            raise TheoryViolation(f"s_n enters with degree {top}")
        base = exps[:-1] + (0,)
        (p0 if top == 1 else p1)[base] = c
    p0d = Decomposition("B-plus", n, p0)
    p1d = Decomposition("B-plus", n, p1)
    p0x, p1x = p0d.expand(), p1d.expand()
    P = dplus - p0x
    if dminus * P != dplus * p0x + p1x:
        raise TheoryViolation("cross-multiplied D_n relation fails")
    return DnRelation(p0d, p1d, P, dec)
