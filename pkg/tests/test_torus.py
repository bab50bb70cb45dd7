import random
from fractions import Fraction

import pytest

from oracles import decompose_by_linear_solve, orbit_sum_by_images
from noncomm.groups import GroupElement, GroupSpec, act, enumerate_group
from noncomm.laurent import LaurentPoly, elementary_symmetric, evaluate, lex_leading, random_laurent
from noncomm.torus import (
    Decomposition,
    NotInvariantError,
    basis_generators,
    bn_generators,
    decompose,
    dn_generators,
    dn_relation,
    generator_exponents,
    is_dominant,
    is_invariant,
    orbit_sum,
    reynolds,
    torus_discriminant,
)

x1, x2 = LaurentPoly.gens(2)
B2 = GroupSpec("B", 2)


def test_bn_generators_n2_minus():
    s1, s2 = bn_generators(2, "minus")
    assert s1 == x1 - x1**-1 + x2 - x2**-1
    assert s2 == (x1 - x1**-1) * (x2 - x2**-1)
    (s,) = bn_generators(1, "minus")
    assert s == LaurentPoly.var(1, 0) - LaurentPoly.var(1, 0, -1)


def test_bn_generators_n2_plus():
    _, s2 = bn_generators(2, "plus")
    assert s2 == x1 * x2 + x1 * x2**-1 + x1**-1 * x2 + x1**-1 * x2**-1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("sign", ["minus", "plus"])
def test_bn_generator_leading_terms(n, sign):
    for i, s in enumerate(bn_generators(n, sign)):
        assert lex_leading(s) == ((1,) * (i + 1) + (0,) * (n - i - 1), 1)
        assert is_invariant(s, GroupSpec("B", n), f"torus-{sign}", exhaustive=True)


def test_dn_generators_n2():
    (s1,), dp, dm = dn_generators(2)
    assert dp == x1 * x2 + x1**-1 * x2**-1
    assert dm == x1 * x2**-1 + x1**-1 * x2
    assert dp + dm == elementary_symmetric(2, [x1 + x1**-1, x2 + x2**-1])


def test_delta_minus_swapped_by_single_flip():
    _, dp, dm = dn_generators(2)
    g = GroupElement.flip(2, 0, variant="torus-plus")
    assert act(g, dm) == dp
    assert not is_invariant(dm, B2, "torus-plus", exhaustive=True)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_dn_generators_invariant(n):
    s, dp, dm = dn_generators(n)
    for f in (*s, dp, dm):
        assert is_invariant(f, GroupSpec("D", n), "torus-plus", exhaustive=True)


def test_reynolds_single_variable():
    # x1 -> -1/x1 keeps the orbit signs aligned with s1, so nothing cancels
    s1, _ = bn_generators(2, "minus")
    assert reynolds(x1, B2, "torus-minus") == s1.scale(Fraction(1, 4))
    assert reynolds(x1, B2, "linear") == 0


def test_reynolds_fixes_invariants():
    s1, s2 = bn_generators(2, "minus")
    f = s1**2 - 3 * s2
    assert reynolds(f, B2, "torus-minus") == f


def test_reynolds_is_idempotent():
    rng = random.Random(4)
    for _ in range(20):
        f = random_laurent(rng, 2)
        r = reynolds(f, GroupSpec("D", 2), "torus-plus")
        assert reynolds(r, GroupSpec("D", 2), "torus-plus") == r


def test_power_sum_decomposition():
    f = x1**2 + x1**-2 + x2**2 + x2**-2
    dec = decompose(f, "B-minus")
    assert dec.terms == {(2, 0): 1, (0, 1): -2, (0, 0): 4}
    assert str(dec) == "s1^2 - 2*s2 + 4"
    assert decompose_by_linear_solve(f, bn_generators(2, "minus"), 2) == dec.terms


def test_generators_decompose_to_themselves():
    _, s2 = bn_generators(2, "minus")
    assert decompose(s2, "B-minus").terms == {(0, 1): 1}
    _, _, dm = dn_generators(2)
    assert decompose(dm, "D").terms == {(0, 0, 1): 1}


def test_constant_decomposes_to_empty_product():
    assert decompose(LaurentPoly.constant(2, 7), "B-plus").terms == {(0, 0): 7}
    assert decompose(LaurentPoly.zero(2), "B-plus").terms == {}


def test_non_invariant_reports_monomial():
    with pytest.raises(NotInvariantError) as info:
        decompose(x1, "B-minus")
    assert tuple(info.value.monomial) == (1, 0)


def test_random_invariants_match_linear_solve():
    rng = random.Random(9)
    for basis, family, variant in (("B-minus", "B", "torus-minus"), ("B-plus", "B", "torus-plus"), ("D", "D", "torus-plus")):
        gens = basis_generators(basis, 2)
        for _ in range(8):
            f = reynolds(random_laurent(rng, 2, exp_range=(-2, 2)), GroupSpec(family, 2), variant)
            dec = decompose(f, basis)
            oracle = decompose_by_linear_solve(f, gens, 4, no_cross_last_two=basis == "D")
            assert oracle == {e: c for e, c in dec.terms.items()}


def test_strict_lex_descent_trace():
    s1, s2 = bn_generators(3, "plus")[:2]
    trace = []
    decompose(s1**3 * s2 - s2**2 + 5, "B-plus", trace=trace)
    assert all(b < a for a, b in zip(trace, trace[1:]))


def test_orbit_sums():
    s1, _ = bn_generators(2, "minus")
    assert orbit_sum((1, 0), B2, "torus-minus") == s1
    assert orbit_sum((0, 0), B2, "torus-minus") == 1
    _, _, dm = dn_generators(2)
    assert orbit_sum((1, -1), GroupSpec("D", 2), "torus-plus") == dm


@pytest.mark.parametrize("pi", [(2, 1), (3, 0), (1, 1), (2, 2)])
@pytest.mark.parametrize("variant", ["torus-minus", "torus-plus"])
def test_orbit_sum_matches_image_oracle(pi, variant):
    assert orbit_sum(pi, B2, variant) == orbit_sum_by_images(pi, enumerate_group(B2, variant), act)


def test_orbit_sum_rejects_non_dominant():
    with pytest.raises(ValueError):
        orbit_sum((0, 1), B2, "torus-minus")


def test_dominance_and_generator_exponents():
    assert is_dominant((3, 1, 0), "B") and not is_dominant((1, 2), "B")
    assert is_dominant((2, -2), "D") and not is_dominant((1, -2), "D")
    assert generator_exponents((3, 1, 0), "B-minus") == (2, 1, 0)
    assert generator_exponents((3, 1, -1), "D") == (2, 0, 0, 1)


def test_discriminant_n1():
    x = LaurentPoly.var(1, 0)
    assert torus_discriminant(1) == (x**2 - x**-2) ** 2


def test_discriminant_values():
    d = torus_discriminant(2)
    assert evaluate(d, [2, 3]) != 0
    assert evaluate(d, [Fraction(2), Fraction(-1, 2)]) == 0


@pytest.mark.parametrize("n", [2, 3])
def test_discriminant_invariance(n):
    d = torus_discriminant(n)
    for fam, var in (("B", "torus-minus"), ("B", "torus-plus"), ("D", "torus-plus")):
        assert is_invariant(d, GroupSpec(fam, n), var, exhaustive=True)


def test_dn_relation_n2():
    rel = dn_relation(2)
    assert rel.p0.terms == {(0, 0): -2}
    assert rel.p1.terms == {(2, 0): 1, (0, 0): -4}
    _, dp, _ = dn_generators(2)
    assert rel.P == dp + 2


@pytest.mark.parametrize("n", [2, 3, 4])
def test_dn_relation_identity(n):
    rel = dn_relation(n)
    _, dp, dm = dn_generators(n)
    p0, p1 = rel.p0.expand(), rel.p1.expand()
    assert dm * (dp - p0) == dp * p0 + p1
    assert all(e[-1] == 0 for e in (*rel.p0.terms, *rel.p1.terms))


def test_decomposition_json_roundtrip():
    dec = decompose(x1**2 + x1**-2 + x2**2 + x2**-2, "B-minus")
    again = Decomposition.from_json(dec.to_json())
    assert again == dec and again.expand() == dec.expand()
