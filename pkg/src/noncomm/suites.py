"""Named verification suites.

Every suite is a pure function of its :class:`SuiteConfig`; randomness comes
from a single ``random.Random(seed)`` so reports are reproducible.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .arith import CycloNum, format_rational
from .group_algebra import CyclicElement, GroupAlgebraElement, idempotents, symmetrizer
from .groups import (
    GroupSpec,
    act,
    determinant,
    enumerate_group,
    generators,
    parse_group,
    reflection_data,
    skew_invariant_J,
    stabilizer,
)
from .laurent import LaurentPoly, evaluate, lex_leading, poly_to_json, random_laurent
from .report import Check, SuiteReport
from .shift import PhiMap, ShiftElement, epsilon_R, phi_inverse, verify_intertwining
from .torus import (
    bn_generators,
    decompose,
    dn_relation,
    is_dominant,
    orbit_sum,
    reynolds,
    torus_discriminant,
)
from .weyl import (
    WeylElement,
    apply_to_laurent,
    clear_discriminant,
    epsilon,
    group_act_weyl,
    random_weyl,
    reynolds_weyl,
    weyl_mul,
    weyl_to_json,
)

SUITES = (
    "weyl-involutions",
    "phi-isomorphism",
    "bn-invariants",
    "dn-invariants",
    "discriminant-freeness",
    "skew-invariance-J",
    "idempotents",
    "clearing",
)


@dataclass
class SuiteConfig:
    n: int | None = None
    seed: int = 0
    trials: int = 100
    sign: str | None = None
    c: Fraction | None = None
    group: str | None = None

    def params(self, **defaults) -> dict:
        out = {"seed": self.seed, "trials": self.trials}
        for key in ("n", "sign", "c", "group"):
            val = getattr(self, key)
            if val is None:
                val = defaults.get(key)
            if val is not None:
                out[key] = format_rational(val) if isinstance(val, Fraction) else val
        return out


class UnknownSuiteError(KeyError):
    pass


def random_rational(rng: random.Random, nonzero: bool = True) -> Fraction:
    while True:
        q = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        if q or not nonzero:
            return q


def random_point(rng: random.Random, n: int) -> list[Fraction]:
    return [random_rational(rng) for _ in range(n)]


def random_dominant(rng: random.Random, n: int, flavor: str, bound: int = 4) -> tuple[int, ...]:
    """Uniform-ish dominant exponent with entries in [0, bound] (last entry signed for D)."""
    k = sorted((rng.randint(0, bound) for _ in range(n)), reverse=True)
    if flavor == "D" and k[-1] and rng.random() < 0.5:
        k[-1] = -k[-1]
    assert is_dominant(k, flavor)
    return tuple(k)


def _timed(report: SuiteReport, name: str, fn: Callable[[], tuple[bool, object]]):
    t0 = time.perf_counter()
    try:
        ok, witness = fn()
    except Exception as exc:  # a crashing check is a failing check
        ok, witness = False, {"error": f"{type(exc).__name__}: {exc}"}
    report.add(name, ok, None if ok else witness, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# Weyl algebra


def suite_weyl_involutions(cfg: SuiteConfig) -> SuiteReport:
    n = cfg.n or 2
    rng = random.Random(cfg.seed)
    rep = SuiteReport("weyl-involutions", cfg.params(n=n))

    def faithfulness():
        for _ in range(cfg.trials):
            nv = rng.randint(1, n)
            u, v = random_weyl(rng, nv), random_weyl(rng, nv)
            uv = weyl_mul(u, v)
            for _ in range(10):
                f = random_laurent(rng, nv)
                if apply_to_laurent(uv, f) != apply_to_laurent(u, apply_to_laurent(v, f)):
                    return False, {"u": weyl_to_json(u), "v": weyl_to_json(v), "f": poly_to_json(f)}
        return True, None

    _timed(rep, "normal-ordering-faithful", faithfulness)

    def displayed_values():
        x = WeylElement.x(1, 0)
        d = WeylElement.d(1, 0)
        ok = epsilon("minus", 0, d) == WeylElement.monomial((2,), (1,)) and epsilon(
            "minus", 0, x
        ) == WeylElement.monomial((-1,), (0,), -1)
        return ok, {"eps(d)": str(epsilon("minus", 0, d)), "eps(x)": str(epsilon("minus", 0, x))}

    _timed(rep, "epsilon-minus-values", displayed_values)

    for sign in ("minus", "plus"):

        def involution(sign=sign):
            for _ in range(cfg.trials):
                nv = rng.randint(1, n)
                u = random_weyl(rng, nv)
                j = rng.randrange(nv)
                if epsilon(sign, j, epsilon(sign, j, u)) != u:
                    return False, {"u": weyl_to_json(u), "j": j + 1}
            return True, None

        def automorphism(sign=sign):
            for _ in range(cfg.trials):
                nv = rng.randint(1, n)
                u, v = random_weyl(rng, nv), random_weyl(rng, nv)
                j = rng.randrange(nv)
                if epsilon(sign, j, weyl_mul(u, v)) != weyl_mul(epsilon(sign, j, u), epsilon(sign, j, v)):
                    return False, {"u": weyl_to_json(u), "v": weyl_to_json(v), "j": j + 1}
            for nv in range(1, n + 1):
                for j in range(nv):
                    ed, ex = epsilon(sign, j, WeylElement.d(nv, j)), epsilon(sign, j, WeylElement.x(nv, j))
                    if weyl_mul(ed, ex) - weyl_mul(ex, ed) != WeylElement.constant(nv, 1):
                        return False, {"bracket": str(weyl_mul(ed, ex) - weyl_mul(ex, ed))}
            return True, None

        _timed(rep, f"epsilon-{sign}-involution", involution)
        _timed(rep, f"epsilon-{sign}-automorphism", automorphism)

    def action_homomorphism():
        for family, variant in (("B", "torus-minus"), ("B", "torus-plus"), ("D", "torus-plus")):
            for nv in range(2, max(n, 2) + 1):
                spec = GroupSpec(family, nv)
                gens = generators(spec, variant)
                u = random_weyl(rng, nv)
                for g in gens:
                    for h in gens:
                        lhs = group_act_weyl(g, group_act_weyl(h, u))
                        if lhs != group_act_weyl(g * h, u):
                            return False, {"g": g.to_json(), "h": h.to_json(), "u": weyl_to_json(u)}
        return True, None

    _timed(rep, "group-action-homomorphism", action_homomorphism)

    def action_consistency():
        for _ in range(cfg.trials):
            nv = rng.randint(1, n)
            variant = rng.choice(("torus-minus", "torus-plus"))
            g = rng.choice(enumerate_group(GroupSpec("B", nv), variant))
            f = random_laurent(rng, nv)
            if WeylElement.from_laurent(act(g, f)) != group_act_weyl(g, WeylElement.from_laurent(f)):
                return False, {"g": g.to_json(), "f": poly_to_json(f)}
        return True, None

    _timed(rep, "action-matches-laurent", action_consistency)
    return rep


# ---------------------------------------------------------------------------
# the map to the shift algebra


def suite_phi_isomorphism(cfg: SuiteConfig) -> SuiteReport:
    N = cfg.n or 1
    rng = random.Random(cfg.seed)
    rep = SuiteReport("phi-isomorphism", cfg.params(n=N))
    signs = (cfg.sign,) if cfg.sign else ("plus", "minus")
    cs = (cfg.c,) if cfg.c is not None else (Fraction(0), Fraction(1, 2), Fraction(3))

    for sign in signs:
        for c in cs:
            tag = f"{sign},c={format_rational(c)}"
            m = PhiMap(sign, c, N)

            def relations(m=m):
                return m.check_relations(), None

            def commutator(m=m):
                out = []
                for i in range(N):
                    d, x = WeylElement.d(N, i), WeylElement.x(N, i)
                    out.append(m(weyl_mul(d, x) - weyl_mul(x, d)) == ShiftElement.constant(N, 1))
                    out.append(m(d) * m(x) - m(x) * m(d) == ShiftElement.constant(N, 1))
                return all(out), None

            def homomorphism(m=m):
                for _ in range(cfg.trials):
                    u, v = random_weyl(rng, N), random_weyl(rng, N)
                    if m(weyl_mul(u, v)) != m(u) * m(v):
                        return False, {"u": weyl_to_json(u), "v": weyl_to_json(v)}
                return True, None

            def injective(m=m):
                for _ in range(cfg.trials):
                    u = random_weyl(rng, N, nonzero=True)
                    if not m(u):
                        return False, {"u": weyl_to_json(u)}
                return True, None

            def inverse(m=m, sign=sign, c=c):
                for i in range(N):
                    if m(phi_inverse(sign, c, "t", i, N)) != ShiftElement.t(N, i):
                        return False, {"t": i + 1, "image": str(m(phi_inverse(sign, c, "t", i, N)))}
                    if m(phi_inverse(sign, c, "sigma", i, N)) != ShiftElement.sigma(N, i):
                        return False, {"sigma": i + 1}
                    if m(phi_inverse(sign, c, "sigma_inv", i, N)) != ShiftElement.sigma(N, i, -1):
                        return False, {"sigma_inv": i + 1}
                return True, None

            def epsilon_r(sign=sign, c=c):
                for _ in range(cfg.trials):
                    u = random_shift(rng, N)
                    v = random_shift(rng, N)
                    i = rng.randrange(N)
                    if epsilon_R(sign, c, i, epsilon_R(sign, c, i, u)) != u:
                        return False, {"involution": str(u)}
                    if epsilon_R(sign, c, i, u * v) != epsilon_R(sign, c, i, u) * epsilon_R(sign, c, i, v):
                        return False, {"automorphism": [str(u), str(v)]}
                return True, None

            _timed(rep, f"phi-relations[{tag}]", relations)
            _timed(rep, f"phi-commutator[{tag}]", commutator)
            _timed(rep, f"phi-homomorphism[{tag}]", homomorphism)
            _timed(rep, f"phi-injective[{tag}]", injective)
            _timed(rep, f"phi-inverse-roundtrip[{tag}]", inverse)
            _timed(rep, f"epsilonR-involutive-automorphism[{tag}]", epsilon_r)
            t0 = time.perf_counter()
            checks = verify_intertwining(sign, c, N, cfg.trials, rng)
            for chk in checks:
                chk.seconds = (time.perf_counter() - t0) / len(checks)
            rep.extend(checks)
    return rep


def random_shift(rng: random.Random, N: int) -> ShiftElement:
    terms = {}
    for _ in range(rng.randint(0, 3)):
        k = tuple(rng.randint(-2, 2) for _ in range(N))
        p = random_laurent(rng, N, max_terms=3, exp_range=(0, 2))
        terms[k] = p if k not in terms else terms[k] + p
    return ShiftElement(N, terms)


# ---------------------------------------------------------------------------
# torus invariants


def _roundtrip_checks(rep: SuiteReport, cfg: SuiteConfig, rng, n: int, basis: str, family: str, variant: str, trials: int):
    spec = GroupSpec(family, n)
    flavor = "D" if family == "D" else "B"

    def orbit_roundtrip():
        for _ in range(trials):
            pi = random_dominant(rng, n, flavor)
            m = orbit_sum(pi, spec, variant)
            trace: list = []
            dec = decompose(m, basis, trace=trace)
            if dec.expand() != m:
                return False, {"pi": list(pi)}
            if any(not b < a for a, b in zip(trace, trace[1:])):
                return False, {"pi": list(pi), "trace": [list(t) for t in trace]}
        return True, None

    def reynolds_roundtrip():
        for _ in range(trials):
            f = random_laurent(rng, n)
            r = reynolds(f, spec, variant)
            trace: list = []
            dec = decompose(r, basis, trace=trace)
            if dec.expand() != r or any(not b < a for a, b in zip(trace, trace[1:])):
                return False, {"f": poly_to_json(f)}
        return True, None

    _timed(rep, f"orbit-sum-roundtrip[{basis},n={n}]", orbit_roundtrip)
    _timed(rep, f"reynolds-roundtrip[{basis},n={n}]", reynolds_roundtrip)


def suite_bn_invariants(cfg: SuiteConfig) -> SuiteReport:
    n = cfg.n or 2
    rng = random.Random(cfg.seed)
    rep = SuiteReport("bn-invariants", cfg.params(n=n))
    signs = (cfg.sign,) if cfg.sign else ("minus", "plus")

    def leading():
        for nv in range(1, max(n, 4) + 1):
            for sign in ("minus", "plus"):
                for i, s in enumerate(bn_generators(nv, sign)):
                    want = ((1,) * (i + 1) + (0,) * (nv - i - 1), 1)
                    if lex_leading(s) != want:
                        return False, {"n": nv, "sign": sign, "i": i + 1}
        return True, None

    _timed(rep, "generator-leading-terms", leading)

    def known_value():
        x1, x2 = LaurentPoly.gens(2)
        f = x1**2 + x1**-2 + x2**2 + x2**-2
        dec = decompose(f, "B-minus")
        return dec.terms == {(2, 0): 1, (0, 1): -2, (0, 0): 4}, {"got": str(dec)}

    _timed(rep, "power-sum-decomposition", known_value)
    for sign in signs:
        _roundtrip_checks(rep, cfg, rng, n, f"B-{sign}", "B", f"torus-{sign}", cfg.trials)
    return rep


def suite_dn_invariants(cfg: SuiteConfig) -> SuiteReport:
    n = cfg.n or 2
    rng = random.Random(cfg.seed)
    params = cfg.params(n=n)
    if n < 4:
        params["note"] = "rank below 4"
    rep = SuiteReport("dn-invariants", params)
    _roundtrip_checks(rep, cfg, rng, n, "D", "D", "torus-plus", cfg.trials)

    def relation():
        rel = dn_relation(n)
        ok = all(e[-1] == 0 for e in rel.p0.terms) and all(e[-1] == 0 for e in rel.p1.terms)
        if n == 2:
            ok = ok and rel.p0.terms == {(0, 0): -2} and rel.p1.terms == {(2, 0): 1, (0, 0): -4}
        return ok, {"p0": str(rel.p0), "p1": str(rel.p1)}

    _timed(rep, "dn-relation", relation)
    return rep


# ---------------------------------------------------------------------------
# discriminants and free actions


def point_on_Z(n: int, variant: str) -> list[Fraction]:
    """A point of the discriminant locus fixed by a nontrivial element."""
    second = Fraction(-1, 2) if variant == "torus-minus" else Fraction(1, 2)
    return [Fraction(2), second] + [Fraction(3 + i) for i in range(n - 2)]


def suite_discriminant_freeness(cfg: SuiteConfig) -> SuiteReport:
    n = cfg.n or 2
    rng = random.Random(cfg.seed)
    rep = SuiteReport("discriminant-freeness", cfg.params(n=n))
    delta = torus_discriminant(n)
    cases = [("B", "torus-minus"), ("B", "torus-plus"), ("D", "torus-plus")]

    for family, variant in cases:
        spec = GroupSpec(family, n)

        def invariant(spec=spec, variant=variant):
            for g in enumerate_group(spec, variant):
                if act(g, delta) != delta:
                    return False, {"g": g.to_json()}
            return True, None

        def free(spec=spec, variant=variant):
            tested = 0
            while tested < cfg.trials:
                p = random_point(rng, n)
                if evaluate(delta, p) == 0:
                    continue
                tested += 1
                stab = stabilizer(spec, variant, p)
                if len(stab) != 1:
                    return False, {"point": [format_rational(v) for v in p], "stabilizer": [g.to_json() for g in stab]}
            return True, None

        def witness(spec=spec, variant=variant):
            p = point_on_Z(n, variant)
            stab = stabilizer(spec, variant, p)
            ok = evaluate(delta, p) == 0 and len(stab) > 1
            return ok, {"point": [format_rational(v) for v in p]}

        tag = f"{family}{n},{variant}"
        _timed(rep, f"discriminant-invariant[{tag}]", invariant)
        _timed(rep, f"free-off-Z[{tag}]", free)
        _timed(rep, f"on-Z-witness[{tag}]", witness)
    return rep


def suite_skew_invariance_J(cfg: SuiteConfig) -> SuiteReport:
    rng = random.Random(cfg.seed)
    groups = [cfg.group] if cfg.group else ["S2", "S3", "B2", "B3"]
    rep = SuiteReport("skew-invariance-J", cfg.params(group=",".join(groups)))
    for name in groups:
        spec = parse_group(name)

        def identities(spec=spec):
            delta, J, big = skew_invariant_J(spec, certify=False)
            for w in enumerate_group(spec, "linear"):
                if act(w, J) != J.scale(determinant(w)):
                    return False, {"w": w.to_json(), "what": "J"}
                if act(w, big) != big:
                    return False, {"w": w.to_json(), "what": "Delta"}
            return True, None

        def hyperplanes(spec=spec):
            data = reflection_data(spec)
            for form, r in zip(data.forms, data.reflections):
                # r fixes its hyperplane pointwise and negates the form
                if act(r, form) != -form or not (r * r).is_identity():
                    return False, {"form": str(form)}
            return True, None

        def free(spec=spec):
            delta, _, _ = skew_invariant_J(spec, certify=False)
            tested = 0
            while tested < cfg.trials:
                p = random_point(rng, spec.n)
                if evaluate(delta, p) == 0:
                    continue
                tested += 1
                stab = stabilizer(spec, "linear", p)
                if len(stab) != 1:
                    return False, {"point": [format_rational(v) for v in p]}
            return True, None

        _timed(rep, f"J-skew-invariant[{spec}]", identities)
        _timed(rep, f"reflection-hyperplanes[{spec}]", hyperplanes)
        _timed(rep, f"free-on-Vreg[{spec}]", free)
    return rep


# ---------------------------------------------------------------------------
# group algebras


def suite_idempotents(cfg: SuiteConfig) -> SuiteReport:
    top = cfg.n or 12
    rep = SuiteReport("idempotents", cfg.params(n=top))
    for m in range(2, top + 1):

        def certify(m=m):
            es = idempotents(m, certify=False)
            one, zero = CyclicElement.one(m), CyclicElement.zero(m)
            total = zero
            for i, ei in enumerate(es):
                total = total + ei
                for j, ej in enumerate(es):
                    if ei * ej != (ei if i == j else zero):
                        return False, {"i": i, "j": j}
                if CyclicElement.generator(m) * ei != ei.scale(CycloNum.zeta(m, i)):
                    return False, {"character": i}
            return total == one, {"sum": "not one"}

        _timed(rep, f"cyclic-idempotents[m={m}]", certify)

    for name in ("S3", "B2"):

        def sym(name=name):
            spec = parse_group(name)
            e = symmetrizer(spec, certify=False)
            if e * e != e:
                return False, {"group": name}
            for w in enumerate_group(spec, "linear"):
                if GroupAlgebraElement.basis(w) * e != e:
                    return False, {"absorb": w.to_json()}
            return True, None

        _timed(rep, f"symmetrizer[{name}]", sym)
    return rep


# ---------------------------------------------------------------------------
# clearing denominators


def localized_invariant(rng: random.Random, spec: GroupSpec, depth: int) -> WeylElement:
    """Reynolds image of a random element of A_n, divided by ``(x_1...x_n)^(2 depth)``.

    The monomial ``(x_1...x_n)^2`` is invariant under the linear B_n action,
    so the quotient is an invariant of the localized algebra.
    """
    n = spec.n
    while True:
        u = random_weyl(rng, n, x_range=(0, 2), nonzero=True)
        v = reynolds_weyl(u, spec, "linear")
        if v:
            break
    denom = WeylElement.monomial((-2 * depth,) * n, (0,) * n)
    return weyl_mul(denom, v)


def suite_clearing(cfg: SuiteConfig) -> SuiteReport:
    rng = random.Random(cfg.seed)
    group = cfg.group or "B2"
    spec = parse_group(group)
    rep = SuiteReport("clearing", cfg.params(group=group))
    _, _, big = skew_invariant_J(spec, certify=False)
    per_k = big.min_exponents()[0] if big.nvars else 0

    def clears():
        ks = []
        for _ in range(cfg.trials):
            depth = rng.randint(0, 2 * per_k)
            u = localized_invariant(rng, spec, depth)
            k, v = clear_discriminant(u, big, kmax=4, spec=spec, variant="linear")
            ks.append(k)
            if not v.is_polynomial() or k > 4:
                return False, {"u": weyl_to_json(u)}
        return True, None

    _timed(rep, f"clear-discriminant[{spec}]", clears)
    return rep


_SUITE_FUNCS = {
    "weyl-involutions": suite_weyl_involutions,
    "phi-isomorphism": suite_phi_isomorphism,
    "bn-invariants": suite_bn_invariants,
    "dn-invariants": suite_dn_invariants,
    "discriminant-freeness": suite_discriminant_freeness,
    "skew-invariance-J": suite_skew_invariance_J,
    "idempotents": suite_idempotents,
    "clearing": suite_clearing,
}


def run_suite(name: str, cfg: SuiteConfig | None = None) -> SuiteReport:
    if name not in _SUITE_FUNCS:
        raise UnknownSuiteError(name)
    return _SUITE_FUNCS[name](cfg or SuiteConfig())

