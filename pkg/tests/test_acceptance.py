"""Acceptance criteria 1-9.

Run with ``pytest tests/test_acceptance.py -v`` (the verdict lines are repeated
in the terminal summary) or ``python tests/test_acceptance.py``.
"""

import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from noncomm.shift import PhiMap, ShiftElement, epsilon_R, intertwined_d_image
from noncomm.suites import SuiteConfig, run_suite
from noncomm.weyl import WeylElement, epsilon

DATA = Path(__file__).resolve().parent.parent / "data"
VERDICTS: dict[int, str] = {}


def record(k: int, title: str, reports=(), extra: dict | None = None) -> bool:
    failed = [f"{r.suite}:{c.name}" for r in reports for c in r.checks if not c.passed]
    failed += [name for name, ok in (extra or {}).items() if not ok]
    line = f"criterion {k} {'PASS' if not failed else 'FAIL'}: {title}"
    if failed:
        line += "  [" + ", ".join(failed) + "]"
    VERDICTS[k] = line
    print(line)
    return not failed


@pytest.fixture(scope="module")
def weyl_report():
    return run_suite("weyl-involutions", SuiteConfig(n=3, seed=0, trials=300))


def test_criterion_1_normal_ordering(weyl_report):
    faithful = [c for c in weyl_report.checks if c.name == "normal-ordering-faithful"]
    assert faithful
    ok = record(1, "Weyl normal ordering agrees with the Leibniz action (300 products, n<=3)",
                extra={c.name: c.passed for c in faithful})
    assert ok


def test_criterion_2_epsilon(weyl_report):
    eps = {c.name: c.passed for c in weyl_report.checks if c.name.startswith("epsilon")}
    assert len(eps) == 5  # displayed values plus involution/automorphism per sign
    ok = record(2, "epsilon involutions: involutive automorphisms, displayed values exact", extra=eps)
    assert ok


def _displayed_intertwining(sign: str, c: Fraction) -> bool:
    """Both sides of the intertwining on d against the closed form written out by hand."""
    t = ShiftElement.t(1, 0)
    s = ShiftElement.sigma(1, 0)
    if sign == "plus":
        closed = -(t - 1 - c / 2) * s + (1 - s * s)
    else:
        closed = (t - 1 - c / 2) * s + (1 + s * s)
    m = PhiMap(sign, c, 1)
    d = WeylElement.d(1, 0)
    return (
        epsilon_R(sign, c, 0, m(d)) == closed
        and m(epsilon(sign, 0, d)) == closed
        and intertwined_d_image(sign, c) == closed
    )


def test_criterion_3_phi_isomorphism():
    reports = [run_suite("phi-isomorphism", SuiteConfig(n=N, seed=7, trials=200)) for N in (1, 2)]
    extra = {
        f"displayed[{sign},c={c}]": _displayed_intertwining(sign, Fraction(c))
        for sign in ("plus", "minus")
        for c in (0, Fraction(1, 2), 3)
    }
    ok = record(3, "phi is an injective homomorphism intertwining the involutions; inverse exact (N=1,2)",
                reports, extra)
    assert ok


def test_criterion_4_bn_invariants():
    reports = [run_suite("bn-invariants", SuiteConfig(n=n, seed=1, trials=50)) for n in (2, 3)]
    ok = record(4, "B_n invariants decompose with strict lex descent and exact reconstruction (n=2,3)", reports)
    assert ok


def test_criterion_5_dn_invariants():
    reports = [run_suite("dn-invariants", SuiteConfig(n=n, seed=1, trials=50)) for n in (2, 3)]
    reports.append(run_suite("dn-invariants", SuiteConfig(n=4, seed=1, trials=10)))
    ok = record(5, "D_n invariants round-trip; Delta relation holds; n=2 values reproduced", reports)
    assert ok


def test_criterion_6_discriminant_freeness():
    reports = [run_suite("discriminant-freeness", SuiteConfig(n=n, seed=3, trials=100)) for n in (2, 3)]
    ok = record(6, "torus discriminant invariant; action free off Z; on-Z witness has a stabilizer", reports)
    assert ok


def test_criterion_7_linear_identities():
    reports = [
        run_suite("skew-invariance-J", SuiteConfig(seed=4, trials=100)),
        run_suite("clearing", SuiteConfig(seed=4, trials=50)),
    ]
    ok = record(7, "w.J = det(w) J, Delta_lin invariant, free on V^reg, denominators clear with k<=4", reports)
    assert ok


def test_criterion_8_idempotents():
    report = run_suite("idempotents", SuiteConfig(n=12))
    assert sum(c.name.startswith("cyclic") for c in report.checks) == 11
    ok = record(8, "cyclic idempotents for m=2..12 and symmetrizers of S3, B2", [report])
    assert ok


def _cli(*argv, **kw):
    return subprocess.run([sys.executable, "-m", "noncomm", *argv], capture_output=True, **kw)


def test_criterion_9_cli_contract(tmp_path):
    checks = {}
    suite_args = ("--suite", "phi-isomorphism", "--n", "1", "--seed", "7", "--trials", "30")
    a, b = _cli(*suite_args), _cli(*suite_args)
    checks["deterministic-text"] = a.stdout == b.stdout and a.returncode == b.returncode == 0
    j1, j2 = _cli(*suite_args, "--format", "json"), _cli(*suite_args, "--format", "json")
    checks["deterministic-json"] = j1.stdout == j2.stdout and json.loads(j1.stdout)["passed"]
    checks["exit-2-unknown-suite"] = _cli("--suite", "unknown").returncode == 2
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2")
    checks["exit-2-malformed"] = _cli("--group", "B2", "--input", str(bad)).returncode == 2
    checks["exit-1-not-invariant"] = _cli("--group", "B2", "--input", str(DATA / "not_invariant_x1.json")).returncode == 1
    flags = {"b2": ["--sign", "minus"], "b3": ["--sign", "plus"], "d2": [], "d3": []}
    shipped = sorted(DATA.glob("*.decomp.json"))
    checks["examples-present"] = len(shipped) >= 3
    for dec_path in shipped:
        name = dec_path.name[: -len(".decomp.json")]
        group = name[:2].upper()
        out = tmp_path / f"{name}.out"
        back = tmp_path / f"{name}.back"
        r = _cli("--group", group, *flags[name[:2]], "--input", str(DATA / f"{name}.json"), "--output", str(out))
        e = _cli("--mode", "expand", "--input", str(out), "--output", str(back))
        checks[f"roundtrip[{name}]"] = (
            r.returncode == 0 and e.returncode == 0
            and out.read_bytes() == dec_path.read_bytes()
            and back.read_bytes() == (DATA / f"{name}.json").read_bytes()
        )
    ok = record(9, "CLI: deterministic reports, exit codes 0/1/2, byte-identical example round trips", extra=checks)
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
