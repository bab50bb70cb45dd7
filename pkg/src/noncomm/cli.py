"""Command-line front end.

Exit codes: 0 all checks pass, 1 a verification failure or non-invariant
input, 2 usage or format errors.

    noncomm --suite phi-isomorphism --n 1 --seed 7 --trials 100
    noncomm --group B2 --sign minus --input f.json --output f.decomp.json
    noncomm --mode reynolds --group D3 --input f.json
    noncomm --mode expand --input f.decomp.json
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .groups import GroupSpec, parse_group
from .laurent import poly_from_json, poly_to_json
from .suites import SUITES, SuiteConfig, run_suite
from .torus import Decomposition, NotInvariantError, decompose, reynolds

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="noncomm", description=__doc__.split("\n\n")[0])
    p.add_argument("--suite", choices=SUITES, help="run a named verification suite")
    p.add_argument("--mode", choices=("decompose", "reynolds", "expand"), default="decompose",
                   help="file service used with --input (default: decompose)")
    p.add_argument("--group", help="group such as B2, D3, S3 (or a family letter with --n)")
    p.add_argument("--n", type=int, help="rank / number of variables")
    p.add_argument("--sign", choices=("plus", "minus"), help="sign branch")
    p.add_argument("--c", type=Fraction, help="rational parameter c, e.g. 1/2")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--input", type=Path)
    p.add_argument("--output", type=Path)
    p.add_argument("--witness-dir", type=Path, help="write failing-check witnesses here (text format)")
    p.add_argument("--timing", action="store_true", help="include wall time per check (not reproducible)")
    return p


def _resolve_group(args) -> GroupSpec:
    if not args.group:
        raise UsageError("--group is required")
    g = args.group.strip()
    if len(g) == 1:
        if args.n is None:
            raise UsageError("--group with a bare family letter needs --n")
        return GroupSpec(g.upper(), args.n)
    return parse_group(g)


def _basis_for(spec: GroupSpec, sign: str | None) -> tuple[str, str]:
    if spec.family == "D":
        return "D", "torus-plus"
    if spec.family == "B":
        s = sign or "minus"
        return f"B-{s}", f"torus-{s}"
    raise UsageError("decomposition is available for B and D groups")


def _write(text: str, path: Path | None):
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _run_suite(args) -> int:
    seed = args.seed
    env = os.environ.get("NONCOMM_SEED")
    if env is not None:
        try:
            seed = int(env)
        except ValueError:
            raise UsageError(f"NONCOMM_SEED must be an integer, got {env!r}") from None
    group = None
    if args.group:
        group = str(_resolve_group(args))
    cfg = SuiteConfig(n=args.n, seed=seed, trials=args.trials, sign=args.sign, c=args.c, group=group)
    report = run_suite(args.suite, cfg)
    if args.format == "json":
        text = report.render_json(timing=args.timing)
    else:
        files = {}
        if args.witness_dir is not None:
            args.witness_dir.mkdir(parents=True, exist_ok=True)
            for chk in report.checks:
                if not chk.passed:
                    safe = "".join(ch if ch.isalnum() or ch in "-_." else "_" for ch in chk.name)
                    path = args.witness_dir / f"{report.suite}.{safe}.json"
                    path.write_text(_dump(chk.witness))
                    files[chk.name] = str(path)
        text = report.render_text(files, timing=args.timing)
    _write(text, args.output)
    return report.exit_code


def _read_json(path: Path):
    try:
        return json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _run_file(args) -> int:
    if args.input is None:
        raise UsageError("either --suite or --input is required")
    obj = _read_json(args.input)
    if args.mode == "expand":
        try:
            dec = Decomposition.from_json(obj)
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed decomposition JSON: {exc}") from None
        _write(_dump(poly_to_json(dec.expand())), args.output)
        return EXIT_OK
    try:
        f = poly_from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed polynomial JSON: {exc}") from None
    if args.group and len(args.group.strip()) > 1:
        spec = parse_group(args.group)
    else:
        spec = GroupSpec((args.group or "B").strip().upper(), args.n or f.nvars)
    if spec.n != f.nvars:
        raise UsageError(f"group {spec} does not match a polynomial in {f.nvars} variables")
    basis, variant = _basis_for(spec, args.sign) if spec.family != "S" else (None, "linear")
    if args.mode == "reynolds":
        _write(_dump(poly_to_json(reynolds(f, spec, variant))), args.output)
        return EXIT_OK
    if basis is None:
        raise UsageError("decomposition is available for B and D groups")
    try:
        dec = decompose(f, basis)
    except NotInvariantError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    ok = dec.expand() == f
    _write(_dump(dec.to_json()), args.output)
    print(f"CERTIFICATE reconstructed == input: {'PASS' if ok else 'FAIL'}",
          file=sys.stderr if args.output is None else sys.stdout)
    return EXIT_OK if ok else EXIT_FAIL


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # argparse exits with status 2 on bad usage
    try:
        if args.suite:
            return _run_suite(args)
        return _run_file(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
