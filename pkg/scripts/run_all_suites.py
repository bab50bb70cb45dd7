"""Run every verification suite and write one JSON report per suite.

    python scripts/run_all_suites.py --out reports --seed 0
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from noncomm.suites import SUITES, SuiteConfig, run_suite


@dataclass
class SweepConfig:
    out: Path = Path("reports")
    seed: int = 0
    trials: int = 100
    ranks: dict = field(default_factory=lambda: {
        "weyl-involutions": [3],
        "phi-isomorphism": [1, 2],
        "bn-invariants": [2, 3],
        "dn-invariants": [2, 3, 4],
        "discriminant-freeness": [2, 3],
        "skew-invariance-J": [None],
        "idempotents": [12],
        "clearing": [None],
    })


def sweep(cfg: SweepConfig) -> bool:
    cfg.out.mkdir(parents=True, exist_ok=True)
    all_ok = True
    for name in SUITES:
        for n in cfg.ranks[name]:
            trials = 10 if (name == "dn-invariants" and n == 4) else cfg.trials
            t0 = time.perf_counter()
            rep = run_suite(name, SuiteConfig(n=n, seed=cfg.seed, trials=trials))
            tag = name if n is None else f"{name}-n{n}"
            (cfg.out / f"{tag}.json").write_text(rep.render_json())
            print(f"{tag:28s} {'PASS' if rep.passed else 'FAIL'}  {len(rep.checks):3d} checks  {time.perf_counter() - t0:6.1f}s")
            all_ok &= rep.passed
    summary = {k: (str(v) if isinstance(v, Path) else v) for k, v in asdict(cfg).items()}
    (cfg.out / "sweep.json").write_text(json.dumps({"config": summary, "passed": all_ok}, indent=2) + "\n")
    return all_ok


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--out", type=Path, default=SweepConfig.out)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=100)
    args = ap.parse_args()
    ok = sweep(SweepConfig(out=args.out, seed=args.seed, trials=args.trials))
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
