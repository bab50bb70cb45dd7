"""Regenerate the example polynomial files in data/ and their decompositions.

    python scripts/make_examples.py
"""

import json
import subprocess
import sys
from pathlib import Path

from noncomm.groups import GroupSpec
from noncomm.laurent import LaurentPoly, poly_to_json
from noncomm.torus import dn_generators, orbit_sum, torus_discriminant

DATA = Path(__file__).resolve().parent.parent / "data"


def main():
    DATA.mkdir(exist_ok=True)
    x1, x2 = LaurentPoly.gens(2)
    _, dp, dm = dn_generators(3)
    cases = {
        "b2_power_sum": ("B2", "minus", x1**2 + x1**-2 + x2**2 + x2**-2),
        "b2_constant": ("B2", "minus", LaurentPoly.constant(2, 7)),
        "b3_plus_orbit": ("B3", "plus", orbit_sum((3, 1, 0), GroupSpec("B", 3), "torus-plus")),
        "d3_delta_product": ("D3", None, dp * dm),
        "d2_orbit_signed": ("D2", None, orbit_sum((2, -1), GroupSpec("D", 2), "torus-plus")),
        "b2_discriminant": ("B2", "minus", torus_discriminant(2)),
    }
    for name, (group, sign, f) in cases.items():
        src = DATA / f"{name}.json"
        src.write_text(json.dumps(poly_to_json(f), indent=2) + "\n")
        cmd = [sys.executable, "-m", "noncomm", "--group", group, "--input", str(src),
               "--output", str(DATA / f"{name}.decomp.json")]
        if sign:
            cmd += ["--sign", sign]
        subprocess.run(cmd, check=True)
    (DATA / "not_invariant_x1.json").write_text(json.dumps(poly_to_json(x1), indent=2) + "\n")


if __name__ == "__main__":
    main()
