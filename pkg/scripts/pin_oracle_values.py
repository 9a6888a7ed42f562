#!/usr/bin/env python3
"""Re-derive every oracle-pinned value in the scenario manifest.

The node counts in data/scenarios.json were fixed by routes independent
of the Buchberger engine before they were frozen:

* degree-type counts: the Macaulay-matrix colength (stacked-multiple
  rank computation, no Groebner bases involved);
* the four-nodal cubic: exhaustive rational-point enumeration over F_7
  plus Hessian ranks at every singular point;
* the 16-node search: the Macaulay colength of the found member.

Run this script after changing the engine to confirm the pinned values
still re-derive; it exits nonzero on any disagreement.
"""

import argparse
import sys

from symmetroids.fields import PrimeField, field_from_json
from symmetroids.kummer import search_sixteen_nodes
from symmetroids.macaulay import macaulay_colength
from symmetroids.nodes import (
    affine_jacobian_ideal,
    enumerate_rational_singular_points,
    hessian_rank_at_point,
)
from symmetroids.randomness import random_invertible_matrix
from symmetroids.scenarios import load_fixture_surface, load_manifest, type_matrix
from symmetroids.matrices import surface_from_matrix


def expected_t(entry):
    for check in entry["checks"]:
        if check["check"] == "t":
            return check["value"]
    return None


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seeds", type=int, nargs="*",
                        help="override the manifest seed list")
    args = parser.parse_args()

    manifest = load_manifest()
    field = field_from_json(manifest["field"])
    failures = 0

    for sid, entry in manifest["scenarios"].items():
        if entry.get("kind") != "degree-type":
            continue
        pinned = expected_t(entry)
        seeds = args.seeds or entry["seeds"]
        for seed in seeds:
            matrix = type_matrix(
                entry["d"], entry["delta"], entry["degrees"], field, seed
            )
            spec = surface_from_matrix(matrix)
            transform = random_invertible_matrix(field, 4, seed, "chart-a")
            ideal = affine_jacobian_ideal(spec, transform)
            observed = macaulay_colength(list(ideal.generators))
            status = "ok" if observed == pinned else "MISMATCH"
            if observed != pinned:
                failures += 1
            print(f"{sid} seed {seed}: macaulay={observed} pinned={pinned} {status}")

    cubic = load_fixture_surface("cayley_cubic.json")
    points = enumerate_rational_singular_points(cubic)
    ranks = sorted({hessian_rank_at_point(cubic, P) for P in points})
    status = "ok" if (len(points), ranks) == (4, [3]) else "MISMATCH"
    if status != "ok":
        failures += 1
    print(f"cayley-cubic: {len(points)} singular points over F_7, "
          f"hessian ranks {ranks} {status}")

    kummer_entry = manifest["scenarios"]["kummer-search"]
    kfield = PrimeField(kummer_entry["p"])
    result = search_sixteen_nodes(kfield, kummer_entry["seed"],
                                  kummer_entry["budget"])
    if result is None:
        print("kummer-search: not found within budget (allowed, optional)")
    else:
        transform = random_invertible_matrix(
            kfield, 4, result.node_seed, "chart-a"
        )
        ideal = affine_jacobian_ideal(result.surface, transform)
        observed = macaulay_colength(list(ideal.generators))
        status = "ok" if observed == 16 else "MISMATCH"
        if observed != 16:
            failures += 1
        print(f"kummer-search seed {result.node_seed}: macaulay={observed} "
              f"pinned=16 {status}")

    if failures:
        print(f"{failures} mismatched value(s)", file=sys.stderr)
        return 1
    print("all pinned oracle values re-derived")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
