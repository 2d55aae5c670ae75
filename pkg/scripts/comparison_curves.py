"""Our gate against the comparison baselines along the r and theta sweeps."""

import argparse
import math
from pathlib import Path

from hybridgates.fidelity import ComparisonParams, curves_csv, fidelity_curves


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--epsilon", type=float, default=0.02)
    ap.add_argument("--delta-phi", type=float, default=math.pi / 36)
    ap.add_argument("--points", type=int, default=101)
    ap.add_argument("--outdir", type=Path, default=Path("results"))
    args = ap.parse_args()

    cmp = ComparisonParams(args.epsilon, args.delta_phi)
    args.outdir.mkdir(parents=True, exist_ok=True)
    for fixed, value in (("theta", 5e-3), ("r", 1e-3)):
        rows = fidelity_curves(fixed, value, cmp, args.points)
        path = args.outdir / f"curves_{fixed}_fixed.csv"
        path.write_text(curves_csv(rows))
        ordered = all(r.f_ours >= r.f_cmp000 >= r.f_cmp100 for r in rows)
        last = rows[-1]
        print(f"{fixed}={value:g}: {len(rows)} rows -> {path}; ordering holds: {ordered}")
        print(f"  end point x={last.x:g}: ours {last.f_ours:.6f}, cmp000 {last.f_cmp000:.6f}, cmp100 {last.f_cmp100:.6f}")


if __name__ == "__main__":
    main()
