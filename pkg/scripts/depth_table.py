"""Element count and optical depth for the CNOT and controlled-SWAP circuits."""

import argparse
import csv
import sys

from hybridgates.gates import build_cnot, build_cswap, extract_logical_unitary, target_matrix
from hybridgates.netlist import analyze_depth


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--d-max", type=int, default=16)
    args = ap.parse_args()

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["gate", "d", "elements", "depth", "prep_bs", "max_deviation"])
    circuits = [("cnot", 2, build_cnot())] + [("cswap", d, build_cswap(d)) for d in range(2, args.d_max + 1)]
    for name, d, c in circuits:
        rep = analyze_depth(c.gate)
        dev = extract_logical_unitary(c.gate, c.encoding).max_deviation(target_matrix(name, d))
        prep_bs = analyze_depth(c.prep).per_kind.get("bs", 0)
        w.writerow([name, d, rep.element_count, rep.optical_depth, prep_bs, f"{dev:.1e}"])


if __name__ == "__main__":
    main()
