#!/usr/bin/env python3
"""Regenerate the bundled substitution tables under data/.

pam200.txt is exported verbatim (NCBI integer log-odds, 20 standard residues).

vtml240.txt is extrapolated from VTML120: the symmetric score table is turned
back into a joint distribution pi_i pi_j exp(lambda S_ij), with pi and lambda
solved so that every row of the implied transition matrix sums to one. The
120-step transition matrix is squared and re-expressed as log-odds in the same
units. Integer rounding in the source table limits the precision of the result
to roughly +/-0.3 score units.

Requires: pip install scoring-matrices numpy scipy
"""
import sys
from pathlib import Path

import numpy as np
import scipy.optimize
import scoring_matrices

AMINO = "ARNDCQEGHILKMFPSTWYV"


def load(name):
    m = scoring_matrices.ScoringMatrix.from_name(name)
    idx = [m.alphabet.index(a) for a in AMINO]
    full = np.array([list(r) for r in m], dtype=float)
    return full[np.ix_(idx, idx)]


def write(path, table, fmt):
    lines = ["# " + path.stem + " log-odds, generated by scripts/derive_matrices.py",
             "   " + "  ".join(f"{a:>6}" for a in AMINO)]
    for a, row in zip(AMINO, table):
        lines.append(a + "  " + "  ".join(fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def solve_background(scores):
    n = scores.shape[0]

    def residual(x):
        lam, pi = x[0], x[1:]
        rows = (pi[None, :] * np.exp(lam * scores)).sum(axis=1) - 1.0
        return np.concatenate([[pi.sum() - 1.0], rows])

    x0 = np.concatenate([[0.3], np.full(n, 1.0 / n)])
    sol = scipy.optimize.least_squares(residual, x0, bounds=(1e-6, 5.0))
    return sol.x[0], sol.x[1:]


def main(out_dir):
    out_dir = Path(out_dir)
    pam = load("PAM200")
    write(out_dir / "pam200.txt", pam, lambda v: f"{int(v):>6d}")

    s120 = load("VTML120")
    lam, pi = solve_background(s120)
    trans = pi[None, :] * np.exp(lam * s120)
    trans /= trans.sum(axis=1, keepdims=True)
    trans240 = trans @ trans
    s240 = np.log(trans240 / pi[None, :]) / lam
    s240 = 0.5 * (s240 + s240.T)
    write(out_dir / "vtml240.txt", s240, lambda v: f"{v:>6.2f}")
    print(f"lambda={lam:.5f}", "pi=" + ",".join(f"{p:.4f}" for p in pi))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data")
