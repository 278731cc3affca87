"""Linear q-hit coefficients C_d(B) over every square board up to 3 x 3.

C_d is the coefficient of x = q - 1 in H_d(B, x + 1).  It is computed from
pattern counts, compared with a residue fit of exact q-hit numbers, and
tallied; the local square-chain inequalities behind its positivity are
printed last.
"""

from collections import Counter

from qboard.board import Board, complement, identity_board
from qboard.residues import derangement_C, fit_residue, hit_residue_formula, square_chain_check
from qboard.sweep import shape_tables

SAMPLES = (2, 3, 4, 5, 7, 8, 9, 11, 13)


def main():
    for n in (1, 2, 3):
        tables = {q: shape_tables(n, n, q).qhit for q in SAMPLES}
        spread, agree = Counter(), 0
        for mask in range(1 << (n * n)):
            B = Board.from_mask(n, n, mask)
            for d in range(n + 1):
                fit = fit_residue(None, 2, SAMPLES, values={q: tables[q][mask][d] for q in SAMPLES})
                h, C = hit_residue_formula(B, d)
                agree += fit.coeffs == (h, C)
                spread[C] += 1
        total = sum(spread.values())
        print(f"{n}x{n}: {agree}/{total} fits agree, min C = {min(spread)}, max C = {max(spread)}")

    print("derangement boards (complement of the identity):")
    for n in range(1, 6):
        Bc = complement(identity_board(n))
        print(f"  n={n}:", [derangement_C(n, d) for d in range(n + 1)],
              [hit_residue_formula(Bc, n - d)[1] for d in range(n + 1)])

    print("square-chain configurations (U, local counts, inequalities):")
    for c in square_chain_check():
        print(f"  {sorted(c.U)!s:34s} {c.counts}  {c.ineq1} {c.ineq2_times2 / 2:g}")


if __name__ == "__main__":
    main()
