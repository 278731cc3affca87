"""The full 2 x 2 board, from rook numbers to the linear q-hit coefficient."""

from qboard.board import Board
from qboard.qcount import q_rook
from qboard.qhit import q_hit_vector
from qboard.residues import fit_residue, hit_residue_formula, rook_residue_formula
from qboard.rookhit import PATTERNS, gen_hit_vector, gen_rook_vector, hit_numbers, rook_numbers


def main():
    B = Board.full(2, 2)
    print(B.to_text(), end="")
    print("rook numbers", rook_numbers(B), "hit numbers", hit_numbers(B))
    for F in PATTERNS:
        print(f"  {F.label:9s} r_F = {list(gen_rook_vector(B, F))}  h_F = {list(gen_hit_vector(B, F))}")

    # M_2(B, q) = q(q + 1): count it over several fields and read off the residue mod (q-1)^2
    for q in (2, 3, 4, 5):
        print(f"q={q}: M_2 = {q_rook(B, q, 2)}  H = {list(q_hit_vector(B, q).values)}")
    fit = fit_residue(lambda q: q_rook(B, q, 2), 2)
    print("M_2 mod x^2 (fitted):", fit.coeffs, " from pattern counts:", rook_residue_formula(B, 2))
    print("H_2 mod x^2 (h_2, C_2):", hit_residue_formula(B, 2))


if __name__ == "__main__":
    main()
