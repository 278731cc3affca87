"""Counting full-rank matrices supported on the Fano plane's incidence board.

The closed form for M_7 carries a parity term Z_2.  Counting over GF(q)
shows that the correction applies in characteristic 2 (even q), and the
x-adic residue fit sees it first at x^6: one polynomial fits mod x^6, but
mod x^7 the samples split by q mod 2.
"""

import sys
import time

from qboard.board import fano_board
from qboard.qcount import m_orbit
from qboard.residues import fano_m7_formula, fano_z2, fit_residue, prime_powers


def main(max_q: int = 4):
    F = fano_board()
    print(F.to_text(), end="")
    for q in prime_powers(2, max_q):
        t = time.perf_counter()
        m7 = m_orbit(F, q, min_rank=7).by_rank[7]
        M7 = m7 // (q - 1) ** 7
        print(f"q={q}: M_7 = {M7}  closed form(Z_2={fano_z2(q)}) = {fano_m7_formula(q)}  "
              f"other parity = {fano_m7_formula(q, 1 - fano_z2(q))}  ({time.perf_counter() - t:.1f}s)")

    samples = prime_powers(2, 128)
    values = {q: fano_m7_formula(q) for q in samples}
    six = fit_residue(None, 6, samples, values=values)
    seven = fit_residue(None, 7, samples, values=values)
    print("mod x^6:", six.coeffs)
    print(f"mod x^7: split by q mod {seven.split['modulus']}:", seven.split["classes"])


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 4)
