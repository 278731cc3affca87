"""Named verification suites, shared by the CLI and the test-suite."""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field

from .board import Board, complement, fano_board, identity_board
from .errors import ResidueFitError
from .qcount import m_bruteforce, m_orbit, q_rook_table
from .qhit import hit_from_rook_direct
from .residues import (DEFAULT_SAMPLES, derangement_C, fano_m7_formula, fano_m7_x_coeffs,
                       fit_residue, hit_residue_formula, prime_powers, rook_residue_formula,
                       square_chain_check)
from .rookhit import LINEAR_PAIRS, PATTERNS, check_gen_hit_rook, f_GD, falling_factorial_identity_check


@dataclass
class RunReport:
    command: str
    inputs: dict
    results: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def digest(self) -> str:
        blob = json.dumps(self.inputs, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"command": self.command, "inputsDigest": self.digest, "inputs": self.inputs,
                "results": self.results, "failures": self.failures, "wallTime": round(self.wall_time, 3)}


def _boards(max_sum: int, square_only: bool = False):
    for m in range(1, max_sum):
        for n in range(1, max_sum - m + 1):
            if square_only and m != n:
                continue
            for mask in range(1 << (m * n)):
                yield Board.from_mask(m, n, mask)


def suite_rookhit_identities(scale: str = "quick") -> tuple[dict, list]:
    max_sum = 8 if scale == "full" else 6
    failures, count = [], 0
    for B in _boards(max_sum):
        count += 1
        for F in PATTERNS:
            if not check_gen_hit_rook(B, F):
                failures.append(f"gen hit-rook {F.label} fails on {B!r}")
        for G, D in LINEAR_PAIRS:
            if not f_GD(B, G, D).agree:
                failures.append(f"f_GD({G.label},{D}) forms differ on {B!r}")
        if B.m + B.n <= 6:
            for k in range(min(B.m, B.n) + 1):
                if not falling_factorial_identity_check(B, k):
                    failures.append(f"falling-factorial k={k} fails on {B!r}")
    return {"boards": count, "maxSum": max_sum}, failures


def suite_orbit_oracle(scale: str = "quick") -> tuple[dict, list]:
    qs, cap = ((2, 3, 4, 5), 10 ** 6) if scale == "full" else ((2, 3), 10 ** 4)
    failures, count = [], 0
    for q in qs:
        for mask in range(1 << 9):
            B = Board.from_mask(3, 3, mask)
            if q ** B.size > cap:
                continue
            count += 1
            if m_orbit(B, q, threads=1).by_rank != m_bruteforce(B, q).by_rank:
                failures.append(f"orbit and brute force differ on {B!r} at q={q}")
    return {"comparisons": count, "q": list(qs)}, failures


def suite_residue_theorems(scale: str = "quick") -> tuple[dict, list]:
    samples = DEFAULT_SAMPLES
    tables = {q: q_rook_table(3, 3, q) for q in samples}
    failures, count = [], 0
    for mask in range(1 << 9):
        B = Board.from_mask(3, 3, mask)
        for d in range(4):
            count += 1
            fit = fit_residue(None, 2, samples, values={q: tables[q][mask][d] for q in samples})
            if fit.coeffs != rook_residue_formula(B, d):
                failures.append(f"q-rook residue mismatch on {B!r}, d={d}")
            hits = {q: hit_from_rook_direct(list(tables[q][mask]), 3, 3, q, d) for q in samples}
            fit = fit_residue(None, 2, samples, values=hits)
            h, C = hit_residue_formula(B, d)
            if fit.coeffs != (h, C):
                failures.append(f"q-hit residue mismatch on {B!r}, d={d}")
            if C < 0:
                failures.append(f"negative C_{d} on {B!r}")
    return {"checks": count}, failures


def suite_square_chain(scale: str = "quick") -> tuple[dict, list]:
    configs = square_chain_check()
    failures = [f"configuration {sorted(c.U)} violates a local inequality" for c in configs if not c.ok]
    return {"configurations": len(configs), "passed": sum(c.ok for c in configs)}, failures


def suite_fano(scale: str = "quick") -> tuple[dict, list]:
    F = fano_board()
    qs = (2, 3, 4, 5) if scale == "full" else (2, 3)
    failures, observed = [], {}
    for q in qs:
        m7 = m_orbit(F, q, min_rank=7)[7]
        M7 = m7 // (q - 1) ** 7
        matches = [z for z in (0, 1) if fano_m7_formula(q, z) == M7]
        observed[str(q)] = {"M7": str(M7), "z2": matches[0] if matches else None}
        if M7 != fano_m7_formula(q):
            failures.append(f"M_7(F,{q}) = {M7} differs from the closed form")
    samples = prime_powers(2, 128)
    values = {q: fano_m7_formula(q) for q in samples}
    k6 = fit_residue(None, 6, samples, values=values)
    if not k6.single or k6.coeffs != fano_m7_x_coeffs(0)[:6]:
        failures.append("k=6 single-class fit failed or gave wrong coefficients")
    try:
        fit_residue(None, 7, samples, values=values, allow_split=False)
        failures.append("k=7 single-class fit unexpectedly succeeded")
        k7 = None
    except ResidueFitError:
        k7 = fit_residue(None, 7, samples, values=values)
    split = None
    if k7 is not None:
        split = k7.split
        cls = split["classes"] if split else {}
        if not split or split["modulus"] != 2 or abs(cls[0][6] - cls[1][6]) != 1:
            failures.append("k=7 fit did not split by parity with c_6 differing by 1")
    return {"observed": observed, "k6": list(k6.coeffs or ()),
            "k7Split": None if split is None else {"modulus": split["modulus"],
                                                    "classes": {str(a): list(c) for a, c in split["classes"].items()}}}, failures


def suite_derangements(scale: str = "quick") -> tuple[dict, list]:
    failures, table = [], {}
    for n in range(1, 6):
        Bc = complement(identity_board(n))
        row = []
        for d in range(n + 1):
            val = derangement_C(n, d)
            row.append(val)
            if val != hit_residue_formula(Bc, n - d)[1]:
                failures.append(f"closed form differs at n={n}, d={d}")
            if val < 0:
                failures.append(f"negative value at n={n}, d={d}")
        table[str(n)] = row
    return {"C": table}, failures


SUITES = {
    "rookhit-identities": suite_rookhit_identities,
    "orbit-oracle": suite_orbit_oracle,
    "residue-theorems": suite_residue_theorems,
    "square-chain": suite_square_chain,
    "fano": suite_fano,
    "derangements": suite_derangements,
}


def run_suite(name: str, scale: str = "quick") -> RunReport:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    report = RunReport("verify", {"suite": name, "scale": scale})
    start = time.perf_counter()
    report.results, report.failures = fn(scale)
    report.wall_time = time.perf_counter() - start
    return report
