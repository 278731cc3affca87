"""Command-line front end: ``qboard <command> ...``."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .board import Board, load_board
from .errors import BudgetExceeded, QBoardError, ResidueFitError
from .qcount import DEFAULT_BUDGET, m_counts, m_orbit
from .qhit import q_hit_direct, q_hit_vector
from .residues import (DEFAULT_SAMPLES, fit_residue, hit_residue_formula, is_prime_power)
from .rookhit import PatternGraph, gen_rook, rook_numbers
from .verify import SUITES, RunReport, run_suite


def _samples(text: str | None) -> tuple:
    if not text:
        return DEFAULT_SAMPLES
    try:
        return tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad sample list {text!r}") from None


def _emit(args, payload, table_rows=None):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
        return
    rows = table_rows if table_rows is not None else [(k, v) for k, v in sorted(payload.items())]
    width = max((len(str(k)) for k, _ in rows), default=0)
    for k, v in rows:
        print(f"{str(k).ljust(width)}  {v}")


def _threads(args) -> int:
    env = os.environ.get("QBOARD_THREADS")
    if env:
        return max(1, int(env))
    return args.threads or os.cpu_count() or 1


def cmd_rook(args) -> int:
    B = load_board(args.board)
    if args.gen:
        F = PatternGraph.parse(args.gen)
        value = gen_rook(B, F, args.i)
        if args.format == "json":
            print(value)
        else:
            _emit(args, {}, [(f"r_{{{F.label},{args.i}}}", value)])
        return 0
    r = rook_numbers(B)
    if args.format == "json":
        print(json.dumps(r, separators=(",", ":")))
    else:
        _emit(args, {}, [(f"r_{i}", v) for i, v in enumerate(r)])
    return 0


def cmd_qcount(args) -> int:
    B = load_board(args.board)
    q = args.q
    kw = {"budget": args.budget}
    if args.method == "orbit":
        kw["threads"] = _threads(args)
        counts, census = m_orbit(B, q, census=True, **kw)
        summary = {"supports": len(census.by_support),
                   "orbits": sum(sum(o) for o, _ in census.by_support.values())}
    else:
        counts = m_counts(B, q, "brute", **kw)
        summary = None
    M = []
    for d, v in enumerate(counts.by_rank):
        den = (q - 1) ** d
        if v % den:
            raise QBoardError(f"m_{d} not divisible by (q-1)^{d}")
        M.append(v // den)
    payload = {"q": q, "method": args.method, "m": [str(v) for v in counts.by_rank],
               "M": [str(v) for v in M], "census": summary}
    rows = [(f"m_{d}", v) for d, v in enumerate(counts.by_rank)] + [(f"M_{d}", v) for d, v in enumerate(M)]
    _emit(args, payload, rows)
    return 0


def cmd_qhit(args) -> int:
    B = load_board(args.board)
    H = q_hit_vector(B, args.q, method=args.method, budget=args.budget)
    _emit(args, H.to_json(), [(f"H_{k}", v) for k, v in enumerate(H.values)])
    return 0


def cmd_residue(args) -> int:
    B = load_board(args.board)
    samples = _samples(args.samples)
    method = args.method
    if args.target == "qrook":
        from .qcount import q_rook

        def sampler(q):
            return q_rook(B, q, args.d, method=method, budget=args.budget)
    else:
        def sampler(q):
            return q_hit_direct(B, q, args.d, method=method, budget=args.budget)
    fit = fit_residue(sampler, args.k, samples)
    payload = fit.to_json()
    if args.format == "json":
        _emit(args, payload)
    else:
        rows = [("k", fit.k)]
        if fit.single:
            rows.append(("coeffs", " ".join(str(c) for c in fit.coeffs)))
        else:
            for a, cs in sorted(fit.split["classes"].items()):
                rows.append((f"q={a} mod {fit.split['modulus']}", " ".join(str(c) for c in cs)))
        _emit(args, payload, rows)
    return 0


def cmd_verify(args) -> int:
    report = run_suite(args.suite, args.scale)
    if args.format == "json":
        print(json.dumps(report.to_json(), sort_keys=True, separators=(",", ":")))
    else:
        status = "PASS" if report.ok else "FAIL"
        print(f"{args.suite}: {status} ({report.wall_time:.2f}s)")
        for k, v in sorted(report.results.items()):
            print(f"  {k}: {json.dumps(v, sort_keys=True)}")
        for f in report.failures:
            print(f"  failure: {f}")
    return 0 if report.ok else 1


def _search_params(args) -> dict:
    return {"maxM": args.max_m, "maxN": args.max_n, "k": args.k, "samples": list(_samples(args.samples))}


def cmd_search(args) -> int:
    """Sweep every board up to max-m x max-n for residue-fit failures and negative C_d."""
    from .sweep import shape_tables
    from .qhit import hit_from_rook_direct

    params = _search_params(args)
    state = {"params": params, "shells": {}, "findings": [], "boards": 0}
    if args.checkpoint and os.path.exists(args.checkpoint):
        with open(args.checkpoint, encoding="utf-8") as fh:
            saved = json.load(fh)
        if saved.get("params") != params:
            raise QBoardError("checkpoint was written with different parameters")
        state = saved

    def save():
        if args.checkpoint:
            tmp = args.checkpoint + ".tmp"
            with open(tmp, "w", encoding="utf-8") as fh:
                json.dump(state, fh, sort_keys=True)
            os.replace(tmp, args.checkpoint)

    start = time.perf_counter()
    samples = tuple(params["samples"])
    processed = 0
    for m in range(1, args.max_m + 1):
        for n in range(m, args.max_n + 1):
            key = f"{m}x{n}"
            done = state["shells"].get(key, -1)
            total = 1 << (m * n)
            if done >= total - 1:
                continue
            tables = {q: shape_tables(m, n, q, _threads(args)).qrook for q in samples}
            for mask in range(done + 1, total):
                B = Board.from_mask(m, n, mask)
                for d in range(m + 1):
                    rook_vals = {q: tables[q][mask][d] for q in samples}
                    hit_vals = {q: hit_from_rook_direct(list(tables[q][mask]), m, n, q, d) for q in samples}
                    for target, vals in (("qrook", rook_vals), ("qhit", hit_vals)):
                        try:
                            fit = fit_residue(None, args.k, samples, values=vals, allow_split=False)
                        except ResidueFitError as exc:
                            state["findings"].append({"board": B.to_json(), "d": d, "target": target,
                                                      "kind": "unfittable", "detail": str(exc)})
                            continue
                        if any(c < 0 for c in fit.coeffs):
                            state["findings"].append({"board": B.to_json(), "d": d, "target": target,
                                                      "kind": "negative-coefficient",
                                                      "coeffs": [str(c) for c in fit.coeffs],
                                                      "resolution": str(fit.resolution)})
                    if m == n:
                        _, C = hit_residue_formula(B, d)
                        if C < 0:
                            state["findings"].append({"board": B.to_json(), "d": d,
                                                      "kind": "negative-C", "C": C})
                state["shells"][key] = mask
                state["boards"] += 1
                processed += 1
                if args.stop_after and processed >= args.stop_after:
                    save()
                    print(json.dumps({"interrupted": True, "boards": state["boards"]}))
                    return 3
                if processed % 512 == 0:
                    save()
    save()
    report = RunReport("search", params, {"boards": state["boards"], "findings": state["findings"]},
                       [], time.perf_counter() - start)
    print(json.dumps(report.to_json(), sort_keys=True, separators=(",", ":")))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=None, help="worker threads (QBOARD_THREADS overrides)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximum matrices or representatives")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--samples", default=None, help="comma-separated prime powers for residue fits")

    p = argparse.ArgumentParser(prog="qboard", description=__doc__, parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("rook", parents=[common], help="rook numbers or a generalized rook number")
    s.add_argument("board")
    s.add_argument("--gen", help="pattern graph: Z, S, WR, WC or Empty")
    s.add_argument("--i", type=int, default=0)
    s.set_defaults(func=cmd_rook)

    s = sub.add_parser("qcount", parents=[common], help="matrix counts m_d and q-rook numbers M_d")
    s.add_argument("board")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--method", choices=("orbit", "brute"), default="orbit")
    s.set_defaults(func=cmd_qcount)

    s = sub.add_parser("qhit", parents=[common], help="q-hit numbers H_k")
    s.add_argument("board")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--method", choices=("orbit", "brute"), default="orbit")
    s.set_defaults(func=cmd_qhit)

    s = sub.add_parser("residue", parents=[common], help="residue coefficients modulo (q-1)^k")
    s.add_argument("board")
    s.add_argument("--target", choices=("qrook", "qhit"), required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--method", choices=("orbit", "brute"), default="orbit")
    s.set_defaults(func=cmd_residue)

    s = sub.add_parser("verify", parents=[common], help="run a named verification suite")
    s.add_argument("--suite", required=True, choices=sorted(SUITES))
    s.add_argument("--scale", choices=("quick", "full"), default="quick")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", parents=[common], help="sweep boards for residue anomalies")
    s.add_argument("--max-m", type=int, required=True)
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--checkpoint", default=None, help="resumable JSON state file")
    s.add_argument("--stop-after", type=int, default=None, help=argparse.SUPPRESS)
    s.set_defaults(func=cmd_search)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for q in _samples(args.samples) if args.command in ("residue", "search") else ():
        if not is_prime_power(q):
            parser.error(f"sample {q} is not a prime power")
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"qboard: budget exceeded: {exc}", file=sys.stderr)
        return 2
    except (QBoardError, ValueError, OSError) as exc:
        print(f"qboard: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
