"""Command line entry point: ``tdsub <command> ...``.

Exit status is 0 on success, 1 when decoding or a verification item fails,
and 2 on usage errors or malformed input.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager

import numpy as np

from . import codec, verify
from .channel import ChannelConfig, read_traces, sample_output
from .errors import DecodeFailure, ParameterError
from .graph import best_sigma, build_graph, count_blocks, dominant_eigenvalue, max_blocks, rate_bounds
from .seqio import format_message, read_messages, read_sequences, write_sequences
from .words import as_word, word_str

THREADS_ENV = "TDSUB_THREADS"


@contextmanager
def _open(path: str | None, mode: str, default):
    if path is None or path == "-":
        yield default
    else:
        with open(path, mode) as fh:
            yield fh


def _add_code_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--q", type=int, default=4)
    p.add_argument("--sigma", default="01201")
    p.add_argument("--m", type=int, default=18)
    p.add_argument("--field-degree", type=int, default=4)


def _params(args) -> codec.CodeParams:
    return codec.make_params(args.q, args.sigma, args.m, args.field_degree)


def cmd_encode(args) -> int:
    params = _params(args)
    with _open(args.input, "r", sys.stdin) as fh:
        messages = read_messages(fh, params.field_degree, params.k)
    with _open(args.output, "w", sys.stdout) as fh:
        write_sequences(fh, (codec.encode(params, msg) for msg in messages), args.dna)
    return 0


def cmd_decode(args) -> int:
    params = _params(args)
    with _open(args.input, "r", sys.stdin) as fh:
        words = read_sequences(fh, params.q, args.dna)
    status = 0
    out_lines = []
    for i, w in enumerate(words, 1):
        rep = codec.decode_report(params, w)
        sys.stderr.write(f"# sequence {i}\n" + rep.format())
        if rep.ok:
            out_lines.append(format_message(rep.message, params.field_degree))
        else:
            out_lines.append("# decode failure")
            status = 1
    with _open(args.output, "w", sys.stdout) as fh:
        fh.write("".join(line + "\n" for line in out_lines))
    return status


def _trial(job):
    params, max_dups, substitution, seed, t = job
    rng = np.random.default_rng(seed ^ t)
    msg = [int(v) for v in rng.integers(0, 1 << params.field_degree, params.k)]
    x = codec.encode(params, msg)
    cfg = ChannelConfig(q=params.q, max_duplications=max_dups, substitution=substitution)
    y, trace = sample_output(cfg, x, rng)
    rep = codec.decode_report(params, y)
    if rep.message == msg:
        return None
    return t, msg, trace


def run_simulation(params, trials: int, max_dups: int, seed: int, substitution: bool = True,
                   workers: int = 1):
    """Failed trials as ``(trial, message, trace)``, in trial order."""
    jobs = [(params, max_dups, substitution, seed, t) for t in range(trials)]
    if workers > 1:
        params.blocks  # build the count table once before pickling
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_trial, jobs, chunksize=max(1, trials // (8 * workers))))
    else:
        results = [_trial(j) for j in jobs]
    return [r for r in results if r is not None]


def cmd_simulate(args) -> int:
    params = _params(args)
    workers = args.workers or int(os.environ.get(THREADS_ENV, "1"))
    failures = run_simulation(params, args.trials, args.max_dups, args.seed,
                              not args.no_sub, workers)
    ok = args.trials - len(failures)
    print(f"trials={args.trials} successes={ok} rate={ok / args.trials if args.trials else 1.0:.6f}")
    if args.failures:
        with open(args.failures, "w") as fh:
            for t, msg, trace in failures:
                fh.write(f"# trial {t} seed {args.seed ^ t}\n")
                fh.write(f"# message {format_message(msg, params.field_degree)}\n")
                fh.write(trace.dumps() + "\n")
    return 0 if not failures else 1


def cmd_replay(args) -> int:
    with open(args.trace) as fh:
        traces = read_traces(fh)
    if not traces:
        raise ParameterError("trace file holds no events")
    with _open(args.input, "r", sys.stdin) as fh:
        words = read_sequences(fh, args.q, args.dna)
    with _open(args.output, "w", sys.stdout) as fh:
        write_sequences(fh, (traces[0].apply(w) for w in words), args.dna)
    return 0


def _parse_range(text: str) -> range:
    try:
        a, b = text.split("..")
        return range(int(a), int(b) + 1)
    except ValueError:
        raise ParameterError(f"expected a range like 18..30, got {text!r}") from None


def cmd_rates(args) -> int:
    g = build_graph(args.q)
    if args.best_sigma:
        sigma, _ = best_sigma(g)
    else:
        sigma = as_word(args.sigma)
    lam = dominant_eigenvalue(g, sigma).value
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["sigma", "m", "M", "lambda", "rate_exact", "rate_lb", "rate_asymptotic"])
    for m in _parse_range(args.m_range):
        M = count_blocks(g, sigma, m)
        row = [word_str(sigma), m, M, f"{lam:.6f}"]
        if M >= 8:
            r = rate_bounds(max_blocks(M), m, M)
            row += [f"{r.exact:.6f}", f"{r.lower:.6f}", f"{r.asymptotic:.6f}"]
        else:
            row += ["nan", "nan", f"{math.log2(M) / m:.6f}" if M else "nan"]
        writer.writerow(row)
    return 0


def cmd_verify(args) -> int:
    if args.what == "lemma1":
        items = verify.check_longest_root(args.base, args.cap, args.q)
    elif args.what == "theorem1":
        items = verify.check_root_window(args.trials, args.seed)
    elif args.what == "graph":
        items = verify.check_graph(args.q)
    else:
        items = verify.check_rates(args.q)
    for item in items:
        print(item.line())
    return 0 if all(i.passed for i in items) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tdsub", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="encode hex messages into sequences")
    _add_code_args(p)
    p.add_argument("--in", dest="input")
    p.add_argument("--out", dest="output")
    p.add_argument("--dna", action="store_true", help="write A/C/G/T instead of digits (q=4)")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="decode sequences back into hex messages")
    _add_code_args(p)
    p.add_argument("--in", dest="input")
    p.add_argument("--out", dest="output")
    p.add_argument("--dna", action="store_true")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", help="Monte Carlo encode/channel/decode trials")
    _add_code_args(p)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--max-dups", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-sub", action="store_true", help="disable the substitution")
    p.add_argument("--failures", help="write traces of failed trials here")
    p.add_argument("--workers", type=int, help=f"worker processes (default ${THREADS_ENV} or 1)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("replay", help="apply a saved channel trace to sequences")
    p.add_argument("--trace", required=True)
    p.add_argument("--q", type=int, default=4)
    p.add_argument("--in", dest="input")
    p.add_argument("--out", dest="output")
    p.add_argument("--dna", action="store_true")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("rates", help="CSV of block counts and code rates")
    p.add_argument("--q", type=int, default=4)
    p.add_argument("--m-range", default="18..30")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--sigma", default="01201")
    g.add_argument("--best-sigma", action="store_true")
    p.set_defaults(func=cmd_rates)

    p = sub.add_parser("verify", help="run computational checks, one PASS/FAIL line each")
    vsub = p.add_subparsers(dest="what", required=True)
    v = vsub.add_parser("lemma1")
    v.add_argument("--base", default="012")
    v.add_argument("--cap", type=int, default=13)
    v.add_argument("--q", type=int)
    v = vsub.add_parser("theorem1")
    v.add_argument("--trials", type=int, default=10_000)
    v.add_argument("--seed", type=int, default=0)
    v = vsub.add_parser("graph")
    v.add_argument("--q", type=int, default=4)
    v = vsub.add_parser("rates")
    v.add_argument("--q", type=int, default=4)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParameterError, DecodeFailure, OSError) as exc:
        print(f"tdsub: error: {exc}", file=sys.stderr)
        return 2


run = main


if __name__ == "__main__":
    sys.exit(main())
