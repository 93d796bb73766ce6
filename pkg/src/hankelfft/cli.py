"""Command-line interface: signal generation, fitting, singular-value
studies, and the naive-vs-fast product benchmark.

Signal files are CSV with a header row: ``n,re,im`` for 1D signals and
``n1,n2,re,im`` (row-major) for 2D signals.  Exit codes: 0 success, 2 input
error, 3 numerical degeneracy.
"""

import argparse
import csv
import json
import statistics
import sys
import time

import numpy as np

from . import core
from .decompose import DegenerateSystemError
from .expfit import (
    ExpModel1D,
    ExpModel2D,
    balanced_shape,
    estimate_poles_1d,
    estimate_poles_2d,
    match_poles,
    mode1_singular_values,
)
from .hankel import AntiCirculantTensor, HankelTensor

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DEGENERATE = 3


class CliInputError(Exception):
    pass


# ---------------------------------------------------------------------------
# parsing helpers


def _parse_complex_list(text):
    try:
        return [complex(tok.strip().replace("i", "j")) for tok in text.split(";") if tok.strip()]
    except ValueError as exc:
        raise CliInputError(f"cannot parse complex list {text!r}: {exc}") from None


def _parse_int_list(text):
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise CliInputError(f"cannot parse integer list {text!r}: {exc}") from None


def _parse_float_list(text):
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise CliInputError(f"cannot parse number list {text!r}: {exc}") from None


def _read_rows(path, expected_header):
    try:
        fh = open(path, newline="")
    except OSError as exc:
        raise CliInputError(f"cannot open {path}: {exc}") from None
    with fh:
        reader = csv.reader(fh)
        rows = []
        for lineno, row in enumerate(reader, start=1):
            if not row:
                continue
            if lineno == 1:
                if [c.strip() for c in row] != expected_header:
                    raise CliInputError(
                        f"{path}:1: expected header {','.join(expected_header)}"
                    )
                continue
            if len(row) != len(expected_header):
                raise CliInputError(
                    f"{path}:{lineno}: expected {len(expected_header)} fields"
                )
            try:
                rows.append([float(v) for v in row])
            except ValueError as exc:
                raise CliInputError(f"{path}:{lineno}: {exc}") from None
    return rows


def read_signal_1d(path) -> np.ndarray:
    rows = _read_rows(path, ["n", "re", "im"])
    if not rows:
        raise CliInputError(f"{path}: no samples")
    x = np.zeros(len(rows), dtype=np.complex128)
    for n, re, im in rows:
        idx = int(n)
        if not 0 <= idx < len(rows):
            raise CliInputError(f"{path}: sample index {idx} out of range")
        x[idx] = re + 1j * im
    return x


def read_signal_2d(path) -> np.ndarray:
    rows = _read_rows(path, ["n1", "n2", "re", "im"])
    if not rows:
        raise CliInputError(f"{path}: no samples")
    n1 = int(max(r[0] for r in rows)) + 1
    n2 = int(max(r[1] for r in rows)) + 1
    if len(rows) != n1 * n2:
        raise CliInputError(f"{path}: expected {n1 * n2} samples, found {len(rows)}")
    X = np.zeros((n1, n2), dtype=np.complex128)
    for i, j, re, im in rows:
        X[int(i), int(j)] = re + 1j * im
    return X


def _read_truth(path, pairs: bool):
    header = ["re1", "im1", "re2", "im2"] if pairs else ["re", "im"]
    rows = _read_rows(path, header)
    if pairs:
        return (
            np.array([r[0] + 1j * r[1] for r in rows]),
            np.array([r[2] + 1j * r[3] for r in rows]),
        )
    return np.array([r[0] + 1j * r[1] for r in rows])


def _open_out(path):
    return open(path, "w", newline="") if path else sys.stdout


def _write_table(rows, header, fmt, out_path):
    if fmt == "json":
        payload = [dict(zip(header, row)) for row in rows]
        text = json.dumps(payload, indent=2) + "\n"
        if out_path:
            with open(out_path, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return
    fh = _open_out(out_path)
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    finally:
        if out_path:
            fh.close()


def _write_json(payload, out_path):
    text = json.dumps(payload, indent=2) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen(args) -> int:
    if args.poles is None:
        raise CliInputError("--poles is required")
    poles = _parse_complex_list(args.poles)
    amps = _parse_complex_list(args.amps) if args.amps else [1.0 + 0j] * len(poles)
    if len(amps) != len(poles):
        raise CliInputError("--amps must list one amplitude per pole")
    if args.poles2 is not None:
        poles2 = _parse_complex_list(args.poles2)
        if len(poles2) != len(poles):
            raise CliInputError("--poles2 must list one pole per --poles entry")
        if args.size is None:
            raise CliInputError("--size N1,N2 is required for 2D generation")
        n1, n2 = _parse_int_list(args.size)
        model = ExpModel2D.from_poles(amps, poles, poles2)
        X = model.synth(n1, n2, noise=args.noise, rng=args.seed)
        rows = [
            [i, j, X[i, j].real, X[i, j].imag]
            for i in range(n1)
            for j in range(n2)
        ]
        _write_table(rows, ["n1", "n2", "re", "im"], args.format, args.out)
    else:
        if args.length is None:
            raise CliInputError("--length is required for 1D generation")
        model = ExpModel1D.from_poles(amps, poles)
        x = model.synth(args.length, noise=args.noise, rng=args.seed)
        rows = [[n, x[n].real, x[n].imag] for n in range(len(x))]
        _write_table(rows, ["n", "re", "im"], args.format, args.out)
    return EXIT_OK


def _poles_payload(poles, truth=None):
    entries = [{"re": z.real, "im": z.imag} for z in poles]
    payload = {"poles": entries}
    if truth is not None:
        payload["relative_errors"] = list(match_poles(poles, truth))
    return payload


def cmd_fit1d(args) -> int:
    x = read_signal_1d(args.input)
    dims = tuple(_parse_int_list(args.dims)) if args.dims else None
    est = estimate_poles_1d(x, args.rank, order=args.order, dims=dims)
    payload = _poles_payload(est.poles, _read_truth(args.truth, False) if args.truth else None)
    payload["amplitudes"] = [{"re": a.real, "im": a.imag} for a in est.amplitudes]
    _write_json(payload, args.out)
    return EXIT_OK


def _block_outer_dims(args, X, order):
    if args.block_dims:
        block = tuple(_parse_int_list(args.block_dims))
    else:
        block = balanced_shape(X.shape[0], order)
    if args.dims:
        full = tuple(_parse_int_list(args.dims))
        if len(full) != len(block) or any(f % b for f, b in zip(full, block)):
            raise CliInputError("--dims must be per-mode multiples of --block-dims")
        outer = tuple(f // b for f, b in zip(full, block))
    else:
        outer = balanced_shape(X.shape[1], order)
    return block, outer


def cmd_fit2d(args) -> int:
    X = read_signal_2d(args.input)
    block, outer = _block_outer_dims(args, X, args.order)
    est = estimate_poles_2d(
        X, args.rank, order=args.order, block_dims=block, outer_dims=outer
    )
    payload = {
        "poles1": [{"re": z.real, "im": z.imag} for z in est.poles1],
        "poles2": [{"re": z.real, "im": z.imag} for z in est.poles2],
        "amplitudes": [{"re": a.real, "im": a.imag} for a in est.amplitudes],
        "pairing_ok": est.pairing_ok,
    }
    if args.truth:
        t1, t2 = _read_truth(args.truth, True)
        payload["relative_errors1"] = list(match_poles(est.poles1, t1))
        payload["relative_errors2"] = list(match_poles(est.poles2, t2))
    _write_json(payload, args.out)
    return EXIT_OK


def cmd_svals(args) -> int:
    X = read_signal_2d(args.input)
    block, outer = _block_outer_dims(args, X, args.order)
    levels = _parse_float_list(args.noise) if args.noise_is_list else [args.noise]
    seeds = [args.seed + t for t in range(args.reps)]
    table = mode1_singular_values(
        X, order=args.order, block_dims=block, outer_dims=outer,
        noise_levels=levels, seeds=seeds,
    )
    n_sv = table.shape[2]
    header = ["noise", "seed"] + [f"sv{i + 1}" for i in range(n_sv)]
    rows = []
    for i, sigma in enumerate(levels):
        for j, seed in enumerate(seeds):
            rows.append([sigma, seed] + [float(v) for v in table[i, j]])
    _write_table(rows, header, args.format, args.out)
    return EXIT_OK


def _naive_product(h, shape, xs, cap):
    dense = core.dense_hankel(h, shape, cap)
    return core.tvp_partial(dense, xs)


def _fast_product_padded(h, shape, xs):
    # Benchmark-only variant: pad the embedding length to a power of two.
    dof = sum(shape) - len(shape) + 1
    length = 1
    while length < dof:
        length *= 2
    hp = np.zeros(length, dtype=np.complex128)
    hp[:dof] = h
    acirc = AntiCirculantTensor(len(shape), length, hp)
    padded = []
    for n, x in zip(shape[1:], xs):
        xp = np.zeros(length, dtype=np.complex128)
        xp[:n] = x
        padded.append(xp)
    return acirc.tvp_partial(padded)[: shape[0]]


def cmd_bench(args) -> int:
    if args.reps < 1:
        raise CliInputError("--reps must be at least 1")
    sizes = _parse_int_list(args.dims)
    if not sizes or any(n < 2 for n in sizes):
        raise CliInputError("--dims must list sizes of at least 2")
    m = args.order
    rng = np.random.default_rng(args.seed)
    rows = []
    for n in sizes:
        shape = (n,) * m
        dof = m * n - m + 1
        h = rng.standard_normal(dof) + 1j * rng.standard_normal(dof)
        xs = [rng.standard_normal(n) + 1j * rng.standard_normal(n) for _ in range(m - 1)]
        tensor = HankelTensor(shape, h)

        if args.pad_pow2:
            fast = lambda: _fast_product_padded(h, shape, xs)
        else:
            fast = lambda: tensor.tvp_partial(xs)
        fast()  # warm-up
        fast_times = []
        for _ in range(args.reps):
            t0 = time.perf_counter()
            y_fast = fast()
            fast_times.append(time.perf_counter() - t0)
        rows.append(["fast", m, n, statistics.median(fast_times), args.reps])

        if n ** m > core.DENSE_CAP:
            rows.append(["naive", m, n, "skipped", args.reps])
            continue
        _naive_product(h, shape, xs, core.DENSE_CAP)  # warm-up
        naive_times = []
        for _ in range(args.reps):
            t0 = time.perf_counter()
            y_naive = _naive_product(h, shape, xs, core.DENSE_CAP)
            naive_times.append(time.perf_counter() - t0)
        err = np.linalg.norm(y_fast - y_naive) / (np.linalg.norm(y_naive) + 1.0)
        if err > 1e-10:
            raise DegenerateSystemError(
                f"fast and naive products disagree at n={n}: {err:.2e}"
            )
        rows.append(["naive", m, n, statistics.median(naive_times), args.reps])
    _write_table(rows, ["algorithm", "order", "dimension", "median_seconds", "reps"],
                 args.format, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hankelfft",
        description="Fast Hankel tensor products, HOOI, and exponential data fitting.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--out", metavar="PATH", default=None)
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("gen", help="synthesize an exponential-sum signal")
    p.add_argument("--poles", help="semicolon-separated complex poles, e.g. '0.9;0.5+0.1j'")
    p.add_argument("--poles2", help="second-dimension poles (switches to 2D)")
    p.add_argument("--amps", help="semicolon-separated complex amplitudes")
    p.add_argument("--length", type=int, help="number of 1D samples")
    p.add_argument("--size", help="2D sample grid, e.g. '16,13'")
    p.add_argument("--noise", type=float, default=0.0)
    common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("fit1d", help="estimate poles of a 1D signal")
    p.add_argument("input")
    p.add_argument("--order", type=int, default=3)
    p.add_argument("--dims", help="Hankel mode sizes, e.g. '5,5,5'")
    p.add_argument("--rank", type=int, required=True, help="number of terms K")
    p.add_argument("--truth", metavar="FILE")
    common(p)
    p.set_defaults(func=cmd_fit1d)

    p = sub.add_parser("fit2d", help="estimate pole pairs of a 2D signal")
    p.add_argument("input")
    p.add_argument("--order", type=int, default=3)
    p.add_argument("--dims", help="overall mode sizes, e.g. '30,30,30'")
    p.add_argument("--block-dims", help="inner block sizes, e.g. '6,6,6'")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--truth", metavar="FILE")
    common(p)
    p.set_defaults(func=cmd_fit2d)

    p = sub.add_parser("svals", help="mode-1 singular values under noise")
    p.add_argument("input")
    p.add_argument("--order", type=int, default=3)
    p.add_argument("--dims", help="overall mode sizes")
    p.add_argument("--block-dims", help="inner block sizes")
    p.add_argument("--noise", default="0", help="comma-separated noise levels")
    p.add_argument("--reps", type=int, default=1, help="trials per noise level")
    common(p)
    p.set_defaults(func=cmd_svals, noise_is_list=True)

    p = sub.add_parser("bench", help="time naive vs fast Hankel products")
    p.add_argument("--order", type=int, default=3)
    p.add_argument("--dims", required=True, help="dimensions to sweep, e.g. '32,64,128'")
    p.add_argument("--reps", type=int, default=100)
    p.add_argument("--pad-pow2", action="store_true",
                   help="pad FFT lengths to powers of two (timing study only)")
    common(p)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except CliInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DegenerateSystemError, np.linalg.LinAlgError) as exc:
        print(f"numerical degeneracy: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entrypoint():
    raise SystemExit(main())
