"""Command-line interface: ``sparsedct <command> [flags]``.

Exit codes: 0 success, 1 usage error, 2 verification failure or undecidable input.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from typing import Optional, Sequence

from . import harness
from .harness import Mode, TrialSpec
from .oracle import DenseOracle, NoiseSpec, add_noise_to_snr
from .sparse_idct import DctProblem, reconstruct_x
from .sparse_ifft import AlgorithmConfig, CompareMode, DegenerateSignalError, reconstruct
from .transforms import fft_radix2, is_power_of_two
from .vecio import read_vector, write_vector

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
SEED_ENV = "SPARSEDCT_SEED"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _float_or_inf(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if math.isnan(value):
        raise argparse.ArgumentTypeError("NaN is not allowed")
    return value


def _float_list(text: str) -> list:
    return [_float_or_inf(t) for t in text.split(",") if t.strip()]


def _int_list(text: str) -> list:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _add_common(p: argparse.ArgumentParser, *, seed=True, algo=True) -> None:
    if seed:
        p.add_argument("--seed", type=_nonneg_int, default=None,
                       help=f"RNG seed (falls back to ${SEED_ENV}, then 0)")
    if algo:
        p.add_argument("--epsilon", type=float, default=None, help="noise threshold")
        p.add_argument("--b-exp", type=_nonneg_int, default=0, help="initial level b")
        p.add_argument("--compare", choices=[c.value for c in CompareMode], default="signed")
    p.add_argument("--out", default=None, help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sparsedct", description="Sparse inverse FFT / DCT-II for block-sparse vectors.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    g = sub.add_parser("gen", help="write a random instance (spectrum or DCT coefficients)")
    g.add_argument("--n-exp", type=int, required=True)
    g.add_argument("--block-length", type=int, required=True)
    g.add_argument("--mode", choices=[m.value for m in Mode], default="ifft")
    g.add_argument("--snr", type=_float_or_inf, default=math.inf)
    g.add_argument("--no-zero-fill", action="store_true", help="keep every block entry nonzero")
    g.add_argument("--truth", default=None, help="also write the ground-truth x here")
    _add_common(g, algo=False)

    for name, helptext in (("ifft", "reconstruct y from a spectrum file"),
                           ("idct", "reconstruct x from a DCT-II coefficient file")):
        c = sub.add_parser(name, help=helptext)
        c.add_argument("input", help="vector file ('-' for stdin)")
        _add_common(c, seed=False)

    b = sub.add_parser("bench", help="runtime CSV: sparse vs full radix-2 inverse")
    b.add_argument("--n-exp", type=int, required=True)
    b.add_argument("--block-length", type=_int_list, required=True)
    b.add_argument("--trials", type=int, default=10)
    b.add_argument("--mode", choices=[m.value for m in Mode], default="ifft")
    b.add_argument("--snr", type=_float_or_inf, default=math.inf)
    _add_common(b)

    n = sub.add_parser("noise-sweep", help="recovery-rate CSV over SNR and threshold")
    n.add_argument("--n-exp", type=int, required=True)
    n.add_argument("--block-length", type=int, required=True)
    n.add_argument("--snr", type=_float_list, default=[0, 10, 20, 30, 40, 50])
    n.add_argument("--epsilon", type=_float_list, default=None,
                   help="comma-separated thresholds (default: tabulated per SNR)")
    n.add_argument("--trials", type=int, default=100)
    n.add_argument("--mode", choices=[m.value for m in Mode], default="ifft")
    n.add_argument("--compare", choices=[c.value for c in CompareMode], default="signed")
    n.add_argument("--seed", type=_nonneg_int, default=None)
    n.add_argument("--out", default=None)

    v = sub.add_parser("verify", help="exhaustive check of all small instances")
    v.add_argument("--n-exp", type=int, default=5, help="largest J to enumerate")
    v.add_argument("--trials", type=int, default=5, help="random seeds per (position, length)")
    return parser


def _seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        value = int(env)
    except ValueError:
        raise UsageError(f"${SEED_ENV} is not an integer: {env!r}")
    if value < 0:
        raise UsageError(f"${SEED_ENV} must be >= 0")
    return value


def _open_out(path: Optional[str]):
    if path is None or path == "-":
        return sys.stdout, False
    try:
        return open(path, "w", newline="", encoding="ascii"), True
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}")


def _emit_vector(path: Optional[str], vec) -> None:
    fh, close = _open_out(path)
    try:
        write_vector(fh, vec)
    finally:
        if close:
            fh.close()


def _read_input(path: str):
    try:
        return read_vector(sys.stdin if path == "-" else path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}")
    except ValueError as exc:
        raise UsageError(f"bad vector file {path}: {exc}")


def _config(args) -> AlgorithmConfig:
    eps = harness.EXACT_EPSILON if args.epsilon is None else args.epsilon
    try:
        return AlgorithmConfig(eps, args.b_exp, CompareMode(args.compare))
    except ValueError as exc:
        raise UsageError(str(exc))


def _check_len_exp(args) -> None:
    if args.n_exp < 2:
        raise UsageError("--n-exp must be >= 2")
    lengths = args.block_length if isinstance(args.block_length, list) else [args.block_length]
    if not lengths:
        raise UsageError("--block-length must not be empty")
    for m in lengths:
        if not 1 <= m < 1 << (args.n_exp - 1):
            raise UsageError(f"--block-length {m} outside [1, 2^(n_exp-1))")
    if getattr(args, "trials", 1) < 1:
        raise UsageError("--trials must be >= 1")


def cmd_gen(args) -> int:
    _check_len_exp(args)
    seed = _seed(args)
    mode = Mode(args.mode)
    spec = TrialSpec(args.n_exp, args.block_length, seed, None, None, 0, mode, not args.no_zero_fill)
    inst = harness.gen_instance(spec)
    data = fft_radix2(inst.y) if mode is Mode.IFFT else harness.dct_coefficients(inst.x)
    if not math.isinf(args.snr):
        data, achieved = add_noise_to_snr(data, NoiseSpec(args.snr, harness.noise_seed(seed)))
        print(f"achieved_snr_db={achieved:.6f}", file=sys.stderr)
    _emit_vector(args.out, data)
    if args.truth:
        _emit_vector(args.truth, inst.x)
    return EXIT_OK


def cmd_ifft(args) -> int:
    data = _read_input(args.input)
    if not is_power_of_two(data.shape[0]) or data.shape[0] < 4:
        raise UsageError("spectrum length must be a power of two >= 4")
    oracle = DenseOracle(data)
    rec = reconstruct(oracle, None, _config(args))
    _emit_vector(args.out, rec.y)
    print(f"samples_distinct={rec.stats.distinct_indices} support={rec.support}", file=sys.stderr)
    return EXIT_OK


def cmd_idct(args) -> int:
    data = _read_input(args.input)
    if data.dtype.kind == "c":
        raise UsageError("DCT-II coefficients must be a realvec file")
    if not is_power_of_two(data.shape[0]) or data.shape[0] < 2:
        raise UsageError("coefficient length must be a power of two >= 2")
    x, stats = reconstruct_x(DctProblem(data, _config(args)))
    _emit_vector(args.out, x)
    print(f"samples_distinct={stats.distinct_indices}", file=sys.stderr)
    return EXIT_OK


def cmd_bench(args) -> int:
    _check_len_exp(args)
    fh, close = _open_out(args.out)
    try:
        harness.bench_sweep(args.n_exp, args.block_length, args.trials, fh, seed=_seed(args),
                            mode=Mode(args.mode), epsilon=args.epsilon,
                            snr_db=None if math.isinf(args.snr) else args.snr,
                            b_exp=args.b_exp, compare_mode=CompareMode(args.compare))
    finally:
        if close:
            fh.close()
    return EXIT_OK


def cmd_noise_sweep(args) -> int:
    _check_len_exp(args)
    if not args.snr:
        raise UsageError("--snr list must not be empty")
    if args.epsilon is not None and (not args.epsilon or any(e < 0 for e in args.epsilon)):
        raise UsageError("--epsilon list must be nonempty and nonnegative")
    fh, close = _open_out(args.out)
    try:
        harness.noise_sweep(args.n_exp, args.block_length, args.snr, args.trials, args.epsilon, fh,
                            seed=_seed(args), mode=Mode(args.mode),
                            compare_mode=CompareMode(args.compare))
    finally:
        if close:
            fh.close()
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.n_exp < 2 or args.trials < 1:
        raise UsageError("verify needs --n-exp >= 2 and --trials >= 1")
    report = harness.verify_exhaustive(args.n_exp, seeds=args.trials)
    print(f"instances={report.total} passed={report.passed} failed={len(report.failures)}")
    for J, mu, m, s, reason in report.failures[:20]:
        print(f"FAIL J={J} mu={mu} m={m} seed={s}: {reason}")
    return EXIT_OK if report.ok else EXIT_VERIFY


COMMANDS = {
    "gen": cmd_gen,
    "ifft": cmd_ifft,
    "idct": cmd_idct,
    "bench": cmd_bench,
    "noise-sweep": cmd_noise_sweep,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"sparsedct: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegenerateSignalError as exc:
        print(f"sparsedct: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
