"""Command-line entry point: ``redheffer <command> [options]``.

Exit codes: 0 success, 1 computation failure, 2 usage error.  Output is a
pure function of the arguments (timings only appear with ``--timing``), and
any number that may not fit a double is written as a string.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import mpmath

from . import asymptotics, spectral
from .arithmetic import fibonacci_numbers, mobius_table
from .exact_det import charpoly, det_closed_form, det_elimination
from .matrices import (
    KINDS,
    MatrixSpec,
    UnsupportedExactError,
    build,
    generalized,
    is_exact,
    log_shift_sequence,
    nnz_count,
    power_sequence,
    to_csv,
    to_matrix_market,
)
from .tables import EIGENVALUE_TABLE, SEQUENCE_EXAMPLES, TABLE_TOLERANCE

FORMATS = ("json", "tsv", "matrixmarket", "csv")
METHODS = ("closed", "elimination", "hessenberg", "all")


class UsageError(Exception):
    """Bad flags or inconsistent configuration (exit code 2)."""


def default_digits() -> int:
    raw = os.environ.get("REDHEFFER_DIGITS", "30")
    try:
        digits = int(raw)
    except ValueError:
        raise UsageError(f"REDHEFFER_DIGITS must be an integer, got {raw!r}") from None
    if digits < 1:
        raise UsageError("REDHEFFER_DIGITS must be positive")
    return digits


@dataclass
class CliConfig:
    command: str
    n: int | None = None
    kind: str = "fibonacci"
    b: Fraction | None = None
    seq: str | None = None
    preset: str | None = None
    seq_file: str | None = None
    offset: int = 0
    tol: float = spectral.DEFAULT_TOL
    format: str | None = None
    output: str | None = None
    digits: int = 30
    timing: bool = False
    extra: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise UsageError(f"unknown kind {self.kind!r}; choose from {', '.join(KINDS)}")
        sources = [s for s in (self.seq, self.preset, self.seq_file) if s is not None]
        if len(sources) > 1:
            raise UsageError("--seq, --preset and --seq-file are mutually exclusive")
        if sources and self.kind != "generalized":
            raise UsageError("a sequence source needs --kind generalized")
        if self.kind == "generalized" and not sources:
            raise UsageError("--kind generalized needs --seq, --preset or --seq-file")
        if self.kind == "fibonacci_variant" and self.b is None:
            raise UsageError("--kind fibonacci_variant needs --b")
        if self.b is not None and self.kind != "fibonacci_variant":
            raise UsageError("--b only applies to --kind fibonacci_variant")
        if not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.n is not None and self.n < 1:
            raise UsageError("--n must be >= 1")
        if self.digits < 1:
            raise UsageError("--digits must be positive")
        if self.format is not None and self.format not in FORMATS:
            raise UsageError(f"unknown format {self.format!r}")


# -- sequence sources ---------------------------------------------------------


def _parse_value(text: str):
    text = text.strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse sequence value {text!r}") from None


def parse_sequence(text: str) -> tuple:
    parts = [p for p in text.replace(";", ",").split(",") if p.strip()]
    if not parts:
        raise UsageError("empty sequence")
    return tuple(_parse_value(p) for p in parts)


def read_sequence_file(path: str) -> tuple:
    """One value per line, ``p/q`` or decimal; blank lines and ``#`` comments skipped."""
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read sequence file: {exc}") from None
    values = [ln.split("#", 1)[0].strip() for ln in lines]
    return parse_sequence(",".join(v for v in values if v))


def preset_spec(preset: str, n: int | None) -> MatrixSpec:
    if n is None:
        raise UsageError("--preset needs --n")
    if preset == "log-shift":
        return generalized(log_shift_sequence(n), offset=1, n=n, sequence_id="log-shift")
    if preset.startswith("power:"):
        raw = preset.split(":", 1)[1]
        try:
            p = Fraction(raw)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad power exponent {raw!r}") from None
        if p.denominator != 1:
            p = float(p)
        return generalized(power_sequence(n, p), n=n, sequence_id=f"power:{raw}")
    raise UsageError(f"unknown preset {preset!r}; use power:<p> or log-shift")


def make_spec(cfg: CliConfig) -> MatrixSpec:
    try:
        if cfg.kind == "generalized":
            if cfg.preset is not None:
                return preset_spec(cfg.preset, cfg.n)
            seq = parse_sequence(cfg.seq) if cfg.seq is not None else read_sequence_file(cfg.seq_file)
            n = cfg.n if cfg.n is not None else len(seq) - cfg.offset
            return generalized(seq, offset=cfg.offset, n=n)
        if cfg.n is None:
            raise UsageError("--n is required")
        return MatrixSpec(cfg.kind, cfg.n, b=cfg.b)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None


# -- formatting ----------------------------------------------------------------


def fmt_exact(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_decimal(x, digits: int) -> str:
    with mpmath.workdps(digits + 10):
        if is_exact(x):
            x = Fraction(x)
            if x.denominator == 1 and len(str(abs(x.numerator))) <= digits:
                return str(x.numerator)
            x = mpmath.mpf(x.numerator) / x.denominator
        return mpmath.nstr(mpmath.mpf(x), digits)


def _value_record(x, digits: int) -> dict:
    if is_exact(x):
        return {"value": fmt_exact(x), "decimal": fmt_decimal(x, digits), "exact": True}
    return {"value": fmt_decimal(x, digits), "decimal": fmt_decimal(x, digits), "exact": False}


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=True) + "\n"


def _json_lines(rows) -> str:
    return "".join(json.dumps(r, ensure_ascii=True) + "\n" for r in rows)


def _tsv(header: list[str], rows) -> str:
    out = ["\t".join(header)]
    out.extend("\t".join(str(v) for v in row) for row in rows)
    return "\n".join(out) + "\n"


def _float(x) -> str:
    return repr(float(x))


class ComputationFailure(Exception):
    """Raised by a command whose internal consistency check failed (exit code 1)."""

    def __init__(self, message: str, output: str = ""):
        super().__init__(message)
        self.output = output


# -- commands --------------------------------------------------------------------


def _format(cfg: CliConfig, allowed: tuple[str, ...]) -> str:
    fmt = cfg.format or allowed[0]
    if fmt not in allowed:
        raise UsageError(f"{cfg.command} supports --format {', '.join(allowed)}")
    return fmt


def cmd_build(cfg: CliConfig) -> str:
    fmt = _format(cfg, ("matrixmarket", "csv", "json"))
    m = build(make_spec(cfg))
    if fmt == "matrixmarket":
        return to_matrix_market(m, digits=cfg.digits)
    if fmt == "csv":
        return to_csv(m)
    entries = [
        {"i": i, "j": j, "value": fmt_exact(v) if is_exact(v) else fmt_decimal(v, cfg.digits)}
        for (i, j), v in sorted(m.to_sparse().entries.items())
    ]
    return _dump_json({"n": m.n, "kind": m.spec.kind, "nnz": m.nnz, "entries": entries})


def cmd_det(cfg: CliConfig) -> str:
    _format(cfg, ("json",))
    method = cfg.extra.get("method", "all")
    strategy = cfg.extra.get("strategy", "sparse")
    spec = make_spec(cfg)
    if method in ("elimination", "hessenberg", "all") and not spec.exact:
        raise UnsupportedExactError(f"method {method!r} needs exact entries; this sequence is approximate")
    started = time.perf_counter()
    values = {}
    if method in ("closed", "all"):
        values["closed"] = det_closed_form(spec)
    if method in ("elimination", "all"):
        values["elimination"] = det_elimination(build(spec), strategy=strategy)
    if method in ("hessenberg", "all"):
        cp = charpoly(spec, max_n=cfg.extra.get("max_charpoly_n", 256))
        values["hessenberg"] = cp.determinant()
    elapsed = time.perf_counter() - started
    first = next(iter(values.values()))
    agree = all(v == first for v in values.values())
    record = {"n": spec.n, "kind": spec.kind, "method": method}
    record.update(_value_record(first, cfg.digits))
    if len(values) > 1:
        record["methods"] = {k: fmt_exact(v) for k, v in values.items()}
        record["agree"] = agree
    if cfg.timing:
        record["elapsed"] = round(elapsed, 6)
    out = _dump_json(record)
    if not agree:
        raise ComputationFailure("determinant methods disagree", out)
    return out


def cmd_charpoly(cfg: CliConfig) -> str:
    fmt = _format(cfg, ("json", "tsv"))
    spec = make_spec(cfg)
    started = time.perf_counter()
    cp = charpoly(spec, max_n=cfg.extra.get("max_charpoly_n", 256))
    elapsed = time.perf_counter() - started
    coeffs = [fmt_exact(c) for c in cp.coeffs]
    if fmt == "tsv":
        return _tsv(["power", "coefficient"], ((cp.n - k, c) for k, c in enumerate(coeffs)))
    record = {"n": spec.n, "kind": spec.kind, "method": "hessenberg", "coefficients": coeffs}
    if cfg.timing:
        record["elapsed"] = round(elapsed, 6)
    return _dump_json(record)


def certified_digits(lo: Fraction, hi: Fraction) -> int:
    """Significant digits for printing a bracket midpoint.

    Two more than the width supports, so the rounding error is at most a
    twentieth of the width and the printed decimal stays inside the bracket.
    """
    width = hi - lo
    if width <= 0:
        return 10**6
    scale = max(abs(lo), abs(hi), width)
    return max(1, int(mpmath.floor(mpmath.log10(mpmath.mpf(scale.numerator) / scale.denominator
                                                / (mpmath.mpf(width.numerator) / width.denominator)))) + 3)


def _pair_record(p: spectral.EigenPair, digits: int, vectors: bool) -> dict:
    if p.exact_value is not None:
        lam = fmt_exact(p.exact_value)
    elif p.bracket is not None:
        lam = fmt_decimal(p.midpoint, min(digits, certified_digits(*p.bracket)))
    else:
        lam = fmt_decimal(p.value, digits)
    rec = {
        "i": p.index,
        "lambda": lam,
        "bracket_lo": fmt_exact(p.bracket[0]) if p.bracket else None,
        "bracket_hi": fmt_exact(p.bracket[1]) if p.bracket else None,
        "residual": float(f"{p.residual:.6g}"),
    }
    if vectors:
        rec["vector"] = [float(f"{v:.15g}") for v in p.vector]
        if p.left is not None:
            rec["left_vector"] = [float(f"{v:.15g}") for v in p.left]
    return rec


def cmd_eig(cfg: CliConfig) -> str:
    fmt = _format(cfg, ("json", "tsv"))
    spec = make_spec(cfg)
    vectors = cfg.extra.get("vectors", False)
    if spec.kind == "fibonacci":
        pairs = spectral.eigenvalues(spec.n, cfg.tol, with_left=vectors)
        complex_roots: list[complex] = []
    else:
        spectrum = spectral.eigen_generalized(spec, cfg.tol)
        pairs, complex_roots = spectrum.pairs, spectrum.complex_roots
    records = [_pair_record(p, cfg.digits, vectors) for p in pairs]
    if fmt == "tsv":
        return _tsv(
            ["i", "lambda", "bracket_lo", "bracket_hi", "residual"],
            ([r["i"], r["lambda"], r["bracket_lo"] or "", r["bracket_hi"] or "", r["residual"]] for r in records),
        )
    if complex_roots:
        # conjugate pairs are listed once, by their upper half-plane member
        cplx = [{"re": float(f"{z.real:.12g}"), "im": float(f"{z.imag:.12g}")} for z in complex_roots]
        return _dump_json({"real": records, "complex": cplx})
    return _dump_json(records)


def cmd_qplot(cfg: CliConfig) -> str:
    _format(cfg, ("tsv",))
    if cfg.kind != "fibonacci":
        raise UsageError("qplot is defined for --kind fibonacci")
    spec = make_spec(cfg)
    n = spec.n
    z_lo = cfg.extra.get("zmin")
    z_hi = cfg.extra.get("zmax")
    z_lo = -1.0 if z_lo is None else z_lo
    z_hi = float(fibonacci_numbers(n)[-1] + 2) if z_hi is None else z_hi
    try:
        rows = spectral.q_samples(n, z_lo, z_hi, cfg.extra.get("count", 2001), cfg.extra.get("guard", 1e-4))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return _tsv(["z", "Q"], ((_float(z), _float(q)) for z, q in rows))


def cmd_mertens(cfg: CliConfig) -> str:
    fmt = _format(cfg, ("json", "tsv"))
    if cfg.n is None:
        raise UsageError("--n is required")
    table = mobius_table(cfg.n)
    if fmt == "tsv":
        return _tsv(["k", "mu", "M"], ((k, table.mu(k), table.mertens(k)) for k in range(1, cfg.n + 1)))
    return _dump_json({"n": cfg.n, "mertens": table.mertens(cfg.n)})


def cmd_constants(cfg: CliConfig) -> str:
    _format(cfg, ("json",))
    tol = cfg.extra.get("ctol", 1e-12)
    if not tol > 0:
        raise UsageError("--constant-tol must be positive")
    d = cfg.digits
    k0 = cfg.extra.get("k0")
    reports = [
        asymptotics.golden_ratio_report(d),
        asymptotics.b_report(d),
        asymptotics.euler_gamma_report(d),
        asymptotics.constant_C(tol, d, k0=k0),
        asymptotics.constant_C_phi(tol, d),
        asymptotics.constant_C0(tol, d),
    ]
    return _dump_json([r.as_dict(d) for r in reports])


def cmd_series(cfg: CliConfig) -> str:
    _format(cfg, ("tsv",))
    which = cfg.extra.get("which", "zeta-inverse")
    n_max = cfg.extra.get("n_max") or cfg.n
    if n_max is None:
        raise UsageError("--n-max (or --n) is required")
    try:
        if which == "zeta-inverse":
            rows = asymptotics.zeta_inverse_partial_sums(cfg.extra.get("p", 2.0), n_max)
        else:
            rows = asymptotics.example2_partial_sums(n_max)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return _tsv(
        ["n", "partial_sum", "target"],
        ((r.n, _float(r.partial_sum), "" if r.target is None else _float(r.target)) for r in rows),
    )


def cmd_scan(cfg: CliConfig) -> str:
    _format(cfg, ("json",))
    n_max = cfg.extra.get("n_max") or cfg.n
    if n_max is None or n_max < 3:
        raise UsageError("scan needs --n-max >= 3")
    n_min = cfg.extra.get("n_min", 3)
    return _json_lines(row.as_dict() for row in spectral.conjecture_scan(n_max, cfg.tol, n_min=n_min))


def cmd_sparsity(cfg: CliConfig) -> str:
    fmt = _format(cfg, ("json", "tsv"))
    spec = make_spec(cfg)
    exact, estimate = nnz_count(spec.n)
    built = build(spec).nnz
    record = {
        "n": spec.n,
        "kind": spec.kind,
        "nnz": built,
        "S_n": exact,
        "estimate": float(f"{estimate:.12g}"),
        "ratio": float(f"{exact / estimate:.12g}"),
    }
    if fmt == "tsv":
        return _tsv(list(record), [list(record.values())])
    return _dump_json(record)


def examples_report(tol: float = spectral.DEFAULT_TOL) -> dict:
    """Recompute the published spectra and the eigenvalue table."""
    seqs = {}
    ok = True
    for name, item in SEQUENCE_EXAMPLES.items():
        spectrum = spectral.eigen_generalized(generalized(item["sequence"], sequence_id=name), tol)
        got = [p.value for p in spectrum.pairs]
        dev = max(abs(a - b) for a, b in zip(got, item["spectrum"])) if len(got) == len(item["spectrum"]) else None
        good = dev is not None and dev <= TABLE_TOLERANCE and not spectrum.complex_roots
        ok &= good
        seqs[name] = {
            "sequence": [fmt_exact(a) for a in item["sequence"]],
            "computed": [round(v, 6) for v in got],
            "published": list(item["spectrum"]),
            "max_deviation": None if dev is None else float(f"{dev:.3g}"),
            "within_tolerance": good,
        }
    table = {}
    for n, published in EIGENVALUE_TABLE.items():
        got = [p.value for p in spectral.eigenvalues(n, tol)]
        dev = max(abs(a - b) for a, b in zip(got, published))
        ok &= dev <= TABLE_TOLERANCE
        table[str(n)] = {
            "computed": [round(v, 6) for v in got],
            "max_deviation": float(f"{dev:.3g}"),
            "within_tolerance": dev <= TABLE_TOLERANCE,
        }
    return {"tolerance": TABLE_TOLERANCE, "sequences": seqs, "eigenvalue_table": table, "all_within_tolerance": ok}


def cmd_examples(cfg: CliConfig) -> str:
    _format(cfg, ("json",))
    report = examples_report(cfg.tol)
    out = _dump_json(report)
    if not report["all_within_tolerance"]:
        raise ComputationFailure("published values not reproduced", out)
    return out


COMMANDS = {
    "build": cmd_build,
    "det": cmd_det,
    "charpoly": cmd_charpoly,
    "eig": cmd_eig,
    "qplot": cmd_qplot,
    "mertens": cmd_mertens,
    "constants": cmd_constants,
    "series": cmd_series,
    "scan": cmd_scan,
    "sparsity": cmd_sparsity,
    "examples": cmd_examples,
}


# -- argument parsing -------------------------------------------------------------


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--kind", help=f"one of {', '.join(KINDS)} (default fibonacci, or generalized with a sequence)")
    common.add_argument("--n", type=int)
    common.add_argument("--b", type=_fraction_arg, help="corner shift for fibonacci_variant")
    src = common.add_mutually_exclusive_group()
    src.add_argument("--seq", help="inline sequence a_1,a_2,... (p/q or decimals)")
    src.add_argument("--preset", help="power:<p> or log-shift")
    src.add_argument("--seq-file", help="file with one value per line")
    common.add_argument("--offset", type=int, default=0, help="use a_{i+offset} as the row-i weight")
    common.add_argument("--tol", type=float, default=spectral.DEFAULT_TOL)
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("--output", help="write to this file instead of stdout")
    common.add_argument("--digits", type=int, help="decimal digits (default $REDHEFFER_DIGITS or 30)")
    common.add_argument("--timing", action="store_true", help="include elapsed seconds (breaks byte-identity)")

    parser = argparse.ArgumentParser(prog="redheffer", description="Redheffer-type matrix toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common], help="export the matrix")
    p = sub.add_parser("det", parents=[common], help="exact determinant")
    p.add_argument("--method", choices=METHODS, default="all")
    p.add_argument("--strategy", choices=("sparse", "bareiss"), default="sparse")
    p.add_argument("--max-charpoly-n", type=int, default=256)
    p = sub.add_parser("charpoly", parents=[common], help="characteristic polynomial")
    p.add_argument("--max-charpoly-n", type=int, default=256)
    p = sub.add_parser("eig", parents=[common], help="certified eigenvalues")
    p.add_argument("--vectors", action="store_true")
    p = sub.add_parser("qplot", parents=[common], help="samples of the secular function Q")
    p.add_argument("--zmin", type=float)
    p.add_argument("--zmax", type=float)
    p.add_argument("--count", type=int, default=2001)
    p.add_argument("--guard", type=float, default=1e-4)
    sub.add_parser("mertens", parents=[common], help="Mertens function")
    p = sub.add_parser("constants", parents=[common], help="asymptotic constants with error bounds")
    p.add_argument("--constant-tol", type=float, default=1e-12, dest="ctol")
    p.add_argument("--k0", type=int)
    p = sub.add_parser("series", parents=[common], help="Moebius partial sums")
    p.add_argument("--which", choices=("zeta-inverse", "log-shift"), default="zeta-inverse")
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--n-max", type=int)
    p = sub.add_parser("scan", parents=[common], help="eigenvalue location scan")
    p.add_argument("--n-max", type=int)
    p.add_argument("--n-min", type=int, default=3)
    sub.add_parser("sparsity", parents=[common], help="nonzero count")
    sub.add_parser("examples", parents=[common], help="reproduce the published examples")
    return parser


_EXTRA_KEYS = ("method", "strategy", "max_charpoly_n", "vectors", "zmin", "zmax", "count", "guard",
               "ctol", "k0", "which", "p", "n_max", "n_min")


def config_from_args(argv: list[str] | None = None) -> CliConfig:
    ns = build_parser().parse_args(argv)
    extra = {k: getattr(ns, k) for k in _EXTRA_KEYS if hasattr(ns, k)}
    cfg = CliConfig(
        command=ns.command,
        n=ns.n,
        kind=ns.kind or ("generalized" if (ns.seq or ns.preset or ns.seq_file) else "fibonacci"),
        b=ns.b,
        seq=ns.seq,
        preset=ns.preset,
        seq_file=ns.seq_file,
        offset=ns.offset,
        tol=ns.tol,
        format=ns.format,
        output=ns.output,
        digits=ns.digits if ns.digits is not None else default_digits(),
        timing=ns.timing,
        extra=extra,
    )
    cfg.validate()
    return cfg


def _emit(cfg: CliConfig, text: str, stdout) -> None:
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        stdout.write(text)


def run(cfg: CliConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        cfg.validate()
        text = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        stderr.write(f"redheffer: usage error: {exc}\n")
        return 2
    except ComputationFailure as exc:
        if exc.output:
            _emit(cfg, exc.output, stdout)
        stderr.write(f"redheffer: {exc}\n")
        return 1
    except (ArithmeticError, ValueError, RuntimeError) as exc:
        stderr.write(f"redheffer: computation failed: {exc}\n")
        return 1
    _emit(cfg, text, stdout)
    return 0


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"redheffer: usage error: {exc}\n")
        return 2
    except SystemExit as exc:  # argparse reports usage problems this way
        return int(exc.code or 0)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
