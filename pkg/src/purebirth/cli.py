"""Command-line front end.

Exit codes: 0 success, 2 bad configuration, 3 verification mismatch.
Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__, occupancy, oracle, pbp, randomized, variants
from .numerics import BACKENDS, Scalar, backend_of, convert, format_scalar, one, parse_scalar, to_float, zero
from .sim import default_workers, monte_carlo

MODELS = ("pbp", "occupancy", "randomized", "complementary", "binomial")
FORMATS = ("csv", "json", "table")
CSV_FIELDS = ("model", "n", "p", "r", "k", "t", "quantity", "value", "backend")
FLOAT_ALT_SUM_LIMIT = 25
VERIFY_FLOAT_TOL = 1e-9


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    model: str
    n: int
    backend: str
    fmt: str
    p_vector: list[Scalar] | None = None
    retention: Scalar | None = None
    times: list[int] = field(default_factory=list)
    states: list[int] | None = None
    r: int | None = None
    seed: int = 0
    N: int = 10000
    verify: bool = False
    hitting: int | None = None
    max_dense: int = 64

    @property
    def start(self) -> int:
        if self.r is not None:
            return self.r
        return 1 if self.model == "complementary" else 0

    def state_range(self) -> list[int]:
        lo = 1 if self.model == "complementary" else 0
        return list(range(lo, self.n + 1))


# --- argument handling ------------------------------------------------------


def parse_int_range(text: str, name: str) -> list[int]:
    """'5', '0:10' (inclusive) or '1,4,9'."""
    try:
        if ":" in text:
            lo, _, hi = text.partition(":")
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ConfigError(f"--{name}: expected an integer, a:b range or comma list, got {text!r}") from exc
    if not values:
        raise ConfigError(f"--{name}: empty range {text!r}")
    if any(v < 0 for v in values):
        raise ConfigError(f"--{name}: values must be >= 0")
    return values


def _parse_prob(text: str, what: str) -> Scalar:
    try:
        return parse_scalar(text)
    except ValueError as exc:
        raise ConfigError(f"{what}: {exc}") from exc


def read_vector(text: str, what: str) -> list[Scalar]:
    tokens = text.replace(",", " ").split()
    if text.strip().startswith("["):
        try:
            tokens = [str(x) for x in json.loads(text)]
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{what}: invalid JSON list") from exc
    if not tokens:
        raise ConfigError(f"{what}: empty transition vector")
    return [_parse_prob(tok, what) for tok in tokens]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="purebirth", description="Distributions of discrete-time pure birth processes.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", choices=MODELS, default="occupancy")
    common.add_argument("--n", type=int, help="population size / number of transient states")
    common.add_argument("--p", help="retention probability for the randomized model (a/b or decimal)")
    common.add_argument("--probs", help="transition vector p_0..p_n for --model pbp, comma separated")
    common.add_argument("--probs-file", help="file holding the transition vector (whitespace, commas or a JSON list)")
    common.add_argument("--backend", choices=BACKENDS, help="default: exact, or float when any input is decimal")
    common.add_argument("--format", dest="fmt", choices=FORMATS, default="csv")
    common.add_argument("--r", type=int, help="initial state (default 0; 1 for the complementary chain)")

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help_text)

    for name in ("pmf", "cdf", "ccdf"):
        cmd = add(name, f"{name.upper()} of the state at time t")
        cmd.add_argument("--t", required=True, help="time: integer, a:b or comma list")
        cmd.add_argument("--k", help="state(s); default every state")
        cmd.add_argument("--verify", action="store_true", help="recompute every cell with the matrix oracle")

    cmd = add("moments", "mean and variance (plus factorial moments for randomized)")
    cmd.add_argument("--t", help="time: integer, a:b or comma list")
    cmd.add_argument("--hitting", type=int, help="report first-hitting-time moments of this state instead")

    cmd = add("simulate", "Monte Carlo estimate of the state law")
    cmd.add_argument("--t", required=True, type=int)
    cmd.add_argument("--N", type=int, default=10000)
    cmd.add_argument("--seed", type=int, default=0)

    for name in ("eigen", "matrices"):
        cmd = add(name, "eigendecomposition matrices" if name == "eigen" else "transition and related matrices")
        cmd.add_argument("--max-dense", type=int, default=64, help="largest n rendered densely")

    cmd = add("verify", "compare every PMF/CDF/CCDF cell against the brute-force oracles")
    cmd.add_argument("--t", required=True, help="time: integer, a:b or comma list")
    cmd.add_argument("--k", help="state(s); default every state")
    return parser


def make_config(args: argparse.Namespace) -> RunConfig:
    decimal_inputs = False
    p_vector = None
    retention = None
    if args.model == "pbp":
        if bool(args.probs) == bool(args.probs_file):
            raise ConfigError("--model pbp needs exactly one of --probs or --probs-file")
        if args.probs_file:
            try:
                with open(args.probs_file, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise ConfigError(f"cannot read {args.probs_file}: {exc}") from exc
        else:
            text = args.probs
        p_vector = read_vector(text, "transition vector")
        decimal_inputs = any(backend_of(x) == "float" for x in p_vector)
        if decimal_inputs:
            p_vector = [to_float(x) for x in p_vector]
        n = len(p_vector) - 1
        if args.n is not None and args.n != n:
            raise ConfigError(f"--n {args.n} disagrees with a transition vector of length {len(p_vector)}")
    else:
        if args.probs or args.probs_file:
            raise ConfigError("--probs/--probs-file only apply to --model pbp")
        if args.n is None:
            raise ConfigError(f"--model {args.model} needs --n")
        n = args.n
        if n < 1 or (args.model == "complementary" and n < 2):
            raise ConfigError(f"--n {n} is too small for --model {args.model}")
    if args.model == "randomized":
        if args.p is None:
            raise ConfigError("--model randomized needs --p")
        retention = _parse_prob(args.p, "--p")
        decimal_inputs = decimal_inputs or backend_of(retention) == "float"
    elif args.p is not None:
        raise ConfigError("--p only applies to --model randomized")

    backend = args.backend or ("float" if decimal_inputs else "exact")
    if backend == "exact" and decimal_inputs:
        raise ConfigError("decimal inputs cannot be used with --backend exact; write them as a/b")

    cfg = RunConfig(
        command=args.command,
        model=args.model,
        n=n,
        backend=backend,
        fmt=args.fmt,
        p_vector=p_vector,
        retention=retention,
        r=args.r,
    )
    if getattr(args, "t", None) is not None:
        cfg.times = [args.t] if isinstance(args.t, int) else parse_int_range(args.t, "t")
    k_text = getattr(args, "k", None)
    cfg.states = parse_int_range(k_text, "k") if k_text else None
    cfg.verify = bool(getattr(args, "verify", False)) or args.command == "verify"
    cfg.seed = getattr(args, "seed", 0)
    cfg.N = getattr(args, "N", 10000)
    cfg.hitting = getattr(args, "hitting", None)
    cfg.max_dense = getattr(args, "max_dense", 64)
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig) -> None:
    lo = 1 if cfg.model == "complementary" else 0
    if not lo <= cfg.start <= cfg.n:
        raise ConfigError(f"--r {cfg.start} outside {lo}..{cfg.n}")
    if cfg.states is not None and any(not lo <= k <= cfg.n for k in cfg.states):
        raise ConfigError(f"--k values must lie in {lo}..{cfg.n}")
    if cfg.command == "simulate":
        if cfg.N < 1:
            raise ConfigError("--N must be >= 1")
        if cfg.times[0] < 0:
            raise ConfigError("--t must be >= 0")
        if cfg.start != lo:
            raise ConfigError("simulate starts from the initial state; --r is not supported")
    if cfg.command == "moments" and cfg.hitting is None and not cfg.times:
        raise ConfigError("moments needs --t (or --hitting k)")


# --- model dispatch ---------------------------------------------------------


def model_process(cfg: RunConfig, backend: str | None = None) -> pbp.PureBirthProcess:
    """0-based pure birth process for the configured model."""
    backend = backend or cfg.backend
    if cfg.model == "pbp":
        proc = pbp.make_process(cfg.p_vector)
    elif cfg.model == "occupancy":
        proc = occupancy.occupancy_model(cfg.n).process
    elif cfg.model == "randomized":
        proc = randomized.randomized_model(cfg.n, cfg.retention).process
    elif cfg.model == "complementary":
        proc = variants.complementary_model(cfg.n).process
    else:
        proc = variants.binomial_chain(cfg.n)
    return proc if proc.backend == backend else proc.with_backend(backend)


def _retention(cfg: RunConfig) -> Scalar:
    if cfg.backend == "exact":
        return cfg.retention
    return convert(cfg.retention, "float")


def _conditioned_general(proc: pbp.PureBirthProcess, r: int, k: int, t: int, kind: str) -> Scalar:
    """PMF/CDF/CCDF of the general process started in state r (0-based)."""
    backend = proc.backend
    if k < r:
        return {"pmf": zero(backend), "cdf": zero(backend), "ccdf": one(backend)}[kind]
    if r == proc.n:
        return {"pmf": one(backend), "cdf": one(backend), "ccdf": zero(backend)}[kind]
    sub = proc.shifted(r) if r else proc
    j = k - r
    if kind == "pmf":
        return pbp.pmf_general(sub, j, t)
    if kind == "ccdf":
        return pbp.ccdf_general(sub, j, t)
    if backend == "logfloat":
        return pbp.cdf_general(sub, j, t)
    return 1 - pbp.ccdf_general(sub, j, t)


def compute_cell(cfg: RunConfig, kind: str, k: int, t: int) -> Scalar:
    model, n, r, backend = cfg.model, cfg.n, cfg.start, cfg.backend
    if model in ("pbp", "binomial"):
        return _conditioned_general(model_process(cfg), r, k, t, kind)
    if model == "complementary":
        if backend == "logfloat" and kind != "pmf":
            return _conditioned_general(model_process(cfg), r - 1, k - 1, t, kind)
        if kind == "pmf":
            value = variants.comp_pmf_conditioned(n, r, k, t)
        elif kind == "ccdf" and r == 1 and k < n:
            value = variants.comp_ccdf(n, k, t)
        else:
            below = sum((variants.comp_pmf_conditioned(n, r, j, t) for j in range(r, k + 1)), Fraction(0))
            value = below if kind == "cdf" else 1 - below
        return convert(value, backend)
    if model == "occupancy":
        if backend == "logfloat":
            if kind == "pmf":
                return occupancy.pmf_conditioned_stirling(n, r, k, t, backend)
            return _conditioned_general(model_process(cfg), r, k, t, kind)
        if kind == "pmf":
            return occupancy.pmf_conditioned(n, r, k, t, backend)
        value = occupancy.cdf_conditioned(n, r, k, t, backend)
        return value if kind == "cdf" else 1 - value
    # randomized
    if backend == "logfloat":
        return _conditioned_general(model_process(cfg, "logfloat"), r, k, t, kind)
    p = _retention(cfg)
    if kind == "pmf":
        return randomized.rand_pmf_conditioned(n, p, r, k, t)
    if r == 0:
        value = randomized.rand_cdf(n, p, k, t)
    else:
        value = zero(backend)
        for j in range(r, k + 1):
            value = value + randomized.rand_pmf_conditioned(n, p, r, j, t)
    return value if kind == "cdf" else 1 - value


def exact_vector(cfg: RunConfig) -> list[Fraction]:
    """Transition vector as exact rationals; float inputs convert exactly to their binary values."""
    if cfg.model == "pbp":
        return [Fraction(x) for x in cfg.p_vector]
    if cfg.model == "randomized":
        keep = Fraction(cfg.retention)
        return [(cfg.n - k) * keep / cfg.n for k in range(cfg.n + 1)]
    return list(model_process(cfg, "exact").p)


def oracle_cell(cfg: RunConfig, kind: str, k: int, t: int, cache: dict) -> Fraction:
    """Same quantity from the exact dense matrix power."""
    offset = 1 if cfg.model == "complementary" else 0
    if t not in cache:
        cache[t] = oracle.state_law(exact_vector(cfg), t, start=cfg.start - offset)
    law = cache[t]
    idx = k - offset
    if kind == "pmf":
        return law[idx]
    below = sum(law[: idx + 1], Fraction(0))
    return below if kind == "cdf" else 1 - below


def _matches(value: Scalar, expected: Fraction) -> bool:
    if backend_of(value) == "exact":
        return value == expected
    x, y = to_float(value), to_float(expected)
    return math.isclose(x, y, rel_tol=VERIFY_FLOAT_TOL, abs_tol=VERIFY_FLOAT_TOL)


# --- rendering --------------------------------------------------------------


def _row(cfg: RunConfig, quantity: str, value: Scalar | str, k: int | None, t: int | None, backend: str | None = None) -> dict:
    p_text = format_scalar(cfg.retention) if cfg.retention is not None else ""
    return {
        "model": cfg.model,
        "n": cfg.n,
        "p": p_text,
        "r": cfg.start,
        "k": "" if k is None else k,
        "t": "" if t is None else t,
        "quantity": quantity,
        "value": value if isinstance(value, str) else format_scalar(value),
        "backend": backend or cfg.backend,
    }


def render_rows(cfg: RunConfig, rows: list[dict], meta: dict) -> str:
    if cfg.fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    if cfg.fmt == "json":
        return dump_json({"meta": meta, "rows": rows})
    cols = ("k", "t", "quantity", "value")
    table = [cols] + [tuple(str(row[c]) for c in cols) for row in rows]
    widths = [max(len(line[i]) for line in table) for i in range(len(cols))]
    header = f"# model={cfg.model} n={cfg.n} r={cfg.start} backend={cfg.backend}"
    if cfg.retention is not None:
        header += f" p={format_scalar(cfg.retention)}"
    lines = [header] + ["  ".join(cell.rjust(w) for cell, w in zip(line, widths)) for line in table]
    return "\n".join(lines) + "\n"


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _meta(cfg: RunConfig, **extra) -> dict:
    meta = {
        "version": __version__,
        "command": cfg.command,
        "seed": cfg.seed if cfg.command == "simulate" else None,
        "flags": {"backend": cfg.backend, "verify": cfg.verify},
    }
    meta.update(extra)
    return meta


# --- commands ---------------------------------------------------------------


def _warn_float_alternating(cfg: RunConfig, states: list[int]) -> None:
    if cfg.backend == "float" and cfg.model in ("occupancy", "randomized"):
        if max(states) - cfg.start > FLOAT_ALT_SUM_LIMIT:
            print(
                f"warning: float alternating sums lose accuracy beyond k-r={FLOAT_ALT_SUM_LIMIT}; "
                "use --backend exact or --model pbp with the transition vector",
                file=sys.stderr,
            )


def cmd_distribution(cfg: RunConfig, kinds: tuple[str, ...]) -> tuple[list[dict], int]:
    states = cfg.states or cfg.state_range()
    _warn_float_alternating(cfg, states)
    rows, mismatches, cache = [], 0, {}
    for kind in kinds:
        for t in cfg.times:
            for k in states:
                value = compute_cell(cfg, kind, k, t)
                rows.append(_row(cfg, kind, value, k, t))
                if cfg.verify:
                    expected = oracle_cell(cfg, kind, k, t, cache)
                    if not _matches(value, expected):
                        mismatches += 1
                        print(
                            f"verify mismatch: {kind} k={k} t={t}: got {format_scalar(value)}, "
                            f"oracle {format_scalar(expected)}",
                            file=sys.stderr,
                        )
    if cfg.verify:
        print(f"verified {len(rows)} cells, {mismatches} mismatches", file=sys.stderr)
    return rows, mismatches


def cmd_moments(cfg: RunConfig) -> list[dict]:
    rows = []
    if cfg.hitting is not None:
        k = cfg.hitting
        if cfg.backend == "logfloat":
            raise ConfigError("hitting-time variance needs subtraction; use exact or float")
        if cfg.model == "complementary":
            if not 2 <= k <= cfg.n:
                raise ConfigError(f"--hitting must lie in 2..{cfg.n}")
            hm = variants.comp_hitting_moments(cfg.n, k)
            mean, var = convert(hm.mean, cfg.backend), convert(hm.variance, cfg.backend)
        else:
            if not 1 <= k <= cfg.n:
                raise ConfigError(f"--hitting must lie in 1..{cfg.n}")
            hm = pbp.hitting_time_moments(model_process(cfg), k)
            mean, var = hm.mean, hm.variance
        return [_row(cfg, "hitting_mean", mean, k, None), _row(cfg, "hitting_variance", var, k, None)]
    if cfg.backend == "logfloat":
        raise ConfigError("moments need subtraction; use exact or float")
    for t in cfg.times:
        if cfg.model == "occupancy" and cfg.start == 0:
            mean, var = occupancy.mean_variance(cfg.n, t, cfg.backend)
        elif cfg.model == "randomized" and cfg.start == 0:
            mom = randomized.rand_moments(cfg.n, _retention(cfg), t)
            mean, var = mom.mean, mom.variance
            rows.append(_row(cfg, "mean", mean, None, t))
            rows.append(_row(cfg, "variance", var, None, t))
            for j, value in enumerate(mom.factorial_moments):
                rows.append(_row(cfg, "factorial_moment_empty", value, j, t))
            continue
        else:
            law = [compute_cell(cfg, "pmf", k, t) for k in cfg.state_range()]
            dist = pbp.StateDistribution(t, tuple(law))
            offset = 1 if cfg.model == "complementary" else 0
            mean, var = dist.mean() + offset, dist.variance()
        rows.append(_row(cfg, "mean", mean, None, t))
        rows.append(_row(cfg, "variance", var, None, t))
    return rows


def cmd_simulate(cfg: RunConfig) -> tuple[list[dict], dict]:
    try:
        workers = default_workers()
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    t = cfg.times[0]
    cfg.backend = "float"
    result = monte_carlo(model_process(cfg, "float"), t, cfg.N, seed=cfg.seed, workers=workers)
    offset = 1 if cfg.model == "complementary" else 0
    rows = []
    for i, (count, freq, se) in enumerate(zip(result.counts, result.pmf, result.pmf_se)):
        k = i + offset
        rows.append(_row(cfg, "count", str(count), k, t, "float"))
        rows.append(_row(cfg, "empirical_pmf", freq, k, t, "float"))
        rows.append(_row(cfg, "pmf_se", se, k, t, "float"))
    rows.append(_row(cfg, "mean", result.mean + offset, None, t, "float"))
    rows.append(_row(cfg, "mean_se", result.mean_se, None, t, "float"))
    return rows, {"N": cfg.N, "workers": result.workers}


def _common_denominator(rows: list[list[Fraction]]) -> int:
    den = 1
    for row in rows:
        for x in row:
            den = math.lcm(den, Fraction(x).denominator)
    return den


def _scaled(rows: list[list[Fraction]]) -> tuple[int, list[list[int]]]:
    den = _common_denominator(rows)
    return den, [[int(Fraction(x) * den) for x in row] for row in rows]


def matrix_blocks(cfg: RunConfig) -> list[tuple[str, int, list[list[int]]]]:
    if cfg.n > cfg.max_dense:
        raise ConfigError(f"n={cfg.n} exceeds the dense cap {cfg.max_dense} (raise --max-dense)")
    if cfg.backend != "exact":
        raise ConfigError("matrices are rendered exactly; use --backend exact")
    proc = model_process(cfg, "exact")
    blocks = []
    if cfg.command == "eigen":
        if cfg.model not in ("occupancy", "randomized"):
            raise ConfigError("eigen is available for --model occupancy and randomized")
        system = (
            occupancy.eigen_system(cfg.n)
            if cfg.model == "occupancy"
            else randomized.rand_eigen_system(cfg.n, cfg.retention)
        )
        lam = [[system.eigenvalues[i] if i == j else Fraction(0) for j in range(cfg.n + 1)] for i in range(cfg.n + 1)]
        blocks.append(("U", 1, system.U))
        blocks.append(("Lambda", *_scaled(lam)))
        blocks.append(("U_inv", 1, system.U_inv))
        if cfg.model == "occupancy":
            V, V_inv = occupancy.c_eigenvectors(cfg.n)
            blocks.append(("V", 1, V))
            blocks.append(("V_inv", 1, V_inv))
        return blocks
    blocks.append(("P", *_scaled(pbp.transition_matrix(proc).to_dense())))
    if cfg.model in ("occupancy", "randomized"):
        system = occupancy.eigen_system(cfg.n)
        blocks.append(("U", 1, system.U))
        blocks.append(("U_inv", 1, system.U_inv))
        blocks.append(("Sigma", 1, system.sigma))
        blocks.append(("Sigma_inv", 1, system.sigma_inv))
        blocks.append(("Sigma_sq", 1, occupancy.int_matmul(system.sigma, system.sigma)))
        blocks.append(("U_inv_Sigma", 1, occupancy.int_matmul(system.U_inv, system.sigma)))
    if cfg.model == "occupancy":
        c_rows = occupancy.ccdf_matrix_occupancy(cfg.n).to_dense()
    else:
        c_rows = pbp.ccdf_matrix(proc).to_dense()
    blocks.append(("C", *_scaled(c_rows)))
    return blocks


def render_matrices(cfg: RunConfig, blocks) -> str:
    c_check = None
    for name, den, rows in blocks:
        if name == "C":
            sums = [sum(col) for col in zip(*rows)]
            c_check = [format_scalar(Fraction(s, den)) for s in sums]
    if cfg.fmt == "json":
        payload = {
            "meta": _meta(cfg, n=cfg.n, model=cfg.model),
            "matrices": [{"name": name, "denominator": den, "numerators": rows} for name, den, rows in blocks],
        }
        if c_check is not None:
            payload["C_column_sums"] = c_check
        return dump_json(payload)
    if cfg.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("matrix", "denominator", "i", "j", "numerator"))
        for name, den, rows in blocks:
            for i, row in enumerate(rows):
                for j, x in enumerate(row):
                    writer.writerow((name, den, i, j, x))
        if c_check is not None:
            for j, s in enumerate(c_check):
                writer.writerow(("C_column_sums", 1, 0, j, s))
        return buf.getvalue()
    out = []
    for name, den, rows in blocks:
        width = max(len(str(x)) for row in rows for x in row)
        prefix = f"{name} = 1/{den} *" if den != 1 else f"{name} ="
        out.append(prefix)
        out.extend("  [" + " ".join(str(x).rjust(width) for x in row) + "]" for row in rows)
        if name == "C" and c_check is not None:
            out.append("  column sums: " + " ".join(s.rjust(width) for s in c_check))
        out.append("")
    return "\n".join(out)


def run(argv: list[str] | None = None) -> tuple[int, str]:
    """Parse, execute and render; returns (exit code, stdout text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (2 if exc.code else 0), ""
    try:
        cfg = make_config(args)
        if cfg.command in ("pmf", "cdf", "ccdf", "verify"):
            kinds = (cfg.command,) if cfg.command != "verify" else ("pmf", "cdf", "ccdf")
            rows, mismatches = cmd_distribution(cfg, kinds)
            text = render_rows(cfg, rows, _meta(cfg))
            return (3 if mismatches else 0), text
        if cfg.command == "moments":
            return 0, render_rows(cfg, cmd_moments(cfg), _meta(cfg))
        if cfg.command == "simulate":
            rows, extra = cmd_simulate(cfg)
            return 0, render_rows(cfg, rows, _meta(cfg, **extra))
        return 0, render_matrices(cfg, matrix_blocks(cfg))
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2, ""
    except (ValueError, TypeError, ZeroDivisionError, oracle.OracleTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2, ""


def main(argv: list[str] | None = None) -> int:
    code, text = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
