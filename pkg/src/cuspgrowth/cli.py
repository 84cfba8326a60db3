"""Command-line interface and report assembly.

Subcommands:

* ``dm check|contract|find-contraction|enumerate`` -- weight-tuple
  integrality and contraction search;
* ``tower run|analyze`` -- covering-tower reports, either for the
  built-in families (A, B over the four-cusped base; C over a genus-g
  curve) or for a tower spec read from JSON;
* ``congruence orders|exponents|dtower`` -- classical group orders and
  congruence-tower growth exponents.

Exit codes: 0 success, 2 validation error, 3 resource refusal.  Errors
are emitted as one-line JSON records on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from . import counts, weights
from .counts import GroupFamily
from .errors import ResourceLimitError, ValidationError
from .fitting import fit_exponent, match_verdict
from .serialize import (
    UNBOUNDED,
    c_tower_report_to_json,
    dumps_canonical,
    int_status_to_json,
    tower_report_to_json,
    tower_spec_from_json,
    tower_spec_to_json,
    weights_to_json,
)
from .towers import (
    TowerReport,
    analyze_tower,
    build_a_tower,
    build_b_tower,
    c_tower_report,
)
from .weights import ContractionPartition, WeightTuple


@dataclass(frozen=True)
class RunConfig:
    """A fully resolved invocation: command path, parameters, output."""

    command: tuple[str, ...]
    params: dict[str, Any] = field(default_factory=dict)
    fmt: str = "table"
    cap: Optional[int] = None
    out: Optional[str] = None

    def __post_init__(self):
        if self.fmt not in ("json", "csv", "table"):
            raise ValidationError(f"unknown output format {self.fmt!r}")
        if self.cap is not None and self.cap < 1:
            raise ValidationError("resource caps must be positive")


def _render_table(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = []
    for idx, row in enumerate(cells):
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        if idx == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _render_csv(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(headers)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _parse_blocks(text: str) -> ContractionPartition:
    blocks = []
    for chunk in text.split("|"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            blocks.append(tuple(int(x) for x in chunk.split(",")))
        except ValueError as exc:
            raise ValidationError(
                f"cannot parse block {chunk!r}; blocks look like '0,1|2|3|4' "
                "(0-based indices)"
            ) from exc
    if not blocks:
        raise ValidationError("no blocks given")
    return ContractionPartition(tuple(blocks))


def _parse_int_list(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ValidationError(f"cannot parse {what} from {text!r}") from exc


# ---------------------------------------------------------------------------
# Handlers: each returns (json_doc, table_text_or_None, csv_text_or_None)

Rendered = tuple[dict, Optional[str], Optional[str]]


def _dm_check(config: RunConfig) -> Rendered:
    mu = WeightTuple.parse(config.params["tuple"])
    status = weights.check_int(mu)
    doc = {"weights": weights_to_json(mu), **int_status_to_json(status)}
    lines = [f"weights: {', '.join(mu.as_strings())}", f"verdict: {status.verdict.value}"]
    for w in status.half_witnesses:
        lines.append(f"half-integral pair ({w.i},{w.j}): value {w.value}")
    for w in status.fail_witnesses:
        lines.append(f"failing pair ({w.i},{w.j}): value {w.value}")
    return doc, "\n".join(lines) + "\n", None


def _dm_contract(config: RunConfig) -> Rendered:
    mu = WeightTuple.parse(config.params["tuple"])
    partition = _parse_blocks(config.params["blocks"])
    result = weights.contract(mu, partition)
    doc = {
        "source": weights_to_json(mu),
        "blocks": [list(b) for b in partition.blocks],
        "block_sums": [str(s) for s in partition.block_sums(mu)],
        "result": weights_to_json(result),
    }
    text = (
        f"source: {', '.join(mu.as_strings())}\n"
        f"blocks: {' | '.join(','.join(map(str, b)) for b in partition.blocks)}\n"
        f"result: {', '.join(result.as_strings())}\n"
    )
    return doc, text, None


def _dm_find_contraction(config: RunConfig) -> Rendered:
    mu = WeightTuple.parse(config.params["tuple"])
    nu = WeightTuple.parse(config.params["target"])
    partition = weights.find_contraction(mu, nu)
    if partition is None:
        doc = {"found": False, "source": weights_to_json(mu), "target": weights_to_json(nu)}
        return doc, "no admissible contraction\n", None
    doc = {
        "found": True,
        "source": weights_to_json(mu),
        "target": weights_to_json(nu),
        "blocks": [list(b) for b in partition.blocks],
        "block_sums": [str(s) for s in partition.block_sums(mu)],
    }
    text = "blocks: " + " | ".join(",".join(map(str, b)) for b in partition.blocks) + "\n"
    return doc, text, None


def _dm_enumerate(config: RunConfig) -> Rendered:
    length = config.params["length"]
    max_denominator = config.params["max_denominator"]
    cap = config.cap if config.cap is not None else weights.DEFAULT_ENUMERATION_CAP
    found = weights.enumerate_tuples(length, max_denominator, cap=cap)
    doc = {
        "length": length,
        "max_denominator": max_denominator,
        "count": len(found),
        "tuples": [
            {"weights": weights_to_json(mu), "verdict": status.verdict.value}
            for mu, status in found
        ],
    }
    headers = ["weights", "verdict"]
    rows = [[" ".join(mu.as_strings()), status.verdict.value] for mu, status in found]
    return doc, _render_table(headers, rows), _render_csv(headers, rows)


def _tower_tables(report: TowerReport) -> tuple[str, str]:
    cusp_names = sorted(report.levels[0].cusp_multiplicities) if report.levels else []
    headers = (
        ["level", "degree", "connected"]
        + cusp_names
        + ["total_cusps", "b1_bound", "fibration"]
    )
    rows = []
    for j, lv in enumerate(report.levels, start=1):
        rows.append(
            [j, lv.degree, lv.connected]
            + [lv.cusp_multiplicities[name] for name in cusp_names]
            + [
                lv.total_cusps if lv.total_cusps is not None else "n/a",
                lv.b1_bound if lv.b1_bound is not None else UNBOUNDED,
                lv.factoring_fibration or "-",
            ]
        )
    return _render_table(headers, rows), _render_csv(headers, rows)


def _tower_run(config: RunConfig) -> Rendered:
    family = config.params["family"].upper()
    depth = config.params["depth"]
    if family == "C":
        genus = config.params.get("genus")
        divisors = config.params.get("divisors")
        if genus is None or divisors is None:
            raise ValidationError("family C needs --genus and --divisors")
        levels = c_tower_report(genus, _parse_int_list(divisors, "divisors"), depth)
        doc = c_tower_report_to_json(levels)
        headers = ["level", "degree", "b1_surface", "total_cusps"]
        rows = [[lv.level, lv.degree, lv.b1_surface, lv.total_cusps] for lv in levels]
        return doc, _render_table(headers, rows), _render_csv(headers, rows)
    prime = config.params.get("prime")
    if prime is None:
        raise ValidationError(f"family {family} needs --prime")
    if family == "A":
        spec = build_a_tower(prime, depth)
    elif family == "B":
        spec = build_b_tower(prime, depth)
    else:
        raise ValidationError(f"unknown family {family!r}; expected A, B, or C")
    emit_spec = config.params.get("emit_spec")
    if emit_spec:
        Path(emit_spec).write_text(dumps_canonical(tower_spec_to_json(spec)))
    report = analyze_tower(spec)
    doc = tower_report_to_json(report)
    table, csv_text = _tower_tables(report)
    return doc, table, csv_text


def _tower_analyze(config: RunConfig) -> Rendered:
    path = config.params["spec"]
    try:
        if path == "-":
            data = json.load(sys.stdin)
        else:
            with open(path, "r", encoding="utf-8") as handle:
                data = json.load(handle)
    except OSError as exc:
        raise ValidationError(f"cannot read tower spec {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed tower spec JSON in {path!r}: {exc}") from exc
    spec = tower_spec_from_json(data)
    report = analyze_tower(spec)
    doc = tower_report_to_json(report)
    table, csv_text = _tower_tables(report)
    return doc, table, csv_text


def _congruence_orders(config: RunConfig) -> Rendered:
    family = GroupFamily(config.params["family"].upper())
    m = config.params["m"]
    q = config.params["q"]
    method = config.params.get("method", "formula")
    cap = config.cap if config.cap is not None else counts.DEFAULT_BRUTE_CAP
    results = []
    if method in ("formula", "both"):
        results.append(counts.order_formula(family, m, q))
    if method in ("brute", "both"):
        results.append(counts.brute_force_order(family, m, q, cap=cap))
    doc: dict[str, Any] = {
        "family": family.value,
        "m": m,
        "q": q,
        "results": [{"method": r.method.value, "order": r.order} for r in results],
    }
    if len(results) == 2:
        doc["agree"] = results[0].order == results[1].order
    headers = ["family", "m", "q", "method", "order"]
    rows = [[family.value, m, q, r.method.value, r.order] for r in results]
    return doc, _render_table(headers, rows), _render_csv(headers, rows)


def _exponent_checks(n: int, genus: int, primes: list[int],
                     tolerance: Optional[float]) -> list[dict]:
    series = counts.d_tower_series(n, genus, primes)
    vol_vs_q = [(d.q, d.vol_proxy) for d in series]
    psl2_vs_q = [(d.q, counts.psl2_order(d.q)) for d in series]
    cusp_vs_q = [(d.q, d.cusp_proxy) for d in series]
    b1_vs_vol = [(d.vol_proxy, d.b1_proxy) for d in series]
    cusp_vs_vol = [(d.vol_proxy, d.cusp_proxy) for d in series]

    m = n + 1
    vol_exponent = m * m - 1
    # The modeled parabolic image has order q^(2n-1), so the cusp index
    # grows like q^(vol_exponent - (2n - 1)): q^5 for n = 2, q^10 for n = 3.
    cusp_exponent = vol_exponent - (2 * n - 1)
    checks: list[tuple[str, list, float, float]] = [
        (f"su{m}_order_vs_q", vol_vs_q, float(vol_exponent), 0.05 if n == 2 else 0.1),
        ("psl2_order_vs_q", psl2_vs_q, 3.0, 0.05),
        ("cusp_index_vs_q", cusp_vs_q, float(cusp_exponent), 0.05),
        ("b1_vs_vol", b1_vs_vol, 3.0 / vol_exponent, 0.02),
        ("cusps_vs_vol", cusp_vs_vol, cusp_exponent / vol_exponent, 0.02),
    ]
    out = []
    for name, pairs, target, tol in checks:
        if tolerance is not None:
            tol = tolerance
        fit = fit_exponent(pairs)
        record = {
            "name": name,
            "slope": fit.slope,
            "points": fit.points_used,
            "target": target,
            "tolerance": tol,
            "verdict": match_verdict(fit.slope, target, tol),
        }
        if name == "cusps_vs_vol" and n == 3:
            # The parabolic-image model grows like vol^(2/3) here; the
            # frequently stated rate for n = 3 is vol^(2/5).  The two do
            # not agree, and the divergence is reported, never silently
            # reconciled in either direction.
            stated = 2.0 / 5.0
            stated_verdict = match_verdict(fit.slope, stated, tol)
            record["stated_rate"] = stated
            record["stated_rate_verdict"] = (
                "MATCHES_STATED_RATE" if stated_verdict == "MATCH"
                else "DIVERGES_FROM_STATED_RATE"
            )
            record["note"] = (
                "the parabolic-image model computes cusp growth ~ vol^(2/3) "
                "for n = 3, which diverges from the stated vol^(2/5) rate; "
                "the computed exponent is reported and the difference flagged"
            )
        out.append(record)
    return out


def _congruence_exponents(config: RunConfig) -> Rendered:
    n = config.params["n"]
    genus = config.params["genus"]
    lo = config.params["prime_min"]
    hi = config.params["prime_max"]
    tolerance = config.params.get("tolerance")
    primes = counts.primes_in_range(lo, hi)
    if len(primes) < 2:
        raise ValidationError(f"need at least 2 primes in [{lo}, {hi}], got {len(primes)}")
    records = _exponent_checks(n, genus, primes, tolerance)
    doc = {
        "n": n,
        "genus": genus,
        "primes": {"min": lo, "max": hi, "count": len(primes)},
        "checks": records,
    }
    headers = ["name", "slope", "target", "tolerance", "verdict"]
    rows = [
        [r["name"], f"{r['slope']:.4f}", f"{r['target']:.4f}", r["tolerance"],
         r["verdict"] + ("" if "stated_rate_verdict" not in r
                          else f" ({r['stated_rate_verdict']} vs {r['stated_rate']})")]
        for r in records
    ]
    return doc, _render_table(headers, rows), _render_csv(headers, rows)


def _congruence_dtower(config: RunConfig) -> Rendered:
    n = config.params["n"]
    genus = config.params["genus"]
    lo = config.params["prime_min"]
    hi = config.params["prime_max"]
    primes = counts.primes_in_range(lo, hi)
    series = counts.d_tower_series(n, genus, primes)
    doc = {
        "n": n,
        "genus": genus,
        "series": [
            {"q": d.q, "vol": d.vol_proxy, "b1": d.b1_proxy, "cusps": d.cusp_proxy}
            for d in series
        ],
    }
    headers = ["q", "vol", "b1", "cusps"]
    rows = [[d.q, d.vol_proxy, d.b1_proxy, d.cusp_proxy] for d in series]
    return doc, _render_table(headers, rows), _render_csv(headers, rows)


_HANDLERS: dict[tuple[str, ...], Callable[[RunConfig], Rendered]] = {
    ("dm", "check"): _dm_check,
    ("dm", "contract"): _dm_contract,
    ("dm", "find-contraction"): _dm_find_contraction,
    ("dm", "enumerate"): _dm_enumerate,
    ("tower", "run"): _tower_run,
    ("tower", "analyze"): _tower_analyze,
    ("congruence", "orders"): _congruence_orders,
    ("congruence", "exponents"): _congruence_exponents,
    ("congruence", "dtower"): _congruence_dtower,
}


def _emit(config: RunConfig, rendered: Rendered) -> None:
    doc, table, csv_text = rendered
    if config.fmt == "json":
        text = dumps_canonical(doc)
    elif config.fmt == "table":
        text = table if table is not None else dumps_canonical(doc)
    else:
        if csv_text is None:
            raise ValidationError(
                f"csv output is not defined for `{' '.join(config.command)}`"
            )
        text = csv_text
    if config.out:
        Path(config.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def run(config: RunConfig) -> int:
    """Dispatch a resolved configuration; returns the process exit code."""
    handler = _HANDLERS.get(config.command)
    if handler is None:
        _error_record("validation", f"unknown command {' '.join(config.command)!r}")
        return 2
    try:
        rendered = handler(config)
        _emit(config, rendered)
        return 0
    except ResourceLimitError as exc:
        _error_record("resource", str(exc), space=exc.space, cap=exc.cap)
        return 3
    except ValidationError as exc:
        _error_record("validation", str(exc))
        return 2


def _error_record(kind: str, message: str, **extra: Any) -> None:
    record = {"error": {"type": kind, "message": message, **extra}}
    sys.stderr.write(json.dumps(record, sort_keys=True) + "\n")


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "table"], default="table",
                        help="output format (default: table)")
    common.add_argument("--cap", type=int, default=None,
                        help="resource cap for enumeration / brute-force searches")
    common.add_argument("--out", default=None, help="write output to this file")

    parser = argparse.ArgumentParser(
        prog="cuspgrowth",
        description="Exact arithmetic for weight-tuple integrality, covering-tower "
                    "cusp counts, classical group orders, and growth exponents.",
    )
    top = parser.add_subparsers(dest="command", required=True)

    dm = top.add_parser("dm", help="weight-tuple integrality and contractions")
    dm_sub = dm.add_subparsers(dest="subcommand", required=True)
    p = dm_sub.add_parser("check", parents=[common],
                          help="classify a tuple as INT / HALF_INT / FAIL")
    p.add_argument("--tuple", required=True, help="comma-separated rationals, e.g. 2/6,2/6,3/6,4/6,1/6")
    p = dm_sub.add_parser("contract", parents=[common], help="contract along a partition")
    p.add_argument("--tuple", required=True)
    p.add_argument("--blocks", required=True,
                   help="partition blocks as 0-based indices, e.g. '0,1|2|3|4'")
    p = dm_sub.add_parser("find-contraction", parents=[common],
                          help="search for a partition contracting one tuple onto another")
    p.add_argument("--tuple", required=True)
    p.add_argument("--target", required=True)
    p = dm_sub.add_parser("enumerate", parents=[common],
                          help="enumerate all INT / HALF_INT tuples with bounded denominator")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--max-denominator", type=int, required=True)

    tower = top.add_parser("tower", help="covering-tower reports")
    tower_sub = tower.add_subparsers(dest="subcommand", required=True)
    p = tower_sub.add_parser("run", parents=[common], help="analyze a built-in family")
    p.add_argument("--family", required=True, help="A, B, or C")
    p.add_argument("--prime", type=int, help="prime p for families A and B")
    p.add_argument("--depth", type=int, required=True, help="number of levels")
    p.add_argument("--genus", type=int, help="base-curve genus for family C")
    p.add_argument("--divisors", help="family C cusp divisors, e.g. '0,2'")
    p.add_argument("--emit-spec", default=None,
                   help="also write the generated tower spec JSON to this path")
    p = tower_sub.add_parser("analyze", parents=[common],
                             help="analyze a tower spec from JSON ('-' reads stdin)")
    p.add_argument("--spec", required=True)

    cong = top.add_parser("congruence", help="group orders and growth exponents")
    cong_sub = cong.add_subparsers(dest="subcommand", required=True)
    p = cong_sub.add_parser("orders", parents=[common], help="one classical group order")
    p.add_argument("--family", required=True,
                   help="SL2_ZN, SL, U, SU, or UNITRIANGULAR_U")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--q", type=int, required=True,
                   help="prime power (the modulus N for SL2_ZN)")
    p.add_argument("--method", choices=["formula", "brute", "both"], default="formula")
    p = cong_sub.add_parser("exponents", parents=[common],
                            help="fit growth exponents over a prime range")
    p.add_argument("--n", type=int, required=True, help="2 or 3")
    p.add_argument("--genus", type=int, default=2)
    p.add_argument("--prime-min", type=int, required=True)
    p.add_argument("--prime-max", type=int, required=True)
    p.add_argument("--tolerance", type=float, default=None,
                   help="override the per-check match tolerance")
    p = cong_sub.add_parser("dtower", parents=[common],
                            help="emit the per-prime (q, vol, b1, cusps) series")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--genus", type=int, default=2)
    p.add_argument("--prime-min", type=int, required=True)
    p.add_argument("--prime-max", type=int, required=True)

    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    reserved = {"command", "subcommand", "format", "cap", "out"}
    params = {k: v for k, v in vars(ns).items() if k not in reserved and v is not None}
    return RunConfig(
        command=(ns.command, ns.subcommand),
        params=params,
        fmt=ns.format,
        cap=ns.cap,
        out=ns.out,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    ns = parser.parse_args(argv)
    try:
        config = config_from_args(ns)
    except ValidationError as exc:
        _error_record("validation", str(exc))
        return 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
