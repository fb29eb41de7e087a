"""Command-line surface and persistence: JSON config loading, CSV/JSON
result emission, standalone SVG plots, and peak reporting.

File contracts
--------------
* Config files are strict JSON objects; unknown keys are errors.
* Result CSV: header ``curve_kind,x_name,x_value,learner,rep_count,
  mean_risk,std_risk,stderr_risk,min_risk,max_risk,base_seed``, one row per
  (grid point, learner) ordered by (x_value, learner), risks printed with 17
  significant digits, LF endings, trailing newline.  With kept reps a
  companion ``<path>.reps.csv`` holds the per-rep risks.
* Result JSON round-trips a :class:`~riskcurves.curves.CurveResult`
  bit-exactly (floats are emitted in shortest round-trip form).
* All writes go to a temp file first and are renamed into place, so a
  failed run never leaves a partial output.

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 I/O failure.
"""

import argparse
import dataclasses
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from .curves import (
    CurveKind,
    CurvePoint,
    CurveResult,
    LearnerStats,
    Provenance,
    SweepSpec,
    detect_peak,
    interpolation_threshold,
    run_sweep,
)
from .data import CsvSource, GaussianSpec
from .errors import (
    ConfigError,
    GridExceedsDimension,
    InvariantViolation,
    MissingFile,
    ParseError,
    RiskCurvesError,
    UnknownKey,
)
from .learners import MaxMargin, Mnlr, Pfld, Ridge, SemiSupPfld

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

_BENCHMARK_DATA = {"dim": 120, "informative": 10, "separation": 2.5}

_TOP_KEYS = {
    "kind", "grid", "seed", "learners", "fixed_n", "fixed_N", "test_size",
    "reps", "risk_metric", "data", "out_csv", "out_json", "out_svg", "keep_reps",
}


@dataclass(frozen=True)
class RunConfig:
    """A validated sweep plus output destinations."""

    sweep: SweepSpec
    out_csv: str | None = None
    out_json: str | None = None
    out_svg: str | None = None
    keep_reps: bool = False


# --------------------------------------------------------------------------
# Config parsing.


def _expect(value, types, where, what):
    if isinstance(value, bool) and bool not in types:
        raise InvariantViolation(f"{where}: {what} must be {types[-1].__name__}, got a boolean")
    if not isinstance(value, types):
        raise InvariantViolation(
            f"{where}: {what} must be {types[-1].__name__}, got {type(value).__name__}"
        )
    return value


def _check_keys(d: dict, allowed: set, where: str):
    for key in d:
        if key not in allowed:
            raise UnknownKey(f"{where}: unknown key {key!r}")


def _learner_from_dict(entry, index: int):
    where = f"learners[{index}]"
    _expect(entry, (dict,), where, "each learner")
    kind = entry.get("kind")
    if kind is None:
        raise InvariantViolation(f"{where}: missing 'kind'")
    if "name" in entry:
        _expect(entry["name"], (str,), where, "'name'")
    common = {"kind", "name"}
    try:
        if kind == "mnlr":
            _check_keys(entry, common | {"rel_tol"}, where)
            return Mnlr(
                rel_tol=float(entry.get("rel_tol", 1e-10)),
                name=entry.get("name"),
            )
        if kind == "pfld":
            _check_keys(entry, common | {"rel_tol"}, where)
            return Pfld(
                rel_tol=float(entry.get("rel_tol", 1e-10)),
                name=entry.get("name"),
            )
        if kind == "ridge":
            _check_keys(entry, common | {"lambda"}, where)
            if "lambda" not in entry:
                raise InvariantViolation(f"{where}: ridge needs 'lambda'")
            return Ridge(
                lam=_expect(entry["lambda"], (int, float), where, "'lambda'"),
                name=entry.get("name"),
            )
        if kind == "semisup_pfld":
            _check_keys(entry, common | {"rel_tol", "unlabeled_count"}, where)
            if "unlabeled_count" not in entry:
                raise InvariantViolation(f"{where}: semisup_pfld needs 'unlabeled_count'")
            return SemiSupPfld(
                unlabeled_count=_expect(entry["unlabeled_count"], (int,), where, "'unlabeled_count'"),
                rel_tol=float(entry.get("rel_tol", 1e-10)),
                name=entry.get("name"),
            )
        if kind == "max_margin":
            _check_keys(entry, common | {"c", "max_iters", "step_decay"}, where)
            return MaxMargin(
                c=float(_expect(entry.get("c", 100.0), (int, float), where, "'c'")),
                max_iters=_expect(entry.get("max_iters", 20_000), (int,), where, "'max_iters'"),
                step_decay=float(_expect(entry.get("step_decay", 1.0), (int, float), where, "'step_decay'")),
                name=entry.get("name"),
            )
    except ConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise InvariantViolation(f"{where}: {exc}") from exc
    raise InvariantViolation(
        f"{where}: unknown learner kind {kind!r}; expected one of "
        "mnlr, pfld, ridge, semisup_pfld, max_margin"
    )


def _data_from_dict(entry, *, allow_seed: bool):
    where = "data"
    _expect(entry, (dict,), where, "the data section")
    source = entry.get("source", "gaussian")
    if source == "gaussian":
        allowed = {"source", "dim", "informative", "separation"}
        if allow_seed:
            allowed |= {"seed"}
        _check_keys(entry, allowed, where)
        try:
            return GaussianSpec(
                dim=_expect(entry.get("dim", _BENCHMARK_DATA["dim"]), (int,), where, "'dim'"),
                informative=_expect(
                    entry.get("informative", _BENCHMARK_DATA["informative"]), (int,), where, "'informative'"
                ),
                separation=float(
                    _expect(entry.get("separation", _BENCHMARK_DATA["separation"]), (int, float), where, "'separation'")
                ),
                seed=_expect(entry.get("seed", 0), (int,), where, "'seed'") if allow_seed else 0,
            )
        except ConfigError:
            raise
        except ValueError as exc:
            raise InvariantViolation(f"{where}: {exc}") from exc
    if source == "csv":
        _check_keys(entry, {"source", "path", "label_column", "positive_label", "standardize"}, where)
        for req in ("path", "label_column", "positive_label"):
            if req not in entry:
                raise InvariantViolation(f"{where}: csv source needs {req!r}")
            _expect(entry[req], (str,), where, f"'{req}'")
        return CsvSource(
            path=entry["path"],
            label_column=entry["label_column"],
            positive_label=entry["positive_label"],
            standardize=_expect(entry.get("standardize", True), (bool,), where, "'standardize'"),
        )
    raise InvariantViolation(f"{where}: unknown source {source!r}; expected 'gaussian' or 'csv'")


def _sweep_from_dict(d: dict, *, allow_data_seed: bool = False) -> SweepSpec:
    if "kind" not in d:
        raise InvariantViolation("missing 'kind'")
    kind_raw = _expect(d["kind"], (str,), "kind", "'kind'")
    try:
        kind = CurveKind(kind_raw)
    except ValueError:
        raise InvariantViolation(
            f"kind must be one of {[k.value for k in CurveKind]}, got {kind_raw!r}"
        ) from None
    if "grid" not in d:
        raise InvariantViolation("missing 'grid'")
    grid = _expect(d["grid"], (list,), "grid", "'grid'")
    if "seed" not in d:
        raise InvariantViolation("missing 'seed'")
    seed = _expect(d["seed"], (int,), "seed", "'seed'")
    if "learners" not in d:
        raise InvariantViolation("missing 'learners'")
    learner_list = _expect(d["learners"], (list,), "learners", "'learners'")
    if not learner_list:
        raise InvariantViolation("learners: must list at least one learner")
    learners = tuple(_learner_from_dict(e, i) for i, e in enumerate(learner_list))

    fixed_n = fixed_N = None
    if kind is CurveKind.FEATURE:
        fixed_n = _expect(d.get("fixed_n", 40), (int,), "fixed_n", "'fixed_n'")
        if "fixed_N" in d:
            raise InvariantViolation("feature curves do not use fixed_N")
    else:
        fixed_N = _expect(d.get("fixed_N", 40), (int,), "fixed_N", "'fixed_N'")
        if "fixed_n" in d:
            raise InvariantViolation(f"{kind.value}s do not use fixed_n")

    data = _data_from_dict(d.get("data", {"source": "gaussian"}), allow_seed=allow_data_seed)
    try:
        return SweepSpec(
            kind=kind,
            grid=tuple(grid),
            learners=learners,
            data_source=data,
            fixed_n=fixed_n,
            fixed_N=fixed_N,
            test_size=_expect(d.get("test_size", 2000), (int,), "test_size", "'test_size'"),
            reps=_expect(d.get("reps", 50), (int,), "reps", "'reps'"),
            base_seed=seed,
            risk_metric=_expect(d.get("risk_metric", "zero_one"), (str,), "risk_metric", "'risk_metric'"),
        )
    except (GridExceedsDimension, ConfigError) as exc:
        if isinstance(exc, UnknownKey):
            raise
        raise InvariantViolation(str(exc)) from exc


def config_from_dict(d) -> RunConfig:
    """Validate a parsed JSON object into a :class:`RunConfig`."""
    _expect(d, (dict,), "config", "the configuration")
    _check_keys(d, _TOP_KEYS, "config")
    for key in ("out_csv", "out_json", "out_svg"):
        if key in d:
            _expect(d[key], (str,), key, f"'{key}'")
    keep = _expect(d.get("keep_reps", False), (bool,), "keep_reps", "'keep_reps'")
    return RunConfig(
        sweep=_sweep_from_dict(d),
        out_csv=d.get("out_csv"),
        out_json=d.get("out_json"),
        out_svg=d.get("out_svg"),
        keep_reps=keep,
    )


def load_config(path) -> RunConfig:
    """Read, parse and fully validate a JSON run configuration."""
    if not os.path.exists(path):
        raise MissingFile(f"no such config file: {path}")
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        parsed = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return config_from_dict(parsed)


# --------------------------------------------------------------------------
# Result serialization.


def _learner_to_dict(spec) -> dict:
    if isinstance(spec, Mnlr):
        out = {"kind": "mnlr", "rel_tol": spec.rel_tol}
    elif isinstance(spec, Pfld):
        out = {"kind": "pfld", "rel_tol": spec.rel_tol}
    elif isinstance(spec, Ridge):
        out = {"kind": "ridge", "lambda": spec.lam}
    elif isinstance(spec, SemiSupPfld):
        out = {"kind": "semisup_pfld", "unlabeled_count": spec.unlabeled_count, "rel_tol": spec.rel_tol}
    elif isinstance(spec, MaxMargin):
        out = {
            "kind": "max_margin",
            "c": spec.c,
            "max_iters": spec.max_iters,
            "step_decay": spec.step_decay,
        }
    else:
        raise TypeError(f"unknown learner spec {spec!r}")
    if spec.name is not None:
        out["name"] = spec.name
    return out


def _data_to_dict(source) -> dict:
    if isinstance(source, GaussianSpec):
        return {
            "source": "gaussian",
            "dim": source.dim,
            "informative": source.informative,
            "separation": source.separation,
            "seed": source.seed,
        }
    return {
        "source": "csv",
        "path": source.path,
        "label_column": source.label_column,
        "positive_label": source.positive_label,
        "standardize": source.standardize,
    }


def _spec_to_dict(spec: SweepSpec) -> dict:
    out = {
        "kind": spec.kind.value,
        "grid": list(spec.grid),
        "seed": spec.base_seed,
        "learners": [_learner_to_dict(l) for l in spec.learners],
    }
    if spec.fixed_n is not None:
        out["fixed_n"] = spec.fixed_n
    if spec.fixed_N is not None:
        out["fixed_N"] = spec.fixed_N
    out["test_size"] = spec.test_size
    out["reps"] = spec.reps
    out["risk_metric"] = spec.risk_metric
    out["data"] = _data_to_dict(spec.data_source)
    return out


def result_to_json_dict(result: CurveResult) -> dict:
    out = {
        "spec": _spec_to_dict(result.spec),
        "points": [
            {
                "x_value": p.x_value,
                "stats": {
                    name: {
                        "mean_risk": s.mean_risk,
                        "std_risk": s.std_risk,
                        "stderr_risk": s.stderr_risk,
                        "min_risk": s.min_risk,
                        "max_risk": s.max_risk,
                        "rep_count": s.rep_count,
                    }
                    for name, s in p.stats.items()
                },
            }
            for p in result.points
        ],
        "provenance": {
            "base_seed": result.provenance.base_seed,
            "version": result.provenance.version,
        },
    }
    if result.rep_risks is not None:
        out["rep_risks"] = {
            name: [list(point) for point in per_point]
            for name, per_point in result.rep_risks.items()
        }
    return out


def result_from_json_dict(d: dict) -> CurveResult:
    try:
        _expect(d, (dict,), "result", "the result document")
        _check_keys(d, {"spec", "points", "provenance", "rep_risks"}, "result")
        spec_d = _expect(d.get("spec"), (dict,), "result.spec", "'spec'")
        sweep = _sweep_from_dict(spec_d, allow_data_seed=True)
        points = []
        for i, pd in enumerate(_expect(d.get("points"), (list,), "result.points", "'points'")):
            _expect(pd, (dict,), f"result.points[{i}]", "each point")
            _check_keys(pd, {"x_value", "stats"}, f"result.points[{i}]")
            stats = {}
            for name, sd in pd["stats"].items():
                _check_keys(
                    sd,
                    {"mean_risk", "std_risk", "stderr_risk", "min_risk", "max_risk", "rep_count"},
                    f"result.points[{i}].stats[{name!r}]",
                )
                stats[name] = LearnerStats(
                    mean_risk=float(sd["mean_risk"]),
                    std_risk=float(sd["std_risk"]),
                    stderr_risk=float(sd["stderr_risk"]),
                    min_risk=float(sd["min_risk"]),
                    max_risk=float(sd["max_risk"]),
                    rep_count=int(sd["rep_count"]),
                )
            points.append(CurvePoint(x_value=float(pd["x_value"]), stats=stats))
        prov = _expect(d.get("provenance"), (dict,), "result.provenance", "'provenance'")
        _check_keys(prov, {"base_seed", "version"}, "result.provenance")
        rep_risks = None
        if "rep_risks" in d:
            rep_risks = {
                name: tuple(tuple(float(r) for r in point) for point in per_point)
                for name, per_point in d["rep_risks"].items()
            }
        return CurveResult(
            spec=sweep,
            points=tuple(points),
            provenance=Provenance(base_seed=int(prov["base_seed"]), version=str(prov["version"])),
            rep_risks=rep_risks,
        )
    except (KeyError, TypeError, AttributeError) as exc:
        raise InvariantViolation(f"malformed result document: {exc!r}") from exc


def load_result(path) -> CurveResult:
    """Reload a result JSON written by :func:`emit_json`."""
    if not os.path.exists(path):
        raise MissingFile(f"no such result file: {path}")
    with open(path, encoding="utf-8") as fh:
        try:
            parsed = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return result_from_json_dict(parsed)


# --------------------------------------------------------------------------
# Emission.


def _atomic_write(path, text: str):
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".riskcurves-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _g17(v: float) -> str:
    return format(float(v), ".17g")


def emit_csv(result: CurveResult, path) -> None:
    """Write the aggregated curve as CSV (see module docstring for schema).

    When the result carries per-rep risks a companion ``<path>.reps.csv``
    is written with header ``curve_kind,x_name,x_value,learner,rep,risk``.
    """
    kind = result.spec.kind.value
    x_name = result.spec.x_name()
    seed = result.spec.base_seed
    for label in result.points[0].stats if result.points else ():
        if "," in label or "\n" in label:
            raise ValueError(f"learner name {label!r} cannot appear in CSV output")
    lines = [
        "curve_kind,x_name,x_value,learner,rep_count,mean_risk,std_risk,"
        "stderr_risk,min_risk,max_risk,base_seed"
    ]
    for point in sorted(result.points, key=lambda p: p.x_value):
        for name in sorted(point.stats):
            s = point.stats[name]
            lines.append(
                f"{kind},{x_name},{_g17(point.x_value)},{name},{s.rep_count},"
                f"{_g17(s.mean_risk)},{_g17(s.std_risk)},{_g17(s.stderr_risk)},"
                f"{_g17(s.min_risk)},{_g17(s.max_risk)},{seed}"
            )
    _atomic_write(path, "\n".join(lines) + "\n")
    if result.rep_risks is not None:
        rep_lines = ["curve_kind,x_name,x_value,learner,rep,risk"]
        order = sorted(
            (p.x_value, i) for i, p in enumerate(result.points)
        )
        for x_value, pi in order:
            for name in sorted(result.rep_risks):
                for rep, risk in enumerate(result.rep_risks[name][pi]):
                    rep_lines.append(
                        f"{kind},{x_name},{_g17(x_value)},{name},{rep},{_g17(risk)}"
                    )
        _atomic_write(f"{path}.reps.csv", "\n".join(rep_lines) + "\n")


def emit_json(result: CurveResult, path) -> None:
    """Write the full result as round-trippable JSON."""
    _atomic_write(path, json.dumps(result_to_json_dict(result), indent=2) + "\n")


# -- SVG ---------------------------------------------------------------------

_PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
)

_W, _H = 760, 460
_ML, _MR, _MT, _MB = 72, 190, 28, 56


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def emit_svg_plot(result: CurveResult, path, *, log_x: bool = False) -> None:
    """Render mean risk vs the sweep variable as a standalone SVG.

    One polyline per learner with +-stderr whiskers, a legend, and a single
    dashed vertical rule at the interpolation threshold.  A one-point curve
    renders markers only.  ``log_x`` switches the x axis to log10.
    """
    if not result.points:
        raise ValueError("cannot plot an empty result")
    spec = result.spec
    names = sorted(result.points[0].stats)
    threshold = interpolation_threshold(spec)

    xs = [p.x_value for p in result.points]
    x_domain = xs + [threshold]
    if log_x and min(x_domain) <= 0:
        raise ValueError("log_x requires positive sweep values")
    tx = (lambda v: np.log10(v)) if log_x else (lambda v: v)
    x_lo, x_hi = min(tx(v) for v in x_domain), max(tx(v) for v in x_domain)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5

    tops, bottoms = [], []
    for p in result.points:
        for s in p.stats.values():
            tops.append(s.mean_risk + s.stderr_risk)
            bottoms.append(s.mean_risk - s.stderr_risk)
    y_lo = min(0.0, min(bottoms))
    y_hi = max(tops)
    pad = 0.08 * max(y_hi - y_lo, 1e-9)
    y_hi += pad

    plot_w = _W - _ML - _MR
    plot_h = _H - _MT - _MB

    def sx(v: float) -> float:
        return _ML + (tx(v) - x_lo) / (x_hi - x_lo) * plot_w

    def sy(v: float) -> float:
        return _MT + (y_hi - v) / (y_hi - y_lo) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{_W}" height="{_H}" fill="white"/>',
        # axes
        f'<line x1="{_ML}" y1="{_MT + plot_h}" x2="{_ML + plot_w}" y2="{_MT + plot_h}" stroke="black"/>',
        f'<line x1="{_ML}" y1="{_MT}" x2="{_ML}" y2="{_MT + plot_h}" stroke="black"/>',
    ]
    for tick in _ticks(x_lo, x_hi):
        v = 10**tick if log_x else tick
        px = _ML + (tick - x_lo) / (x_hi - x_lo) * plot_w
        parts.append(
            f'<line x1="{px:.2f}" y1="{_MT + plot_h}" x2="{px:.2f}" y2="{_MT + plot_h + 5}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{px:.2f}" y="{_MT + plot_h + 20}" text-anchor="middle">{v:.4g}</text>'
        )
    for tick in _ticks(y_lo, y_hi):
        py = sy(tick)
        parts.append(f'<line x1="{_ML - 5}" y1="{py:.2f}" x2="{_ML}" y2="{py:.2f}" stroke="black"/>')
        parts.append(
            f'<text x="{_ML - 9}" y="{py + 4:.2f}" text-anchor="end">{tick:.3g}</text>'
        )
    parts.append(
        f'<text x="{_ML + plot_w / 2:.2f}" y="{_H - 14}" text-anchor="middle">{escape(spec.x_name())}</text>'
    )
    parts.append(
        f'<text x="16" y="{_MT + plot_h / 2:.2f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {_MT + plot_h / 2:.2f})">mean {escape(spec.risk_metric)} risk</text>'
    )
    # single rule at the interpolation threshold
    tpx = sx(threshold)
    parts.append(
        f'<line class="threshold" x1="{tpx:.2f}" y1="{_MT}" x2="{tpx:.2f}" '
        f'y2="{_MT + plot_h}" stroke="#555555" stroke-dasharray="5,4"/>'
    )

    for idx, name in enumerate(names):
        color = _PALETTE[idx % len(_PALETTE)]
        pts = [(sx(p.x_value), p.stats[name]) for p in result.points]
        if len(pts) > 1:
            coords = " ".join(f"{px:.2f},{sy(s.mean_risk):.2f}" for px, s in pts)
            parts.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        for px, s in pts:
            lo, hi = sy(s.mean_risk - s.stderr_risk), sy(s.mean_risk + s.stderr_risk)
            parts.append(
                f'<line x1="{px:.2f}" y1="{lo:.2f}" x2="{px:.2f}" y2="{hi:.2f}" stroke="{color}"/>'
            )
            parts.append(
                f'<circle cx="{px:.2f}" cy="{sy(s.mean_risk):.2f}" r="3" fill="{color}"/>'
            )
        ly = _MT + 14 + 18 * idx
        lx = _ML + plot_w + 16
        parts.append(
            f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" y2="{ly - 4}" stroke="{color}" stroke-width="2"/>'
        )
        parts.append(f'<text x="{lx + 28}" y="{ly}">{escape(name)}</text>')

    parts.append("</svg>")
    _atomic_write(path, "\n".join(parts) + "\n")


# --------------------------------------------------------------------------
# CLI.

_KIND_OF_COMMAND = {
    "feature-curve": CurveKind.FEATURE,
    "learning-curve": CurveKind.LEARNING,
    "alpha-curve": CurveKind.ALPHA,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="riskcurves",
        description="Run risk-curve sweeps for linear classifiers and report peaks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for command in _KIND_OF_COMMAND:
        p = sub.add_parser(command, help=f"run a {command.replace('-', ' ')} sweep")
        p.add_argument("--config", required=True, help="JSON configuration file")
        p.add_argument("--seed", type=int, help="override the config seed")
        p.add_argument("--reps", type=int, help="override the repetition count")
        p.add_argument("--out-csv", help="override the CSV output path")
        p.add_argument("--out-json", help="override the JSON output path")
        p.add_argument("--out-svg", help="override the SVG output path")
        p.add_argument("--keep-reps", action="store_true", help="also store per-rep risks")
        p.add_argument("--workers", type=int, default=1, help="parallel reps (default 1)")
    rep = sub.add_parser("report", help="print peak reports for a result JSON")
    rep.add_argument("--in", dest="in_path", required=True, help="result JSON file")
    rep.add_argument("--learner", help="restrict the report to one learner")
    return parser


def _perr(message: str):
    print(f"riskcurves: error: {message}", file=sys.stderr)


def _format_report(report) -> str:
    flag = "true" if report.at_interpolation else "false"
    return (
        f"{report.learner}: peak_x={report.peak_x:g} peak_mean={report.peak_mean:.6g} "
        f"prominence={report.prominence:.6g} at_interpolation={flag}"
    )


def cli_main(argv) -> int:
    """Entry point; returns the process exit code instead of raising."""
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_CONFIG

    if args.command == "report":
        try:
            result = load_result(args.in_path)
        except (OSError, ConfigError) as exc:  # missing or malformed input artifact
            _perr(str(exc))
            return EXIT_IO
        names = [args.learner] if args.learner else sorted(result.points[0].stats)
        try:
            for name in names:
                print(_format_report(detect_peak(result, name)))
        except (RiskCurvesError, ValueError) as exc:
            _perr(str(exc))
            return EXIT_NUMERICAL
        return EXIT_OK

    # run subcommands: configuration phase
    try:
        config = load_config(args.config)
        expected = _KIND_OF_COMMAND[args.command]
        if config.sweep.kind is not expected:
            raise InvariantViolation(
                f"config kind {config.sweep.kind.value!r} does not match subcommand {args.command!r}"
            )
        overrides = {}
        if args.seed is not None:
            overrides["base_seed"] = args.seed
        if args.reps is not None:
            overrides["reps"] = args.reps
        sweep = dataclasses.replace(config.sweep, **overrides) if overrides else config.sweep
        out_csv = args.out_csv or config.out_csv
        out_json = args.out_json or config.out_json
        out_svg = args.out_svg or config.out_svg
        keep_reps = args.keep_reps or config.keep_reps
        if out_csv is None and out_json is None and out_svg is None:
            raise InvariantViolation(
                "no output requested; set out_csv/out_json/out_svg or pass --out-*"
            )
        if args.workers is not None and args.workers < 1:
            raise InvariantViolation(f"workers must be >= 1, got {args.workers}")
    except (ConfigError, MissingFile, RiskCurvesError) as exc:
        _perr(str(exc))
        return EXIT_CONFIG
    except OSError as exc:
        _perr(str(exc))
        return EXIT_IO

    try:
        result = run_sweep(sweep, keep_reps=keep_reps, workers=args.workers)
    except RiskCurvesError as exc:
        _perr(str(exc))
        return EXIT_NUMERICAL
    except OSError as exc:  # CSV data source reading
        _perr(str(exc))
        return EXIT_IO

    try:
        if out_csv:
            emit_csv(result, out_csv)
            print(f"wrote {out_csv}")
        if out_json:
            emit_json(result, out_json)
            print(f"wrote {out_json}")
        if out_svg:
            emit_svg_plot(result, out_svg)
            print(f"wrote {out_svg}")
    except OSError as exc:
        _perr(str(exc))
        return EXIT_IO
    return EXIT_OK


def main():
    sys.exit(cli_main(sys.argv[1:]))
