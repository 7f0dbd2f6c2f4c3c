"""Reading and writing run artifacts.

Three formats, each with a loader such that ``load(emit(x)) == x``:

* trace JSON: ``{config, evaluations, incumbents, solved, tase, ...}``;
* fit CSV: columns ``index, t, f_hat, f_true, sampled``;
* suite CSV: one row per (function, algorithm, budget).

CSV files start with a ``# config: {...}`` comment line echoing the run
configuration. Floats are written with `repr`, which round-trips exactly.
Nothing time- or path-dependent is written, so reruns are byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .drivers import Evaluation, RunTrace
from .surrogate import Fit

CONFIG_PREFIX = "# config: "


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, allow_nan=False) + "\n"


def _fmt(v: float) -> str:
    return "" if v is None or (isinstance(v, float) and math.isnan(v)) else repr(float(v))


def _parse(s: str) -> float:
    return math.nan if s == "" else float(s)


def _parse_opt(s: str) -> float | None:
    return None if s == "" else float(s)


def _finite_or_none(v):
    return None if v is None or not math.isfinite(v) else float(v)


@dataclass
class TraceRecord:
    """Serializable view of a run."""

    config: dict
    evaluations: list[Evaluation]
    incumbents: list[tuple[int, float]]
    iterations: int
    solved: bool | None = None
    tase: float | None = None
    best: dict = field(default_factory=dict)

    @classmethod
    def from_trace(
        cls, trace: RunTrace, meta: dict | None = None, solved=None, tase=None
    ) -> TraceRecord:
        config = asdict(trace.config)
        config["algorithm"] = trace.algorithm
        config["x_start"] = trace.grid.x_start.tolist()
        config["x_end"] = trace.grid.x_end.tolist()
        config.update(meta or {})
        b = trace.best
        best = {"index": b.index, "x": list(b.x), "f": b.value}
        if trace.final_fit is not None:
            best["f_hat_min"] = trace.final_fit.f_min
            best["f_hat_at_best"] = trace.final_fit.at(b.index)
        return cls(
            config,
            list(trace.evaluations),
            [tuple(p) for p in trace.incumbent_history],
            trace.iterations,
            None if solved is None else bool(solved),
            _finite_or_none(tase),
            best,
        )

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "evaluations": [
                {"index": e.index, "t": e.t, "x": list(e.x), "f": e.value, "iteration": e.iteration, "reason": e.reason}
                for e in self.evaluations
            ],
            "incumbents": [list(p) for p in self.incumbents],
            "iterations": self.iterations,
            "solved": self.solved,
            "tase": self.tase,
            "best": self.best,
        }

    @classmethod
    def from_dict(cls, d: dict) -> TraceRecord:
        evals = [
            Evaluation(e["index"], e["iteration"], e["f"], e["reason"], e["t"], tuple(e["x"]))
            for e in d["evaluations"]
        ]
        return cls(
            d["config"],
            evals,
            [(int(c), float(v)) for c, v in d["incumbents"]],
            d["iterations"],
            d["solved"],
            d["tase"],
            d.get("best", {}),
        )


def dumps_trace(record: TraceRecord) -> str:
    return _dump_json(record.to_dict())


def write_trace(path, record: TraceRecord) -> Path:
    path = Path(path)
    path.write_text(dumps_trace(record))
    return path


def load_trace(path) -> TraceRecord:
    return TraceRecord.from_dict(json.loads(Path(path).read_text()))


@dataclass
class FitTable:
    """A fit on its grid, with the truth (NaN where unknown) and sample mask."""

    index: np.ndarray
    t: np.ndarray
    f_hat: np.ndarray
    f_true: np.ndarray
    sampled: np.ndarray
    config: dict = field(default_factory=dict)

    @classmethod
    def from_fit(cls, fit: Fit, trace: RunTrace, truth=None, meta: dict | None = None) -> FitTable:
        n = len(fit)
        sampled = np.zeros(n, dtype=bool)
        f_true = np.full(n, np.nan) if truth is None else np.asarray(truth, dtype=float).copy()
        # the fit was built from the first n_samples evaluations
        for e in trace.evaluations[: fit.n_samples]:
            sampled[e.index - 1] = True
            f_true[e.index - 1] = e.value
        config = {"iteration": fit.iteration, "n_samples": fit.n_samples, **(meta or {})}
        return cls(np.arange(1, n + 1), trace.grid.params(), fit.values.copy(), f_true, sampled, config)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FitTable):
            return NotImplemented
        return (
            self.config == other.config
            and np.array_equal(self.index, other.index)
            and np.array_equal(self.t, other.t)
            and np.array_equal(self.f_hat, other.f_hat)
            and np.array_equal(self.f_true, other.f_true, equal_nan=True)
            and np.array_equal(self.sampled, other.sampled)
        )


FIT_COLUMNS = ("index", "t", "f_hat", "f_true", "sampled")


def dumps_fit_csv(table: FitTable) -> str:
    buf = io.StringIO()
    buf.write(CONFIG_PREFIX + json.dumps(table.config, sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FIT_COLUMNS)
    for i, t, fh, ft, s in zip(table.index, table.t, table.f_hat, table.f_true, table.sampled):
        w.writerow((int(i), _fmt(t), _fmt(fh), _fmt(ft), int(s)))
    return buf.getvalue()


def write_fit_csv(path, table: FitTable) -> Path:
    path = Path(path)
    path.write_text(dumps_fit_csv(table))
    return path


def _split_config(text: str) -> tuple[dict, list[str]]:
    lines = text.splitlines()
    config = {}
    if lines and lines[0].startswith(CONFIG_PREFIX):
        config = json.loads(lines[0][len(CONFIG_PREFIX) :])
        lines = lines[1:]
    return config, lines


def load_fit_csv(path) -> FitTable:
    config, lines = _split_config(Path(path).read_text())
    rows = list(csv.DictReader(lines))
    return FitTable(
        np.array([int(r["index"]) for r in rows]),
        np.array([_parse(r["t"]) for r in rows]),
        np.array([_parse(r["f_hat"]) for r in rows]),
        np.array([_parse(r["f_true"]) for r in rows]),
        np.array([r["sampled"] == "1" for r in rows]),
        config,
    )


@dataclass(frozen=True)
class SuiteRow:
    function: str
    algorithm: str
    budget: int
    evals_used: int
    solved: bool
    best_f: float | None
    f_star: float | None
    tase: float | None
    error: str = ""


SUITE_COLUMNS = ("function", "algorithm", "budget", "evals_used", "solved", "best_f", "f_star", "tase", "error")


def dumps_suite_csv(rows: list[SuiteRow], config: dict) -> str:
    buf = io.StringIO()
    buf.write(CONFIG_PREFIX + json.dumps(config, sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SUITE_COLUMNS)
    for r in rows:
        w.writerow(
            (r.function, r.algorithm, r.budget, r.evals_used, int(r.solved),
             _fmt(r.best_f), _fmt(r.f_star), _fmt(r.tase), r.error)
        )
    return buf.getvalue()


def write_suite_csv(path, rows: list[SuiteRow], config: dict) -> Path:
    path = Path(path)
    path.write_text(dumps_suite_csv(rows, config))
    return path


def load_suite_csv(path) -> tuple[list[SuiteRow], dict]:
    config, lines = _split_config(Path(path).read_text())
    rows = [
        SuiteRow(
            r["function"], r["algorithm"], int(r["budget"]), int(r["evals_used"]), r["solved"] == "1",
            _parse_opt(r["best_f"]), _parse_opt(r["f_star"]), _parse_opt(r["tase"]), r["error"],
        )
        for r in csv.DictReader(lines)
    ]
    return rows, config


def dumps_table_csv(header: list[str], rows: list[list], config: dict) -> str:
    """Small summary table (fraction solved, mean TASE)."""
    buf = io.StringIO()
    buf.write(CONFIG_PREFIX + json.dumps(config, sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()
