"""CSV export in long format, with readers for round-tripping."""
from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable

import numpy as np

from ..bandit import RegretTrace
from .runner import AggregateResult

TRACE_HEADER = ["agent", "scheme", "rep", "t", "cum_regret"]
AGGREGATE_HEADER = ["agent", "scheme", "t", "mean", "stderr"]


class ExportError(OSError):
    pass


def _open(path, mode):
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        return open(path, mode, encoding="utf-8", newline="")
    except OSError as exc:
        raise ExportError(f"{path}: {exc.strerror or exc}") from exc


def write_traces_csv(rows: Iterable[tuple[str, str, int, RegretTrace]], path) -> None:
    """``rows`` yields (agent, scheme, rep, trace)."""
    with _open(path, "w") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TRACE_HEADER)
        for agent, scheme, rep, tr in rows:
            for t, v in enumerate(tr.cum_regret.tolist(), 1):
                w.writerow([agent, scheme, rep, t, repr(v)])


def write_aggregate_csv(results: Iterable[AggregateResult], path) -> None:
    with _open(path, "w") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(AGGREGATE_HEADER)
        for res in results:
            for t, (m, s) in enumerate(zip(res.mean.tolist(), res.stderr.tolist()), 1):
                w.writerow([res.agent, res.scheme, t, repr(m), repr(s)])


def _rows(path, header):
    with _open(path, "r") as fh:
        reader = csv.reader(fh)
        first = next(reader, None)
        if first != header:
            raise ExportError(f"{path}: expected header {','.join(header)}, got {first}")
        yield from reader


def read_traces_csv(path) -> dict[tuple[str, str, int], np.ndarray]:
    """Map (agent, scheme, rep) to the cumulative-regret series."""
    series: dict[tuple[str, str, int], list[float]] = {}
    for agent, scheme, rep, t, v in _rows(path, TRACE_HEADER):
        series.setdefault((agent, scheme, int(rep)), []).append(float(v))
    return {k: np.array(v) for k, v in series.items()}


def read_aggregate_csv(path) -> list[AggregateResult]:
    groups: dict[tuple[str, str], tuple[list[float], list[float]]] = {}
    for agent, scheme, t, m, s in _rows(path, AGGREGATE_HEADER):
        means, errs = groups.setdefault((agent, scheme), ([], []))
        means.append(float(m))
        errs.append(float(s))
    return [AggregateResult(a, s, np.array(m), np.array(e)) for (a, s), (m, e) in groups.items()]


def csv_kind(path) -> str:
    """'traces' or 'aggregate', judged from the header line."""
    with _open(path, "r") as fh:
        first = next(csv.reader(fh), None)
    if first == TRACE_HEADER:
        return "traces"
    if first == AGGREGATE_HEADER:
        return "aggregate"
    raise ExportError(f"{path}: unrecognized header {first}")
