"""Convergence reports (changes per action and running totals) and their CSV form."""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, TextIO, Union

from .automaton import RunTrace, Termination

CSV_HEADER = ("action", "delta_n", "cumulative_n")

Destination = Union[str, "os.PathLike[str]", TextIO]


class ReportRow(NamedTuple):
    action: int
    delta_n: int
    cumulative_n: int


@dataclass(frozen=True)
class ConvergenceReport:
    rows: tuple[ReportRow, ...]
    termination: Termination | None = None
    meta: Mapping[str, str] = field(default_factory=dict)

    @property
    def deltas(self) -> list[int]:
        return [r.delta_n for r in self.rows]

    @property
    def cumulative(self) -> list[int]:
        return [r.cumulative_n for r in self.rows]


def build_report(trace: RunTrace, meta: Mapping[str, object] | None = None) -> ConvergenceReport:
    """One row per executed action; ``meta`` values become provenance comments."""
    rows = tuple(
        ReportRow(a, d, n)
        for a, (d, n) in enumerate(zip(trace.deltas, trace.cumulative), start=1)
    )
    info = {str(k): str(v) for k, v in (meta or {}).items()}
    if trace.termination is not None:
        info.setdefault("termination", trace.termination.describe())
    return ConvergenceReport(rows, trace.termination, info)


def format_csv(report: ConvergenceReport) -> str:
    lines = [f"# {key}: {value}" for key, value in report.meta.items()]
    lines.append(",".join(CSV_HEADER))
    lines += [f"{r.action},{r.delta_n},{r.cumulative_n}" for r in report.rows]
    return "\n".join(lines) + "\n"


def write_csv(report: ConvergenceReport, destination: Destination) -> None:
    """UTF-8, LF line endings, ``#`` provenance lines before the header."""
    text = format_csv(report)
    if hasattr(destination, "write"):
        destination.write(text)
        return
    with open(destination, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def read_csv(source: Destination) -> ConvergenceReport:
    """Parse a file written by :func:`write_csv`; termination is kept as text in ``meta``."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, encoding="utf-8", newline="") as fh:
            text = fh.read()
    meta = {}
    body = []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition(":")
            meta[key.strip()] = value.strip()
        else:
            body.append(line)
    reader = csv.reader(io.StringIO("\n".join(body)))
    header = next(reader)
    if tuple(header) != CSV_HEADER:
        raise ValueError(f"unexpected header {header}")
    rows = tuple(ReportRow(*(int(x) for x in rec)) for rec in reader if rec)
    return ConvergenceReport(rows, None, meta)
