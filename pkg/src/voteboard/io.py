"""Leaderboard file ingestion and outcome serialization.

The CSV layout is self-describing: a header row names the tasks, optional
rows starting with #direction and #weight carry per-task metadata, and every
other row is one system. Empty or whitespace cells are missing scores.

    system,sst2,qqp
    #direction,max,max
    #weight,1,0.5
    alpha,91.2,88.0
    beta,90.1,

Sidecar JSON files can supply task -> group and task -> weight mappings and
take precedence over in-file rows.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping

from .errors import ParseError
from .model import Leaderboard, RuleOutcome, as_fraction
from .experiments import ExperimentReport

DIRECTION_TAG = "#direction"
WEIGHT_TAG = "#weight"


def _parse_score(cell: str, where: str, normalize: bool) -> float | None:
    text = cell.strip()
    if not text:
        return None
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"{where}: not a number: {text!r}") from None
    if not math.isfinite(value):
        raise ParseError(f"{where}: non-finite scores are not allowed")
    return value / 100 if normalize else value


def load_leaderboard(
    path: str | Path,
    *,
    normalize: bool = False,
    groups_path: str | Path | None = None,
    weights_path: str | Path | None = None,
) -> Leaderboard:
    """Read a leaderboard CSV plus optional sidecar groups/weights files."""
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as handle:
            rows = [row for row in csv.reader(handle) if row and any(c.strip() for c in row)]
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise ParseError(f"{path}: file is empty")
    header = [c.strip() for c in rows[0]]
    if not header or header[0].lower() != "system":
        raise ParseError(f"{path}: first header cell must be 'system'")
    tasks = header[1:]
    if not tasks:
        raise ParseError(f"{path}: no task columns")
    if len(set(tasks)) != len(tasks):
        raise ParseError(f"{path}: duplicate task names")

    directions: dict[str, str] = {}
    weights: dict[str, Fraction] = {}
    scores: dict[str, dict[str, float | None]] = {}
    for lineno, row in enumerate(rows[1:], start=2):
        cells = [c.strip() for c in row]
        label = cells[0]
        if label.startswith("#"):
            if len(cells) != len(header):
                raise ParseError(f"{path}:{lineno}: metadata row needs one cell per task")
            if label.lower() == DIRECTION_TAG:
                for task, cell in zip(tasks, cells[1:]):
                    d = cell.lower()
                    if d not in ("max", "min"):
                        raise ParseError(f"{path}:{lineno}: direction must be max or min")
                    directions[task] = d
            elif label.lower() == WEIGHT_TAG:
                for task, cell in zip(tasks, cells[1:]):
                    try:
                        weights[task] = as_fraction(cell)
                    except (ValueError, ZeroDivisionError) as exc:
                        raise ParseError(f"{path}:{lineno}: bad weight {cell!r}") from exc
            else:
                raise ParseError(f"{path}:{lineno}: unknown metadata row {label!r}")
            continue
        if not label:
            raise ParseError(f"{path}:{lineno}: system name is empty")
        if label in scores:
            raise ParseError(f"{path}:{lineno}: duplicate system {label!r}")
        if len(cells) != len(header):
            raise ParseError(f"{path}:{lineno}: expected {len(header)} cells, got {len(cells)}")
        scores[label] = {
            task: _parse_score(cell, f"{path}:{lineno}", normalize)
            for task, cell in zip(tasks, cells[1:])
        }
    if not scores:
        raise ParseError(f"{path}: no system rows")

    groups: dict[str, list[str]] | None = None
    if groups_path is not None:
        mapping = _load_json_mapping(groups_path)
        groups = {}
        for task in tasks:
            if task in mapping:
                name = str(mapping[task])
                groups.setdefault(name, []).append(task)
        unknown = set(mapping) - set(tasks)
        if unknown:
            raise ParseError(f"{groups_path}: unknown tasks {sorted(unknown)}")
    if weights_path is not None:
        mapping = _load_json_mapping(weights_path)
        unknown = set(mapping) - set(tasks)
        if unknown:
            raise ParseError(f"{weights_path}: unknown tasks {sorted(unknown)}")
        for task, value in mapping.items():
            try:
                weights[task] = as_fraction(value)
            except (TypeError, ValueError) as exc:
                raise ParseError(f"{weights_path}: bad weight for {task!r}") from exc

    try:
        return Leaderboard.from_scores(
            scores,
            tasks=tasks,
            directions=directions,
            weights=weights,
            groups=groups,
        )
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _load_json_mapping(path: str | Path) -> Mapping[str, Any]:
    try:
        with Path(path).open(encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError(f"{path}: expected a JSON object")
    return data


def jsonify(value: Any) -> Any:
    """Recursively convert package values into JSON-serializable ones."""
    if isinstance(value, Fraction):
        return float(value)
    if isinstance(value, (frozenset, set)):
        return sorted(value)
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {k: jsonify(v) for k, v in dataclasses.asdict(value).items()}
    if isinstance(value, dict):
        return {str(k): jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonify(v) for v in value]
    return value


def outcome_to_dict(outcome: RuleOutcome, seed: int | None = None) -> dict[str, Any]:
    ranking = []
    place = 1
    for group in outcome.ranking:
        members = sorted(group)
        score = None
        if outcome.scores is not None:
            score = jsonify(outcome.scores[members[0]])
        ranking.append({"rank": place, "systems": members, "score": score})
        place += len(group)
    diagnostics = jsonify(dict(outcome.diagnostics))
    if outcome.unranked:
        diagnostics["unranked"] = sorted(outcome.unranked)
    return {
        "rule": outcome.rule_id,
        "mode": outcome.mode,
        "ranking": ranking,
        "diagnostics": diagnostics,
        "seed": seed,
    }


def outcome_from_dict(data: Mapping[str, Any]) -> RuleOutcome:
    """Rebuild an outcome from its JSON form (scores become floats)."""
    ranking = []
    scores: dict[str, float] = {}
    has_scores = True
    for item in data["ranking"]:
        group = frozenset(item["systems"])
        ranking.append(group)
        if item.get("score") is None:
            has_scores = False
        else:
            for m in group:
                scores[m] = item["score"]
    diagnostics = dict(data.get("diagnostics", {}))
    unranked = frozenset(diagnostics.pop("unranked", ()))
    return RuleOutcome(
        rule_id=data["rule"],
        mode=data["mode"],
        ranking=tuple(ranking),
        scores=scores if has_scores and scores else None,
        unranked=unranked,
        diagnostics=diagnostics,
    )


def to_json(payload: Any) -> str:
    """Canonical JSON: sorted keys, stable separators, trailing newline."""
    return json.dumps(jsonify(payload), sort_keys=True, indent=2) + "\n"


def _fmt_score(value: Any) -> str:
    if value is None:
        return ""
    return f"{float(value):.6g}"


def _arrow(delta: int) -> str:
    if delta > 0:
        return f"up {delta}"
    if delta < 0:
        return f"down {-delta}"
    return "same"


def render_outcome_table(outcome: RuleOutcome, baseline: RuleOutcome | None = None) -> str:
    headers = ["rank", "system", "score"]
    base_ranks: dict[str, int] = {}
    if baseline is not None:
        headers.append(f"vs {baseline.rule_id}")
        base_ranks = baseline.competition_ranks()
    rows: list[list[str]] = []
    ranks = outcome.competition_ranks()
    for group in outcome.ranking:
        for system in sorted(group):
            row = [
                str(ranks[system]),
                system,
                _fmt_score(None if outcome.scores is None else outcome.scores[system]),
            ]
            if baseline is not None:
                if system in base_ranks:
                    row.append(_arrow(base_ranks[system] - ranks[system]))
                else:
                    row.append("new")
            rows.append(row)
    for system in sorted(outcome.unranked):
        row = ["-", system, ""]
        if baseline is not None:
            row.append("")
        rows.append(row)
    return _table(headers, rows)


def render_graph(adjacency: Mapping[str, Mapping[str, Fraction]]) -> str:
    lines = ["majority edges (winner -> loser, margin):"]
    for a in sorted(adjacency):
        for b in sorted(adjacency[a]):
            lines.append(f"  {a} -> {b} [{_fmt_score(adjacency[a][b])}]")
    if len(lines) == 1:
        lines.append("  (none)")
    return "\n".join(lines)


def render_report_table(report: ExperimentReport) -> str:
    headers = ["rule", "mean", "sd", "trials"]
    rows = [
        [name, f"{report.mean[name]:.4f}", f"{report.sd[name]:.4f}", str(report.trials)]
        for name in report.series
    ]
    return _table(headers, rows)


def report_to_dict(report: ExperimentReport) -> dict[str, Any]:
    return {
        "kind": report.kind,
        "seed": report.seed,
        "trials": report.trials,
        "series": jsonify(dict(report.series)),
        "mean": jsonify(dict(report.mean)),
        "sd": jsonify(dict(report.sd)),
        "params": jsonify(dict(report.params)),
    }


def _table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    def fmt(row: list[str]) -> str:
        return "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip()
    lines = [fmt(headers), fmt(["-" * w for w in widths])]
    lines.extend(fmt(row) for row in rows)
    return "\n".join(lines)
