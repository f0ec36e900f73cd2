"""Scenario files: named evidence sets with expected results.

A scenario is a JSON document bundling an ordered list of evidence
records, the rules to run, an optional dependency parameter and optional
expected intervals with tolerances.  ``compare`` chunks the evidence list
into consecutive pairs and combines each pair under each rule, grading
against the expectations when present.

Several scenarios ship with the package (see ``BUNDLED``); they can be
addressed by bare name anywhere a scenario path is accepted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

from .evidence import EvidenceInterval, InvalidIntervalError
from .geometry import WIDTH_FLOOR
from .rules import (
    RULE_DS,
    RULE_MTP,
    RULE_TP,
    RULES,
    DependencyParam,
    combine_ds,
    combine_mtp,
    combine_tp,
    estimate_p,
)

__all__ = [
    "ScenarioError",
    "EvidenceRecord",
    "Expectation",
    "ScenarioFile",
    "BUNDLED",
    "DEFAULT_EXPECTATION_TOL",
    "load_scenario",
    "compare_scenario",
]

BUNDLED = (
    "example1",
    "example2",
    "example3",
    "example4",
    "jaundice",
    "berries",
    "radar",
)

DEFAULT_EXPECTATION_TOL = 0.01


class ScenarioError(ValueError):
    """A scenario file that cannot be parsed or is internally inconsistent."""


@dataclass(frozen=True, slots=True)
class EvidenceRecord:
    """One ingested evidence line: validated bounds plus optional metadata."""

    interval: EvidenceInterval
    source: Optional[str] = None
    timestamp: Optional[str] = None


@dataclass(frozen=True, slots=True)
class Expectation:
    pair: int
    rule: str
    lower: float
    upper: float
    tol: float = DEFAULT_EXPECTATION_TOL


@dataclass(frozen=True, slots=True)
class ScenarioFile:
    name: str
    evidences: tuple[EvidenceRecord, ...]
    rules: tuple[str, ...]
    dep: Optional[DependencyParam] = None
    expected: tuple[Expectation, ...] = ()
    warnings: tuple[str, ...] = ()

    def pairs(self) -> list[tuple[EvidenceRecord, EvidenceRecord]]:
        return [
            (self.evidences[i], self.evidences[i + 1])
            for i in range(0, len(self.evidences), 2)
        ]


def parse_record(obj: object) -> EvidenceRecord:
    """Build an EvidenceRecord from a decoded JSON object.

    ``lower`` and ``upper`` are required numbers; ``source`` and
    ISO-8601 ``timestamp`` are optional.  Raises ScenarioError on any
    shape or validation problem.
    """
    if not isinstance(obj, dict):
        raise ScenarioError(f"evidence record must be an object, got {obj!r}")
    for key in ("lower", "upper"):
        if key not in obj:
            raise ScenarioError(f"evidence record is missing the {key!r} field")
        if isinstance(obj[key], bool) or not isinstance(obj[key], (int, float)):
            raise ScenarioError(f"field {key!r} must be a number, got {obj[key]!r}")
    try:
        interval = EvidenceInterval(obj["lower"], obj["upper"])
    except InvalidIntervalError as exc:
        raise ScenarioError(str(exc)) from exc
    source = obj.get("source")
    if source is not None and not isinstance(source, str):
        raise ScenarioError(f"field 'source' must be text, got {source!r}")
    timestamp = obj.get("timestamp")
    if timestamp is not None:
        if not isinstance(timestamp, str):
            raise ScenarioError(f"field 'timestamp' must be text, got {timestamp!r}")
        from datetime import datetime

        try:
            datetime.fromisoformat(timestamp)
        except ValueError as exc:
            raise ScenarioError(f"timestamp is not ISO-8601: {timestamp!r}") from exc
    return EvidenceRecord(interval=interval, source=source, timestamp=timestamp)


def _parse_dep(obj: object) -> tuple[Optional[DependencyParam], list[str]]:
    if obj is None:
        return None, []
    if not isinstance(obj, dict):
        raise ScenarioError(f"'dep' must be an object, got {obj!r}")
    warnings: list[str] = []
    has_p = "p" in obj
    has_alphas = "alpha1" in obj or "alpha2" in obj
    if has_p and has_alphas:
        warnings.append("scenario gives both an explicit p and alphas; explicit p wins")
    try:
        if has_p:
            return DependencyParam(p=float(obj["p"])), warnings
        if "alpha1" in obj and "alpha2" in obj:
            return estimate_p(float(obj["alpha1"]), float(obj["alpha2"])), warnings
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"bad dependency parameter: {exc}") from exc
    raise ScenarioError("'dep' needs either p or both alpha1 and alpha2")


def load_scenario(name_or_path: str | Path) -> ScenarioFile:
    """Load a scenario by bundled name or by filesystem path."""
    text_name = str(name_or_path)
    if text_name in BUNDLED:
        text = (
            resources.files("intervalfuse")
            .joinpath("scenarios", f"{text_name}.json")
            .read_text(encoding="utf-8")
        )
    else:
        path = Path(name_or_path)
        if not path.exists():
            raise ScenarioError(
                f"no scenario named {text_name!r}: not bundled "
                f"({', '.join(BUNDLED)}) and no such file"
            )
        text = path.read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ScenarioError("scenario must be a JSON object")

    name = doc.get("name", text_name)
    raw_evidences = doc.get("evidences")
    if not isinstance(raw_evidences, list) or not raw_evidences:
        raise ScenarioError("scenario needs a non-empty 'evidences' list")
    evidences = tuple(parse_record(e) for e in raw_evidences)
    if len(evidences) % 2 != 0:
        raise ScenarioError(
            f"comparison scenarios pair up evidences; got an odd count ({len(evidences)})"
        )

    raw_rules = doc.get("rules")
    if not isinstance(raw_rules, list) or not raw_rules:
        raise ScenarioError("scenario needs a non-empty 'rules' list")
    rules = tuple(str(r).upper() for r in raw_rules)
    for r in rules:
        if r not in RULES:
            raise ScenarioError(f"unknown rule {r!r} in scenario")

    dep, warnings = _parse_dep(doc.get("dep"))
    if RULE_MTP in rules and dep is None:
        raise ScenarioError("scenario runs MTP but gives no 'dep'")

    expected: list[Expectation] = []
    raw_expected = doc.get("expected", [])
    if not isinstance(raw_expected, list):
        raise ScenarioError("'expected' must be a list")
    n_pairs = len(evidences) // 2
    for item in raw_expected:
        if not isinstance(item, dict):
            raise ScenarioError(f"expected entry must be an object, got {item!r}")
        try:
            exp = Expectation(
                pair=int(item["pair"]),
                rule=str(item["rule"]).upper(),
                lower=float(item["lower"]),
                upper=float(item["upper"]),
                tol=float(item.get("tol", DEFAULT_EXPECTATION_TOL)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ScenarioError(f"bad expected entry {item!r}: {exc}") from exc
        if not (0 <= exp.pair < n_pairs):
            raise ScenarioError(f"expected entry points at pair {exp.pair}, but there are {n_pairs}")
        if exp.rule not in rules:
            raise ScenarioError(f"expected entry for rule {exp.rule!r} not run by the scenario")
        expected.append(exp)

    return ScenarioFile(
        name=str(name),
        evidences=evidences,
        rules=rules,
        dep=dep,
        expected=tuple(expected),
        warnings=tuple(warnings),
    )


def compare_scenario(
    scenario: ScenarioFile, *, width_floor: float = WIDTH_FLOOR
) -> list[dict]:
    """One row per evidence pair, one cell per rule.

    Each cell holds the combined interval and, when the scenario lists an
    expectation for it, a boolean ``pass`` graded per endpoint at the
    expectation's tolerance."""
    wanted = {(exp.pair, exp.rule): exp for exp in scenario.expected}
    rows = []
    for idx, (rec1, rec2) in enumerate(scenario.pairs()):
        cells = {}
        for rule in scenario.rules:
            if rule == RULE_TP:
                report = combine_tp(rec1.interval, rec2.interval, width_floor=width_floor)
            elif rule == RULE_MTP:
                report = combine_mtp(
                    rec1.interval, rec2.interval, scenario.dep, width_floor=width_floor
                )
            else:
                report = combine_ds(rec1.interval, rec2.interval)
            cell = {
                "lower": report.result.lower,
                "upper": report.result.upper,
                "conflict": report.conflict,
            }
            if rule == RULE_DS:
                cell["ds_conflict_mass"] = report.ds_conflict_mass
            if rule == RULE_MTP:
                cell["p_used"] = report.p_used
            exp = wanted.get((idx, rule))
            if exp is not None:
                cell["expected"] = {"lower": exp.lower, "upper": exp.upper, "tol": exp.tol}
                cell["pass"] = (
                    abs(report.result.lower - exp.lower) <= exp.tol
                    and abs(report.result.upper - exp.upper) <= exp.tol
                )
            cells[rule] = cell
        rows.append(
            {
                "pair": idx,
                "evidences": [
                    {"lower": rec1.interval.lower, "upper": rec1.interval.upper, "source": rec1.source},
                    {"lower": rec2.interval.lower, "upper": rec2.interval.upper, "source": rec2.source},
                ],
                "cells": cells,
            }
        )
    return rows
