"""Vendor qubit roadmaps: dated milestones plus interpolation/extrapolation.

A roadmap is an immutable list of (year, qubit count) milestones. Between
milestones the count follows either the geometric segment joining them
(exponential mode, the default) or the straight line (linear mode).
Beyond the last milestone the final segment's growth rate continues;
before the first, the first segment's rate is extended backward.
"""

from __future__ import annotations

import bisect
import json
import math
from dataclasses import dataclass, replace
from pathlib import Path

EXTRAPOLATIONS = ("exponential", "linear")
QUBIT_KINDS = ("physical", "logical")

# Linear-mode backward extension can cross zero; clamp instead of going
# negative so downstream feasibility math sees "effectively no machine".
_MIN_QUBITS = 1e-9

# Guard against nonsense queries far before the roadmap starts.
_BACKWARD_QUERY_LIMIT = 50.0


class InvalidRoadmapError(ValueError):
    pass


class InvalidEditError(ValueError):
    pass


@dataclass(frozen=True)
class RoadmapPoint:
    year: float
    qubits: float
    source_note: str = ""


@dataclass(frozen=True)
class Roadmap:
    label: str
    points: tuple[RoadmapPoint, ...]
    extrapolation: str = "exponential"
    qubit_kind: str = "physical"

    def __post_init__(self):
        if len(self.points) < 2:
            raise InvalidRoadmapError("roadmap needs at least 2 points")
        if self.extrapolation not in EXTRAPOLATIONS:
            raise InvalidRoadmapError(f"extrapolation must be one of {EXTRAPOLATIONS}")
        if self.qubit_kind not in QUBIT_KINDS:
            raise InvalidRoadmapError(f"qubit_kind must be one of {QUBIT_KINDS}")
        years = [p.year for p in self.points]
        if any(b <= a for a, b in zip(years, years[1:])):
            raise InvalidRoadmapError("milestone years must be strictly increasing")
        if any(p.qubits <= 0 for p in self.points):
            raise InvalidRoadmapError("qubit counts must be strictly positive")

    @property
    def years(self) -> tuple[float, ...]:
        return tuple(p.year for p in self.points)

    def qubits_at(self, t: float) -> float:
        """Projected qubit count at year ``t``.

        Exact at milestone years; geometric or linear between and beyond
        them depending on the extrapolation mode.
        """
        pts = self.points
        if t < pts[0].year - _BACKWARD_QUERY_LIMIT:
            raise ValueError(
                f"year {t} is more than {_BACKWARD_QUERY_LIMIT:.0f} years before "
                f"the first milestone ({pts[0].year})"
            )
        years = self.years
        i = bisect.bisect_left(years, t)
        if i < len(pts) and pts[i].year == t:
            return pts[i].qubits
        # pick the segment whose rate governs t
        if i <= 0:
            a, b = pts[0], pts[1]
        elif i >= len(pts):
            a, b = pts[-2], pts[-1]
        else:
            a, b = pts[i - 1], pts[i]
        if self.extrapolation == "exponential":
            log_rate = (math.log(b.qubits) - math.log(a.qubits)) / (b.year - a.year)
            log_q = math.log(a.qubits) + log_rate * (t - a.year)
            # far-future queries on fast roadmaps overflow the linear scale
            return math.inf if log_q > 700.0 else math.exp(log_q)
        slope = (b.qubits - a.qubits) / (b.year - a.year)
        return max(a.qubits + slope * (t - a.year), _MIN_QUBITS)

    # --- edits (each returns a new roadmap) ---------------------------------

    def edit_point(self, index: int, year: float, qubits: float) -> "Roadmap":
        pts = list(self.points)
        try:
            pts[index] = replace(pts[index], year=year, qubits=qubits)
        except IndexError:
            raise InvalidEditError(f"no point at index {index}")
        return self._rebuilt(pts)

    def insert_point(self, year: float, qubits: float, source_note: str = "") -> "Roadmap":
        pts = list(self.points)
        pts.append(RoadmapPoint(year, qubits, source_note))
        pts.sort(key=lambda p: p.year)
        return self._rebuilt(pts)

    def remove_point(self, index: int) -> "Roadmap":
        pts = list(self.points)
        try:
            del pts[index]
        except IndexError:
            raise InvalidEditError(f"no point at index {index}")
        return self._rebuilt(pts)

    def _rebuilt(self, pts: list[RoadmapPoint]) -> "Roadmap":
        try:
            return replace(self, points=tuple(pts))
        except InvalidRoadmapError as exc:
            raise InvalidEditError(str(exc)) from exc

    # --- file form ----------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "qubit_kind": self.qubit_kind,
            "extrapolation": self.extrapolation,
            "points": [
                {"year": _as_number(p.year), "qubits": _as_number(p.qubits),
                 "source_note": p.source_note}
                for p in self.points
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Roadmap":
        try:
            points = tuple(
                RoadmapPoint(float(p["year"]), float(p["qubits"]),
                             str(p.get("source_note", "")))
                for p in data["points"]
            )
            return cls(
                label=str(data["label"]),
                points=points,
                extrapolation=str(data.get("extrapolation", "exponential")),
                qubit_kind=str(data.get("qubit_kind", "physical")),
            )
        except (KeyError, TypeError) as exc:
            raise InvalidRoadmapError(f"malformed roadmap document: {exc}") from exc


def _as_number(v: float):
    return int(v) if float(v).is_integer() and abs(v) < 1e15 else float(v)


def dumps(rm: Roadmap) -> str:
    """Canonical file form. load(dumps(rm)) round-trips bit-exactly."""
    return json.dumps(rm.to_dict(), indent=2) + "\n"


def loads(text: str) -> Roadmap:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidRoadmapError(f"not valid JSON: {exc}") from exc
    return Roadmap.from_dict(data)


def save(rm: Roadmap, path: str | Path) -> None:
    Path(path).write_text(dumps(rm), encoding="utf-8")


def load(path: str | Path) -> Roadmap:
    return loads(Path(path).read_text(encoding="utf-8"))
