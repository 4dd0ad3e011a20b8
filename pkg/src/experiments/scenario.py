"""
Scenario files: the potential grammar plus ``key = value`` lines
"""
import logging
import os
import re
from typing import List, Optional

from pydantic import BaseModel, Field, field_validator

from src.exceptions import ScenarioError
from src.potential import PiecewisePotential, parse_lines

logger = logging.getLogger(__name__)

CHECKS = ("ratio", "predict", "fit", "kms", "eigs-invariance", "em", "ms")
FORMATS = ("csv", "json")
SCENARIO_KEYS = ("epsilon", "n", "checks", "output", "format", "phi", "eps_compare", "workers", "name")

_KEY_LINE = re.compile(r"^\s*([A-Za-z_][A-Za-z_-]*)\s*=\s*(.*?)\s*$")
_RANGE = re.compile(r"^(\d+)\s*\.\.\s*(\d+)(?:\s+step\s+(\d+))?$")


def parse_n_set(text: str) -> List[int]:
    """
    Parse ``10..200``, ``10..3000 step 23`` or ``1, 2, 5`` into sorted sizes

    Args:
        text: n-set expression

    Returns:
        Sorted distinct n values, all >= 1
    """
    text = text.strip()
    match = _RANGE.match(text)
    if match:
        lo, hi = int(match.group(1)), int(match.group(2))
        step = int(match.group(3) or 1)
        if step < 1:
            raise ScenarioError(f"stride must be at least 1, got {step}")
        if lo < 1 or hi < lo:
            raise ScenarioError(f"bad n range {lo}..{hi}")
        return list(range(lo, hi + 1, step))
    try:
        values = sorted({int(v) for v in text.split(",") if v.strip()})
    except ValueError:
        raise ScenarioError(f"cannot read n set {text!r}")
    if not values:
        raise ScenarioError("n set is empty")
    if values[0] < 1:
        raise ScenarioError(f"n must be positive, got {values[0]}")
    return values


class Scenario(BaseModel):
    """One experiment: a potential, a grid of sizes and the checks to run"""
    name: str = Field(default="scenario", description="Label used in reports")
    source: str = Field(..., description="Potential source (key lines blanked, numbering kept)")
    epsilon: float = Field(default=1.0, description="Index shift")
    n_values: List[int] = Field(default_factory=lambda: list(range(10, 201)), description="Matrix sizes")
    checks: List[str] = Field(default_factory=lambda: ["ratio"], description="Checks to run")
    output: Optional[str] = Field(default=None, description="Sweep output path")
    format: str = Field(default="csv", description="csv or json")
    phi: str = Field(default="2", description="Test function for the trace check")
    eps_compare: float = Field(default=0.0, description="Second shift for the spectrum invariance check")
    workers: Optional[int] = Field(default=None, description="Sweep worker processes")

    @field_validator("n_values")
    @classmethod
    def _check_n(cls, v: List[int]) -> List[int]:
        if not v or min(v) < 1:
            raise ValueError("n set must be nonempty with every n >= 1")
        return sorted(set(v))

    @field_validator("checks")
    @classmethod
    def _check_checks(cls, v: List[str]) -> List[str]:
        unknown = [c for c in v if c not in CHECKS]
        if unknown:
            raise ValueError(f"unknown checks {unknown}; choose from {', '.join(CHECKS)}")
        return v

    @field_validator("format")
    @classmethod
    def _check_format(cls, v: str) -> str:
        if v not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")
        return v

    def potential(self) -> PiecewisePotential:
        """Parse the embedded potential; errors keep the scenario's line numbers"""
        return parse_lines(enumerate(self.source.splitlines(), start=1), source=self.source)


def parse_scenario(text: str, name: str = "scenario") -> Scenario:
    """
    Split a scenario file into settings and potential source

    Key lines are replaced by blank lines so the potential parser reports the
    original line numbers.
    """
    values = {"name": name}
    seen = set()
    kept = []
    for number, line in enumerate(text.splitlines(), start=1):
        match = _KEY_LINE.match(line.split("#", 1)[0])
        if not match:
            kept.append(line)
            continue
        key, raw = match.group(1).replace("-", "_"), match.group(2)
        if key not in SCENARIO_KEYS:
            raise ScenarioError(f"line {number}: unknown key {match.group(1)!r}")
        if key in seen:
            raise ScenarioError(f"line {number}: duplicate key {key!r}")
        seen.add(key)
        kept.append("")
        try:
            if key in ("epsilon", "eps_compare"):
                values[key] = float(raw)
            elif key == "workers":
                values[key] = int(raw)
            elif key == "n":
                values["n_values"] = parse_n_set(raw)
            elif key == "checks":
                values[key] = [c.strip() for c in raw.split(",") if c.strip()]
            else:
                values[key] = raw
        except ValueError as e:
            raise ScenarioError(f"line {number}: bad value for {key!r}: {e}")
    values["source"] = "\n".join(kept) + "\n"
    try:
        scenario = Scenario(**values)
    except ValueError as e:
        raise ScenarioError(str(e))
    logger.debug(f"Scenario {scenario.name}: {len(scenario.n_values)} sizes, checks {scenario.checks}")
    return scenario


def load_scenario(path: str) -> Scenario:
    """Read a scenario file from disk"""
    with open(path, "r") as f:
        text = f.read()
    name = os.path.splitext(os.path.basename(path))[0]
    return parse_scenario(text, name=name)
