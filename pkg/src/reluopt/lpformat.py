"""Mixed-integer model container and LP file format serialization.

The written files follow the industry LP format subset documented in the
README: Maximize/Minimize, Subject To, Bounds, Binary, End. Infinite bounds
use the tokens -infinity / +infinity; variables absent from Bounds default
to [0, +infinity).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .errors import ParseError
from .problems import Relation


@dataclass(frozen=True)
class MilpVar:
    name: str
    lower: float
    upper: float
    binary: bool = False


@dataclass(frozen=True)
class MilpRow:
    name: str
    coeffs: dict[str, float]
    relation: Relation
    rhs: float


@dataclass(frozen=True)
class MilpModel:
    variables: tuple[MilpVar, ...]
    rows: tuple[MilpRow, ...]
    objective: dict[str, float]
    maximize: bool = True

    def var(self, name: str) -> MilpVar:
        return next(v for v in self.variables if v.name == name)

    def binaries(self) -> list[str]:
        return [v.name for v in self.variables if v.binary]

    def row_satisfied(self, row: MilpRow, values: dict[str, float], tol: float) -> bool:
        lhs = sum(c * values[name] for name, c in row.coeffs.items())
        if row.relation is Relation.LE:
            return lhs <= row.rhs + tol
        if row.relation is Relation.GE:
            return lhs >= row.rhs - tol
        return abs(lhs - row.rhs) <= tol

    def feasible(self, values: dict[str, float], tol: float = 1e-9) -> bool:
        for v in self.variables:
            val = values[v.name]
            if val < v.lower - tol or val > v.upper + tol:
                return False
        return all(self.row_satisfied(r, values, tol) for r in self.rows)


def _fmt_terms(coeffs: dict[str, float]) -> str:
    parts = []
    for name, c in coeffs.items():
        if c == 0.0:
            continue
        sign = "-" if c < 0 else "+"
        parts.append(f"{sign} {abs(c):.17g} {name}")
    if not parts:
        return "0 " + next(iter(coeffs), "x0")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else text


def _fmt_bound(v: float) -> str:
    if v == np.inf:
        return "+infinity"
    if v == -np.inf:
        return "-infinity"
    return f"{v:.17g}"


def write_lp_text(model: MilpModel) -> str:
    lines = ["Maximize" if model.maximize else "Minimize"]
    lines.append(f" obj: {_fmt_terms(model.objective)}")
    lines.append("Subject To")
    for row in model.rows:
        lines.append(f" {row.name}: {_fmt_terms(row.coeffs)} {row.relation.value} {row.rhs:.17g}")
    lines.append("Bounds")
    for v in model.variables:
        if v.binary:
            continue
        lines.append(f" {_fmt_bound(v.lower)} <= {v.name} <= {_fmt_bound(v.upper)}")
    binaries = model.binaries()
    if binaries:
        lines.append("Binary")
        for name in binaries:
            lines.append(f" {name}")
    lines.append("End")
    return "\n".join(lines) + "\n"


_TERM_RE = re.compile(r"([+-]?)\s*(\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)?\s*([A-Za-z_][\w]*)")
_SECTION_NAMES = {"maximize", "minimize", "subject to", "bounds", "binary", "end"}


def _parse_terms(lineno: int, text: str) -> dict[str, float]:
    coeffs: dict[str, float] = {}
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if m is None:
            raise ParseError(lineno, f"cannot parse term at: {text[pos:]!r}")
        sign, coef, name = m.groups()
        value = float(coef) if coef else 1.0
        if sign == "-":
            value = -value
        coeffs[name] = coeffs.get(name, 0.0) + value
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return coeffs


def _parse_value(lineno: int, token: str) -> float:
    token = token.strip().lower()
    if token in ("+infinity", "infinity", "inf", "+inf"):
        return np.inf
    if token in ("-infinity", "-inf"):
        return -np.inf
    try:
        return float(token)
    except ValueError:
        raise ParseError(lineno, f"bad numeric bound {token!r}") from None


def parse_lp_text(text: str) -> MilpModel:
    """Parse the LP format subset produced by write_lp_text."""
    maximize = True
    objective: dict[str, float] = {}
    rows: list[MilpRow] = []
    bounds: dict[str, tuple[float, float]] = {}
    binaries: list[str] = []
    order: list[str] = []

    def note_vars(coeffs):
        for name in coeffs:
            if name not in order:
                order.append(name)

    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("\\"):
            continue
        lowered = line.lower()
        if lowered in _SECTION_NAMES:
            section = lowered
            continue
        if section in ("maximize", "minimize"):
            maximize = section == "maximize"
            body = line.split(":", 1)[1] if ":" in line else line
            objective.update(_parse_terms(lineno, body))
            note_vars(objective)
        elif section == "subject to":
            name, _, body = line.partition(":")
            if not body:
                raise ParseError(lineno, "constraint must be 'name: terms rel rhs'")
            m = re.search(r"(<=|>=|=)\s*([^<>=]+)$", body)
            if m is None:
                raise ParseError(lineno, "constraint missing relation")
            relation = Relation(m.group(1))
            rhs = _parse_value(lineno, m.group(2))
            coeffs = _parse_terms(lineno, body[: m.start()])
            note_vars(coeffs)
            rows.append(MilpRow(name.strip(), coeffs, relation, rhs))
        elif section == "bounds":
            m = re.match(r"^(\S+)\s*<=\s*([A-Za-z_][\w]*)\s*<=\s*(\S+)$", line)
            if m is None:
                raise ParseError(lineno, f"cannot parse bound line: {line!r}")
            lo = _parse_value(lineno, m.group(1))
            hi = _parse_value(lineno, m.group(3))
            name = m.group(2)
            bounds[name] = (lo, hi)
            if name not in order:
                order.append(name)
        elif section == "binary":
            binaries.append(line)
            if line not in order:
                order.append(line)
        else:
            raise ParseError(lineno, f"content outside any section: {line!r}")

    variables = []
    for name in order:
        if name in binaries:
            variables.append(MilpVar(name, 0.0, 1.0, binary=True))
        else:
            lo, hi = bounds.get(name, (0.0, np.inf))
            variables.append(MilpVar(name, lo, hi))
    return MilpModel(tuple(variables), tuple(rows), objective, maximize)
