"""
Loader and exporter for manifold spec files.

A spec file is line-oriented INI-like text:

    [manifold]          name = ..., dim = N
    [coords]            names = a, b, c
    [box]               i = lo, hi
    [metric]            i j = <expr>   (upper triangle, diagonal required)
    [form NAME]         i = <expr>
    [vector NAME]       i = <expr>
    [endo NAME]         i j = <expr>
    [pair]              alpha1, alpha2, Z1, Z2, phi, p, q

'#' starts a comment. Components that are not listed are zero.
"""

import logging
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from Data_Classes.classes import (
    ChartedManifold,
    ContactPairStructure,
    MatrixExprs,
    Target,
    VectorExprs,
    manifold_of,
)
from Data_Classes.errors import CpcError, ExprError, SpecFileError
from Expression_Engine import expr_ast as ex
from Expression_Engine.expr_parser import parse
from Expression_Engine.jets import eval_jet2

logger = logging.getLogger(__name__)

_SECTION = re.compile(r"^\[\s*([A-Za-z_]+)(?:\s+([A-Za-z_][A-Za-z0-9_]*))?\s*\]$")
NAMED_SECTIONS = ("form", "vector", "endo")
PLAIN_SECTIONS = ("manifold", "coords", "box", "metric", "pair")
PAIR_KEYS = ("alpha1", "alpha2", "Z1", "Z2", "phi", "p", "q")


@dataclass
class _Section:
    kind: str
    name: Optional[str]
    line: int
    entries: List[Tuple[int, str, str]] = field(default_factory=list)


class _SpecReader:
    """Two passes: split into sections, then build the manifold once dim is known."""

    def __init__(self, text: str, source: str):
        self.text = text
        self.source = source
        self.sections: List[_Section] = []
        self.dim = 0

    def error(self, line: Optional[int], message: str) -> SpecFileError:
        return SpecFileError(self.source, line, message)

    def split(self) -> None:
        current: Optional[_Section] = None
        seen = set()
        for number, raw in enumerate(self.text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            header = _SECTION.match(line)
            if header:
                kind, name = header.group(1), header.group(2)
                if kind in NAMED_SECTIONS and name is None:
                    raise self.error(number, f"section [{kind}] needs a field name")
                if kind in PLAIN_SECTIONS and name is not None:
                    raise self.error(number, f"section [{kind}] takes no name")
                if kind not in NAMED_SECTIONS and kind not in PLAIN_SECTIONS:
                    raise self.error(number, f"unknown section [{kind}]")
                key = (kind, name)
                if key in seen:
                    raise self.error(number, f"duplicate section [{kind}{' ' + name if name else ''}]")
                seen.add(key)
                current = _Section(kind, name, number)
                self.sections.append(current)
                continue
            if current is None:
                raise self.error(number, "entry outside of any section")
            if "=" not in line:
                raise self.error(number, "expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            if not key or not value:
                raise self.error(number, "expected 'key = value'")
            current.entries.append((number, key, value))

    def section(self, kind: str) -> Optional[_Section]:
        for item in self.sections:
            if item.kind == kind:
                return item
        return None

    def expression(self, number: int, text: str) -> ex.Expr:
        try:
            return parse(text, self.dim)
        except ExprError as e:
            raise self.error(number, str(e)) from e

    def constant(self, number: int, text: str) -> float:
        value = self.expression(number, text)
        if ex.max_variable_index(value) >= 0:
            raise self.error(number, f"'{text}' must not depend on coordinates")
        try:
            return float(eval_jet2(value, np.zeros(self.dim)).value)
        except CpcError as e:
            raise self.error(number, str(e)) from e

    def index(self, number: int, text: str) -> int:
        if not re.fullmatch(r"\d+", text):
            raise self.error(number, f"'{text}' is not a component index")
        value = int(text)
        if value >= self.dim:
            raise self.error(number, f"index {value} out of range for dimension {self.dim}")
        return value

    def indices(self, number: int, key: str, count: int) -> Tuple[int, ...]:
        parts = key.split()
        if len(parts) != count:
            raise self.error(number, f"expected {count} index(es), got '{key}'")
        return tuple(self.index(number, part) for part in parts)

    def header(self) -> Tuple[str, int]:
        section = self.section("manifold")
        if section is None:
            raise self.error(None, "missing [manifold] section")
        values = {key: (number, value) for number, key, value in section.entries}
        if "dim" not in values:
            raise self.error(section.line, "[manifold] needs 'dim'")
        number, raw = values["dim"]
        if not re.fullmatch(r"\d+", raw) or int(raw) < 1:
            raise self.error(number, f"dim must be a positive integer, got '{raw}'")
        name = values.get("name", (section.line, "unnamed"))[1]
        return name, int(raw)

    def coords(self) -> Tuple[str, ...]:
        section = self.section("coords")
        if section is None:
            return tuple(f"x{i}" for i in range(self.dim))
        for number, key, value in section.entries:
            if key != "names":
                raise self.error(number, f"unknown key '{key}' in [coords]")
            names = tuple(part.strip() for part in value.split(","))
            if len(names) != self.dim:
                raise self.error(number, f"expected {self.dim} coordinate names, got {len(names)}")
            return names
        raise self.error(section.line, "[coords] needs 'names'")

    def box(self) -> Tuple[Tuple[float, float], ...]:
        section = self.section("box")
        if section is None:
            raise self.error(None, "missing [box] section")
        intervals: Dict[int, Tuple[float, float]] = {}
        for number, key, value in section.entries:
            i = self.index(number, key)
            bounds = value.split(",")
            if len(bounds) != 2:
                raise self.error(number, "expected 'lo, hi'")
            low, high = (self.constant(number, bound.strip()) for bound in bounds)
            if not low <= high:
                raise self.error(number, f"empty interval [{low}, {high}]")
            intervals[i] = (low, high)
        for i in range(self.dim):
            if i not in intervals:
                raise self.error(section.line, f"no box interval for coordinate {i}")
        return tuple(intervals[i] for i in range(self.dim))

    def matrix(self, section: _Section, symmetric: bool) -> MatrixExprs:
        n = self.dim
        rows = [[ex.ZERO] * n for _ in range(n)]
        given = set()
        for number, key, value in section.entries:
            i, j = self.indices(number, key, 2)
            if symmetric and i > j:
                i, j = j, i
            if (i, j) in given:
                raise self.error(number, f"component {i} {j} given twice")
            given.add((i, j))
            rows[i][j] = self.expression(number, value)
            if symmetric:
                rows[j][i] = rows[i][j]
        if symmetric:
            for i in range(n):
                if (i, i) not in given:
                    raise self.error(section.line, f"metric diagonal entry {i} {i} missing")
        return tuple(tuple(row) for row in rows)

    def vector(self, section: _Section) -> VectorExprs:
        comps = [ex.ZERO] * self.dim
        given = set()
        for number, key, value in section.entries:
            (i,) = self.indices(number, key, 1)
            if i in given:
                raise self.error(number, f"component {i} given twice")
            given.add(i)
            comps[i] = self.expression(number, value)
        return tuple(comps)

    def pair(self, manifold: ChartedManifold) -> Optional[ContactPairStructure]:
        section = self.section("pair")
        if section is None:
            return None
        values = {}
        for number, key, value in section.entries:
            if key not in PAIR_KEYS:
                raise self.error(number, f"unknown key '{key}' in [pair]")
            values[key] = (number, value)
        missing = [key for key in PAIR_KEYS if key not in values]
        if missing:
            raise self.error(section.line, f"[pair] is missing {', '.join(missing)}")
        for key in ("p", "q"):
            number, raw = values[key]
            if not re.fullmatch(r"\d+", raw):
                raise self.error(number, f"{key} must be a non-negative integer, got '{raw}'")
        try:
            return ContactPairStructure(
                base=manifold,
                alpha1=values["alpha1"][1], alpha2=values["alpha2"][1],
                z1=values["Z1"][1], z2=values["Z2"][1], phi=values["phi"][1],
                p=int(values["p"][1]), q=int(values["q"][1]),
            )
        except CpcError as e:
            raise self.error(section.line, str(e)) from e

    def read(self) -> Target:
        self.split()
        name, self.dim = self.header()
        metric_section = self.section("metric")
        if metric_section is None:
            raise self.error(None, "missing [metric] section")
        fields: Dict[str, Dict[str, tuple]] = {kind: {} for kind in NAMED_SECTIONS}
        for item in self.sections:
            if item.kind in ("form", "vector"):
                fields[item.kind][item.name] = self.vector(item)
            elif item.kind == "endo":
                fields["endo"][item.name] = self.matrix(item, symmetric=False)
        try:
            manifold = ChartedManifold(
                name=name,
                dim=self.dim,
                coord_names=self.coords(),
                metric=self.matrix(metric_section, symmetric=True),
                sample_box=self.box(),
                vectors=fields["vector"],
                forms=fields["form"],
                endos=fields["endo"],
            )
        except SpecFileError:
            raise
        except CpcError as e:
            raise self.error(None, str(e)) from e
        return self.pair(manifold) or manifold


def parse_spec_text(text: str, source: str = "<text>") -> Target:
    """
    Build a manifold, or a contact pair when a [pair] section is present.

    Raises:
        SpecFileError: With the offending line number where one applies
    """
    target = _SpecReader(text, source).read()
    logger.debug(f"Loaded {manifold_of(target).name} from {source}")
    return target


def load_spec_file(path: str) -> Target:
    """Read and parse a spec file from disk."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as e:
        raise SpecFileError(path, None, f"cannot read file: {e.strerror or e}") from e
    return parse_spec_text(text, source=path)


def _bound(value: float) -> str:
    return repr(float(value))


def export_spec_text(target: Target) -> str:
    """
    Print a manifold (and its contact pair) in spec file form.

    Only nonzero components are written, except the metric diagonal. Parsing
    the result gives back an identical manifold.
    """
    M = manifold_of(target)
    n = M.dim
    lines = [f"# manifold spec for {M.name}", "[manifold]", f"name = {M.name}", f"dim = {n}", "",
             "[coords]", f"names = {', '.join(M.coord_names)}", "", "[box]"]
    lines += [f"{i} = {_bound(low)}, {_bound(high)}" for i, (low, high) in enumerate(M.sample_box)]
    lines += ["", "[metric]"]
    for i in range(n):
        for j in range(i, n):
            if i == j or not ex.is_zero(M.metric[i][j]):
                lines.append(f"{i} {j} = {ex.to_text(M.metric[i][j])}")
    for kind, table in (("form", M.forms), ("vector", M.vectors)):
        for name, comps in table.items():
            lines += ["", f"[{kind} {name}]"]
            lines += [f"{i} = {ex.to_text(c)}" for i, c in enumerate(comps) if not ex.is_zero(c)]
    for name, rows in M.endos.items():
        lines += ["", f"[endo {name}]"]
        lines += [f"{i} {j} = {ex.to_text(c)}" for i, row in enumerate(rows)
                  for j, c in enumerate(row) if not ex.is_zero(c)]
    if isinstance(target, ContactPairStructure):
        lines += ["", "[pair]", f"alpha1 = {target.alpha1}", f"alpha2 = {target.alpha2}",
                  f"Z1 = {target.z1}", f"Z2 = {target.z2}", f"phi = {target.phi}",
                  f"p = {target.p}", f"q = {target.q}"]
    return "\n".join(lines) + "\n"
