"""
Report models shared by validators, auditors and the CLI.

These are pydantic models so that JSON output and its schema come from one
definition.
"""

import math
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

Status = Literal["pass", "fail", "skip", "finding"]
Provenance = Literal["PAPER", "TRIVIAL", "DERIVED"]


class AuditEntry(BaseModel):
    """
    One named residual.

    Attributes:
        name: Identity being checked
        anchor: Display the identity comes from
        max_residual: Largest deviation over samples, None when not applicable
        tol: Threshold for pass/fail
        status: pass, fail, skip or finding (recorded without gating)
        provenance: PAPER, TRIVIAL or DERIVED
        value: Derived scalar carried by the entry (A, B, K, lambda, ...)
        note: Free-form remark
    """
    name: str
    anchor: str = ""
    max_residual: Optional[float] = None
    tol: Optional[float] = None
    status: Status
    provenance: Provenance = "DERIVED"
    value: Optional[float] = None
    note: str = ""

    @classmethod
    def check(cls, name: str, residual: float, tol: float, anchor: str = "",
              provenance: Provenance = "PAPER", value: Optional[float] = None,
              note: str = "") -> "AuditEntry":
        """Entry that passes when residual < tol; NaN fails."""
        ok = not math.isnan(residual) and residual < tol
        return cls(name=name, anchor=anchor, max_residual=float(residual), tol=tol,
                   status="pass" if ok else "fail", provenance=provenance,
                   value=value, note=note)

    @classmethod
    def lower_bound(cls, name: str, value: float, tol: float, anchor: str = "",
                    provenance: Provenance = "PAPER", note: str = "") -> "AuditEntry":
        """Entry that passes when value > tol (non-vanishing conditions)."""
        ok = not math.isnan(value) and value > tol
        return cls(name=name, anchor=anchor, tol=tol, status="pass" if ok else "fail",
                   provenance=provenance, value=float(value), note=note)

    @classmethod
    def finding(cls, name: str, residual: Optional[float], anchor: str = "",
                provenance: Provenance = "DERIVED", value: Optional[float] = None,
                tol: Optional[float] = None, note: str = "") -> "AuditEntry":
        """Recorded result that never gates the exit code."""
        return cls(name=name, anchor=anchor,
                   max_residual=None if residual is None else float(residual),
                   tol=tol, status="finding", provenance=provenance, value=value, note=note)

    @classmethod
    def skipped(cls, name: str, note: str, anchor: str = "",
                provenance: Provenance = "PAPER", value: Optional[float] = None,
                residual: Optional[float] = None) -> "AuditEntry":
        return cls(name=name, anchor=anchor, status="skip", provenance=provenance,
                   note=note, value=value,
                   max_residual=None if residual is None else float(residual))

    @property
    def failed(self) -> bool:
        return self.status == "fail"


class ReportMetadata(BaseModel):
    """What produced a report: manifold, command, seed and sample count."""
    manifold: str
    command: str = ""
    seed: int
    samples: int
    notes: List[str] = Field(default_factory=list)


class AuditReport(BaseModel):
    """
    Ordered list of entries plus metadata.

    Attributes:
        title: Heading used in rendered output
        gating: Whether failed entries make the CLI exit with status 1
        entries: Residual entries in evaluation order
        metadata: Provenance of the run
    """
    title: str
    gating: bool = True
    entries: List[AuditEntry] = Field(default_factory=list)
    metadata: Optional[ReportMetadata] = None

    def add(self, entry: AuditEntry) -> AuditEntry:
        self.entries.append(entry)
        return entry

    def extend(self, other: "AuditReport") -> None:
        self.entries.extend(other.entries)

    def entry(self, name: str) -> AuditEntry:
        for item in self.entries:
            if item.name == name:
                return item
        raise KeyError(name)

    def names(self) -> List[str]:
        return [item.name for item in self.entries]

    @property
    def failed_entries(self) -> List[AuditEntry]:
        return [item for item in self.entries if item.failed]

    @property
    def passed(self) -> bool:
        return not self.failed_entries


class FlatnessReport(BaseModel):
    """Largest orthonormal-frame component of a curvature tensor over samples."""
    tensor_name: str
    max_component: float
    samples: int
    tol: float
    is_flat: bool
    a: Optional[float] = None
    b: Optional[float] = None
    note: str = ""
    metadata: Optional[ReportMetadata] = None


class EinsteinReport(BaseModel):
    """Least-squares fit Ric = lambda g and its worst residual."""
    model_config = ConfigDict(populate_by_name=True)

    lambda_: float = Field(alias="lambda")
    max_residual: float
    scal: float
    is_einstein: bool
    samples: int
    tol: float
    metadata: Optional[ReportMetadata] = None


class CurvatureSummary(BaseModel):
    """Scalar, Ricci and sectional curvature over a point set."""
    points: int
    at: Optional[List[float]] = None
    scal_min: float
    scal_max: float
    ricci_eigenvalues_min: List[float]
    ricci_eigenvalues_max: List[float]
    sectional_min: float
    sectional_max: float
    planes: int
    metadata: Optional[ReportMetadata] = None


class ZooListing(BaseModel):
    name: str
    dim: int
    type: str
    summary: str = ""


class ExpectedListing(BaseModel):
    name: str
    value: str
    provenance: Provenance
    anchor: str = ""


class ZooDescription(BaseModel):
    """Everything `cpc zoo show` prints about an entry."""
    name: str
    dim: int
    type: str
    summary: str
    coords: List[str]
    box: List[List[float]]
    fields: Dict[str, List[str]]
    expected: List[ExpectedListing]
