"""
Command functions behind the cpc entry point.

Every cmd_* function returns a CommandResult and prints nothing; main.py
renders the result (markdown, JSON or HTML) and exits with its code.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

from Contact_Pair import run_structure_suite, validate_chart
from Curvature_Tensors import (
    TENSORS,
    audit_identities,
    audit_theorem_concircular,
    audit_theorem_conformal,
    audit_theorem_quasiconformal,
    curvature_summary,
    einstein_check,
    flatness,
)
from Curvature_Tensors.tensors import TOL_FLAT, pair_type
from Data_Classes.classes import ContactPairStructure, QuasiConformalParams, Target, manifold_of
from Data_Classes.errors import DimensionMismatchError, MissingParamsError, StructureError
from Data_Classes.reports import (
    AuditReport,
    ExpectedListing,
    ReportMetadata,
    ZooDescription,
    ZooListing,
)
from Data_Retrieval.spec_file import export_spec_text, load_spec_file
from Output_Generation.report_json import report_schema_text, to_json
from Output_Generation.report_markdown import ReportMarkdown, fmt
from Zoo import builtin, conformally_rescaled, list_entries

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

ZOO_PREFIX = "zoo:"
THEOREMS = ("identities", "conformal", "concircular", "quasiconformal")


@dataclass
class RunOptions:
    """
    Sampling options shared by the commands.

    Attributes:
        samples (int): Sample points per check
        seed (int): Sampler seed
        workers (int): Worker threads
    """
    samples: int = 100
    seed: int = 42
    workers: int = 1


@dataclass
class CommandResult:
    """
    What a command produced.

    Attributes:
        report: Model to render, or a list of zoo listings
        text: Output that is already final (spec export, schema)
        exit_code (int): 0 pass, 1 failed checks, 2 usage or load error
    """
    report: object = None
    text: Optional[str] = None
    exit_code: int = EXIT_OK

    def render(self, as_json: bool = False) -> str:
        if self.text is not None:
            return self.text
        if as_json:
            return to_json(self.report)
        return ReportMarkdown(self.report).generate()


def load_target(source: str) -> Target:
    """
    Resolve "zoo:NAME" to a builtin, anything else to a spec file path.

    Raises:
        UnknownZooEntryError: For an unknown builtin name
        SpecFileError: When the file cannot be read or parsed
    """
    if source.startswith(ZOO_PREFIX):
        entry = builtin(source[len(ZOO_PREFIX):])
        return entry.structure if entry.structure is not None else entry.manifold
    return load_spec_file(source)


def _metadata(target: Target, command: str, options: RunOptions,
              notes: Sequence[str] = ()) -> ReportMetadata:
    return ReportMetadata(
        manifold=manifold_of(target).name,
        command=f"{command} --samples {options.samples} --seed {options.seed}",
        seed=options.seed,
        samples=options.samples,
        notes=list(notes),
    )


def _quasi_params(target: Target, a: Optional[float], b: Optional[float]):
    """Explicit (a, b), or the conformal defaults with a note saying so."""
    if a is None and b is None:
        p, q = pair_type(target)
        m = 2.0 * p + 2.0 * q
        if m <= 0:
            raise DimensionMismatchError("default quasi-conformal parameters need dimension at least 3")
        params = QuasiConformalParams.default_for(m)
        return params, f"a, b not given: defaults (1, -1/(2p+2q)) = ({fmt(params.a)}, {fmt(params.b)}) used"
    if a is None or b is None:
        raise MissingParamsError("--a and --b must be given together")
    return QuasiConformalParams(a, b), ""


def parse_point(text: str) -> List[float]:
    """
    Parse "--at" coordinates.

    Raises:
        ValueError: If a coordinate is not a number
    """
    try:
        return [float(part) for part in text.split(",")]
    except ValueError:
        raise ValueError(f"--at expects comma-separated numbers, got '{text}'")


def cmd_zoo_list() -> CommandResult:
    listing = [
        ZooListing(name=entry.name, dim=entry.manifold.dim, type=entry.type_label, summary=entry.summary)
        for entry in list_entries()
    ]
    return CommandResult(report=listing)


def cmd_zoo_show(name: str) -> CommandResult:
    """Chart, fields, structure type and expected values of one builtin."""
    entry = builtin(name)
    M = entry.manifold
    expected = [
        ExpectedListing(
            name=item.name,
            value=item.value if isinstance(item.value, str) else fmt(item.value),
            provenance=item.provenance,
            anchor=item.anchor,
        )
        for item in entry.expected
    ]
    description = ZooDescription(
        name=entry.name,
        dim=M.dim,
        type=entry.type_label,
        summary=entry.summary,
        coords=list(M.coord_names),
        box=[[float(low), float(high)] for low, high in M.sample_box],
        fields={
            "forms": list(M.forms),
            "vectors": list(M.vectors),
            "endomorphisms": list(M.endos),
        },
        expected=expected,
    )
    return CommandResult(report=description)


def cmd_zoo_export(name: str) -> CommandResult:
    entry = builtin(name)
    target = entry.structure if entry.structure is not None else entry.manifold
    return CommandResult(text=export_spec_text(target))


def cmd_verify(target: Target, options: RunOptions) -> CommandResult:
    """
    Chart checks, then the full contact pair suite when the target has one.

    Returns:
        CommandResult: Exit code 1 when any check fails
    """
    M = manifold_of(target)
    logger.info(f"🔍 Verifying {M.name}")
    report = AuditReport(title=f"Verification of {M.name}")
    report.extend(validate_chart(M, samples=options.samples, seed=options.seed, workers=options.workers))
    notes = []
    if isinstance(target, ContactPairStructure):
        report.extend(run_structure_suite(target, samples=options.samples, seed=options.seed,
                                          workers=options.workers))
    else:
        notes.append("no [pair] section: contact pair structure checks skipped")
        logger.warning(f"⚠️ {M.name} has no contact pair; only chart checks were run")
    report.metadata = _metadata(target, "verify", options, notes)
    exit_code = EXIT_OK if report.passed else EXIT_FAILED
    if exit_code != EXIT_OK:
        logger.warning(f"⚠️ {len(report.failed_entries)} check(s) failed on {M.name}")
    return CommandResult(report=report, exit_code=exit_code)


def cmd_curvature(target: Target, options: RunOptions, at: Optional[str] = None,
                  conformal_factor: Optional[str] = None) -> CommandResult:
    """Scalar curvature, Ricci eigenvalues and sectional range, optionally at one point."""
    command = "curvature"
    if conformal_factor is not None:
        target = conformally_rescaled(target, conformal_factor)
        command += f" --conformal-factor '{conformal_factor}'"
    point = None
    if at is not None:
        point = parse_point(at)
        command += f" --at {at}"
    summary = curvature_summary(target, samples=options.samples, seed=options.seed,
                                at=point, workers=options.workers)
    summary.metadata = _metadata(target, command, options)
    return CommandResult(report=summary)


def cmd_flatness(target: Target, options: RunOptions, tensor: str, a: Optional[float] = None,
                 b: Optional[float] = None, tol: float = TOL_FLAT) -> CommandResult:
    """
    Flatness of one curvature tensor. A non-flat result is a measurement, not
    a failure, so the exit code stays 0.
    """
    if tensor not in TENSORS:
        raise ValueError(f"--tensor must be one of {', '.join(TENSORS)}, got '{tensor}'")
    params, note = None, ""
    if tensor == "quasi":
        params, note = _quasi_params(target, a, b)
    elif a is not None or b is not None:
        logger.warning(f"⚠️ --a and --b only apply to --tensor quasi; ignored for {tensor}")
    report = flatness(target, tensor, params=params, samples=options.samples, tol=tol,
                      seed=options.seed, workers=options.workers)
    report.note = note
    notes = [note] if note else []
    report.metadata = _metadata(target, f"flatness --tensor {tensor}", options, notes)
    return CommandResult(report=report)


def cmd_einstein(target: Target, options: RunOptions) -> CommandResult:
    report = einstein_check(target, samples=options.samples, seed=options.seed, workers=options.workers)
    report.metadata = _metadata(target, "einstein", options)
    return CommandResult(report=report)


def cmd_audit(target: Target, options: RunOptions, theorem: str, a: Optional[float] = None,
              b: Optional[float] = None) -> CommandResult:
    """
    Dispatch to the identity suite or a theorem auditor.

    Only the identity suite gates the exit code; theorem auditors report
    disagreements as findings and exit 0.

    Raises:
        StructureError: If the identity suite is asked for on a target without a contact pair
    """
    kwargs = dict(samples=options.samples, seed=options.seed, workers=options.workers)
    notes = []
    if theorem == "identities":
        if not isinstance(target, ContactPairStructure):
            raise StructureError(f"{manifold_of(target).name} has no [pair] section; identities need a contact pair")
        report = audit_identities(target, **kwargs)
    elif theorem == "conformal":
        report = audit_theorem_conformal(target, **kwargs)
    elif theorem == "concircular":
        report = audit_theorem_concircular(target, **kwargs)
    elif theorem == "quasiconformal":
        params, note = _quasi_params(target, a, b)
        if note:
            notes.append(note)
        report = audit_theorem_quasiconformal(target, params=params, **kwargs)
    else:
        raise ValueError(f"--theorem must be one of {', '.join(THEOREMS)}, got '{theorem}'")
    report.metadata = _metadata(target, f"audit --theorem {theorem}", options, notes)
    exit_code = EXIT_FAILED if report.gating and not report.passed else EXIT_OK
    return CommandResult(report=report, exit_code=exit_code)


def cmd_schema() -> CommandResult:
    return CommandResult(text=report_schema_text())
