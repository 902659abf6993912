"""
JSON rendering of report models.

Output is indented and key order follows the model definitions, so equal
reports serialize to identical bytes. The schema bundle shipped in
docs/report_schema.json covers every report the CLI prints with --json.
"""

import json
import logging
from typing import List, Optional

from pydantic import BaseModel, TypeAdapter
from pydantic.json_schema import models_json_schema

from Data_Classes.reports import (
    AuditReport,
    CurvatureSummary,
    EinsteinReport,
    FlatnessReport,
    ZooDescription,
    ZooListing,
)

logger = logging.getLogger(__name__)

_LISTING = TypeAdapter(List[ZooListing])

SCHEMA_MODELS = (AuditReport, FlatnessReport, EinsteinReport, CurvatureSummary, ZooListing, ZooDescription)

# --json output of each command, by model name
COMMAND_MODELS = {
    "verify": "AuditReport",
    "audit": "AuditReport",
    "flatness": "FlatnessReport",
    "einstein": "EinsteinReport",
    "curvature": "CurvatureSummary",
    "zoo show": "ZooDescription",
}


def to_json(report) -> str:
    """Serialize a report model, or a list of zoo listings, with a trailing newline."""
    if isinstance(report, BaseModel):
        return report.model_dump_json(indent=2, by_alias=True) + "\n"
    if isinstance(report, list):
        return _LISTING.dump_json(report, indent=2).decode("utf-8") + "\n"
    raise TypeError(f"cannot serialize {type(report).__name__}")


def report_schema() -> dict:
    """
    One schema document for all report models.

    Model schemas sit under "$defs"; "commands" maps each command to the
    schema its --json output satisfies ("zoo list" prints an array).
    """
    _, bundle = models_json_schema([(model, "validation") for model in SCHEMA_MODELS], title="cpc reports")
    commands = {command: {"$ref": f"#/$defs/{model}"} for command, model in COMMAND_MODELS.items()}
    commands["zoo list"] = {"items": {"$ref": "#/$defs/ZooListing"}, "type": "array"}
    return {**bundle, "commands": commands}


def command_schema(command: str, schema: Optional[dict] = None) -> dict:
    """
    Standalone schema for one command's --json output.

    Raises:
        KeyError: If the command prints no JSON report
    """
    schema = report_schema() if schema is None else schema
    return {"$defs": schema["$defs"], **schema["commands"][command]}


def report_schema_text() -> str:
    """The schema bundle as shipped in docs/report_schema.json."""
    return json.dumps(report_schema(), indent=2) + "\n"
