"""
Rendering of report models: markdown, HTML through the markdown package, and JSON.
"""

from .report_json import command_schema, report_schema, report_schema_text, to_json
from .report_markdown import ReportMarkdown, fmt

__all__ = ['ReportMarkdown', 'command_schema', 'fmt', 'report_schema', 'report_schema_text', 'to_json']
