"""
Manifold spec files: loading from disk or text, and exporting back to text.
"""

from .spec_file import export_spec_text, load_spec_file, parse_spec_text

__all__ = ['export_spec_text', 'load_spec_file', 'parse_spec_text']
