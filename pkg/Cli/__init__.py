"""
Configuration and command functions of the cpc command line.
"""

from .commands import (
    EXIT_FAILED,
    EXIT_OK,
    EXIT_USAGE,
    THEOREMS,
    CommandResult,
    RunOptions,
    cmd_audit,
    cmd_curvature,
    cmd_einstein,
    cmd_flatness,
    cmd_schema,
    cmd_verify,
    cmd_zoo_export,
    cmd_zoo_list,
    cmd_zoo_show,
    load_target,
)
from .cpc_config import CpcConfig

__all__ = [
    'EXIT_FAILED', 'EXIT_OK', 'EXIT_USAGE', 'THEOREMS', 'CommandResult', 'CpcConfig', 'RunOptions',
    'cmd_audit', 'cmd_curvature', 'cmd_einstein', 'cmd_flatness', 'cmd_schema', 'cmd_verify',
    'cmd_zoo_export', 'cmd_zoo_list', 'cmd_zoo_show', 'load_target',
]
