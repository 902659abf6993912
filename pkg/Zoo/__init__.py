"""
Built-in manifolds and the Hermitian contact pair construction.
"""

from .builtins import BUILTIN_NAMES, builtin, list_entries
from .hermitian_pair import hermitian_pair_build, hopf_pair_input
from .rescaling import conformally_rescaled

__all__ = [
    'BUILTIN_NAMES', 'builtin', 'conformally_rescaled', 'hermitian_pair_build',
    'hopf_pair_input', 'list_entries',
]
