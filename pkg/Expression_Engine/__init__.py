"""
Closed-form chart expressions: parsing, printing and second-order jets.
"""

from .expr_ast import Binary, Constant, Expr, Power, Unary, Variable, to_text
from .expr_parser import parse, tokenize
from .jets import Jet2, eval_components, eval_jet2

__all__ = [
    'Binary', 'Constant', 'Expr', 'Power', 'Unary', 'Variable', 'to_text',
    'parse', 'tokenize', 'Jet2', 'eval_components', 'eval_jet2',
]
