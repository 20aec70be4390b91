"""Groebner basis engine over Q and F_p."""
from .poly import GF, QQ, block_order, grevlex, lex
from .buchberger import eliminate, groebner, normal_form, saturate_by_variables

__all__ = ["GF", "QQ", "block_order", "grevlex", "lex", "eliminate", "groebner",
           "normal_form", "saturate_by_variables"]
