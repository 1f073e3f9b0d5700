# app/utils/__init__.py
"""
Módulo de utilidades para la aplicación.
"""

from app.utils.helpers import (
    FLOAT_FORMAT,
    parse_pairs,
    pair_label,
    generate_error_response,
)

__all__ = [
    "FLOAT_FORMAT",
    "parse_pairs",
    "pair_label",
    "generate_error_response",
]
