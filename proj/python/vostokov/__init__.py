"""Explicit reciprocity symbols for cyclotomic local fields."""

from ._vostokov import (
    SIGN,
    TUPLE_ORDER,
    Field,
    PrecisionError,
    artin_hasse_pi,
    artin_hasse_zeta,
    decompose,
    kummer,
    orthogonality,
    sen,
    suites,
    symbol,
    tame,
    verify,
)

__all__ = [
    "SIGN",
    "TUPLE_ORDER",
    "Field",
    "PrecisionError",
    "artin_hasse_pi",
    "artin_hasse_zeta",
    "decompose",
    "kummer",
    "orthogonality",
    "sen",
    "suites",
    "symbol",
    "tame",
    "verify",
]
