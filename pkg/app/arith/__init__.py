# Exact arithmetic over Q and Q(zeta_3)
from app.arith.rational import parse_rational, format_rational, binomial
from app.arith.eisenstein import (
    EisensteinScalar,
    NotInvertibleError,
    ZERO,
    ONE,
    ZETA,
    zeta_power,
    eis_mul,
    eis_inv,
    eis_to_complex,
)
from app.arith.series import TruncatedSeries

__all__ = [
    "parse_rational",
    "format_rational",
    "binomial",
    "EisensteinScalar",
    "NotInvertibleError",
    "ZERO",
    "ONE",
    "ZETA",
    "zeta_power",
    "eis_mul",
    "eis_inv",
    "eis_to_complex",
    "TruncatedSeries",
]
