# Ambient-cohomology and FJRW state-space arithmetic
from app.cohomology.gw import GwClass, gw_exp, gw_nilpotent_inverse
from app.cohomology.fjrw import FjrwClass, fjrw_ch_line, todd_inverse_narrow, ch_kminus

__all__ = [
    "GwClass",
    "gw_exp",
    "gw_nilpotent_inverse",
    "FjrwClass",
    "fjrw_ch_line",
    "todd_inverse_narrow",
    "ch_kminus",
]
