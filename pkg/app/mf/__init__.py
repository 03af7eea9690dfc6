# Graded matrix factorizations, window pushes and Orlov Chern characters
from app.mf.poly import BigradedPoly
from app.mf.potential import Potential, PotentialError, fermat_split, load_potential
from app.mf.factorization import (
    MatrixFactorization,
    MfMorphism,
    Summand,
    cone,
    shift_one,
    twist_shift,
    validate_mf,
)
from app.mf.koszul import build_koszul_minus, build_koszul_plus
from app.mf.replace import NotReplaceableError, find_replaceable, replace_summand, homotopy_witnesses
from app.mf.window import WindowError, WindowLedger, window_push
from app.mf.orlov import OrlovEngine, ParameterRangeError, orlov_chern_closed, orlov_chern_ledger
