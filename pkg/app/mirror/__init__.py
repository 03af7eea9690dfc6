# Analytic-continuation maps U_l and the exact identity checks built on them
from app.mirror.mirror_map import (
    MirrorMap,
    build_mirror_map,
    build_mirror_map_matrix_form,
    apply_mirror,
)

__all__ = [
    "MirrorMap",
    "build_mirror_map",
    "build_mirror_map_matrix_form",
    "apply_mirror",
]
