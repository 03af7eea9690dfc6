from __future__ import annotations
from typing import List, Optional, Union
from pydantic_settings import BaseSettings
from pydantic import AliasChoices, Field

def parse_int_range(v: Optional[Union[str, int, List[int]]]) -> List[int]:
    """Parse "a:b" (inclusive), "a,b,c", a single integer, or a list of integers"""
    if v is None:
        return []
    if isinstance(v, bool):
        raise ValueError("Booleans are not ranges")
    if isinstance(v, int):
        return [v]
    if isinstance(v, (list, tuple)):
        return [int(x) for x in v]

    s = str(v).strip()
    if not s:
        return []

    # Length validation keeps accidental pastes out
    if len(s) > 200:
        raise ValueError("Range string too long")

    if ":" in s:
        parts = s.split(":")
        if len(parts) != 2:
            raise ValueError(f"Range must look like a:b, got {s!r}")
        lo, hi = (int(p.strip()) for p in parts)
        if hi < lo:
            raise ValueError(f"Empty range {s!r}")
        if hi - lo > 10000:
            raise ValueError(f"Range {s!r} is too long")
        return list(range(lo, hi + 1))

    items = []
    for item in s.split(","):
        item = item.strip()
        if item:
            items.append(int(item))
    return items

class Settings(BaseSettings):
    # ---------- Input ----------
    potential_path: Optional[str] = Field(
        default=None,
        validation_alias=AliasChoices("LGCY_POTENTIAL", "LGCY_POTENTIAL_PATH", "potential_path"),
    )

    # ---------- Numerics ----------
    mp_dps: int = Field(20)
    series_terms: int = Field(60)
    pf_terms: int = Field(40)

    # Tolerances
    series_tol: float = Field(1e-8)
    continuation_tol: float = Field(1e-6)
    pf_tol: float = Field(1e-10)

    # ---------- Contour ----------
    contour_sigma: float = Field(-1.0 / 6)
    contour_height: float = Field(0.0)  # 0 = from decay rate
    panel_width: float = Field(0.5)
    gauss_order: int = Field(10)
    max_panel_depth: int = Field(8)
    quadrature_tol: float = Field(1e-12)

    # ---------- Window algorithm ----------
    validate_steps: bool = Field(False)
    ledger_max_window: int = Field(19)  # deepest window the ledger route may push to

    # ---------- App ----------
    cache_enabled: bool = Field(True)
    cache_dir: str = Field("data/cache")
    verbose: bool = Field(False)
    parallel: int = Field(1)

    class Config:
        env_prefix = "LGCY_"
        env_file = ".env"
        env_file_encoding = "utf-8"
        extra = "ignore"

def get_settings() -> Settings:
    return Settings()
