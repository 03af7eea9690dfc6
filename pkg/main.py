import json
from typing import Any, Dict, List, Optional

import typer
from pydantic import BaseModel, Field, ValidationError, field_validator

from app.config.settings import Settings, get_settings, parse_int_range
from app.reporting.formatter import ReportFormatter

app = typer.Typer(help="LG/CY correspondence verifier for the complete intersection of two cubics in P^5")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_RANGE = 3


class RunConfig(BaseModel):
    """Parameters of one cli run; JSON config values overridden by flags"""
    command: str
    t: List[int] = Field(default_factory=list)
    q: List[int] = Field(default_factory=list)
    m: List[int] = Field(default_factory=list)
    l: List[int] = Field(default_factory=list)
    log_v: List[Any] = Field(default_factory=list)
    potential_path: Optional[str] = None
    method: str = "ledger"
    which: List[str] = Field(default_factory=lambda: ["IGW", "IFJRW"])
    terms: Optional[int] = None
    series_tol: float = 1e-8
    continuation_tol: float = 1e-6
    pf_tol: float = 1e-10
    format: str = "text"
    parallel: int = 1
    verbose: bool = False

    @field_validator("t", "q", "m", "l", mode="before")
    @classmethod
    def _ranges(cls, v: Any) -> List[int]:
        values = parse_int_range(v)
        if not values:
            raise ValueError("range must not be empty")
        return values

    @field_validator("log_v", mode="before")
    @classmethod
    def _complex_list(cls, v: Any) -> List[complex]:
        if isinstance(v, (str, int, float, complex)):
            v = [v]
        return [parse_complex(x) for x in v]

    @field_validator("series_tol", "continuation_tol", "pf_tol")
    @classmethod
    def _positive(cls, v: float) -> float:
        if v <= 0:
            raise ValueError("tolerances must be positive")
        return v

    @field_validator("format")
    @classmethod
    def _format(cls, v: str) -> str:
        if v not in ("text", "json"):
            raise ValueError("format must be text or json")
        return v

    @field_validator("method")
    @classmethod
    def _method(cls, v: str) -> str:
        if v not in ("ledger", "closed", "both"):
            raise ValueError("method must be ledger, closed or both")
        return v

    @field_validator("parallel", "terms")
    @classmethod
    def _at_least_one(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and v < 1:
            raise ValueError("must be at least 1")
        return v


def parse_complex(value: Any) -> complex:
    """Accept 1.5, "-7.6+3.14j", "-7.6,3.14" or [re, im]"""
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, (int, float, complex)):
        return complex(value)
    s = str(value).strip().replace(" ", "")
    if "," in s:
        re_part, im_part = s.split(",", 1)
        return complex(float(re_part), float(im_part))
    return complex(s)


def _fail(message: str, code: int):
    typer.echo(f"[ERROR] {message}", err=True)
    raise typer.Exit(code=code)


def load_run_config(
    command: str, config_path: Optional[str], defaults: Optional[Dict[str, Any]] = None, **flags: Any
) -> RunConfig:
    """Defaults, then the JSON config file, then explicit flags."""
    data: Dict[str, Any] = {"verbose": get_settings().verbose, **(defaults or {})}
    if config_path:
        try:
            with open(config_path, "r", encoding="utf-8") as fh:
                file_data = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            _fail(f"Cannot read config {config_path}: {e}", EXIT_INPUT)
        if not isinstance(file_data, dict):
            _fail(f"Config {config_path} must hold a JSON object", EXIT_INPUT)
        data.update(file_data)
    data.update({k: v for k, v in flags.items() if v is not None})
    data["command"] = command
    try:
        return RunConfig(**data)
    except ValidationError as e:
        _fail(f"Invalid parameters: {e.errors()[0].get('loc')} {e.errors()[0].get('msg')}", EXIT_INPUT)


def _emit(report: Dict[str, Any], cfg: RunConfig):
    typer.echo(ReportFormatter.format(report, cfg.format))
    raise typer.Exit(code=EXIT_OK if report["pass"] else EXIT_FAILED)


def _load_potential(cfg: RunConfig, settings: Settings):
    from app.mf.potential import PotentialError, fermat_split, load_potential

    path = cfg.potential_path or settings.potential_path
    if not path:
        return fermat_split()
    try:
        return load_potential(path)
    except PotentialError as e:
        _fail(str(e), EXIT_INPUT)


def _engine(cfg: RunConfig, settings: Settings):
    from app.cache.simple_cache import get_cache
    from app.mf.orlov import OrlovEngine

    cache = get_cache(settings.cache_dir) if settings.cache_enabled else None
    return OrlovEngine(
        potential=_load_potential(cfg, settings),
        cache=cache,
        validate_steps=settings.validate_steps,
        verbose=cfg.verbose,
    )


# Shared options
ConfigOpt = typer.Option(None, "--config", "-c", help="JSON file with run parameters")
FormatOpt = typer.Option(None, "--format", "-f", help="text or json")
VerboseOpt = typer.Option(None, "--verbose/--quiet", help="Print progress lines")


@app.command("verify-koszul")
def verify_koszul(
    potential: Optional[str] = typer.Option(None, "--potential", "-p", help="Potential JSON file"),
    config: Optional[str] = ConfigOpt,
    format: Optional[str] = FormatOpt,
    verbose: Optional[bool] = VerboseOpt,
):
    """Validate the Koszul matrix factorizations K_- and K_+ of the potential"""
    from app.mf.factorization import validate_mf
    from app.mf.koszul import build_koszul_minus, build_koszul_plus

    settings = get_settings()
    cfg = load_run_config("verify-koszul", config, potential_path=potential, format=format, verbose=verbose)
    P = _load_potential(cfg, settings)
    results = []
    for label, builder in (("K_-", build_koszul_minus), ("K_+", build_koszul_plus)):
        diag = validate_mf(builder(P, validate=False))
        if cfg.verbose:
            typer.echo(f"[WINDOW] {label}: {diag.summary()}", err=True)
        results.append({"params": {"factorization": label, "potential": P.name}, **diag.to_dict(), "pass": diag.ok})
    _emit({"command": "verify-koszul", "results": results, "pass": all(r["pass"] for r in results)}, cfg)


@app.command()
def orlov(
    t: Optional[str] = typer.Option(None, "--t", help="Window index or range a:b"),
    q: Optional[str] = typer.Option(None, "--q", help="Twist or range"),
    m: Optional[str] = typer.Option(None, "--m", help="Shift or range"),
    method: Optional[str] = typer.Option(None, "--method", help="ledger, closed or both"),
    potential: Optional[str] = typer.Option(None, "--potential", "-p"),
    config: Optional[str] = ConfigOpt,
    format: Optional[str] = FormatOpt,
    verbose: Optional[bool] = VerboseOpt,
):
    """ch(Orl_t(K_-(q)[m])) from the window ledger and/or the closed formula"""
    from app.mf.orlov import ParameterRangeError, orlov_chern_closed, orlov_chern_ledger

    settings = get_settings()
    cfg = load_run_config(
        "orlov", config, defaults={"q": "0", "m": "0"}, t=t, q=q, m=m,
        method=method, potential_path=potential, format=format, verbose=verbose,
    )
    if not cfg.t:
        _fail("--t is required", EXIT_INPUT)
    engine = _engine(cfg, settings) if cfg.method != "closed" else None
    results = []
    for tv in cfg.t:
        for qv in cfg.q:
            for mv in cfg.m:
                entry: Dict[str, Any] = {"params": {"t": tv, "q": qv, "m": mv, "method": cfg.method}}
                values = []
                if cfg.method in ("ledger", "both"):
                    try:
                        ledger_value = orlov_chern_ledger(tv, qv, mv, engine=engine)
                    except ParameterRangeError as e:
                        _fail(str(e), EXIT_RANGE)
                    entry["ledger"] = ledger_value.to_dict()
                    values.append(ledger_value)
                if cfg.method in ("closed", "both"):
                    closed_value = orlov_chern_closed(tv, qv, mv)
                    entry["closed"] = closed_value.to_dict()
                    values.append(closed_value)
                entry["value"] = str(values[0])
                entry["pass"] = all(v == values[0] for v in values)
                if cfg.verbose:
                    typer.echo(f"[ORLOV] t={tv} q={qv} m={mv}: {values[0]}", err=True)
                results.append(entry)
    _emit({"command": "orlov", "results": results, "pass": all(r["pass"] for r in results)}, cfg)


def _main_job(args) -> Dict[str, Any]:
    from app.mirror.checks import OrlovMethod, check_main_theorem

    tv, qv, mv = args
    return check_main_theorem(tv, qv, mv, orlov_method=OrlovMethod.CLOSED).to_dict()


@app.command("check-main")
def check_main(
    t: Optional[str] = typer.Option(None, "--t", help="Default 4:16"),
    q: Optional[str] = typer.Option(None, "--q", help="Default -6:6"),
    m: Optional[str] = typer.Option(None, "--m", help="Default 0:1"),
    method: Optional[str] = typer.Option(None, "--method", help="ledger, closed or both (ledger against closed)"),
    parallel: Optional[int] = typer.Option(None, "--parallel", help="Worker processes for the closed route"),
    perturb_mirror: bool = typer.Option(False, "--perturb-mirror", hidden=True),
    potential: Optional[str] = typer.Option(None, "--potential", "-p"),
    config: Optional[str] = ConfigOpt,
    format: Optional[str] = FormatOpt,
    verbose: Optional[bool] = VerboseOpt,
):
    """U_t(ch(K_-(q)[m])) = ch(Orl_{t-3}(K_-(q)[m])) e^{-3p} over a grid"""
    from app.cohomology.gw import GwClass
    from app.mirror.checks import OrlovMethod, check_main_theorem
    from app.mirror.mirror_map import MirrorMap, build_mirror_map

    settings = get_settings()
    cfg = load_run_config(
        "check-main", config, defaults={"t": "4:16", "q": "-6:6", "m": "0:1", "parallel": settings.parallel},
        t=t, q=q, m=m, method=method, parallel=parallel, potential_path=potential, format=format, verbose=verbose,
    )
    grid = [(tv, qv, mv) for tv in cfg.t for qv in cfg.q for mv in cfg.m]
    skipped: List[Dict[str, int]] = []
    if cfg.method != "closed":
        # the ledger route needs t - 3 - q >= 1
        skipped = [{"t": tv, "q": qv, "m": mv} for tv, qv, mv in grid if tv - 3 - qv < 1]
        grid = [(tv, qv, mv) for tv, qv, mv in grid if tv - 3 - qv >= 1]
        if not grid:
            _fail("No tuple with t - 3 - q >= 1 for the ledger route; use --method closed", EXIT_RANGE)
        deepest = max(tv - 3 - qv for tv, qv, _ in grid)
        if deepest > settings.ledger_max_window:
            _fail(
                f"Window {deepest} is deeper than ledger_max_window={settings.ledger_max_window}; "
                "raise LGCY_LEDGER_MAX_WINDOW or use --method closed",
                EXIT_RANGE,
            )
        if skipped and cfg.verbose:
            typer.echo(f"[MIRROR] skipped {len(skipped)} tuples with t - 3 - q < 1", err=True)

    if cfg.method == "closed" and cfg.parallel > 1 and not perturb_mirror:
        import multiprocessing

        with multiprocessing.Pool(processes=cfg.parallel) as pool:
            results = pool.map(_main_job, grid)
    else:
        engine = _engine(cfg, settings) if cfg.method != "closed" else None
        results = []
        for tv, qv, mv in grid:
            mirror = None
            if perturb_mirror:
                base = build_mirror_map(tv)
                bumped = base.columns[0] + GwClass.p() ** 3
                mirror = MirrorMap(l=tv, columns=(bumped,) + base.columns[1:])
            route = OrlovMethod(cfg.method)
            check = check_main_theorem(tv, qv, mv, orlov_method=route, engine=engine, mirror=mirror)
            if cfg.verbose:
                typer.echo(f"[MIRROR] t={tv} q={qv} m={mv} ({route.value}): {'ok' if check.passed else 'FAIL'}", err=True)
            results.append(check.to_dict())
    report = {"command": "check-main", "results": results, "pass": all(r["pass"] for r in results)}
    if skipped:
        report["skipped"] = skipped
    _emit(report, cfg)


@app.command("check-elem")
def check_elem(
    l: Optional[str] = typer.Option(None, "--l", help="Default -6:6"),
    q: Optional[str] = typer.Option(None, "--q", help="Default -6:6"),
    m: Optional[str] = typer.Option(None, "--m", help="Default 0:1"),
    config: Optional[str] = ConfigOpt,
    format: Optional[str] = FormatOpt,
    verbose: Optional[bool] = VerboseOpt,
):
    """The expansion identities of U_l and its closed form on ch(K_-(q)[m])"""
    from app.mirror.checks import check_elem_identities, check_mirror_closed_form
    from app.mirror.mirror_map import build_mirror_map

    cfg = load_run_config(
        "check-elem", config, defaults={"l": "-6:6", "q": "-6:6", "m": "0:1"},
        l=l, q=q, m=m, format=format, verbose=verbose,
    )
    results = []
    for lv in cfg.l:
        mirror = build_mirror_map(lv)
        for qv in cfg.q:
            results.append(check_elem_identities(lv, qv, mirror=mirror).to_dict())
            for mv in cfg.m:
                results.append(check_mirror_closed_form(lv, qv, mv).to_dict())
        if cfg.verbose:
            typer.echo(f"[MIRROR] l={lv} done", err=True)
    _emit({"command": "check-elem", "results": results, "pass": all(r["pass"] for r in results)}, cfg)


@app.command("continue")
def continue_(
    l: Optional[str] = typer.Option(None, "--l", help="Windows, default 0:1"),
    log_v: Optional[List[str]] = typer.Option(None, "--log-v", help="Sample points re,im (repeatable)"),
    terms: Optional[int] = typer.Option(None, "--terms"),
    series_tol: Optional[float] = typer.Option(None, "--series-tol"),
    continuation_tol: Optional[float] = typer.Option(None, "--continuation-tol"),
    sigma: Optional[float] = typer.Option(None, "--sigma", help="Real part of the contour"),
    height: Optional[float] = typer.Option(None, "--height", help="Truncation height, 0 = automatic"),
    parallel: Optional[int] = typer.Option(None, "--parallel"),
    config: Optional[str] = ConfigOpt,
    format: Optional[str] = FormatOpt,
    verbose: Optional[bool] = VerboseOpt,
):
    """Mellin-Barnes continuation of h_GW compared with h_GW and U_l(h_FJRW)"""
    import mpmath

    from app.analytic.continuation import compare_many, sample_points
    from app.analytic.mellin_barnes import BandError, ContourSpec, check_band

    settings = get_settings()
    cfg = load_run_config(
        "continue", config,
        defaults={
            "l": "0:1", "series_tol": settings.series_tol,
            "continuation_tol": settings.continuation_tol, "parallel": settings.parallel,
        },
        l=l, log_v=log_v or None, terms=terms, series_tol=series_tol,
        continuation_tol=continuation_tol, parallel=parallel, format=format, verbose=verbose,
    )
    mpmath.mp.dps = settings.mp_dps
    jobs = []
    for lv in cfg.l:
        for point in (cfg.log_v or sample_points(lv)):
            try:
                check_band(lv, point)
            except BandError as e:
                _fail(str(e), EXIT_RANGE)
            jobs.append((lv, point))
    try:
        specs = {
            lv: ContourSpec(
                l=lv,
                sigma=sigma if sigma is not None else settings.contour_sigma,
                height=height if height is not None else settings.contour_height,
                panel_width=settings.panel_width,
                gauss_order=settings.gauss_order,
                max_depth=settings.max_panel_depth,
                tolerance=settings.quadrature_tol,
            )
            for lv in cfg.l
        }
    except ValueError as e:
        _fail(str(e), EXIT_INPUT)
    reports = []
    for lv in cfg.l:
        reports += compare_many(
            [job for job in jobs if job[0] == lv],
            workers=cfg.parallel,
            spec=specs[lv],
            terms=cfg.terms or settings.series_terms,
            series_tol=cfg.series_tol,
            continuation_tol=cfg.continuation_tol,
            verbose=cfg.verbose,
        )
    results = [r.to_dict() for r in reports]
    _emit({"command": "continue", "results": results, "pass": all(r["pass"] for r in results)}, cfg)


@app.command()
def pf(
    which: Optional[List[str]] = typer.Option(None, "--which", help="IGW, HGW, IFJRW, HFJRW (repeatable)"),
    terms: Optional[int] = typer.Option(None, "--terms"),
    pf_tol: Optional[float] = typer.Option(None, "--pf-tol"),
    config: Optional[str] = ConfigOpt,
    format: Optional[str] = FormatOpt,
    verbose: Optional[bool] = VerboseOpt,
):
    """Picard-Fuchs residuals of the I- and h-series"""
    import mpmath

    from app.analytic.picard_fuchs import pf_residual

    settings = get_settings()
    cfg = load_run_config(
        "pf", config, defaults={"pf_tol": settings.pf_tol},
        which=which or None, terms=terms, pf_tol=pf_tol,
        format=format, verbose=verbose,
    )
    mpmath.mp.dps = settings.mp_dps
    results = []
    for kind in cfg.which:
        try:
            result = pf_residual(kind.upper(), terms=cfg.terms or settings.pf_terms, tolerance=cfg.pf_tol)
        except ValueError as e:
            _fail(str(e), EXIT_INPUT)
        entry = result.to_dict()
        entry["params"] = {"which": result.which.value, "terms": result.terms}
        results.append(entry)
    _emit({"command": "pf", "results": results, "pass": all(r["pass"] for r in results)}, cfg)


if __name__ == "__main__":
    app()
