"""Grid evaluation: extrinsic state, classification, identity checks and the
boost-gauge stability test at each cell-centred sample, reduced into a report."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .catalog import CatalogEntry, get_entry, parse_token
from .classify import TAU_CLS, classify_pair, classify_point
from .errors import ConfigError
from .extrinsic import TAU_GAUGE, extrinsic_state
from .frames import SurfaceModel
from .geometry import SpacetimeModel, curvature_at
from .verify import TAU_VER, verify_point

SCHEMA = "umbilic-scan/1"
MODES = ("classify", "verify", "full")
CHECK_NAMES = ("gauss", "ricci", "theorem2", "corollary1", "space_form", "ckv")
FLAG_NAMES = ("minimal", "totally_geodesic", "totally_umbilical", "pseudo_umbilical",
              "ortho_umbilical")

ROW_FIELDS = (
    ["i", "j", "u", "v"] + [f"x{a}" for a in range(4)] + ["beta"]
    + [f"H{a}" for a in range(4)] + ["gHH", "theta_l", "theta_k"]
    + [f"G{a}" for a in range(4)] + ["trB", "detB", "commutator", "status", "causal", "discriminant"]
    + [f"Numb{a}" for a in range(4)] + ["Numb_a", "Numb_b"]
    + list(FLAG_NAMES) + ["dim_first_normal", "H_causal", "H_orientation", "joint", "tags"]
    + ["K_S", "ds"] + list(CHECK_NAMES) + ["boost_beta", "boost_drift", "boost_verdicts_equal",
                                           "failed_checks", "failed_expectations"]
)


@dataclass(frozen=True)
class RunConfig:
    spacetime: str
    surface: str
    grid: tuple[int, int] = (8, 8)
    mode: str = "full"
    gauge: float = 0.0
    tol_cls: float | None = None
    tol_ver: float | None = None
    fd_step: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        n, m = self.grid
        if n < 1 or m < 1:
            raise ConfigError(f"grid counts must be positive, got {n}x{m}")
        if self.mode != "classify" and (n < 2 or m < 2):
            raise ConfigError("verify modes need at least a 2x2 grid")
        for name in ("tol_cls", "tol_ver", "fd_step"):
            val = getattr(self, name)
            if val is not None and not val > 0:
                raise ConfigError(f"{name} must be positive, got {val}")


@dataclass
class Setup:
    config: RunConfig
    entry: CatalogEntry
    spacetime: SpacetimeModel
    surface: SurfaceModel
    surface_name: str
    path: str
    tol_cls: float
    tol_ver: float
    tol_gauge: float
    expected: dict = field(default_factory=dict)


def build(config: RunConfig) -> Setup:
    st_name, st_params = parse_token(config.spacetime)
    entry = get_entry(st_name)
    unknown = set(st_params) - set(entry.defaults)
    if unknown:
        raise ConfigError(f"unknown parameters {sorted(unknown)} for spacetime {st_name!r}")
    spacetime = entry.spacetime(**st_params)
    sf_name, sf_params = parse_token(config.surface)
    surface = entry.surface(sf_name, **sf_params)
    if config.fd_step is not None:
        # finite-difference path: metric derivatives and surface derivatives by stencils
        spacetime = spacetime.with_strategy("fd", config.fd_step)
        surface = replace(surface, jacobian=None, hessian=None)
    path = "analytic" if spacetime.path == surface.path == "analytic" else "fd"
    fam = entry.surfaces[sf_name]
    expected = dict(fam.expected)
    return Setup(config, entry, spacetime, surface, sf_name, path,
                 config.tol_cls or TAU_CLS[path], config.tol_ver or TAU_VER[path],
                 TAU_GAUGE[path], expected)


def grid_points(surface: SurfaceModel, n: int, m: int) -> list[tuple[int, int, float, float]]:
    """Cell-centred samples of the parameter rectangle."""
    (u0, u1), (v0, v1) = surface.u_range, surface.v_range
    du, dv = (u1 - u0) / n, (v1 - v0) / m
    return [(i, j, u0 + (i + 0.5) * du, v0 + (j + 0.5) * dv) for i in range(n) for j in range(m)]


def _vec(prefix, v, row):
    for a in range(4):
        row[f"{prefix}{a}"] = None if v is None else float(v[a])


def evaluate(setup: Setup, uv, gauge: float, with_checks: bool, K_S: float | None = None):
    """State, classification and residual report (or None) at one point."""
    state = extrinsic_state(setup.surface, setup.spacetime, uv, gauge, connection=with_checks)
    cls = classify_point(state, setup.tol_cls)
    report = None
    if with_checks:
        curv = curvature_at(setup.spacetime, state.tangent.x)
        report = verify_point(setup.spacetime, setup.surface, state, curv, cls.umbilical.exists,
                              cls.ortho_umbilical, setup.tol_ver, setup.tol_cls, K_S)
    return state, cls, report


def _verdicts(cls, report) -> dict:
    out = {k: v for k, v in cls.as_flags().items()}
    if report is not None:
        out.update({f"check:{k}": c.passed for k, c in report.checks.items()})
    return out


def _drift(a, b) -> float:
    sa, ca, ra = a
    sb, cb, rb = b
    parts = [np.abs(sa.mean.H - sb.mean.H).max(), np.abs(sa.gfield.G - sb.gfield.G).max(),
             np.abs(sa.casorati.B - sb.casorati.B).max()]
    if sa.connection is not None and sb.connection is not None:
        parts.append(abs(sa.connection.ds - sb.connection.ds))
    return float(max(parts))


def point_row(setup: Setup, i: int, j: int, u: float, v: float, boost_beta: float | None) -> dict:
    cfg = setup.config
    checks_on = cfg.mode in ("verify", "full")
    classify_on = cfg.mode in ("classify", "full")
    base = evaluate(setup, (u, v), cfg.gauge, checks_on)
    state, cls, report = base
    row: dict = {"i": i, "j": j, "u": u, "v": v}
    _vec("x", state.tangent.x, row)
    row["beta"] = state.beta
    _vec("H", state.mean.H, row)
    row.update(gHH=state.mean.gHH, theta_l=state.mean.theta_l, theta_k=state.mean.theta_k)
    _vec("G", state.gfield.G, row)
    row.update(trB=state.casorati.trB, detB=state.casorati.detB)
    umb = cls.umbilical
    row.update(commutator=umb.commutator_norm, status=umb.status, causal=umb.causal_character,
               discriminant=umb.discriminant)
    _vec("Numb", umb.N_umb, row)
    row["Numb_a"], row["Numb_b"] = umb.null_coords if umb.null_coords else (None, None)
    flags = cls.as_flags()
    for name in FLAG_NAMES + ("dim_first_normal", "H_causal", "H_orientation", "joint"):
        row[name] = flags[name]
    row["tags"] = "|".join(cls.tags)
    failed = []
    row["K_S"] = report.K_S if report else None
    row["ds"] = state.connection.ds if state.connection is not None else None
    for name in CHECK_NAMES:
        c = report.checks.get(name) if report else None
        row[name] = c.value if c else None
        if c is not None and not c.passed:
            failed.append(name)
    row["boost_beta"] = row["boost_drift"] = row["boost_verdicts_equal"] = None
    if boost_beta is not None:
        other = evaluate(setup, (u, v), cfg.gauge + boost_beta, checks_on,
                         report.K_S if report else None)
        drift = _drift(base, other)
        same = _verdicts(cls, report) == _verdicts(other[1], other[2])
        row.update(boost_beta=boost_beta, boost_drift=drift, boost_verdicts_equal=same)
        if drift >= setup.tol_gauge or not same:
            failed.append("boost")
    row["failed_checks"] = "|".join(failed)
    bad = []
    if classify_on:
        for key, want in setup.expected.items():
            if flags.get(key) != want:
                bad.append(key)
    row["failed_expectations"] = "|".join(bad)
    return row


def _threads() -> int:
    raw = os.environ.get("UMBILIC_SCAN_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigError(f"UMBILIC_SCAN_THREADS must be an integer, got {raw!r}") from None


def run(config: RunConfig) -> dict:
    """Evaluate the grid and return the report as a plain dictionary."""
    setup = build(config)
    pts = grid_points(setup.surface, *config.grid)
    rng = np.random.default_rng(config.seed)
    betas = rng.uniform(-2.0, 2.0, len(pts))
    with_boost = config.mode in ("verify", "full")

    def job(idx):
        i, j, u, v = pts[idx]
        return point_row(setup, i, j, u, v, float(betas[idx]) if with_boost else None)

    workers = _threads()
    if workers == 1:
        rows = [job(k) for k in range(len(pts))]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(job, range(len(pts))))
    tabulated = _tabulated(setup) if config.mode in ("classify", "full") else []
    return {
        "schema": SCHEMA,
        "config": _config_dict(config, setup),
        "rows": rows,
        "tabulated": tabulated,
        "summary": summarize(rows, setup, tabulated),
    }


def _tabulated(setup: Setup) -> list[dict]:
    fam = setup.entry.surfaces[setup.surface_name]
    out = []
    for uv in fam.tabulated:
        st = extrinsic_state(setup.surface, setup.spacetime, uv, setup.config.gauge, connection=False)
        cls = classify_pair(st.pair, setup.tol_cls, st.frame, st.canonical_pair)
        want = fam.expected.get("umbilical_status")
        out.append({"u": float(uv[0]), "v": float(uv[1]), "status": cls.umbilical.status,
                    "commutator": cls.umbilical.commutator_norm, "expected": want,
                    "ok": want is None or cls.umbilical.status == want})
    return out


def _config_dict(config: RunConfig, setup: Setup) -> dict:
    d = asdict(config)
    d["grid"] = list(config.grid)
    d.update(path=setup.path, tol_cls=setup.tol_cls, tol_ver=setup.tol_ver,
             tol_gauge=setup.tol_gauge, surface_params=setup.surface.params,
             spacetime_params=setup.spacetime.params)
    return d


def summarize(rows: list[dict], setup: Setup, tabulated: list[dict]) -> dict:
    n = len(rows)
    flag_counts = {name: sum(1 for r in rows if r[name] is True) for name in FLAG_NAMES}
    flag_na = {name: sum(1 for r in rows if r[name] is None) for name in ("pseudo_umbilical", "ortho_umbilical")}
    status_counts = {s: sum(1 for r in rows if r["status"] == s)
                     for s in ("TotallyUmbilical", "UniqueDirection", "None")}
    checks = {}
    for name in CHECK_NAMES:
        vals = [r[name] for r in rows if r[name] is not None]
        fails = sum(1 for r in rows if name in r["failed_checks"].split("|"))
        checks[name] = {"evaluated": len(vals), "max": max(vals) if vals else None,
                        "failures": fails, "passed": fails == 0}
    boost = [r for r in rows if r["boost_drift"] is not None]
    boost_fail = sum(1 for r in rows if "boost" in r["failed_checks"].split("|"))
    checks["boost"] = {"evaluated": len(boost),
                       "max": max((r["boost_drift"] for r in boost), default=None),
                       "failures": boost_fail, "passed": boost_fail == 0}
    exp_fail = {}
    for r in rows:
        for key in filter(None, r["failed_expectations"].split("|")):
            exp_fail[key] = exp_fail.get(key, 0) + 1
    tab_ok = all(t["ok"] for t in tabulated)
    ok = all(c["passed"] for c in checks.values()) and not exp_fail and tab_ok
    return {
        "points": n,
        "flag_counts": flag_counts,
        "flag_not_applicable": flag_na,
        "status_counts": status_counts,
        "checks": checks,
        "expected": dict(setup.expected),
        "expectation_failures": exp_fail,
        "tabulated_ok": tab_ok,
        "passed": ok,
    }
