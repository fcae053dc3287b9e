"""Command-line front end: ``noetherflux {flux,verify,profile}``.

Configuration is a JSON file.  Unknown keys are rejected and every schema
error carries the line and column of the offending key or value.  Reports
are JSON with sorted keys and no timestamps, so identical inputs give
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from json.decoder import scanstring
from typing import Any, Optional

import numpy as np

from . import __version__
from .errors import (
    ConfigError,
    DegenerateImmersion,
    InvalidSymmetry,
    NonPositiveNeck,
    NumericalFailure,
    ParamOutsideDomain,
    PointOutsideDomain,
    PotentialUnavailable,
)
from .expressions import compile_expression, compile_vector
from .families import (
    catenoid_profile,
    dh_catenoid_data,
    h2r_profile,
    horizontal_catenoid_cycle,
    rotational_end_cycle,
    vertical_catenoid_cycle,
)
from .fields import SymmetryId, check_symmetry, symmetries
from .geometry import AmbientSpace
from .noether import Cycle, NoetherContext, flux
from .surface import SurfacePatch, mean_curvature
from .verify import (
    DEFAULT_NOETHER_RUNS,
    DEFAULT_POINTS,
    DEFAULT_SPACES,
    FAMILY_NAMES,
    SUITE_NAMES,
    TOLERANCES,
    all_passed,
    build_family,
    suite_fields,
    suite_geometry,
    suite_noether,
)

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3

CONVENTION = ("N = f_u x f_v / |f_u x f_v|; *df(w) = df(w) x N; "
              "mu_S = <S, *df> - 2H <F, df>; cycles run with increasing curve parameter")

FAMILY_CONVENTIONS = {
    "vertical_catenoid": "parameters (t, theta); cycles {x3 = t} with increasing theta",
    "horizontal_catenoid": "parameters (u, y2); cycles {y2 = t} with increasing u over [0, 2U]",
    "rotational_end": "parameters (r, theta); cycles {r = t} with increasing theta; H = +1/2",
    "sol3_plane": "parameters (u, v) -> (u, v, 0); N = E3",
}

FAMILY_PARAMS = {
    "vertical_catenoid": {"a", "T", "tol", "t"},
    "horizontal_catenoid": {"alpha", "t"},
    "rotational_end": {"beta", "t"},
    "sol3_plane": set(),
}

TOP_KEYS = {"space", "surface", "H", "symmetries", "cycles", "n", "seed", "tolerances",
            "output", "suites", "n_samples", "spaces", "families", "volume", "profile"}

DEFAULT_N = 2048
CMC_CHECK_TOL = 1e-5
CLOSURE_TOL = 1e-9


# ---------------------------------------------------------------------------
# source positions


def _index_positions(text: str):
    """Offsets of every key and value in a valid JSON document, by path."""
    dec = json.JSONDecoder()
    ws = re.compile(r"[ \t\n\r]*")
    keys, values = {}, {}

    def skip(i):
        return ws.match(text, i).end()

    def value(i, path):
        i = skip(i)
        values[path] = i
        c = text[i]
        if c == "{":
            i = skip(i + 1)
            if text[i] == "}":
                return i + 1
            while True:
                i = skip(i)
                start = i
                key, i = scanstring(text, i + 1)
                keys[path + (key,)] = start
                i = skip(i)
                i = value(i + 1, path + (key,))
                i = skip(i)
                if text[i] == ",":
                    i += 1
                    continue
                return i + 1
        if c == "[":
            i = skip(i + 1)
            if text[i] == "]":
                return i + 1
            k = 0
            while True:
                i = value(i, path + (k,))
                i = skip(i)
                k += 1
                if text[i] == ",":
                    i += 1
                    continue
                return i + 1
        _, end = dec.raw_decode(text, i)
        return end

    value(0, ())
    return keys, values


@dataclass
class Source:
    text: str
    name: str = "<config>"
    _keys: dict = field(default_factory=dict)
    _values: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.text:
            self._keys, self._values = _index_positions(self.text)

    def _linecol(self, offset):
        line = self.text.count("\n", 0, offset) + 1
        return line, offset - (self.text.rfind("\n", 0, offset) + 1) + 1

    def where(self, path, key: bool = False):
        path = tuple(path)
        table = self._keys if key else self._values
        while path and path not in table:
            path = path[:-1]
        off = table.get(path, self._values.get(path))
        if off is None:
            return None, None
        return self._linecol(off)

    def error(self, path, msg, key: bool = False) -> ConfigError:
        line, col = self.where(path, key)
        dotted = ".".join(str(p) for p in path)
        prefix = f"{self.name}: " + (f"{dotted}: " if dotted else "")
        return ConfigError(prefix + msg, line, col)

    def string_column(self, path):
        """Line and column of the first character inside a string value."""
        line, col = self.where(path)
        return line, (None if col is None else col + 1)


def parse_json(text: str, name: str = "<config>"):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{name}: invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    src = Source(text, name)
    if not isinstance(data, dict):
        raise src.error((), "top level must be an object")
    return data, src


# ---------------------------------------------------------------------------
# schema helpers


def _obj(src: Source, obj, path, allowed, required=()):
    if not isinstance(obj, dict):
        raise src.error(path, f"expected an object, got {type(obj).__name__}")
    for k in obj:
        if k not in allowed:
            raise src.error(tuple(path) + (k,), f"unknown key {k!r}; allowed: "
                            f"{', '.join(sorted(allowed))}", key=True)
    for k in required:
        if k not in obj:
            raise src.error(path, f"missing required key {k!r}")
    return obj


def _num(src: Source, obj, path, key, default=None, integer=False, positive=False):
    if key not in obj:
        if default is None:
            raise src.error(path, f"missing required key {key!r}")
        return default
    v = obj[key]
    p = tuple(path) + (key,)
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise src.error(p, f"expected a number, got {json.dumps(v)}")
    if integer:
        if int(v) != v:
            raise src.error(p, f"expected an integer, got {v}")
        v = int(v)
    if not np.isfinite(v):
        raise src.error(p, "expected a finite number")
    if positive and v <= 0:
        raise src.error(p, f"expected a positive number, got {v}")
    return v


def _pair(src: Source, obj, path, key, default=None):
    if key not in obj:
        if default is None:
            raise src.error(path, f"missing required key {key!r}")
        return default
    v = obj[key]
    p = tuple(path) + (key,)
    if (not isinstance(v, list) or len(v) != 2
            or any(isinstance(x, bool) or not isinstance(x, (int, float)) for x in v)):
        raise src.error(p, "expected a list of two numbers")
    return float(v[0]), float(v[1])


def parse_space(src: Source, obj, path=("space",)) -> AmbientSpace:
    _obj(src, obj, path, {"kind", "kappa", "tau"}, ("kind",))
    kind = obj["kind"]
    shortcuts = {"Nil3": AmbientSpace.nil3, "H2xR": AmbientSpace.h2xr, "Sol3": AmbientSpace.sol3}
    if kind in shortcuts:
        extra = set(obj) - {"kind"}
        if extra:
            k = sorted(extra)[0]
            raise src.error(tuple(path) + (k,), f"{kind} takes no {k!r}", key=True)
        return shortcuts[kind]()
    if kind != "E3":
        raise src.error(tuple(path) + ("kind",),
                        f"unknown space kind {kind!r}; expected E3, Nil3, H2xR or Sol3")
    kappa = _num(src, obj, path, "kappa")
    tau = _num(src, obj, path, "tau")
    try:
        return AmbientSpace.e3(float(kappa), float(tau))
    except ValueError as exc:
        raise src.error(path, str(exc)) from None


def parse_symmetries(src: Source, obj, space: AmbientSpace, path=("symmetries",)):
    if obj is None:
        return tuple(symmetries(space))
    if not isinstance(obj, list):
        raise src.error(path, "expected a list of symmetry names")
    out = []
    for k, name in enumerate(obj):
        p = tuple(path) + (k,)
        try:
            out.append(check_symmetry(space, SymmetryId.parse(name)))
        except InvalidSymmetry as exc:
            raise src.error(p, str(exc)) from None
    return tuple(out)


@dataclass
class SurfaceSetup:
    surface: SurfacePatch
    H: float
    family: Optional[str]
    case: Any
    default_cycles: tuple


def parse_surface(src: Source, obj, space: Optional[AmbientSpace], H: Optional[float],
                  path=("surface",)) -> SurfaceSetup:
    if not isinstance(obj, dict):
        raise src.error(path, "expected an object")
    if "family" in obj:
        _obj(src, obj, path, {"family", "params"})
        name = obj["family"]
        if name not in FAMILY_NAMES:
            raise src.error(tuple(path) + ("family",),
                            f"unknown family {name!r}; expected one of {', '.join(FAMILY_NAMES)}")
        params = obj.get("params", {})
        ppath = tuple(path) + ("params",)
        _obj(src, params, ppath, FAMILY_PARAMS[name])
        for k, v in params.items():
            if k == "t":
                if not isinstance(v, list) or any(
                        isinstance(x, bool) or not isinstance(x, (int, float)) for x in v):
                    raise src.error(ppath + (k,), "expected a list of numbers")
            else:
                _num(src, params, ppath, k, positive=True)
        try:
            case = build_family(name, params)
        except (NonPositiveNeck, ValueError) as exc:
            raise src.error(ppath, str(exc)) from None
        if space is not None and space != case.space:
            raise src.error(("space",), f"family {name} lives in {case.space.describe()}, "
                            f"not {space.describe()}")
        return SurfaceSetup(case.surface, case.H if H is None else H, name, case, case.cycles)
    _obj(src, obj, path, {"chart", "u_range", "v_range", "periodic", "name"},
         ("chart", "u_range", "v_range"))
    if space is None:
        raise src.error(path, "an inline chart needs a 'space'")
    cpath = tuple(path) + ("chart",)
    chart_exprs = obj["chart"]
    if not isinstance(chart_exprs, list) or len(chart_exprs) != 3:
        raise src.error(cpath, "chart must be a list of three expressions in u, v")
    parts = []
    for k, text in enumerate(chart_exprs):
        line, col = src.string_column(cpath + (k,))
        parts.append(compile_expression(text, ("u", "v"), line, col))

    def chart(u, v):
        return np.stack([f(u, v) for f in parts], axis=-1)

    periodic = obj.get("periodic", [False, False])
    if (not isinstance(periodic, list) or len(periodic) != 2
            or not all(isinstance(x, bool) for x in periodic)):
        raise src.error(tuple(path) + ("periodic",), "expected a list of two booleans")
    name = obj.get("name", "chart")
    if not isinstance(name, str):
        raise src.error(tuple(path) + ("name",), "expected a string")
    surface = SurfacePatch(space, chart, _pair(src, obj, path, "u_range"),
                           _pair(src, obj, path, "v_range"), periodic=tuple(periodic),
                           H=0.0 if H is None else H, name=name)
    return SurfaceSetup(surface, 0.0 if H is None else H, None, None, ())


def parse_cycles(src: Source, obj, setup: SurfaceSetup, path=("cycles",)) -> tuple:
    if obj is None:
        return setup.default_cycles
    if not isinstance(obj, list):
        raise src.error(path, "expected a list of cycles")
    out = []
    for k, spec in enumerate(obj):
        p = tuple(path) + (k,)
        if not isinstance(spec, dict):
            raise src.error(p, "expected an object")
        if "level" in spec:
            _obj(src, spec, p, {"level", "n"})
            t = float(_num(src, spec, p, "level"))
            fam = setup.family
            if fam == "vertical_catenoid":
                c = vertical_catenoid_cycle(t)
            elif fam == "horizontal_catenoid":
                c = horizontal_catenoid_cycle(setup.case.data, t)
            elif fam == "rotational_end":
                c = rotational_end_cycle(t)
            else:
                raise src.error(p + ("level",), "level cycles need a catenoid or "
                                "rotational-end family")
        elif "radius" in spec:
            _obj(src, spec, p, {"center", "radius", "n", "name"}, ("center", "radius"))
            c = Cycle.circle(_pair(src, spec, p, "center"),
                             float(_num(src, spec, p, "radius", positive=True)),
                             name=str(spec.get("name", "circle")))
        else:
            _obj(src, spec, p, {"fixed", "value", "start", "period", "n", "name"},
                 ("fixed", "value", "period"))
            if spec["fixed"] not in ("u", "v"):
                raise src.error(p + ("fixed",), "fixed must be 'u' or 'v'")
            c = Cycle.param_line(spec["fixed"], float(_num(src, spec, p, "value")),
                                 float(_num(src, spec, p, "start", default=0.0)),
                                 float(_num(src, spec, p, "period", positive=True)),
                                 name=spec.get("name"))
        if "n" in spec:
            c = c.with_samples(_num(src, spec, p, "n", integer=True, positive=True))
        out.append(c)
    return tuple(out)


def parse_tolerances(src: Source, obj, path=("tolerances",)) -> dict:
    if obj is None:
        return {}
    _obj(src, obj, path, set(TOLERANCES))
    return {k: float(_num(src, obj, path, k, positive=True)) for k in obj}


def load_config(path: Optional[str]):
    if path is None:
        return {}, Source("", "<defaults>")
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    data, src = parse_json(text, path)
    _obj(src, data, (), TOP_KEYS)
    return data, src


# ---------------------------------------------------------------------------
# reports


def _clean(value):
    """Replace non-finite floats by None so the output is strict JSON."""
    if isinstance(value, float):
        return value if np.isfinite(value) else None
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, np.floating):
        return _clean(float(value))
    if isinstance(value, np.integer):
        return int(value)
    return value


def dump_report(report: dict) -> str:
    return json.dumps(_clean(report), indent=2, sort_keys=True, allow_nan=False) + "\n"


def _emit(text: str, out: Optional[str]):
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _echo(config: dict, **overrides) -> dict:
    echo = {k: v for k, v in config.items() if k != "output"}
    for k, v in overrides.items():
        if v is not None:
            echo[k] = v
    return echo


# ---------------------------------------------------------------------------
# commands


def cmd_flux(args) -> int:
    config, src = load_config(args.config)
    if "surface" not in config:
        raise src.error((), "flux needs a 'surface'")
    space = parse_space(src, config["space"]) if "space" in config else None
    H = float(_num(src, config, (), "H")) if "H" in config else None
    setup = parse_surface(src, config["surface"], space, H)
    space = setup.surface.space
    syms = parse_symmetries(src, config.get("symmetries"), space)
    cycles = parse_cycles(src, config.get("cycles"), setup)
    n = args.n_samples if args.n_samples is not None else \
        _num(src, config, (), "n", default=DEFAULT_N, integer=True, positive=True)
    if n <= 0:
        raise ConfigError("flux needs a positive number of quadrature samples")
    seed = args.seed if args.seed is not None else \
        _num(src, config, (), "seed", default=0, integer=True)

    warnings = []
    if args.strict:
        (u0, u1), (v0, v1) = setup.surface.u_range, setup.surface.v_range
        U, V = np.meshgrid(np.linspace(u0, u1, 9), np.linspace(v0, v1, 9), indexing="ij")
        dH = float(np.max(np.abs(mean_curvature(setup.surface, (U, V)) - setup.H)))
        if not dH <= CMC_CHECK_TOL:
            warnings.append(f"surface is not CMC at H={setup.H:g}: max |H - H0| = {dH:.3e}")
        for c in cycles:
            gap = c.closure_defect(setup.surface)
            if gap > CLOSURE_TOL:
                warnings.append(f"cycle {c.name} does not close: {gap:.3e}")

    records = []
    for c in cycles:
        c = c.with_samples(n)
        rec = {"cycle": c.name, "n": c.n, "convention": CONVENTION}
        for S in syms:
            key = "sigmaR" if S is SymmetryId.R else f"sigma{S.short}"
            rec[key] = flux(NoetherContext(space, setup.H, setup.surface, S), c)
        records.append(rec)
    report = {
        "command": "flux",
        "version": __version__,
        "seed": seed,
        "n": n,
        "space": space.describe(),
        "surface": setup.surface.name,
        "H": setup.H,
        "convention": CONVENTION,
        "orientation": FAMILY_CONVENTIONS.get(setup.family, "as declared by the chart"),
        "records": records,
        "warnings": warnings,
        "config": _echo(config, seed=seed, n=n),
    }
    _emit(dump_report(report), args.out or config.get("output"))
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    return EXIT_VERIFY if (args.strict and warnings) else EXIT_OK


def _parse_runs(src: Source, obj, path=("families",)):
    if obj is None:
        return DEFAULT_NOETHER_RUNS
    if not isinstance(obj, list):
        raise src.error(path, "expected a list of {family, params} objects")
    runs = []
    for k, spec in enumerate(obj):
        p = tuple(path) + (k,)
        _obj(src, spec, p, {"family", "params"}, ("family",))
        name = spec["family"]
        if name not in FAMILY_NAMES:
            raise src.error(p + ("family",), f"unknown family {name!r}")
        params = spec.get("params", {})
        _obj(src, params, p + ("params",), FAMILY_PARAMS[name])
        runs.append((name, params))
    return tuple(runs)


def cmd_verify(args) -> int:
    config, src = load_config(args.config)
    if args.suite:
        names = SUITE_NAMES if "all" in args.suite else tuple(args.suite)
    elif "suites" in config:
        names = config["suites"]
        if not isinstance(names, list):
            raise src.error(("suites",), "expected a list of suite names")
        for k, s in enumerate(names):
            if s not in SUITE_NAMES:
                raise src.error(("suites", k), f"unknown suite {s!r}; expected one of "
                                f"{', '.join(SUITE_NAMES)}")
    else:
        names = SUITE_NAMES
    seed = args.seed if args.seed is not None else \
        _num(src, config, (), "seed", default=0, integer=True)
    n_pts = args.n_samples if args.n_samples is not None else \
        _num(src, config, (), "n_samples", default=DEFAULT_POINTS, integer=True)
    tolerances = parse_tolerances(src, config.get("tolerances"))
    if "spaces" in config:
        if not isinstance(config["spaces"], list):
            raise src.error(("spaces",), "expected a list of spaces")
        spaces = tuple(parse_space(src, s, ("spaces", k)) for k, s in enumerate(config["spaces"]))
    else:
        spaces = DEFAULT_SPACES
    runs = _parse_runs(src, config.get("families"))
    volume = None
    if "volume" in config:
        line, col = src.string_column(("volume", 0))
        vol = compile_vector(config["volume"], ("x1", "x2", "x3"), line, col)
        volume = lambda p: vol(p[..., 0], p[..., 1], p[..., 2])  # noqa: E731

    suites = {}
    for name in names:
        if name == "geometry":
            suites[name] = [r for sp in spaces
                            for r in suite_geometry(sp, seed, n_pts, volume, tolerances)]
        elif name == "fields":
            suites[name] = [r for sp in spaces
                            for r in suite_fields(sp, seed, n_pts, tolerances=tolerances)]
        else:
            suites[name] = [r for fam, prm in runs
                            for r in suite_noether(fam, seed, prm, tolerances)]
    results = [r for rs in suites.values() for r in rs]
    ok = all_passed(results)
    report = {
        "command": "verify",
        "version": __version__,
        "seed": seed,
        "n_samples": n_pts,
        "convention": CONVENTION,
        "suites": {k: [r.as_dict() for r in v] for k, v in suites.items()},
        "summary": {
            "total": len(results),
            "failed": sum(r.status == "FAIL" for r in results),
            "blocked": sum(r.blocked for r in results),
            "passed": ok,
        },
        "config": _echo(config, seed=seed, n_samples=n_pts, suites=list(names)),
    }
    _emit(dump_report(report), args.out or config.get("output"))
    for r in results:
        if not r.passed:
            print(r.line(), file=sys.stderr)
    return EXIT_OK if ok else EXIT_VERIFY


PROFILE_FAMILIES = {
    "catenoid": "vertical_catenoid",
    "vertical_catenoid": "vertical_catenoid",
    "horizontal_catenoid": "horizontal_catenoid",
    "rotational_end": "rotational_end",
    "h2r": "rotational_end",
}


def _param_value(text: str, name: str):
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"--param {name}: expected a number, got {text!r}") from None


def cmd_profile(args) -> int:
    config, src = load_config(args.config)
    spec = config.get("profile", {})
    if spec:
        _obj(src, spec, ("profile",), {"family", "params", "n"})
    family = args.family or spec.get("family")
    if family is None:
        raise ConfigError("profile needs --family or profile.family in the config")
    if family not in PROFILE_FAMILIES:
        raise ConfigError(f"unknown profile family {family!r}; expected one of "
                          f"{', '.join(PROFILE_FAMILIES)}")
    family = PROFILE_FAMILIES[family]
    params = dict(spec.get("params", {}))
    for item in args.param or []:
        if "=" not in item:
            raise ConfigError(f"--param expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        params[k.strip()] = _param_value(v, k)
    allowed = {"vertical_catenoid": {"a", "T", "tol"}, "horizontal_catenoid": {"alpha"},
               "rotational_end": {"beta", "r_lo", "r_hi"}}[family]
    unknown = set(params) - allowed
    if unknown:
        raise ConfigError(f"unknown profile parameter(s) {', '.join(sorted(unknown))} for "
                          f"{family}; allowed: {', '.join(sorted(allowed))}")
    n = args.n_samples if args.n_samples is not None else int(spec.get("n", 201))
    if n < 2:
        raise ConfigError("profile needs at least 2 samples")
    if family == "vertical_catenoid":
        prof = catenoid_profile(params.get("a", 1.0), params.get("T", 3.0),
                                params.get("tol", 1e-12))
        text = prof.to_csv(n)
    elif family == "horizontal_catenoid":
        text = dh_catenoid_data(params.get("alpha", 1.0)).to_csv(n)
    else:
        data = h2r_profile(params.get("beta", 1.0))
        text = data.to_csv(params.get("r_lo"), params.get("r_hi", 0.95), n)
    _emit(text, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="noetherflux",
        description="Flux and torque of minimal and CMC surfaces in E3(kappa, tau) and Sol3.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", metavar="PATH", help="JSON configuration file")
        p.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
        p.add_argument("--seed", type=int, help="random seed")
        p.add_argument("--n-samples", type=int, dest="n_samples", metavar="N",
                       help="quadrature samples (flux), random points (verify), rows (profile)")
        p.add_argument("--strict", action="store_true",
                       help="treat warnings (non-CMC surface, open cycle) as failures")

    p_flux = sub.add_parser("flux", help="flux and torque along configured cycles")
    common(p_flux)
    p_flux.set_defaults(func=cmd_flux)

    p_ver = sub.add_parser("verify", help="run verification suites")
    common(p_ver)
    p_ver.add_argument("--suite", action="append", choices=SUITE_NAMES + ("all",),
                       help="suite to run (repeatable; default all)")
    p_ver.set_defaults(func=cmd_verify)

    p_prof = sub.add_parser("profile", help="export profile data as CSV")
    common(p_prof)
    p_prof.add_argument("--family", help="catenoid, horizontal_catenoid or rotational_end")
    p_prof.add_argument("--param", action="append", metavar="KEY=VALUE",
                        help="family parameter, e.g. a=1 (repeatable)")
    p_prof.set_defaults(func=cmd_profile)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.n_samples is not None and args.n_samples < 0:
        parser.error("--n-samples must be non-negative")
    try:
        return args.func(args)
    except (ConfigError, InvalidSymmetry, ParamOutsideDomain, PointOutsideDomain,
            NonPositiveNeck) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalFailure, DegenerateImmersion, PotentialUnavailable) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
