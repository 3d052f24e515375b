"""Command-line batch interface.

    twistcube <command> --config <path|-> [--out <path>] [--point-cap N]
              [--cone-cap N] [--grid-denom N] [--no-timing]

The config is a JSON document describing either a raw cube
(``{"n": 2, "c": [[1, 2, 2]], "ell": [4, 3]}``) or representation data
(``{"cartan": "A3", "lambda": [0, 0, 2], "word": [2, 1, 2, 3, 2, 1]}``).
Only integers and strings appear in inputs and reports.

Exit codes: 0 success, 2 parse/validation, 3 capacity, 4 overflow,
5 internal inconsistency.
"""

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .character import compare_characters, demazure_character
from .cube import DEFAULT_POINT_CAP, CubeSpec, check_condition_P, enumerate_lattice, member
from .errors import (
    ArithmeticOverflowError,
    CapacityError,
    InconsistencyError,
    TwistCubeError,
    UsageError,
)
from .rep import CartanMatrix, cartan_matrix, derive_constants, necessary_conditions
from .toric import DEFAULT_CONE_CAP, all_cartier_points, pd_contains, ray_minus, ray_plus
from .untwist import grid_convexity_oracle, is_untwisted

COMMANDS = ("check", "cartier", "lattice", "character", "demazure", "necessary")
REP_ONLY = ("character", "demazure", "necessary")

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CAPACITY = 3
EXIT_OVERFLOW = 4
EXIT_INCONSISTENT = 5

_RAW_KEYS = ("n", "c", "ell")
_REP_KEYS = ("cartan", "lambda", "word")
_OPTION_KEYS = ("point_cap", "cone_cap", "grid_denom", "out")


class ConfigError(UsageError):
    """The job document failed to parse or validate."""


@dataclass
class JobConfig:
    mode: str
    command: str | None
    spec: object = None
    cartan: CartanMatrix | None = None
    cartan_input: object = None
    weight: tuple | None = None
    word: tuple | None = None
    options: dict = field(default_factory=dict)


def _int(value, where):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{where}: expected an integer, got {json.dumps(value)}")
    return value


def _int_list(value, where):
    if not isinstance(value, list):
        raise ConfigError(f"{where}: expected a list of integers")
    return tuple(_int(v, f"{where}[{i}]") for i, v in enumerate(value))


def _parse_cartan(value):
    if isinstance(value, str):
        try:
            return cartan_matrix(value)
        except UsageError as exc:
            raise ConfigError(f"cartan: {exc}") from None
    if isinstance(value, list) and value:
        rows = tuple(_int_list(r, f"cartan[{i}]") for i, r in enumerate(value))
        try:
            return CartanMatrix(rows)
        except UsageError as exc:
            raise ConfigError(f"cartan: {exc}") from None
    raise ConfigError("cartan: expected a type label such as \"A3\" or a square integer matrix")


def parse_config(text):
    """Parse and validate a JSON job document into a :class:`JobConfig`."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ConfigError("top level must be a JSON object")

    known = set(_RAW_KEYS + _REP_KEYS + _OPTION_KEYS + ("mode", "command", "options"))
    unknown = sorted(set(doc) - known)
    if unknown:
        raise ConfigError(f"unknown field(s): {', '.join(unknown)}")

    has_raw = any(k in doc for k in _RAW_KEYS)
    has_rep = any(k in doc for k in _REP_KEYS)
    if has_raw == has_rep:
        raise ConfigError("exactly one of the raw payload (n, c, ell) or rep payload (cartan, lambda, word) is required")
    mode = "raw" if has_raw else "rep"
    if doc.get("mode", mode) != mode:
        raise ConfigError(f"mode: declared {doc['mode']!r} but the payload is {mode!r}")

    command = doc.get("command")
    if command is not None and command not in COMMANDS:
        raise ConfigError(f"command: must be one of {', '.join(COMMANDS)}")

    options = {}
    nested = doc.get("options", {})
    if not isinstance(nested, dict):
        raise ConfigError("options: expected an object")
    for source in (nested, doc):
        for key in _OPTION_KEYS:
            if key in source:
                if key == "out":
                    if not isinstance(source[key], str):
                        raise ConfigError("out: expected a path string")
                    options[key] = source[key]
                else:
                    options[key] = _int(source[key], key)
                    if options[key] < 1:
                        raise ConfigError(f"{key}: must be positive")

    if mode == "raw":
        for key in _RAW_KEYS:
            if key not in doc:
                raise ConfigError(f"raw mode requires field {key!r}")
        n = _int(doc["n"], "n")
        ell = _int_list(doc["ell"], "ell")
        if n < 0 or len(ell) != n:
            raise ConfigError(f"ell: expected {n} entries, got {len(ell)}")
        if not isinstance(doc["c"], list):
            raise ConfigError("c: expected a list of [i, j, value] triples")
        triples = []
        for idx, t in enumerate(doc["c"]):
            t = _int_list(t, f"c[{idx}]")
            if len(t) != 3:
                raise ConfigError(f"c[{idx}]: expected [i, j, value]")
            if not (1 <= t[0] < t[1] <= n):
                raise ConfigError(f"c[{idx}]: requires 1 <= i < j <= n, got i={t[0]}, j={t[1]}")
            triples.append(t)
        try:
            spec = CubeSpec.build(ell, triples)
        except UsageError as exc:
            raise ConfigError(f"c: {exc}") from None
        return JobConfig(mode, command, spec=spec, options=options)

    for key in _REP_KEYS:
        if key not in doc:
            raise ConfigError(f"rep mode requires field {key!r}")
    cartan = _parse_cartan(doc["cartan"])
    weight = _int_list(doc["lambda"], "lambda")
    word = _int_list(doc["word"], "word")
    if len(weight) != cartan.rank:
        raise ConfigError(f"lambda: expected {cartan.rank} entries for rank {cartan.rank}")
    for i, b in enumerate(word):
        if not (1 <= b <= cartan.rank):
            raise ConfigError(f"word[{i}]: index {b} out of range 1..{cartan.rank}")
    spec = derive_constants(cartan, weight, word)
    return JobConfig(
        mode, command, spec=spec, cartan=cartan, cartan_input=doc["cartan"],
        weight=weight, word=word, options=options,
    )


def _frac(v):
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _spec_echo(spec):
    return {
        "n": spec.n,
        "ell": list(spec.ell),
        "c": [[i, j, v] for i, j, v in spec.entries()],
        "c_rows": [list(r) for r in spec.rows[:-1]] if spec.n else [],
    }


def _check_payload(config, spec, point_cap, cone_cap):
    report = is_untwisted(spec, cone_cap=cone_cap, point_cap=point_cap)
    p = check_condition_P(spec)
    out = {
        "untwisted": report.verdict,
        "conditions": {
            "a_closed": report.closed,
            "b_cartier_in_C": report.b,
            "c_cartier_nonnegative": report.c,
            "d_condition_P": report.d,
            "e_C_equals_PD": report.e,
            "basepoint_free": report.basepoint_free,
        },
        "ell_nonnegative": report.ell_nonneg,
        "witness": None,
        "basepoint_witness": None,
        "condition_P": {
            "holds": p.holds,
            "k": p.k,
            "vertex": None if p.vertex is None else list(p.vertex),
            "value": p.value,
        },
    }
    w = report.witness
    if w is not None:
        out["witness"] = {
            "condition": w.condition,
            "sigma": None if w.sigma is None else str(w.sigma),
            "k": w.k,
            "vector": list(w.vector),
        }
    b = report.basepoint_witness
    if b is not None:
        out["basepoint_witness"] = {
            "sigma": str(b.sigma),
            "m": list(b.m),
            "violated": {"j": b.violated[0], "bound": b.violated[1]},
        }
    denom = config.options.get("grid_denom")
    if denom is not None:
        ev = grid_convexity_oracle(spec, denom)
        out["grid_convexity"] = {
            "denominator": ev.denominator,
            "grid_points": ev.grid_points,
            "convex": ev.convex,
            "pair": None if ev.pair is None else [[_frac(v) for v in p] for p in ev.pair],
            "midpoint": None if ev.midpoint is None else [_frac(v) for v in ev.midpoint],
        }
    return out


def _cartier_payload(spec, cone_cap):
    points = []
    for cp in all_cartier_points(spec, cone_cap):
        points.append({
            "sigma": str(cp.sigma),
            "m": list(cp.m),
            "nonnegative": all(v >= 0 for v in cp.m),
            "in_C": member(spec, cp.m),
            "in_PD": pd_contains(spec, cp.m),
        })
    return {
        "rays_plus": [list(ray_plus(spec, j)) for j in range(1, spec.n + 1)],
        "rays_minus": [list(ray_minus(spec, j)) for j in range(1, spec.n + 1)],
        "cones": len(points),
        "cartier_points": points,
    }


def _lattice_payload(spec, point_cap):
    lattice = enumerate_lattice(spec, point_cap)
    return {
        "count": len(lattice),
        "positive": lattice.count(1),
        "negative": lattice.count(-1),
        "points": [{"x": list(p), "sign": s} for p, s in lattice],
    }


def run(config, timing=True):
    """Execute a job and return the report as a JSON-ready dict."""
    command = config.command
    if command is None:
        raise ConfigError("command: none given")
    if command in REP_ONLY and config.mode != "rep":
        raise ConfigError(f"command {command!r} needs rep-mode input (cartan, lambda, word)")
    point_cap = config.options.get("point_cap", _env_cap("TWISTCUBE_POINT_CAP", DEFAULT_POINT_CAP))
    cone_cap = config.options.get("cone_cap", _env_cap("TWISTCUBE_CONE_CAP", DEFAULT_CONE_CAP))
    spec = config.spec
    started = time.perf_counter()

    if command == "check":
        result = _check_payload(config, spec, point_cap, cone_cap)
    elif command == "cartier":
        result = _cartier_payload(spec, cone_cap)
    elif command == "lattice":
        result = _lattice_payload(spec, point_cap)
    elif command == "character":
        cmp = compare_characters(config.cartan, config.weight, config.word, point_cap=point_cap)
        result = {
            "signed": cmp.signed.to_json(),
            "total": cmp.signed.total(),
            "demazure_equal": cmp.equal,
            "diff": cmp.diff.to_json(),
        }
    elif command == "demazure":
        ch = demazure_character(config.cartan, config.weight, config.word)
        result = {"demazure": ch.to_json(), "total": ch.total()}
    else:
        nc = necessary_conditions(config.cartan, config.weight, config.word)
        result = {
            "cond1": nc.cond1,
            "cond2": nc.cond2,
            "cond1_violations": list(nc.cond1_violations),
            "cond2_violations": list(nc.cond2_violations),
        }

    report = {
        "version": __version__,
        "command": command,
        "mode": config.mode,
        "spec": _spec_echo(spec),
        "result": result,
    }
    if config.mode == "rep":
        report["input"] = {
            "cartan": config.cartan_input,
            "cartan_matrix": [list(r) for r in config.cartan.entries],
            "lambda": list(config.weight),
            "word": list(config.word),
        }
    if timing:
        report["timing"] = {"seconds": f"{time.perf_counter() - started:.6f}"}
    return report


def dumps(report):
    """Canonical serialization: sorted keys, two-space indent, trailing newline."""
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=True) + "\n"


def _env_cap(name, default):
    value = os.environ.get(name)
    if value is None:
        return default
    try:
        cap = int(value)
    except ValueError:
        raise ConfigError(f"environment variable {name} must be an integer") from None
    if cap < 1:
        raise ConfigError(f"environment variable {name} must be positive")
    return cap


def build_parser():
    parser = argparse.ArgumentParser(
        prog="twistcube",
        description="Decide untwistedness of twisted cubes and compute related data.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", default="-", help="JSON job file, or - for stdin (default)")
    parser.add_argument("--out", help="write the report here instead of stdout")
    parser.add_argument("--point-cap", type=int)
    parser.add_argument("--cone-cap", type=int)
    parser.add_argument("--grid-denom", type=int)
    parser.add_argument("--no-timing", action="store_true", help="omit the timing field")
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK

    try:
        if args.config == "-":
            text = sys.stdin.read()
        else:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_INVALID

    try:
        config = parse_config(text)
        if config.command is not None and config.command != args.command:
            raise ConfigError(f"command: config says {config.command!r} but {args.command!r} was requested")
        config.command = args.command
        for key in ("point_cap", "cone_cap", "grid_denom", "out"):
            value = getattr(args, key)
            if value is not None:
                if key != "out" and value < 1:
                    raise ConfigError(f"--{key.replace('_', '-')}: must be positive")
                config.options[key] = value
        body = dumps(run(config, timing=not args.no_timing))
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except ArithmeticOverflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except InconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (UsageError, TwistCubeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID

    out = config.options.get("out")
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
