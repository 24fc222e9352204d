"""INI run configuration.

Sections and keys (unknown ones are rejected)::

    [physics]  M, V0, V1, alpha, q, r_e, D  (required);  n, C_s
    [angular]  a, b, n_l (comma lists, or one value for every axis);  ell_override
    [solver]   E_min, E_max, steps, z0, chain_reading, diagnostics, threads
    [grid]     r_min, r_max, count, theta_count
    [output]   path, table
"""
from __future__ import annotations

import configparser
import hashlib
import json
import re
from dataclasses import asdict, dataclass, field

from .angular import READINGS
from .spectrum import DEFAULT_STEPS, EDGE, ProblemConfig


class ConfigError(ValueError):
    def __init__(self, message: str, line: int | None = None, key: str | None = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line
        self.key = key


SCHEMA = {
    "physics": {"M", "V0", "V1", "alpha", "q", "r_e", "D", "n", "C_s"},
    "angular": {"a", "b", "n_l", "ell_override"},
    "solver": {"E_min", "E_max", "steps", "z0", "chain_reading", "diagnostics", "threads"},
    "grid": {"r_min", "r_max", "count", "theta_count"},
    "output": {"path", "table"},
}
REQUIRED = ("M", "V0", "V1", "alpha", "q", "r_e", "D")


@dataclass(frozen=True)
class GridSpec:
    r_min: float = 0.05
    r_max: float = 20.0
    count: int = 200
    theta_count: int = 91

    def __post_init__(self):
        if self.count < 1 or self.theta_count < 1:
            raise ValueError("grid counts must be >= 1")
        if not (0 < self.r_min < self.r_max):
            raise ValueError("grid needs 0 < r_min < r_max")


@dataclass(frozen=True)
class RunConfig:
    problem: ProblemConfig
    E_min: float
    E_max: float
    steps: int = DEFAULT_STEPS
    z0: float = 0.5
    diagnostics: bool = False
    threads: int | None = None
    grid: GridSpec = field(default_factory=GridSpec)
    output: str | None = None
    table: str | None = None

    def digest(self) -> str:
        """sha256 over a canonical JSON form of every field."""
        blob = json.dumps(asdict(self), sort_keys=True, default=str)
        return hashlib.sha256(blob.encode()).hexdigest()


def _line_of(text: str, section: str, key: str | None = None) -> int | None:
    current = None
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        m = re.match(r"\[(.+)\]$", line)
        if m:
            current = m.group(1).strip()
            if key is None and current == section:
                return no
            continue
        if key is not None and current == section and re.match(rf"{re.escape(key)}\s*[=:]", line):
            return no
    return None


def _number(text, section, key, raw, kind=float):
    try:
        value = kind(raw)
    except ValueError:
        raise ConfigError(f"[{section}] {key}: expected {kind.__name__}, got {raw!r}", _line_of(text, section, key), key)
    return value


def _list(text, section, key, raw, kind, width):
    items = [s for s in raw.strip().strip("[]()").replace(";", ",").split(",") if s.strip()]
    values = [_number(text, section, key, s.strip(), kind) for s in items]
    if len(values) == 1:
        values = values * width
    if len(values) != width:
        raise ConfigError(f"[angular] {key}: need {width} values for D={width + 1}, got {len(values)}",
                          _line_of(text, section, key), key)
    return tuple(values)


def _bool(text, section, key, raw):
    lowered = raw.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"[{section}] {key}: expected a boolean, got {raw!r}", _line_of(text, section, key), key)


def parse_config(text: str) -> RunConfig:
    parser = configparser.ConfigParser(
        interpolation=None, comment_prefixes=("#", ";"), inline_comment_prefixes=("#",), default_section="__none__"
    )
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.MissingSectionHeaderError as exc:
        raise ConfigError("content before the first [section]", exc.lineno) from exc
    except configparser.DuplicateSectionError as exc:
        raise ConfigError(f"duplicate section [{exc.section}]", exc.lineno) from exc
    except configparser.DuplicateOptionError as exc:
        raise ConfigError(f"duplicate key {exc.option!r} in [{exc.section}]", exc.lineno, exc.option) from exc
    except configparser.ParsingError as exc:
        line = exc.errors[0][0] if exc.errors else None
        raise ConfigError(f"malformed line {exc.errors[0][1] if exc.errors else ''}", line) from exc

    for section in parser.sections():
        if section not in SCHEMA:
            raise ConfigError(f"unknown section [{section}]", _line_of(text, section))
        for key in parser[section]:
            if key not in SCHEMA[section]:
                raise ConfigError(f"unknown key {key!r} in [{section}]", _line_of(text, section, key), key)

    def get(section, key):
        return parser[section][key] if parser.has_section(section) and key in parser[section] else None

    for key in REQUIRED:
        if get("physics", key) is None:
            raise ConfigError(f"missing required key {key!r} in [physics]", None, key)

    phys = {k: _number(text, "physics", k, get("physics", k)) for k in ("M", "V0", "V1", "alpha", "q", "r_e")}
    D = _number(text, "physics", "D", get("physics", "D"), int)
    n = _number(text, "physics", "n", get("physics", "n"), int) if get("physics", "n") is not None else 0
    C_s = _number(text, "physics", "C_s", get("physics", "C_s")) if get("physics", "C_s") is not None else 0.0

    reading = (get("solver", "chain_reading") or "printed").strip()
    if reading not in READINGS:
        raise ConfigError(f"[solver] chain_reading must be one of {READINGS}, got {reading!r}",
                          _line_of(text, "solver", "chain_reading"), "chain_reading")

    ell_raw = get("angular", "ell_override")
    ell_override = _number(text, "angular", "ell_override", ell_raw) if ell_raw is not None else None
    if ell_override is None:
        missing = [k for k in ("a", "b", "n_l") if get("angular", k) is None]
        if missing:
            raise ConfigError(f"[angular] needs {', '.join(missing)} unless ell_override is given", None, missing[0])
        width = D - 1
        a = _list(text, "angular", "a", get("angular", "a"), float, width)
        b = _list(text, "angular", "b", get("angular", "b"), float, width)
        n_l = _list(text, "angular", "n_l", get("angular", "n_l"), int, width)
    else:
        a = b = n_l = ()

    try:
        problem = ProblemConfig(D=D, n=n, C_s=C_s, a=a, b=b, n_l=n_l, ell_override=ell_override,
                                reading=reading, **phys)
    except ValueError as exc:
        raise ConfigError(f"invalid physics: {exc}") from exc

    def opt(section, key, kind, default):
        raw = get(section, key)
        return default if raw is None else _number(text, section, key, raw, kind)

    M = phys["M"]
    E_min = opt("solver", "E_min", float, -M + EDGE)
    E_max = opt("solver", "E_max", float, M - EDGE)
    if not E_max > E_min:
        raise ConfigError("[solver] E_max must exceed E_min", _line_of(text, "solver", "E_max"), "E_max")
    steps = opt("solver", "steps", int, DEFAULT_STEPS)
    if steps < 2:
        raise ConfigError("[solver] steps must be >= 2", _line_of(text, "solver", "steps"), "steps")
    z0 = opt("solver", "z0", float, 0.5)
    if not 0 < z0 < 1:
        raise ConfigError("[solver] z0 must lie strictly between 0 and 1", _line_of(text, "solver", "z0"), "z0")
    diag_raw = get("solver", "diagnostics")
    diagnostics = _bool(text, "solver", "diagnostics", diag_raw) if diag_raw is not None else False
    threads = opt("solver", "threads", int, None)

    defaults = GridSpec()
    try:
        grid = GridSpec(
            r_min=opt("grid", "r_min", float, defaults.r_min),
            r_max=opt("grid", "r_max", float, defaults.r_max),
            count=opt("grid", "count", int, defaults.count),
            theta_count=opt("grid", "theta_count", int, defaults.theta_count),
        )
    except ValueError as exc:
        raise ConfigError(f"[grid] {exc}", _line_of(text, "grid")) from exc

    return RunConfig(
        problem=problem, E_min=E_min, E_max=E_max, steps=steps, z0=z0, diagnostics=diagnostics,
        threads=threads, grid=grid, output=get("output", "path"), table=get("output", "table"),
    )


def load_config(path) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_config(text)
