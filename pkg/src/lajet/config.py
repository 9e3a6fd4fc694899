"""INI configs for algebroid specs.

Layout (indices are 1-based, polynomials use the ``c*y^a`` grammar)::

    [algebroid]
    name = tangent1
    variables = y
    rank = 1

    [anchor]
    e1 = 1              ; one polynomial per variable, comma separated

    [structure]
    1 2 2 = 1           ; [e1, e2] has coefficient 1 on e2 (only i < j)

    [defaults]
    order = 4           ; q
    degree = 3          ; N
    arity = 3           ; P
    point = 0           ; comma separated rationals, one per variable
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .algebroid import AlgebroidSpec
from .poly import Derivation, Poly

BUNDLED = ("tangent", "tangent2", "abelian2", "solvable", "anchored", "broken")


class ConfigError(ValueError):
    """Raised for unreadable or malformed configs."""


@dataclass(frozen=True)
class Config:
    spec: AlgebroidSpec
    q: int = 4
    N: int = 3
    P: int = 3
    point: tuple = field(default=())
    source: str = ""


def _split(text: str) -> list:
    return [t.strip() for t in text.split(",") if t.strip()]


def _int(section, key: str, default: int) -> int:
    try:
        return section.getint(key, fallback=default)
    except ValueError as exc:
        raise ConfigError(f"{key} must be an integer") from exc


def parse_config(text: str, source: str = "<string>") -> Config:
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        cp.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from exc
    if not cp.has_section("algebroid"):
        raise ConfigError(f"{source}: missing [algebroid] section")
    head = cp["algebroid"]
    names = tuple(_split(head.get("variables", "")))
    m = len(names)
    d = _int(head, "rank", -1)
    if d < 1:
        raise ConfigError(f"{source}: rank must be a positive integer")
    name = head.get("name", Path(source).stem)
    try:
        anchor_sec = cp["anchor"] if cp.has_section("anchor") else {}
        rows = []
        for i in range(d):
            comps = _split(anchor_sec.get(f"e{i + 1}", ",".join(["0"] * m)))
            if len(comps) != m:
                raise ConfigError(f"{source}: anchor e{i + 1} needs {m} entries, got {len(comps)}")
            rows.append(Derivation(Poly.parse(c, names=names) for c in comps))
        structure = {}
        if cp.has_section("structure"):
            for key, value in cp["structure"].items():
                idx = key.split()
                if len(idx) != 3 or not all(t.isdigit() for t in idx):
                    raise ConfigError(f"{source}: structure key {key!r} must be 'i j k'")
                i, j, k = (int(t) - 1 for t in idx)
                if not (0 <= i < j < d and 0 <= k < d):
                    raise ConfigError(f"{source}: structure key {key!r} needs 1 <= i < j <= rank, 1 <= k <= rank")
                c = Poly.parse(value, names=names)
                if not c.is_zero():
                    structure[(i, j, k)] = c
        spec = AlgebroidSpec(m, d, tuple(rows), structure, name=name, var_names=names)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"{source}: {exc}") from exc
    defaults = cp["defaults"] if cp.has_section("defaults") else cp["DEFAULT"]
    try:
        point = tuple(Fraction(x) for x in _split(defaults.get("point", ",".join(["0"] * m))))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{source}: bad point") from exc
    if len(point) != m:
        raise ConfigError(f"{source}: point needs {m} coordinates")
    return Config(spec, _int(defaults, "order", 4), _int(defaults, "degree", 3),
                  _int(defaults, "arity", 3), point, source)


def bundled_path(name: str):
    return resources.files("lajet") / "data" / f"{name}.cfg"


def load_config(path: str) -> Config:
    """Load a config file; a bare bundled name such as ``tangent`` also works."""
    p = Path(path)
    if not p.exists() and path in BUNDLED:
        return parse_config(bundled_path(path).read_text(), source=f"{path}.cfg")
    try:
        text = p.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_config(text, source=str(path))
