"""Reading and writing ``*.sysconfig`` files (JSON, schema version 1).

Exact numbers are written as ``[num, den]`` pairs (a bare integer or a
``"p/q"`` string is also accepted).  Floats are refused so inputs never
carry rounding.  A minimal file::

    {
      "schema_version": 1,
      "name": "qubit",
      "algebra": "su2",
      "convention": "hermitian",
      "hamiltonians": {
        "H0": [[[0, 0, 1], [1, 1], [0, 1]]],
        "controls": [[[[1, 0, 0], [1, 1], [0, 1]]]]
      },
      "rep": {"kind": "su2-spin", "K": 2, "j": [1, 2]},
      "target": "sphere"
    }

``algebra`` is either a built-in name or a block with ``labels``,
``brackets`` (``"i,j"`` to a list of ``[k, re, im]``), ``hermitian`` and
``central``.  Polynomial terms are ``[exponents, re, im]``.  With
``"convention": "hermitian"`` each Hamiltonian is multiplied by -i on load.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .algebra import AlgebraError, AlgebraValidationError, StructureAlgebra
from .analysis import Caps
from .envelope import EnvElement
from .gaussian import GaussianRational
from .presets import ALGEBRAS, UnknownPresetError, algebra as builtin_algebra
from .rep import KINDS, RepError, RepSpec, gen_matrices
from .systems import ControlSystem, SystemValidationError

__all__ = [
    "SCHEMA_VERSION",
    "ConfigError",
    "ConfigParseError",
    "ConfigValidationError",
    "SystemConfig",
    "load_config",
    "parse_config",
    "dump_config",
]

SCHEMA_VERSION = 1
_MINUS_I = GaussianRational(0, -1)
_TOP_KEYS = {"schema_version", "name", "description", "algebra", "convention", "a",
             "hamiltonians", "central_values", "rep", "caps", "target", "experiments", "notes"}


class ConfigError(Exception):
    exit_code = 4

    def __init__(self, message, field=None, witness=None):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field
        self.witness = witness


class ConfigParseError(ConfigError):
    """Malformed file or a value of the wrong shape (exit code 2)."""

    exit_code = 2


class ConfigValidationError(ConfigError):
    """Well-formed input that is mathematically invalid (exit code 3)."""

    exit_code = 3


@dataclass
class SystemConfig:
    system: ControlSystem
    rep: RepSpec | None
    caps: Caps
    experiments: list = field(default_factory=list)
    source: str | None = None

    @property
    def name(self) -> str:
        return self.system.name


def _rational(v, where) -> Fraction:
    if isinstance(v, bool):
        raise ConfigParseError("expected a rational, got a boolean", where)
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError):
            raise ConfigParseError(f"cannot read {v!r} as a rational", where) from None
    if isinstance(v, list) and len(v) == 2 and all(isinstance(x, int) and not isinstance(x, bool)
                                                   for x in v):
        if v[1] == 0:
            raise ConfigParseError("zero denominator", where)
        return Fraction(v[0], v[1])
    if isinstance(v, float):
        raise ConfigParseError("floats are not accepted; use [num, den]", where)
    raise ConfigParseError(f"expected [num, den], got {v!r}", where)


def _gq(re, im, where) -> GaussianRational:
    return GaussianRational(_rational(re, where + ".re"), _rational(im, where + ".im"))


def _need(obj, key, kind, where):
    if key not in obj:
        raise ConfigParseError("missing field", f"{where}.{key}" if where else key)
    val = obj[key]
    if not isinstance(val, kind):
        raise ConfigParseError(f"expected {kind.__name__ if isinstance(kind, type) else kind}",
                               f"{where}.{key}" if where else key)
    return val


def _algebra(block) -> StructureAlgebra:
    if isinstance(block, str):
        try:
            return builtin_algebra(block)
        except UnknownPresetError:
            raise ConfigParseError(f"unknown algebra {block!r}; built-ins: {sorted(ALGEBRAS)}",
                                   "algebra") from None
    if not isinstance(block, dict):
        raise ConfigParseError("expected a name or an object", "algebra")
    labels = _need(block, "labels", list, "algebra")
    if not labels or not all(isinstance(x, str) for x in labels) or len(set(labels)) != len(labels):
        raise ConfigParseError("labels must be distinct strings", "algebra.labels")
    d = len(labels)
    brackets = {}
    for key, entries in _need(block, "brackets", dict, "algebra").items():
        where = f"algebra.brackets[{key}]"
        parts = [p.strip() for p in key.split(",")]
        if len(parts) != 2:
            raise ConfigParseError("key must be 'i,j'", where)
        ij = [int(p) if p.lstrip("-").isdigit() else p for p in parts]
        if not isinstance(entries, list):
            raise ConfigParseError("expected a list of [k, re, im]", where)
        coords = {}
        for n, e in enumerate(entries):
            if not isinstance(e, list) or len(e) != 3:
                raise ConfigParseError("expected [k, re, im]", f"{where}[{n}]")
            k = e[0]
            if isinstance(k, str):
                if k not in labels:
                    raise ConfigParseError(f"unknown label {k!r}", f"{where}[{n}]")
                k = labels.index(k)
            coords[k] = coords.get(k, GaussianRational(0)) + _gq(e[1], e[2], f"{where}[{n}]")
        brackets[tuple(ij)] = coords
    herm = block.get("hermitian", [1] * d)
    cent = block.get("central", [False] * d)
    try:
        return StructureAlgebra.from_brackets(
            block.get("name", "custom"), labels, brackets, herm, cent,
            block.get("description", ""))
    except AlgebraValidationError as exc:
        raise ConfigValidationError(str(exc), f"algebra ({exc.kind})", exc.witness) from None
    except AlgebraError as exc:
        raise ConfigParseError(str(exc), "algebra") from None


def _poly(alg, terms, where) -> EnvElement:
    if not isinstance(terms, list):
        raise ConfigParseError("expected a list of [exponents, re, im]", where)
    acc: dict = {}
    for n, t in enumerate(terms):
        w = f"{where}[{n}]"
        if not isinstance(t, list) or len(t) != 3 or not isinstance(t[0], list):
            raise ConfigParseError("expected [exponents, re, im]", w)
        mono = t[0]
        if len(mono) != alg.d or not all(isinstance(e, int) and not isinstance(e, bool) and e >= 0
                                         for e in mono):
            raise ConfigParseError(f"exponent vector must have {alg.d} non-negative integers", w)
        mono = tuple(mono)
        acc[mono] = acc.get(mono, GaussianRational(0)) + _gq(t[1], t[2], w)
    return EnvElement(alg, acc)


def parse_config(data, source: str | None = None) -> SystemConfig:
    """Validate a decoded JSON object; nothing is returned unless all of it is valid."""
    if not isinstance(data, dict):
        raise ConfigParseError("top level must be an object")
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise ConfigParseError(f"unknown fields {sorted(unknown)}")
    version = _need(data, "schema_version", int, "")
    if version != SCHEMA_VERSION:
        raise ConfigParseError(f"unsupported schema version {version}", "schema_version")
    name = _need(data, "name", str, "")
    alg = _algebra(_need(data, "algebra", (str, dict), ""))
    convention = data.get("convention", "skew")
    if convention not in ("skew", "hermitian"):
        raise ConfigParseError("must be 'skew' or 'hermitian'", "convention")
    a = _rational(data.get("a", 1), "a")
    hams = _need(data, "hamiltonians", dict, "")
    H0 = _poly(alg, _need(hams, "H0", list, "hamiltonians"), "hamiltonians.H0").scale(a)
    ctrl_blocks = hams.get("controls", [])
    if not isinstance(ctrl_blocks, list):
        raise ConfigParseError("expected a list of polynomials", "hamiltonians.controls")
    controls = [_poly(alg, c, f"hamiltonians.controls[{n}]") for n, c in enumerate(ctrl_blocks)]
    if convention == "hermitian":
        H0 = H0.scale(_MINUS_I)
        controls = [H.scale(_MINUS_I) for H in controls]
    central = data.get("central_values", {})
    if not isinstance(central, dict):
        raise ConfigParseError("expected an object", "central_values")
    central_values = []
    for lab, v in central.items():
        if lab not in alg.labels or not alg.central_flags[alg.labels.index(lab)]:
            raise ConfigValidationError(f"{lab!r} is not a central generator", "central_values")
        central_values.append((lab, GaussianRational(_rational(v, f"central_values.{lab}"))))
    target = data.get("target", "orbit")
    if target not in ("orbit", "sphere"):
        raise ConfigParseError("must be 'orbit' or 'sphere'", "target")
    try:
        system = ControlSystem(name, alg, H0, controls, target, data.get("description", ""),
                               tuple(data.get("notes", ())), tuple(central_values))
    except SystemValidationError as exc:
        raise ConfigValidationError(str(exc), f"hamiltonians ({exc.kind})", exc.witness) from None

    rep = None
    if "rep" in data:
        rb = _need(data, "rep", dict, "")
        kind = _need(rb, "kind", str, "rep")
        if kind not in KINDS or kind == "explicit":
            raise ConfigParseError(f"unsupported kind {kind!r}", "rep.kind")
        K = _need(rb, "K", int, "rep")
        j = _rational(rb.get("j", [1, 2]), "rep.j")
        try:
            rep = RepSpec(alg, kind, K, j, margin_order=rb.get("margin_order", 4),
                          margin=rb.get("margin", 2))
            gen_matrices(rep)
        except RepError as exc:
            raise ConfigValidationError(str(exc), "rep") from None

    cb = data.get("caps", {})
    if not isinstance(cb, dict):
        raise ConfigParseError("expected an object", "caps")
    try:
        caps = Caps(cb.get("order_cap", 4), cb.get("iter_cap", 50), cb.get("k_max"))
    except (TypeError, ValueError) as exc:
        raise ConfigParseError(str(exc), "caps") from None
    experiments = data.get("experiments", [])
    if not isinstance(experiments, list) or not all(isinstance(e, dict) and "kind" in e
                                                    for e in experiments):
        raise ConfigParseError("expected a list of objects with a 'kind'", "experiments")
    return SystemConfig(system, rep, caps, experiments, source)


def load_config(path) -> SystemConfig:
    """Read and fully validate a ``*.sysconfig`` file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigParseError(f"cannot read {path}: {exc.strerror}") from None
    if not text.strip():
        raise ConfigParseError(f"{path} is empty")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_config(data, str(path))


def _pair(x: Fraction):
    return [x.numerator, x.denominator]


def _terms(E: EnvElement) -> list:
    return [[list(m), _pair(c.re), _pair(c.im)] for m, c in E.sorted_terms()]


def dump_config(system: ControlSystem, rep: RepSpec | None = None, caps: Caps | None = None) -> str:
    """Serialise in the skew convention; ``load_config`` reproduces the system exactly."""
    alg = system.algebra
    if alg.name in ALGEBRAS and builtin_algebra(alg.name).key == alg.key:
        ablock = alg.name
    else:
        ablock = {"name": alg.name, "labels": list(alg.labels),
                  "brackets": {f"{i},{j}": [[k, _pair(c.re), _pair(c.im)] for k, c in alg.entry(i, j)]
                               for i, j in sorted(alg.table) if i < j},
                  "hermitian": list(alg.hermitian_flags), "central": list(alg.central_flags)}
    data = {"schema_version": SCHEMA_VERSION, "name": system.name,
            "description": system.description, "algebra": ablock, "convention": "skew",
            "hamiltonians": {"H0": _terms(system.H0),
                             "controls": [_terms(H) for H in system.controls]},
            "target": system.target}
    if system.central_values:
        data["central_values"] = {lab: _pair(v.re) for lab, v in system.central_values}
    if system.notes:
        data["notes"] = list(system.notes)
    if rep is not None:
        data["rep"] = {"kind": rep.kind, "K": rep.K, "j": _pair(rep.j),
                       "margin_order": rep.margin_order, "margin": rep.margin}
    if caps is not None:
        data["caps"] = caps.to_dict()
    return json.dumps(data, indent=1) + "\n"
