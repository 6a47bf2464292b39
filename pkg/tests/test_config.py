import json
from fractions import Fraction
from importlib import resources

import pytest

from liereach.analysis import Caps
from liereach.config import (ConfigParseError, ConfigValidationError, dump_config,
                             load_config, parse_config)
from liereach.presets import PRESET_NAMES
from liereach.systems import build_preset

CONFIGS = resources.files("liereach") / "configs"

SU2_BLOCK = {"labels": ["Lx", "Ly", "Lz"],
             "brackets": {"0,1": [["Lz", 0, 1]], "1,2": [["Lx", 0, 1]], "2,0": [["Ly", 0, 1]]}}


def qubit_doc(**over):
    doc = {"schema_version": 1, "name": "q", "algebra": SU2_BLOCK, "convention": "hermitian",
           "hamiltonians": {"H0": [[[0, 0, 1], 1, 0]], "controls": [[[[1, 0, 0], 1, 0]]]},
           "target": "sphere", "rep": {"kind": "su2-spin", "K": 2, "j": [1, 2]}}
    doc.update(over)
    return doc


def test_pt_config_loads():
    cfg = load_config(CONFIGS / "pt.sysconfig")
    assert cfg.system.algebra.d == 3
    assert len(cfg.system.hamiltonians) == 3
    assert cfg.rep.kind == "su11-discrete-plus"


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_shipped_configs_match_presets(name):
    system, rep = build_preset(name)
    cfg = load_config(CONFIGS / f"{name}.sysconfig")
    assert cfg.system.H0 == system.H0
    assert list(cfg.system.controls) == list(system.controls)
    assert cfg.system.algebra.key == system.algebra.key
    assert cfg.system.central_values == system.central_values
    assert (cfg.rep.kind, cfg.rep.K, cfg.rep.j) == (rep.kind, rep.K, rep.j)


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_dump_load_round_trip(name, tmp_path):
    system, rep = build_preset(name)
    text = dump_config(system, rep, Caps(order_cap=3))
    cfg = parse_config(json.loads(text))
    assert dump_config(cfg.system, cfg.rep, cfg.caps) == text
    assert cfg.caps.order_cap == 3


def test_custom_algebra_and_hermitian_convention():
    cfg = parse_config(qubit_doc())
    # hermitian input is stored skew: H -> -iH
    assert cfg.system.H0.render() == "(-1i)*Lz^1"


def test_flipped_sign_is_validation_error():
    block = json.loads(json.dumps(SU2_BLOCK))
    block["brackets"]["1,0"] = [["Lz", 0, 1]]
    with pytest.raises(ConfigValidationError) as exc:
        parse_config(qubit_doc(algebra=block))
    assert exc.value.exit_code == 3
    assert exc.value.witness == (0, 0, 1)
    assert "jacobi" in exc.value.field


def test_non_skew_hamiltonian_rejected():
    with pytest.raises(ConfigValidationError) as exc:
        parse_config(qubit_doc(convention="skew"))
    assert exc.value.exit_code == 3


def test_empty_and_garbled_files(tmp_path):
    p = tmp_path / "x.sysconfig"
    p.write_text("")
    with pytest.raises(ConfigParseError) as exc:
        load_config(p)
    assert exc.value.exit_code == 2
    p.write_text("{not json")
    with pytest.raises(ConfigParseError):
        load_config(p)
    with pytest.raises(ConfigParseError):
        load_config(tmp_path / "missing.sysconfig")


@pytest.mark.parametrize("over", [
    {"bogus": 1},
    {"schema_version": 2},
    {"convention": "other"},
    {"target": "torus"},
    {"algebra": "nope"},
    {"hamiltonians": {"H0": [[[0, 0, 1], 0.5, 0]], "controls": []}},
    {"hamiltonians": {"H0": [[[0, 1], 1, 0]], "controls": []}},
    {"rep": {"kind": "wavelet", "K": 2}},
])
def test_malformed_fields(over):
    with pytest.raises(ConfigParseError) as exc:
        parse_config(qubit_doc(**over))
    assert exc.value.exit_code == 2


def test_rationals_accept_strings_and_pairs():
    doc = qubit_doc(hamiltonians={"H0": [[[0, 0, 1], "3/4", [0, 1]], [[1, 0, 0], [-1, 2], "0"]], "controls": []})
    H0 = parse_config(doc).system.H0
    coeffs = {m: (c.re, c.im) for m, c in H0.terms.items()}
    assert coeffs == {(0, 0, 1): (0, Fraction(-3, 4)), (1, 0, 0): (0, Fraction(1, 2))}


def test_central_values_must_name_central_generator():
    with pytest.raises(ConfigValidationError):
        parse_config(qubit_doc(central_values={"Lz": 1}))
