import json
from fractions import Fraction

import numpy as np
import pytest

from liereach.analysis import Caps, classify, matrix_lie_dim, orbit_samples, tangent_rank
from liereach.dynamics import PreconditionError
from liereach.envelope import EnvElement, env_gen
from liereach.gaussian import gq
from liereach.presets import algebra
from liereach.rep import RepError, RepSpec
from liereach.systems import ControlSystem, build_preset

I = gq(0, 1)


def spin_half():
    alg = algebra("su2")
    return alg, RepSpec(alg, "su2-spin", K=2, j=Fraction(1, 2))


def test_tangent_rank_examples():
    alg, rep = spin_half()
    basis = [env_gen(alg, g).scale(I) for g in alg.labels]
    assert tangent_rank(basis, np.array([1, 0]), rep) == 2
    assert tangent_rank([env_gen(alg, "Lz")], np.array([1, 0]), rep) == 1
    assert tangent_rank([], np.array([1, 0]), rep) == 0


def test_tangent_rank_errors():
    alg, rep = spin_half()
    with pytest.raises(RepError):
        tangent_rank([env_gen(algebra("h1"), "x")], np.array([1, 0]), rep)
    fock = RepSpec(algebra("h1"), "heisenberg-fock", K=10)
    x = env_gen(fock.algebra, "x")
    phi = np.zeros(10)
    phi[9] = 1
    with pytest.raises(PreconditionError):
        tangent_rank([x], phi, fock)


def test_matrix_lie_dim():
    _, rep = spin_half()
    from liereach.rep import gen_matrices
    X, Y, Z = gen_matrices(rep)
    assert matrix_lie_dim([-1j * X, -1j * Z]) == (3, True)
    assert matrix_lie_dim([-1j * X]) == (1, True)
    assert matrix_lie_dim([-1j * X, -1j * Z, -1j * np.eye(2)]) == (4, False)


EXPECTED = {
    "pt": "StronglyAnalyticallyControllable",
    "st": "Inconclusive",
    "st1": "ApproxStrongSmoothControllable",
    "bt": "FiniteDimControllable",
    "lloyd": "ApproxStrongSmoothControllable",
    "qubit": "FiniteDimControllable",
    "qubit_homog": "FiniteDimControllable",
    "spin1": "Inconclusive",
}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_preset_verdicts(name):
    system, rep = build_preset(name)
    v = classify(system, Caps(), rep, coverage_order=3)
    assert v.classification == EXPECTED[name]


def test_pt_evidence():
    system, rep = build_preset("pt")
    v = classify(system, Caps(), rep)
    ev = v.evidence
    assert ev["dim_A"] == 4 and ev["A_finite_exact"]
    assert ev["condition_BC"]["holds"]
    assert ev["condition_tangent"]["holds"]


def test_st_evidence():
    system, rep = build_preset("st")
    ev = classify(system, Caps(), rep).evidence
    assert ev["failed"] == ["condition_BC"] and ev["dim_B"] == 3
    assert "witness" in ev["condition_BC"]


def test_st1_evidence():
    system, rep = build_preset("st1")
    ev = classify(system, Caps(), rep, coverage_order=3).evidence
    assert ev["coverage_A"]["fraction"] == "19/19"
    assert ev["A_cap_growing"] and ev["dim_A_by_cap"] == {"3": 19, "4": 34}
    assert ev["span_C_equals_span_A"]


def test_homogeneous_qubit_with_one_control():
    alg, rep = spin_half()
    system = ControlSystem("one", alg, EnvElement(alg), [env_gen(alg, "Lx").scale(-I)],
                           target="sphere")
    v = classify(system, Caps(), rep)
    assert v.classification == "Inconclusive"
    assert v.evidence["dim_A_matrix"] == 1
    assert v.evidence["matrix_rank_test"]["necessity_applies"]


def test_no_go_for_finite_algebra_on_infinite_sphere():
    alg = algebra("su11_potential")
    Lx, Ly, Lz = (env_gen(alg, g) for g in alg.labels)
    system = ControlSystem("nogo", alg, Lz.scale(-I), [Lx.scale(-I)], target="sphere")
    rep = RepSpec(alg, "su11-discrete-plus", K=20, j=1)
    v = classify(system, Caps(order_cap=3), rep)
    assert v.classification == "NoGoStrong"


def test_evidence_independent_of_threads():
    system, rep = build_preset("st1")
    a = classify(system, Caps(), rep, threads=1, coverage_order=3).evidence
    b = classify(system, Caps(), rep, threads=4, coverage_order=3).evidence
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_orbit_samples_are_unit_and_interior():
    system, rep = build_preset("pt")
    samples = orbit_samples(system, rep, 4, seed=42)
    assert len(samples) == 3
    for phi, tail in samples:
        assert abs(np.linalg.norm(phi) - 1) < 1e-12
        assert not np.any(phi[rep.interior(4):])
        assert tail < 1e-8


def test_caps_validation():
    with pytest.raises(ValueError):
        Caps(order_cap=0)
