import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import PRESET_ALGEBRAS, gaussians
from liereach.algebra import (AlgebraElement, AlgebraError, AlgebraValidationError,
                              StructureAlgebra, adjoint, bracket, bracket_gen,
                              specialize_central, verify_jacobi)
from liereach.gaussian import gq
from liereach.presets import algebra

I = gq(0, 1)


def elements(alg):
    return st.dictionaries(st.integers(0, alg.d - 1), gaussians, max_size=alg.d).map(
        lambda d: AlgebraElement(alg, d))


@pytest.mark.parametrize("name", PRESET_ALGEBRAS)
def test_presets_pass_jacobi(name):
    assert verify_jacobi(algebra(name)) == (True, None)


@pytest.mark.parametrize("name", PRESET_ALGEBRAS)
def test_bracket_gen_antisymmetric(name):
    alg = algebra(name)
    for i, j in itertools.product(range(alg.d), repeat=2):
        assert not (bracket_gen(alg, i, j) + bracket_gen(alg, j, i))


def test_potential_table():
    alg = algebra("su11_potential")
    assert bracket_gen(alg, 0, 1) == AlgebraElement(alg, {2: I})
    assert not bracket_gen(alg, 2, 2)


def test_heisenberg_central_bracket():
    alg = algebra("h1")
    assert bracket_gen(alg, 0, 1) == AlgebraElement(alg, {2: I})
    assert alg.central_flags == (False, False, True)


def test_bracket_gen_index_errors():
    alg = algebra("su2")
    with pytest.raises(AlgebraError):
        bracket_gen(alg, 0, 3)


def test_bilinear_examples():
    alg = algebra("su11_potential")
    Lx, Ly = alg.gen("Lx"), alg.gen("Ly")
    assert bracket(alg, Lx + Ly, Lx) == AlgebraElement(alg, {2: -I})
    assert bracket(alg, Lx * 2, Ly * 3) == AlgebraElement(alg, {2: gq(0, 6)})


def test_bracket_rejects_other_algebra():
    with pytest.raises(AlgebraError):
        bracket(algebra("su2"), algebra("su2").gen(0), algebra("su11_potential").gen(1))


def test_scattering_table_passes():
    alg = algebra("su11_scattering")
    assert bracket_gen(alg, 0, 1) == AlgebraElement(alg, {2: -I})
    assert bracket_gen(alg, 1, 2) == AlgebraElement(alg, {0: -I})


def test_abelian_passes():
    alg = StructureAlgebra.from_brackets("ab2", ("a", "b"), {})
    assert verify_jacobi(alg) == (True, None)


def _flipped_xy(name="su11_potential"):
    base = algebra(name)
    table = dict(base.table)
    table[(0, 1)] = tuple((k, -c) for k, c in table[(0, 1)])
    return StructureAlgebra("mutant", base.labels, table, base.hermitian_flags,
                            base.central_flags)


def test_flipped_single_constant_is_caught():
    # only c[x][y] flipped: antisymmetry breaks, so a repeated-index triple fails
    ok, witness = verify_jacobi(_flipped_xy())
    assert not ok
    assert witness == (0, 0, 1)
    with pytest.raises(AlgebraValidationError) as exc:
        _flipped_xy().validate()
    assert exc.value.kind == "jacobi"
    assert exc.value.witness == (0, 0, 1)


def test_genuine_jacobi_violation_on_distinct_triple():
    # 4 generators: [a,b]=c, [b,c]=d and nothing else breaks Jacobi on (a,b,c)
    alg = StructureAlgebra.from_brackets("bad4", ("a", "b", "c", "d"),
                                         {("a", "b"): {"c": 1}, ("b", "c"): {"d": 1},
                                          ("a", "c"): {"a": 1}}, validate=False)
    ok, witness = verify_jacobi(alg)
    assert not ok and len(set(witness)) >= 2


def test_from_brackets_rejects_inconsistent_orientations():
    with pytest.raises(AlgebraValidationError):
        StructureAlgebra.from_brackets("x", ("a", "b", "c"),
                                       {("a", "b"): {"c": 1}, ("b", "a"): {"c": 1}})


def test_central_flag_checked():
    with pytest.raises(AlgebraValidationError) as exc:
        StructureAlgebra.from_brackets("x", ("a", "b"), {("a", "b"): {"a": 1}},
                                       central_flags=(False, True))
    assert exc.value.kind in ("central", "jacobi")


def test_involution_checked():
    # real structure constant with Hermitian generators is not compatible with dagger
    with pytest.raises(AlgebraValidationError) as exc:
        StructureAlgebra.from_brackets("x", ("a", "b", "c"), {("a", "b"): {"c": 1}})
    assert exc.value.kind == "involution"
    # the same table on skew-Hermitian generators is fine
    alg = StructureAlgebra.from_brackets("so", ("a", "b", "c"),
                                         {("a", "b"): {"c": 1}, ("b", "c"): {"a": 1},
                                          ("c", "a"): {"b": 1}},
                                         hermitian_flags=(-1, -1, -1))
    assert verify_jacobi(alg)[0]


def test_unknown_label():
    with pytest.raises(AlgebraError):
        StructureAlgebra.from_brackets("x", ("a",), {("a", "z"): {"a": 1}})


def test_adjoint_examples():
    alg = algebra("su11_potential")
    assert adjoint(alg, AlgebraElement(alg, {2: I})) == AlgebraElement(alg, {2: -I})
    assert adjoint(alg, alg.gen(0)) == alg.gen(0)
    X = AlgebraElement(alg, {0: I, 1: 1})
    assert adjoint(alg, X) == AlgebraElement(alg, {0: -I, 1: 1})


@pytest.mark.parametrize("name", PRESET_ALGEBRAS)
def test_properties_on_random_elements(name):
    alg = algebra(name)

    @given(elements(alg), elements(alg), elements(alg))
    def check(X, Y, Z):
        assert not bracket(alg, X, X)
        assert bracket(alg, X, Y) == -bracket(alg, Y, X)
        assert adjoint(alg, adjoint(alg, X)) == X
        jac = (bracket(alg, X, bracket(alg, Y, Z)) + bracket(alg, Y, bracket(alg, Z, X))
               + bracket(alg, Z, bracket(alg, X, Y)))
        assert not jac

    check()


def test_specialize_heisenberg():
    w = specialize_central(algebra("h1"), {"I": 1})
    assert w.labels == ("x", "p")
    assert w.unit_entry(0, 1) == I and w.unit_entry(1, 0) == -I
    assert not w.table
    with pytest.raises(AlgebraError):
        specialize_central(algebra("su2"), {"Lx": 1})
