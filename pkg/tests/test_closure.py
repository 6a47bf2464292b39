import pytest

from liereach.algebra import AlgebraError
from liereach.closure import (Echelon, build_C, check_bc_in_b, lie_closure, pbw_coverage)
from liereach.envelope import EnvElement, env_bracket, env_gen, env_scalar, order_of
from liereach.gaussian import gq
from liereach.presets import algebra
from liereach.systems import build_preset

I = gq(0, 1)


def gens(name):
    alg = algebra(name)
    return alg, [env_gen(alg, lab) for lab in alg.labels]


def span_contains(res, el):
    return res.echelon.contains(el.terms)


def test_pt_closure_is_four_dimensional():
    alg, (Lx, Ly, Lz) = gens("su11_potential")
    C = Lx * Lx + Ly * Ly - Lz * Lz + env_scalar(alg, gq(1, 0) / 4)
    res = lie_closure(alg, [C, Lx, Ly], 4)
    assert res.dim == 4 and res.saturated and res.finite_exact
    for el in (C, Lx, Ly, Lz):
        assert span_contains(res, el)


def test_single_generator():
    alg, (Lx, Ly, Lz) = gens("su2")
    res = lie_closure(alg, [Lz], 3)
    assert res.dim == 1 and res.saturated and res.iterations == 1


def test_st_closure_grows_with_cap():
    system, _ = build_preset("st")
    dims, orders = [], []
    for cap in (2, 3, 4):
        res = lie_closure(system.algebra, list(system.hamiltonians), cap)
        assert res.saturated and res.truncation_hit and not res.finite_exact
        dims.append(res.dim)
        orders.append(res.max_order)
    assert orders == [2, 3, 4]
    assert dims == [9, 19, 34]  # frozen from the first exact computation


def test_closure_dim_monotone_in_cap():
    for name in ("pt", "st", "st1", "bt"):
        system, _ = build_preset(name)
        dims = [lie_closure(system.algebra, list(system.hamiltonians), cap).dim
                for cap in (2, 3, 4)]
        assert dims == sorted(dims)


def test_closure_argument_errors():
    alg, (Lx, Ly, Lz) = gens("su2")
    with pytest.raises(AlgebraError):
        lie_closure(alg, [], 3)
    with pytest.raises(AlgebraError):
        lie_closure(alg, [Lx], 0)
    with pytest.raises(AlgebraError):
        lie_closure(alg, [Lx * Lx * Lx], 2)


def test_threads_do_not_change_result():
    system, _ = build_preset("st1")
    a = lie_closure(system.algebra, list(system.hamiltonians), 3)
    b = lie_closure(system.algebra, list(system.hamiltonians), 3, threads=4)
    assert [x.render() for x in a.basis] == [x.render() for x in b.basis]


def test_build_c_pt_equals_b():
    system, _ = build_preset("pt")
    alg = system.algebra
    B = lie_closure(alg, list(system.controls), 4)
    C = build_C(alg, system.H0, B, None, 4)
    assert B.dim == C.dim == 3
    assert all(B.echelon.contains(c.terms) for c in C.basis)


def test_build_c_zero_drift():
    alg, (Lx, Ly, Lz) = gens("su2")
    B = lie_closure(alg, [Lx, Ly], 3)
    C = build_C(alg, EnvElement(alg), B, 3, 3)
    assert C.dim == B.dim


def test_st_c_contains_order_two_and_bc_fails():
    system, _ = build_preset("st")
    alg = system.algebra
    Lx, Ly, Lz = (env_gen(alg, g) for g in alg.labels)
    B = lie_closure(alg, list(system.controls), 4)
    assert B.dim == 3
    C = build_C(alg, system.H0, B, None, 4)
    assert span_contains(C, (Ly * Lz).scale(gq(0, 2)) - Lx)
    bc = check_bc_in_b(B, C, 4)
    assert not bc.holds
    b, c = bc.witness
    assert order_of(b) == 1 and order_of(bc.residual) >= 2
    assert not B.echelon.contains(env_bracket(alg, b, c).terms)


def test_bc_holds_pt_and_st1():
    for name in ("pt", "st1"):
        system, _ = build_preset(name)
        alg = system.algebra
        B = lie_closure(alg, list(system.controls), 4)
        C = build_C(alg, system.H0, B, None, 4)
        assert check_bc_in_b(B, C, 4).holds


def test_coverage_examples():
    system, _ = build_preset("st1")
    res = lie_closure(system.algebra, list(system.hamiltonians), 4)
    cov = pbw_coverage(res, 3)
    assert (cov.covered, cov.total, cov.missing) == (19, 19, [])
    alg, (Lx, Ly, Lz) = gens("su2")
    one = lie_closure(alg, [Lx], 2)
    cov = pbw_coverage(one, 2)
    assert (cov.covered, cov.total) == (1, 9)
    with pytest.raises(AlgebraError):
        pbw_coverage(one, 3)


def test_lloyd_coverage_weyl_and_without_kerr():
    system, _ = build_preset("lloyd")
    w = system.specialized()
    full = pbw_coverage(lie_closure(w.algebra, list(w.controls), 4), 3)
    assert full.fraction == 1 and full.total == 9
    no_kerr = pbw_coverage(lie_closure(w.algebra, list(w.controls[:3]), 4), 3)
    assert no_kerr.covered == 3 and no_kerr.fraction < 1


def test_lloyd_free_central_variable_cannot_cover():
    # with I kept as a PBW variable every bracket carries a factor of I
    system, _ = build_preset("lloyd")
    res = lie_closure(system.algebra, list(system.controls), 4)
    cov = pbw_coverage(res, 3)
    x3 = (3, 0, 0)
    assert x3 in cov.missing and cov.fraction < 1


def test_echelon_basics():
    ech = Echelon()
    a = {(1, 0): gq(2)}
    assert ech.insert(a) == {(1, 0): gq(1)}
    assert ech.insert({(1, 0): gq(0, 5)}) is None
    assert ech.contains({(1, 0): gq(3)})
    assert not ech.contains({(0, 1): gq(1)})
