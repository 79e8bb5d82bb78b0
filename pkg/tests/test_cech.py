import pytest
from hypothesis import given, strategies as st

from qcousin import ModuleMap, PresentedModule, QuantumAlgebra, ValidationError, free_module
from qcousin.cech import (
    RelativeComplex,
    build_cech,
    complex_cohomology,
    connecting_map,
    module_chain_map,
    triple_maps,
    verify_l5,
    verify_l6,
    verify_l7,
)
from qcousin.sections import localization_kernel
from battery import BATTERY, build


def quotient(n, text, field="generic_q"):
    A = QuantumAlgebra(n, field)
    return PresentedModule(A, (0,), [A.parse(text)] if text else [])


def test_term_dimensions():
    assert build_cech(quotient(2, ""), 0, 1).term_dims() == [1, 6, 6]


@pytest.mark.parametrize("spec", ["rationals", "generic_q", "cyclotomic:4"])
def test_line_cohomology(spec):
    M = quotient(1, "", spec)
    for p in range(1, 6):
        C = build_cech(M, 0, p)
        assert C.cohomology(0).rank == 0
        assert C.cohomology(1).rank == p


def test_zero_module():
    A = QuantumAlgebra(2, "generic_q")
    Z = PresentedModule(A, (0,), [A.one()])
    for z in range(3):
        C = build_cech(Z, z, 2)
        assert all(C.cohomology(k).rank == 0 for k in C.degrees)


def test_relative_examples():
    M = quotient(1, "")
    for p in range(1, 4):
        R = RelativeComplex(M, 1, 0, p)
        assert R.cohomology(0).rank == p + 1
        assert all(R.cohomology(k).rank == 0 for k in R.degrees if k != 0)
        same = RelativeComplex(M, 0, 0, p)
        assert all(same.cohomology(k).rank == 0 for k in same.degrees)
        absolute = build_cech(M, 0, p)
        rel = RelativeComplex(M, 0, None, p)
        assert all(rel.cohomology(k).rank == absolute.cohomology(k).rank for k in absolute.degrees)


def test_boundary_rank():
    M = quotient(1, "")
    for p in range(1, 4):
        _, _, delta = triple_maps(RelativeComplex(M, 0, None, p), RelativeComplex(M, 1, None, p), RelativeComplex(M, 1, 0, p))
        assert not delta.commutation_failures()
        assert delta.induced(0).rank() == p


def test_boundary_of_zero_source_is_zero():
    A = QuantumAlgebra(1, "generic_q")
    Z = PresentedModule(A, (0,), [A.one()])
    _, _, delta = triple_maps(RelativeComplex(Z, 0, None, 2), RelativeComplex(Z, 1, None, 2), RelativeComplex(Z, 1, 0, 2))
    assert delta.induced(0).is_zero()


def test_boundary_naturality():
    M = quotient(2, "")
    N = quotient(2, "x3")
    f = ModuleMap(M, N, [{(0, (0, 0, 0)): M.field.one}])
    for p in range(1, 4):
        R = {X: (RelativeComplex(X, 1, 0, p), RelativeComplex(X, 2, 0, p), RelativeComplex(X, 2, 1, p)) for X in (M, N)}
        dM = triple_maps(*R[M])[2]
        dN = triple_maps(*R[N])[2]
        f12 = module_chain_map(f, R[M][2], R[N][2])
        f23 = module_chain_map(f, R[M][0], R[N][0])
        for k in R[M][2].degrees:
            assert f23.at(k + 1).compose(dM.at(k)) == dN.at(k).compose(f12.at(k))


@pytest.mark.parametrize("spec", ["rationals", "generic_q"])
def test_l7_plane(spec):
    out = verify_l7(quotient(2, "", spec), p_max=3, triples=[(2, 1, 0)])
    assert out and all(f.status == "pass" for f in out)


def test_l6_line():
    A = QuantumAlgebra(1, "generic_q")
    F1 = free_module(A, (1,))
    M = free_module(A)
    C = PresentedModule(A, (0,), [A.var(1)])
    f = ModuleMap(F1, M, [{(0, (1, 0)): A.field.one}])
    g = ModuleMap(M, C, [{(0, (0, 0)): A.field.one}])
    out = verify_l6((f, g), 1, 0, p_max=3)
    assert out and all(x.status == "pass" for x in out)


def test_connecting_map_rejects_non_exact():
    A = QuantumAlgebra(1, "generic_q")
    M = free_module(A)
    z = ModuleMap(M, M, [{}])
    C = build_cech(M, 0, 1)
    F = module_chain_map(z, C, C)
    with pytest.raises(ValidationError):
        connecting_map(F, F, 0)


def test_l5_scan_reports():
    out = verify_l5(quotient(2, "x3"), 2, 1, t_max=2, p_max=2)
    assert out[0].status == "report"
    assert "t0_vanishing" in out[0].data


@pytest.mark.parametrize("name", sorted(BATTERY))
def test_structural_invariants(name):
    M = build(name, "generic_q")
    n = M.alg.n
    for z1 in range(n + 1):
        for z2 in [None] + list(range(z1 + 1)):
            rep = complex_cohomology(lambda p: RelativeComplex(M, z1, z2, p), 3, 2)
            assert rep.dd_ok and rep.euler_ok and rep.commute_ok


@pytest.mark.parametrize("name", sorted(BATTERY))
def test_h0_realizes_ideal_sections(name):
    M = build(name, "generic_q")
    for z in range(M.alg.n + 1):
        for p in range(1, 4):
            C = build_cech(M, z, p)
            assert C.cocycles(0) == localization_kernel(M, z, p, "ideal")


@given(name=st.sampled_from(sorted(BATTERY)), p=st.integers(1, 4), z=st.integers(0, 2))
def test_dd_zero(name, p, z):
    M = build(name, "cyclotomic:3")
    C = build_cech(M, min(z, M.alg.n), p)
    assert not C.dd_failures()
