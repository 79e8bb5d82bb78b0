import pytest
from hypothesis import given, strategies as st

from qcousin import ModuleMap, PresentedModule, QuantumAlgebra, ValidationError, direct_sum, free_module
from qcousin.linalg import LinearMap
from qcousin.skewalg import kappa
from battery import BATTERY, MONOMIAL, build
from conftest import FIELDS


def quotient(n, text, field="generic_q"):
    A = QuantumAlgebra(n, field)
    return PresentedModule(A, (0,), [A.parse(text)] if text else [])


def test_piece_dimensions():
    assert quotient(2, "").graded_piece(2).dim == 6
    assert quotient(2, "x3").graded_piece(3).dim == 4
    A = QuantumAlgebra(2, "generic_q")
    assert free_module(A, (1,)).graded_piece(0).dim == 0


def test_hilbert_functions():
    assert quotient(2, "").hilbert_function(range(4)) == [1, 3, 6, 10]
    assert quotient(2, "x3").hilbert_function(range(4)) == [1, 2, 3, 4]
    A = QuantumAlgebra(2, "generic_q")
    assert free_module(A, (2,)).hilbert_function(range(3)) == [0, 0, 1]


def test_mult_map_examples():
    M = quotient(1, "")
    m = M.mult_map(0, (1, 0))
    assert m.rank() == 1 and m.kernel().rank == 0
    assert m.image().rank == 1
    N = quotient(2, "x3")
    assert N.mult_map(0, (0, 0, 1)).matrix.is_zero()


def test_mult_map_composition_example():
    M = quotient(1, "")
    q = M.field.q
    lhs = M.mult_map(1, (0, 1)).matrix.compose(M.mult_map(0, (1, 0)).matrix)
    assert lhs == M.mult_map(0, (1, 1)).matrix.scaled(q.inverse())


def test_quotient_basis_of_degree_one():
    M = quotient(1, "x1")
    P = M.graded_piece(1)
    assert P.dim == 1
    assert P.format({0: M.field.one}) == "x2*e"


def test_torsion_examples():
    T = quotient(2, "").torsion_submodule((0, 0, 1))
    assert T.p_star == 1 and T.piece(0).rank == 0 and T.revalidated
    T = quotient(2, "x3").torsion_submodule((0, 0, 1))
    assert T.p_star == 1 and T.piece(0).rank == 1 and T.piece(2).rank == 3
    A = QuantumAlgebra(2, "generic_q")
    S = direct_sum(free_module(A), quotient(2, "x3"))
    T = S.torsion_submodule((0, 0, 1))
    for d in range(3):
        assert T.piece(d).rank == quotient(2, "x3").graded_piece(d).dim
    assert T.piece(1).rank == 2


def test_torsion_needs_two_steps():
    T = quotient(2, "x3^2").torsion_submodule((0, 0, 1))
    assert T.p_star == 2 and T.piece(0).rank == 1


def test_windowed_reports_status():
    W = quotient(2, "x3^3").torsion_submodule((0, 0, 1), mode="windowed", p_max=2, window=2)
    assert W.status == "unstable"
    W = quotient(2, "x3").torsion_submodule((0, 0, 1), mode="windowed", p_max=4, window=2)
    assert W.status == "stable" and W.union.rank == 1


def test_module_map_examples():
    M = quotient(2, "")
    ident = ModuleMap.identity(M)
    assert ident.piece_map(2).matrix == LinearMap.identity(M.field, 6)
    proj = ModuleMap(M, quotient(2, "x3"), [{(0, (0, 0, 0)): M.field.one}])
    pm = proj.piece_map(1)
    assert pm.rank() == 2 and pm.matrix.is_surjective()
    A = QuantumAlgebra(1, "generic_q")
    r = ModuleMap.right_multiplication(free_module(A, (1,)), free_module(A, (0,)), A.var(1))
    assert r.piece_map(1).rank() == 1


def test_incompatible_map_names_relation():
    A = QuantumAlgebra(1, "generic_q")
    src = PresentedModule(A, (0,), [A.parse("x1")])
    with pytest.raises(ValidationError, match="relation 1"):
        ModuleMap(src, free_module(A), [{(0, (0, 0)): A.field.one}])


def test_inhomogeneous_relation_rejected():
    A = QuantumAlgebra(1, "generic_q")
    with pytest.raises(ValidationError, match="relation 1"):
        PresentedModule(A, (0,), [A.parse("x1 + x1^2")])


def test_functoriality():
    A = QuantumAlgebra(1, "generic_q")
    F = free_module(A)
    f = ModuleMap(F, F, [{(0, (1, 0)): A.field.one}], shift=1)
    g = ModuleMap(F, F, [{(0, (0, 1)): A.field.one}], shift=1)
    for d in range(3):
        assert g.compose(f).piece_map(d).matrix == g.piece_map(d + 1).matrix.compose(f.piece_map(d).matrix)


@pytest.mark.parametrize("name", MONOMIAL)
def test_monomial_flatness(name):
    dims = {spec: build(name, spec).hilbert_function(range(5)) for spec in FIELDS}
    assert len(set(map(tuple, dims.values()))) == 1


@pytest.mark.parametrize("spec", ["rationals", "generic_q", "cyclotomic:4"])
@given(data=st.data())
def test_mult_map_composition(spec, data):
    name = data.draw(st.sampled_from(sorted(BATTERY)))
    M = build(name, spec)
    w = st.tuples(*[st.integers(0, 2)] * M.alg.nvars)
    u, v, d = data.draw(w), data.draw(w), data.draw(st.integers(0, 2))
    lhs = M.mult_map(d + sum(v), u).matrix.compose(M.mult_map(d, v).matrix)
    k = kappa(u, v)
    rhs = M.mult_map(d, tuple(a + b for a, b in zip(u, v))).matrix.scaled(M.field.q_power(-k))
    assert lhs == rhs


@given(data=st.data())
def test_kernel_chain_monotone(data):
    M = build(data.draw(st.sampled_from(sorted(BATTERY))), "generic_q")
    i = data.draw(st.integers(0, M.alg.n))
    d = data.draw(st.integers(0, 2))
    prev = None
    for p in range(1, 4):
        K = M.mult_map(d, M.alg.unit_vector(i, p)).kernel()
        if prev is not None:
            assert prev <= K
        prev = K


@pytest.mark.parametrize("name", sorted(BATTERY))
def test_certified_matches_windowed(name):
    M = build(name, "generic_q")
    for i in range(M.alg.nvars):
        u = M.alg.unit_vector(i)
        T = M.torsion_submodule(u)
        W = M.torsion_submodule(u, mode="windowed", p_max=max(4, T.p_star + 2), window=2)
        assert W.status == "stable"
        assert W.union == T.piece(0)
