import pytest

from qcousin import PresentedModule, QuantumAlgebra, UnsupportedError
from qcousin.cli import engine_pipeline
from qcousin.oracle import CommutativeModuleSpec, oracle_pipeline
from battery import BATTERY, build


def spec_of(n, rel=None):
    A = QuantumAlgebra(n, "rationals")
    return CommutativeModuleSpec.from_presented(PresentedModule(A, (0,), [A.parse(rel)] if rel else []))


def test_hilbert_of_plane():
    assert oracle_pipeline(spec_of(1), "hilbert", {"degrees": [0, 1, 2, 3]})["dims"] == [1, 2, 3, 4]


def test_cech_line():
    rep = oracle_pipeline(spec_of(1), "cech", {"pole_max": 4})
    assert rep["relative"]["0/empty"]["1"] == {str(p): p for p in range(1, 5)}
    assert rep["relative"]["0/empty"]["0"] == {str(p): 0 for p in range(1, 5)}


def test_torsion_full_module():
    rep = oracle_pipeline(spec_of(1, "x2"), "torsion", {"word": (0, 1), "degrees": [0, 1, 2]})
    assert rep["dims"] == [1, 1, 1]


@pytest.mark.parametrize("field", ["generic_q", "cyclotomic:4"])
def test_rejects_generic_q(field):
    with pytest.raises(UnsupportedError, match="oracle supports q=1 only"):
        oracle_pipeline(spec_of(1), "hilbert", {}, field)
    A = QuantumAlgebra(1, field)
    with pytest.raises(UnsupportedError):
        CommutativeModuleSpec.from_presented(PresentedModule(A, (0,)))


def test_independence_from_engine_arithmetic():
    import ast
    import inspect

    import qcousin.oracle as oracle

    tree = ast.parse(inspect.getsource(oracle))
    imported = set()
    for node in ast.walk(tree):
        if isinstance(node, ast.ImportFrom) and node.level:
            imported.add(node.module)
    assert imported <= {"errors"}


@pytest.mark.parametrize("name", sorted(BATTERY))
def test_torsion_matches(name):
    M = build(name)
    spec = CommutativeModuleSpec.from_presented(M)
    for i in range(M.alg.nvars):
        params = {"word": M.alg.unit_vector(i), "degrees": [0, 1, 2, 3]}
        assert engine_pipeline(M, "torsion", params) == oracle_pipeline(spec, "torsion", params)
