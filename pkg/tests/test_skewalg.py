from math import comb

import pytest
from hypothesis import given, strategies as st

from qcousin import QuantumAlgebra, field_from_spec, kappa
from qcousin.skewalg import multiply
from conftest import FIELDS


def test_swap_rule():
    A = QuantumAlgebra(1, "generic_q")
    q = A.field.q
    assert A.var(2) * A.var(1) == A.monomial((1, 1), q.inverse())
    assert A.var(1) * A.var(2) == A.monomial((1, 1))
    assert A.var(2) ** 2 * A.var(1) == A.monomial((1, 2), A.field.q_power(-2))


def test_phi_examples():
    A = QuantumAlgebra(1, "generic_q")
    x1 = A.var(1)
    assert A.phi_twist((0, 1), x1) == A.monomial((1, 0), A.field.q_power(-1))
    u = A.monomial((1, 1))
    assert u * x1 == A.phi_twist((1, 1), x1) * u


def test_phi_identity_at_q1():
    A = QuantumAlgebra(2, "rationals")
    f = A.parse("x1*x2 + 3*x3^2")
    assert A.phi_twist((2, 1, 0), f) == f


def test_parse_and_print():
    A = QuantumAlgebra(1, "generic_q")
    f = A.parse("x2*x1")
    assert f == A.monomial((1, 1), A.field.q_power(-1))
    assert A.parse(str(f)) == f


def test_mismatched_algebras():
    from qcousin import ConfigurationError

    with pytest.raises(ConfigurationError):
        QuantumAlgebra(1, "generic_q").var(1) * QuantumAlgebra(2, "generic_q").var(1)


@pytest.mark.parametrize("spec", FIELDS)
def test_pbw_dimensions(spec):
    for n in (1, 2, 3):
        A = QuantumAlgebra(n, spec)
        for d in range(11):
            assert len(A.monomials(d)) == comb(n + d, n)


def _poly(A, max_deg=3, homogeneous=None):
    words = st.tuples(*[st.integers(0, max_deg)] * A.nvars)
    if homogeneous is not None:
        words = st.sampled_from(A.monomials(homogeneous))
    coeff = st.integers(-3, 3).filter(bool)
    return st.dictionaries(words, st.tuples(coeff, st.integers(-2, 2)), max_size=3).map(
        lambda d: sum((A.monomial(w, A.field(c) * A.field.q_power(e)) for w, (c, e) in d.items()), A.zero())
    )


@pytest.mark.parametrize("spec", FIELDS)
@given(data=st.data())
def test_associativity(spec, data):
    n = data.draw(st.integers(1, 3))
    A = QuantumAlgebra(n, spec)
    f, g, h = (data.draw(_poly(A, homogeneous=data.draw(st.integers(0, 3)))) for _ in range(3))
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@pytest.mark.parametrize("spec", FIELDS)
@given(data=st.data())
def test_phi_is_algebra_map(spec, data):
    A = QuantumAlgebra(2, spec)
    u = data.draw(st.tuples(*[st.integers(0, 2)] * 3))
    f, g = data.draw(_poly(A, 2)), data.draw(_poly(A, 2))
    assert A.phi_twist(u, f * g) == A.phi_twist(u, f) * A.phi_twist(u, g)
    U = A.monomial(u)
    assert U * f == A.phi_twist(u, f) * U


def _commutative_product(f, g):
    out = {}
    for a, ca in f.items():
        for b, cb in g.items():
            w = tuple(x + y for x, y in zip(a, b))
            out[w] = out.get(w, 0) + ca * cb
    return {w: c for w, c in out.items() if c}


@given(data=st.data())
def test_q1_matches_commutative_product(data):
    A = QuantumAlgebra(2, "rationals")
    f, g = data.draw(_poly(A, 3)), data.draw(_poly(A, 3))
    expect = _commutative_product({w: c for w, c in f.terms.items()}, {w: c for w, c in g.terms.items()})
    assert multiply(f, g).terms == expect


def test_kappa_definition():
    assert kappa((1, 0), (0, 1)) == 0
    assert kappa((0, 1), (1, 0)) == 1
    assert kappa((0, 2, 1), (3, 1, 0)) == 2 * 3 + 1 * 3 + 1 * 1
