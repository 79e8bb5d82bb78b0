"""Battery of small presented modules (n <= 2) shared by the test suite."""

from qcousin import PresentedModule, QuantumAlgebra, field_from_spec
from qcousin.textform import parse_vector

# name -> (n, generator degrees, relation texts)
BATTERY = {
    "P1:A": (1, (0,), ()),
    "P1:A/x1": (1, (0,), ("x1*e",)),
    "P1:A/x2": (1, (0,), ("x2*e",)),
    "P1:A/x2^2": (1, (0,), ("x2^2*e",)),
    "P1:A/x1x2": (1, (0,), ("x1*x2*e",)),
    "P1:A+A(-1)": (1, (0, 1), ()),
    "P1:A/(x1,x2)": (1, (0,), ("x1*e", "x2*e")),
    "P2:A": (2, (0,), ()),
    "P2:A/x3": (2, (0,), ("x3*e",)),
    "P2:A/x3^2": (2, (0,), ("x3^2*e",)),
    "P2:A/x2x3": (2, (0,), ("x2*x3*e",)),
    "P2:A/(x2,x3)": (2, (0,), ("x2*e", "x3*e")),
    "P2:A+A/x3": (2, (0, 0), ("x3*e2",)),
    "P2:A/(x1^2-x2x3)": (2, (0,), ("x1^2*e - x2*x3*e",)),
}

MONOMIAL = [k for k in BATTERY if "-" not in k]


def build(name, field="rationals"):
    n, degs, rels = BATTERY[name]
    alg = QuantumAlgebra(n, field_from_spec(field))
    cols = [parse_vector(alg, len(degs), r) for r in rels]
    return PresentedModule(alg, degs, cols, name=name)
