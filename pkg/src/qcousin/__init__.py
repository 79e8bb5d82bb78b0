"""Cousin complexes over quantum projective space, computed exactly by linear algebra."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ConfigurationError,
    FieldArithmeticError,
    InclusionError,
    ParseError,
    QCousinError,
    UnsupportedError,
    ValidationError,
)
from .scalar import field_from_spec  # noqa: E402
from .skewalg import QuantumAlgebra, SkewPolynomial, kappa  # noqa: E402
from .modpres import ModuleMap, PresentedModule, direct_sum, free_module  # noqa: E402
from .sections import quotient_sections, supported_sections  # noqa: E402
from .cech import RelativeComplex, build_cech, complex_cohomology  # noqa: E402
from .cousin import build_cousin, verify_cousin  # noqa: E402

__all__ = [
    "__version__",
    "QCousinError",
    "ConfigurationError",
    "FieldArithmeticError",
    "ValidationError",
    "InclusionError",
    "ParseError",
    "UnsupportedError",
    "field_from_spec",
    "QuantumAlgebra",
    "SkewPolynomial",
    "kappa",
    "PresentedModule",
    "ModuleMap",
    "free_module",
    "direct_sum",
    "supported_sections",
    "quotient_sections",
    "build_cech",
    "RelativeComplex",
    "complex_cohomology",
    "build_cousin",
    "verify_cousin",
]
