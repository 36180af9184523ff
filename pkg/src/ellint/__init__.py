"""Plane-wave integral representations of Eisenstein series and Weierstrass
elliptic functions, with brute-force oracles to check them."""
from .eisenstein import (
    EisensteinValue,
    aspect_delta,
    continue_entire,
    convention_offset,
    convert_convention,
    eisenstein_square_lattice,
    eisenstein_tilde,
    square_limit_correction,
    weight_two_jump,
)
from .errors import (
    AccuracyError,
    DomainError,
    EllintError,
    InvalidLatticeError,
    PoleError,
    SingularParameterError,
    UnsupportedConversionError,
)
from .lattice import (
    ComplexOrder,
    GeneratorPair,
    NormalizedLattice,
    SummationConvention,
    reduce_to_fundamental,
)
from .weierstrass import EllipticValue, in_domain_D, wp, wp_homogeneous, wzeta, wzeta_homogeneous

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "ComplexOrder",
    "DomainError",
    "EisensteinValue",
    "EllintError",
    "EllipticValue",
    "GeneratorPair",
    "InvalidLatticeError",
    "NormalizedLattice",
    "PoleError",
    "SingularParameterError",
    "SummationConvention",
    "UnsupportedConversionError",
    "aspect_delta",
    "continue_entire",
    "convention_offset",
    "convert_convention",
    "eisenstein_square_lattice",
    "eisenstein_tilde",
    "in_domain_D",
    "reduce_to_fundamental",
    "square_limit_correction",
    "weight_two_jump",
    "wp",
    "wp_homogeneous",
    "wzeta",
    "wzeta_homogeneous",
]
