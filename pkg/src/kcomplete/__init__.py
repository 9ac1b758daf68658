"""Exact distribution of the cheapest k-assignment in a random exponential
matrix that already contains a zero-cost (k-1)-assignment."""

from .cover_lattice import CriticalLattice, build_lattice
from .formulas import (
    ExpMixture,
    expectation_chain_form,
    expectation_interval_form,
    genericity,
    laplace_chain_form,
    laplace_inverse_form,
)
from .matrix_model import ZERO, Hypothesis, MatrixSpec, hypothesis_class
from .polynomial import Polynomial, RationalFunction
from .recursion import expectation_recursive, laplace_recursive, partial_fractions

__version__ = "0.1.0"

__all__ = [
    "ZERO",
    "CriticalLattice",
    "ExpMixture",
    "Hypothesis",
    "MatrixSpec",
    "Polynomial",
    "RationalFunction",
    "build_lattice",
    "expectation_chain_form",
    "expectation_interval_form",
    "expectation_recursive",
    "genericity",
    "hypothesis_class",
    "laplace_chain_form",
    "laplace_inverse_form",
    "laplace_recursive",
    "partial_fractions",
]
