"""Quantum projective spaces: exact q-algebra, projections, pairings and spectral data."""

from fractions import Fraction

from . import _qcpn
from ._qcpn import (
    QScalar,
    casimir_value,
    check_associativity,
    check_equivariance,
    check_projection,
    fredholm_pairing,
    haar,
    holo_dim,
    index_analytic,
    index_numeric,
    index_branch_formula,
    is_zero,
    laplacian_eig,
    laplacian_gap_defect,
    modular_check,
    monopole_curvature,
    normalize,
    pairing_table,
    poincare_pairing,
    projection,
    qfactorial,
    qint,
    qint_half,
    qmultinomial,
    qtrace_projection,
    spectrum,
    stirling1,
    stirling2,
    tau1_pairing,
    triple_axioms,
)


def limit_q1(x):
    """Exact value of a QScalar at q = 1 as a Fraction."""
    num, den = x._limit_q1()
    return Fraction(num, den)


def chern_from_phi(phi):
    return [Fraction(n, d) for n, d in _qcpn._chern_from_phi([Fraction(v) for v in phi])]


def phi_from_chern(ch):
    return [Fraction(n, d) for n, d in _qcpn._phi_from_chern([Fraction(v) for v in ch])]


__all__ = [name for name in dir() if not name.startswith("_") and name != "Fraction"]
