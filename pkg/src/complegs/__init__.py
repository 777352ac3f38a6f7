"""Rational homology ball fillings of small Seifert fibered spaces with complementary legs.

Exact arithmetic throughout (:class:`fractions.Fraction` and Python integers).
"""
from .classify import (
    FillingVerdict,
    Kind,
    Rule,
    Smooth,
    Spherical,
    SymplecticCount,
    smooth_verdict,
    spherical_table,
    symplectic_verdict,
    theta_gate,
)
from .errors import CFDivisionByZero, DomainError, InvariantViolation, SingularMatrix
from .lisca import RCertificate, all_certificates, r_membership, verify_certificate
from .matrix import ExactMatrix, q_inverse_direct
from .plumbing import (
    assemble_q,
    q_inverse_blocks,
    theta_canonical_formula,
    theta_canonical_matrix,
    theta_lens_canonical,
    theta_nonbalanced,
)
from .rationals import (
    CFString,
    cf_evaluate,
    cf_expand,
    i_value,
    riemenschneider_dual,
    split_framing,
)
from .seifert import SeifertData, reverse_orientation, y_mhn

__version__ = "0.1.0"
