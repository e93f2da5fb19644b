"""Frozen convention calibration for the irreducible matrix elements.

GENERATED CONSTANTS (regenerated and cross-checked by calibrate(); see
tests/test_matrixel.py).  The printed formulas these conventions resolve
carry index typos: as printed, the prefactor's q-binomials vanish at every
off-diagonal label of the fundamental corepresentation, the basic
hypergeometric parameters are inconsistent between the formula and its
stated contraction limit, and the two branch formulas for the momentum
matrix elements place the q-Bessel factor on opposite sides of the z
power.  The choices below are the unique ones that simultaneously pass

  (a) spin-1/2 reproduction: t^(1/2) = [[x, -q^(1/2) u], [q^(1/2) u*, x*]]
      after bridge normalization (the diagonal entries exactly x and x*),
  (b) counit diagonality eps(t^l_ij) = delta_ij at every label,
  (c) entrywise contraction convergence onto the momentum matrix elements.

Series presentation (normal-ordered, region nu = i - j >= 0, i + j <= 0):

  t^l_ij = lambda^l_ij x^(-i-j) (u*)^nu
           2phi1(Q^-(l+j), Q^(l-j+1); Q^(1+nu) | Q, q^(2(1+i+j)) u u*)

with Q = q^2.  Compared to the commonly quoted form the second parameter
is Q^(l-j+1) (not Q^(l+j+1)), the third is Q^(1+nu) (not Q^(l+nu)), and
the argument carries q^(2(1+i+j)) (not -q^2).  The implementation uses the
equivalent closed form from the quantum-plane coaction (matrixel._su_terms)
rather than summing the 2phi1.

Unitary normalization (row weights of the corepresentation):

  N_j^2 = q^(-2(l+j)) q^(2(l+j)(l-j)) / qbinom(2l, l+j; Q)

Contraction bridge: the substituted unitary elements converge onto
BRIDGE(i, j) times the momentum elements, where

  BRIDGE(i, j) = (-q^(-1/2))^(i-j)  for i >= j
  BRIDGE(i, j) = (-q^(+1/2))^(j-i)  for i <= j

so su_matrix_element divides the unitary elements by BRIDGE.  The
substitution evaluates each normal-ordered monomial in the anti-normal
shift presentation (x*)^d u^b (u*)^c x^a; placing the shift letters on the
opposite side is what makes the limit land on the momentum family with
unscaled momentum (the symmetric d^(-j/2) ... d^(-j/2) sandwich of the
printed formulas hints at the same ordering sensitivity).
"""

from __future__ import annotations


def bridge_constant(i, j, q: float) -> complex:
    """Normalization bridge between unitary corep elements and the
    momentum matrix elements under contraction."""
    nu = abs(i - j)
    if i >= j:
        return (-(q ** -0.5)) ** nu
    return (-(q ** 0.5)) ** nu


# gram/transform conventions calibrated in plancherel:
#   momentum lattice p_m = q^m; site cutoff depth D in the regularized
#   trace; per-class kernel order nu = |i - j|
PHI21_SECOND_PARAM = "Q^(l-j+1)"
PHI21_THIRD_PARAM = "Q^(1+i-j)"
PHI21_ARGUMENT = "q^(2(1+i+j)) u u*"
