"""Pearson-equation data for the Hermite, Laguerre, and Jacobi weights.

A classical weight u satisfies p2 u' = p1 u with deg p2 <= 2, deg p1 = 1.
Writing p2 = a x^2 + b x + c and A x + B = p2' + p1, integration by parts
of (p2 x^j u)' = 0 turns the Pearson equation into a two-term moment
recurrence, and the same data yields closed forms for the subdiagonal of
the polynomial coefficient matrix and for the eigenvalues of the
second-order operator the family diagonalizes:

    F = d^2/dx^2 p2 + d/dx (A x + B),   F[P_n] = n (A + (n-1) a) P_n.

Everything is exact for rational parameters.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateDenominator, DegenerateRecurrence, UnsupportedMeasure
from .numlin import Matrix, derivative_matrix, polynomial_of_operator, shift_matrix
from .poly import exact_div

FAMILIES = ("hermite", "laguerre", "jacobi")


@dataclass(frozen=True)
class PearsonData:
    a: Fraction | int
    b: Fraction | int
    c: Fraction | int
    A: Fraction | int
    B: Fraction | int

    def p2_coeffs(self):
        return [self.c, self.b, self.a]

    def p1_shifted_coeffs(self):
        # A x + B = p2' + p1
        return [self.B, self.A]


def pearson_data(w) -> PearsonData:
    """Pearson data for a ClassicalWeight-like object (family, alpha, beta)."""
    fam = w.family
    if fam == "hermite":
        return PearsonData(0, 0, 1, -2, 0)
    if fam == "laguerre":
        return PearsonData(0, 1, 0, -1, 1 + w.alpha)
    if fam == "jacobi":
        return PearsonData(-1, 0, 1, -(w.alpha + w.beta + 2), -(w.alpha - w.beta))
    raise UnsupportedMeasure(f"unknown classical family {fam!r}")


def classical_moments(p: PearsonData, j_max: int):
    """Normalized moments m_0..m_{j_max} (m_0 = 1) from the Pearson recurrence.

    (A + j a) m_{j+1} = -(B + j b) m_j - j c m_{j-1}.
    """
    m = [1]
    for j in range(j_max):
        lead = p.A + j * p.a
        if lead == 0:
            raise DegenerateRecurrence(f"A + {j} a = 0 in the moment recurrence")
        rhs = -(p.B + j * p.b) * m[j]
        if j >= 1:
            rhs = rhs - j * p.c * m[j - 1]
        m.append(exact_div(rhs, lead))
    return m


def classical_subdiagonal(p: PearsonData, n: int):
    """Closed form S_{n+1,n} = (n+1)(B + n b) / (A + 2 n a)."""
    den = p.A + 2 * n * p.a
    if den == 0:
        raise DegenerateDenominator(f"A + 2 n a = 0 at n = {n}")
    return exact_div((n + 1) * (p.B + n * p.b), den)


def classical_eigenvalue(p: PearsonData, n: int):
    """Eigenvalue n (A + (n-1) a) of the operator F on the degree-n polynomial."""
    return n * (p.A + (n - 1) * p.a)


def diff_operator_matrix(p: PearsonData, n: int) -> Matrix:
    """Truncated matrix of F: D^2 p2(Lambda) + D (A Lambda + B)."""
    lam = shift_matrix(n)
    dm = derivative_matrix(n)
    return dm @ dm @ polynomial_of_operator(p.p2_coeffs(), lam) + dm @ polynomial_of_operator(
        p.p1_shifted_coeffs(), lam
    )
