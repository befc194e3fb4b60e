"""Biorthogonal polynomial families from the Gauss-Borel factorization.

Factor a quasi-definite Gram matrix as G = L D U. The rows of S1 = L^{-1}
are the coefficients of the monic polynomials P_{1,k}(x), the rows of
S2 = U^{-T} those of P_{2,k}(y), and the pivots H_k = D_k are the pairing
values <P_{1,k}, P_{2,k}>; the two sequences are biorthogonal by
construction. When G is Hankel the two families coincide and everything
reduces to classical orthogonal polynomials.

On top of the factorization this module builds the spectral (Jacobi-like)
matrices J = S Lambda S^{-1}, three-term recurrence data, second-kind
functions from Cauchy-transformed moments, the Christoffel-Darboux kernels
(plain, mixed, and the ABC inverse-block form), and the Heine multi-sum
oracle, a deliberately brute-force alternative route to P_k used as an
independent cross-check.

Truncation boundaries: a size-n family certifies polynomials up to degree
n-1; the spectral matrix is valid on its leading (n-1) x (n-1) block only,
and callers asking past such limits get InsufficientTruncation.
"""

import itertools
import math
from dataclasses import dataclass

from .errors import InsufficientTruncation, NotHankel, OpgbError, UnsupportedMeasure
from .gram import DiscreteMeasure, cauchy_moments, gram_matrix
from .numlin import (
    Matrix,
    det,
    is_hankel,
    ldu_factorize,
    shift_matrix,
    solve_vector,
    unit_lower_inverse,
)
from .poly import exact_div, poly_eval, poly_trim
from .scalars import is_zero


@dataclass(frozen=True)
class BiorthFamilies:
    s1: Matrix
    s2: Matrix
    h: tuple
    gram: Matrix
    hankel: bool

    @property
    def size(self) -> int:
        return len(self.h)

    def poly1(self, k: int):
        """Ascending coefficients of the monic P_{1,k}."""
        return self.s1.rows[k][: k + 1]

    def poly2(self, k: int):
        return self.s2.rows[k][: k + 1]


@dataclass(frozen=True)
class SpectralMatrix:
    j: Matrix
    side: int


@dataclass(frozen=True)
class SecondKindValues:
    point: object
    values1: tuple
    values2: tuple


def build_families(g: Matrix, n: int | None = None, allow_final_zero: bool = False) -> BiorthFamilies:
    """Factor the leading n x n block of g into a biorthogonal pair.

    allow_final_zero admits a rank-deficient last row (h[-1] = 0), the case
    of a moment matrix one order past the rank of its measure; the final
    polynomials are still well defined and only the last pairing vanishes.
    """
    if n is None:
        n = g.shape[0]
    lo, d, up = ldu_factorize(g, n, allow_final_zero=allow_final_zero)
    block = g.leading(n)
    return BiorthFamilies(
        s1=unit_lower_inverse(lo),
        s2=unit_lower_inverse(up.transpose()),
        h=tuple(d),
        gram=block,
        hankel=is_hankel(block),
    )


def family_from_measure(source, n: int) -> BiorthFamilies:
    return build_families(gram_matrix(source, n))


def eval_poly(f: BiorthFamilies, side: int, k: int, x):
    if k >= f.size:
        raise InsufficientTruncation(f"degree {k} exceeds truncation {f.size}")
    row = f.poly1(k) if side == 1 else f.poly2(k)
    return poly_eval(row, x)


def spectral_matrix(f: BiorthFamilies, side: int) -> SpectralMatrix:
    """Valid (n-1) x (n-1) block of S Lambda S^{-1}, lower uni-Hessenberg.

    The last row of the n x n conjugation is polluted by the truncation of
    Lambda and is dropped. The strict upper part is checked against the
    uni-Hessenberg pattern (ones on the superdiagonal, zeros beyond) and
    then snapped to it exactly, which silences float roundoff.
    """
    n = f.size
    if n < 2:
        raise InsufficientTruncation("spectral matrix needs truncation order >= 2")
    s = f.s1 if side == 1 else f.s2
    full = s @ shift_matrix(n) @ unit_lower_inverse(s)
    j = full.leading(n - 1)
    for k in range(n - 1):
        for l in range(k + 1, n - 1):
            want = 1 if l == k + 1 else 0
            if not is_zero(j.rows[k][l] - want, 1e-9):
                raise OpgbError(f"Hessenberg pattern violated at ({k}, {l})")
            j.rows[k][l] = want
    return SpectralMatrix(j=j, side=side)


def three_term_coeffs(f: BiorthFamilies):
    """Hankel three-term data: x P_k = P_{k+1} + a_k P_k + b_k P_{k-1}.

    Returns (b, a) with b[k] = H_k/H_{k-1} for k >= 1 (b[0] = 0 padding)
    and a[k] = S_{k,k-1} - S_{k+1,k} for k <= n-2.
    """
    if not f.hankel:
        raise NotHankel("three-term recurrence needs a Hankel Gram matrix")
    n = f.size
    b = [0] + [exact_div(f.h[k], f.h[k - 1]) for k in range(1, n)]
    a = []
    for k in range(n - 1):
        below = f.s1.rows[k][k - 1] if k >= 1 else 0
        a.append(below - f.s1.rows[k + 1][k])
    return b, a


def cd_kernel(f: BiorthFamilies, n: int, x, y):
    """K_n(x,y) = sum_{k<=n} P_{2,k}(y) H_k^{-1} P_{1,k}(x)."""
    if n >= f.size:
        raise InsufficientTruncation(f"kernel order {n} exceeds truncation {f.size}")
    acc = 0
    for k in range(n + 1):
        acc = acc + exact_div(poly_eval(f.poly2(k), y) * poly_eval(f.poly1(k), x), f.h[k])
    return acc


def p2_combination(f: BiorthFamilies, factors):
    """Ascending y-coefficients of sum_k factors[k] P_{2,k}(y)."""
    out = [0] * len(factors)
    for k, c in enumerate(factors):
        if c == 0:
            continue
        for j, pc in enumerate(f.poly2(k)):
            out[j] = out[j] + c * pc
    return poly_trim(out)


def cd_kernel_poly_y(f: BiorthFamilies, n: int, x):
    """K_n(x, y) as a polynomial in y for a fixed scalar x."""
    if n >= f.size:
        raise InsufficientTruncation(f"kernel order {n} exceeds truncation {f.size}")
    return p2_combination(
        f, [exact_div(poly_eval(f.poly1(k), x), f.h[k]) for k in range(n + 1)]
    )


def mixed_cd_kernel(f: BiorthFamilies, c1: SecondKindValues, n: int, y):
    """K^mix_n(x,y) = sum_{k<=n} P_{2,k}(y) H_k^{-1} C_{1,k}(x), x baked into c1."""
    if n >= f.size:
        raise InsufficientTruncation(f"kernel order {n} exceeds truncation {f.size}")
    acc = 0
    for k in range(n + 1):
        acc = acc + exact_div(poly_eval(f.poly2(k), y) * c1.values1[k], f.h[k])
    return acc


def abc_kernel(g: Matrix, l: int, x, y):
    """K^{[l]}(x,y) = chi(y)^T (G^{[l]})^{-1} chi(x) by exact solve."""
    w = solve_vector(g.leading(l), [x**j for j in range(l)])
    return sum(y**j * w[j] for j in range(l))


def second_kind_values(f: BiorthFamilies, m: DiscreteMeasure, a) -> SecondKindValues:
    """C_{i,k}(a) = sum_j S_i[k,j] c_j(a) for both families."""
    return second_kind_from_cauchy(f, a, cauchy_moments(m, a, f.size - 1))


def second_kind_from_cauchy(f: BiorthFamilies, a, c) -> SecondKindValues:
    """Second-kind values from an externally supplied Cauchy-moment list.

    Lets continuous measures in: the caller provides c_j(a) (typically from
    cauchy_from_c0 with a float c_0) and the S matrices do the rest.
    """
    v1 = tuple(sum(f.s1.rows[k][j] * c[j] for j in range(k + 1)) for k in range(f.size))
    v2 = tuple(sum(f.s2.rows[k][j] * c[j] for j in range(k + 1)) for k in range(f.size))
    return SecondKindValues(point=a, values1=v1, values2=v2)


def second_kind_series(f: BiorthFamilies, z: float):
    """Truncated Laurent series H S_2^{-T} chi^*(z), float mode.

    chi^*(z) = (z^{-1}, z^{-2}, ...); the series represents C_{1,k}(z) for
    |z| beyond the support and is only as good as the truncation allows.
    """
    s2inv = unit_lower_inverse(f.s2)
    n = f.size
    out = []
    for k in range(n):
        acc = 0.0
        for l in range(k, n):
            acc += float(f.h[k]) * float(s2inv.rows[l][k]) * float(z) ** (-(l + 1))
        out.append(acc)
    return out


def moment_from_spectral(f: BiorthFamilies, j: int):
    """m_j / m_0-free form: (J^j)_{0,0} H_0, valid for j <= 2k-1 on a k x k block."""
    jm = spectral_matrix(f, 1).j
    k = jm.shape[0]
    if j > 2 * k - 1:
        raise InsufficientTruncation(f"moment index {j} needs a larger truncation")
    power = Matrix.identity(k)
    for _ in range(j):
        power = power @ jm
    return power.rows[0][0] * f.h[0]


def heine_oracle(m: DiscreteMeasure, k: int, x):
    """P_k(x) by the Heine multi-sum over ordered k-tuples of atoms.

    P_k(x) = 1/(k! det G^{[k]}) * sum over tuples (x_1..x_k) of
    prod w_i * prod (x - x_i) * prod_{i<j} (x_j - x_i)^2. Cost grows as
    atoms^k; this exists purely as an independent oracle for small k.
    """
    if m.max_derivative_order() > 0:
        raise UnsupportedMeasure("Heine sum is defined for plain point masses only")
    if k == 0:
        return 1 if not isinstance(x, float) else 1.0
    atoms = m.atoms
    total = 0
    for combo in itertools.product(atoms, repeat=k):
        term = 1
        for a in combo:
            term = term * a.w * (x - a.q)
        for i in range(k):
            for j in range(i + 1, k):
                term = term * (combo[j].q - combo[i].q) ** 2
        total = total + term
    return exact_div(total, math.factorial(k) * det(gram_matrix(m, k)))
