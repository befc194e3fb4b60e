"""Christoffel, Geronimus, and linear spectral transformations.

A Christoffel transform multiplies the functional by a monic polynomial
W_C; on the Gram side that is G -> W_C(Lambda) G. A Geronimus transform
divides by W_G and adds free masses at its roots; its Gram matrix solves
G_new (Lambda^T - a) = G one root at a time, which pins everything except
the first column, supplied from Cauchy moments plus the free constants. A
linear spectral (Geronimus-Uvarov) transform composes the two for coprime
W_C, W_G.

For each transform the perturbed family has two independent descriptions:
direct factorization of the perturbed Gram matrix, and the explicit
formulas (quasi-determinant style) in terms of the original polynomials,
kernels, and second-kind functions. The formula implementations live here;
the test suite holds them against the factorization route case by case.

Degree-1 building blocks also act on discrete measures directly
(multiply/divide by a linear factor, including derivative atoms via the
Leibniz rule), which gives the measure-level oracle for the Markov
function identities.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .biorth import (
    BiorthFamilies,
    SecondKindValues,
    build_families,
    cd_kernel_poly_y,
    p2_combination,
)
from .config import CONFIG
from .errors import (
    InsufficientTruncation,
    NotCoprime,
    NotHankel,
    OpgbError,
    PoleAtAtom,
    SingularJetMatrix,
    SingularTruncation,
    UnsupportedMeasure,
    ZeroAtRoot,
    ZeroDenominator,
)
from .gram import Atom, DiscreteMeasure, cauchy_moments, moments_discrete
from .numlin import Matrix, polynomial_of_operator, shift_matrix, solve_vector, unit_lower_inverse
from .poly import (
    exact_div,
    poly_add,
    poly_divmod,
    poly_divmod_linear,
    poly_eval,
    poly_jet,
    poly_mul,
    poly_scale,
    poly_sub,
)
from .scalars import is_zero


@dataclass(frozen=True)
class PolyPerturbation:
    """Monic perturbing polynomial given by its roots with multiplicities."""

    roots: tuple

    @classmethod
    def simple(cls, *values):
        return cls(tuple((v, 1) for v in values))

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.roots)

    def coeffs(self):
        out = [1]
        for r, m in self.roots:
            for _ in range(m):
                out = poly_mul(out, [-r, 1])
        return out

    def eval(self, x):
        return poly_eval(self.coeffs(), x)

    def root_values(self):
        return tuple(r for r, _ in self.roots)


@dataclass(frozen=True)
class GeronimusFreeData:
    """Per Geronimus root: (root, xi mass, c_0 Markov value at the root)."""

    entries: tuple

    @classmethod
    def for_measure(cls, m: DiscreteMeasure, w_g: PolyPerturbation, xis):
        rows = []
        for (q, mult), xi in zip(w_g.roots, xis, strict=True):
            if mult != 1:
                raise UnsupportedMeasure("Geronimus roots must be simple")
            rows.append((q, xi, cauchy_moments(m, q, 0)[0]))
        return cls(tuple(rows))


@dataclass(frozen=True)
class Connector:
    omega: Matrix
    direction: str


def _check_remainder(rem):
    """Synthetic-division remainders must vanish; anything else is a formula bug."""
    vals = rem if isinstance(rem, list) else [rem]
    for v in vals:
        if isinstance(v, float):
            if abs(v) >= CONFIG.remainder_tol:
                raise OpgbError(f"formula inconsistency: division remainder {v}")
        elif v != 0:
            raise OpgbError(f"formula inconsistency: division remainder {v}")


def christoffel_gram(g: Matrix, w: PolyPerturbation) -> Matrix:
    """Valid (n-N) x (n-N) block of W_C(Lambda) G."""
    n = g.shape[0]
    nn = w.degree
    if n - nn < 1:
        raise InsufficientTruncation(f"degree {nn} perturbation consumes the whole truncation")
    product = polynomial_of_operator(w.coeffs(), shift_matrix(n)) @ g
    return product.leading(n - nn)


def christoffel_polys_deg1(f: BiorthFamilies, a, n: int):
    """(P-hat_{1,n}, P-hat_{2,n}, H-hat_n) for W_C = x - a.

    P-hat_{1,n}(x) = (P_{1,n+1}(x) - r P_{1,n}(x)) / (x - a) with
    r = P_{1,n+1}(a)/P_{1,n}(a); P-hat_{2,n}(y) = K_n(a,y) H_n / P_{1,n}(a);
    H-hat_n = -r H_n.
    """
    if n + 1 >= f.size:
        raise InsufficientTruncation(f"need degree {n + 1} polynomials")
    pa = poly_eval(f.poly1(n), a)
    if is_zero(pa):
        raise ZeroAtRoot(f"P_(1,{n}) vanishes at {a}; transform degenerates")
    ratio = exact_div(poly_eval(f.poly1(n + 1), a), pa)
    quot, rem = poly_divmod_linear(poly_sub(f.poly1(n + 1), poly_scale(ratio, f.poly1(n))), a)
    _check_remainder(rem)
    phat2 = poly_scale(exact_div(f.h[n], pa), cd_kernel_poly_y(f, n, a))
    return quot, phat2, -ratio * f.h[n]


def jet(coeffs, w: PolyPerturbation):
    """Jet of a polynomial at the perturbation roots: per root r of
    multiplicity m, the Taylor coefficients f(r), f'(r)/1!, ..., f^(m-1)(r)/(m-1)!,
    concatenated in root order into a length-N vector."""
    out = []
    for r, m in w.roots:
        out.extend(poly_jet(coeffs, r, m))
    return out


def christoffel_polys_general(f: BiorthFamilies, w: PolyPerturbation, n: int):
    """(P-hat_{1,n}, H-hat_n, P-hat_{2,n}) for monic W_C of degree N.

    The jet matrix J has rows jet(P_{1,n+i}) for i < N. With
    c = jet(P_{1,n+N}) J^{-1}, the combination P_{1,n+N} - sum c_i P_{1,n+i}
    vanishes at every root to full multiplicity, so dividing by W_C is
    exact; H-hat_n = -c_0 H_n; P-hat_{2,n}(y) contracts the x-jet of the
    order n+N-1 kernel against J^{-1} (H_n, 0, ..., 0)^T.
    """
    nn = w.degree
    if n + nn >= f.size:
        raise InsufficientTruncation(f"need degree {n + nn} polynomials")
    jets = [jet(f.poly1(n + i), w) for i in range(nn)]
    jm = Matrix(jets)
    try:
        c = solve_vector(jm.transpose(), jet(f.poly1(n + nn), w))
        weights = solve_vector(jm, [f.h[n]] + [0] * (nn - 1))
    except SingularTruncation as exc:
        raise SingularJetMatrix(f"jet matrix singular at n = {n}") from exc
    num = f.poly1(n + nn)
    for i, ci in enumerate(c):
        num = poly_sub(num, poly_scale(ci, f.poly1(n + i)))
    quot, rem = poly_divmod(num, w.coeffs())
    _check_remainder(rem)
    factors = []
    for k in range(n + nn):
        jk = jet(f.poly1(k), w)
        factors.append(exact_div(sum(jk[t] * weights[t] for t in range(nn)), f.h[k]))
    phat2 = p2_combination(f, factors)
    return quot, -c[0] * f.h[n], phat2


def geronimus_first_column(m: DiscreteMeasure, a, xi, length: int):
    """First column of the Geronimus Gram: -c_i(a) + xi a^i."""
    c = cauchy_moments(m, a, length - 1)
    return [-c[i] + xi * a**i for i in range(length)]


def geronimus_gram(g: Matrix, a, first_col) -> Matrix:
    """Solve G-check (Lambda^T - a) = G column by column from the given first column."""
    n = g.shape[0]
    if len(first_col) < n:
        raise InsufficientTruncation("first column shorter than the truncation")
    rows = [[first_col[i]] for i in range(n)]
    for j in range(1, n):
        for i in range(n):
            rows[i].append(a * rows[i][j - 1] + g.rows[i][j - 1])
    return Matrix(rows)


def xi_pairing_single_mass(f: BiorthFamilies, a, xi, count: int | None = None):
    """<xi_x, P_{1,k}> for the single-mass functional xi delta_a: xi P_{1,k}(a)."""
    count = f.size if count is None else count
    return [xi * poly_eval(f.poly1(k), a) for k in range(count)]


def geronimus_polys_deg1(f: BiorthFamilies, c1: SecondKindValues, xi_pairing, n: int):
    """(P-check_{1,n}, H-check_n, P-check_{2,n}) for W_G = x - a.

    With D_k = C_{1,k}(a) - <xi_x, P_{1,k}>:
    P-check_{1,n} = P_{1,n} - (D_n/D_{n-1}) P_{1,n-1};
    H-check_0 = -D_0 and H-check_n = -(D_n/D_{n-1}) H_{n-1};
    P-check_{2,n}(y) = H_{n-1} [(y-a) sum_{k<n} (D_k/H_k) P_{2,k}(y) + 1] / D_{n-1},
    the bracket being (y-a)(K^mix_{n-1}(a,y) - <xi_x, K_{n-1}(.,y)>) + 1.
    """
    a = c1.point
    if n == 0:
        return [1], -(c1.values1[0] - xi_pairing[0]), [1]
    if n >= f.size:
        raise InsufficientTruncation(f"need degree {n} polynomials")
    d_prev = c1.values1[n - 1] - xi_pairing[n - 1]
    d_cur = c1.values1[n] - xi_pairing[n]
    if is_zero(d_prev):
        raise ZeroDenominator(f"Geronimus denominator D_{n - 1} vanishes")
    ratio = exact_div(d_cur, d_prev)
    pch1 = poly_sub(f.poly1(n), poly_scale(ratio, f.poly1(n - 1)))
    kappa = p2_combination(
        f, [exact_div(c1.values1[k] - xi_pairing[k], f.h[k]) for k in range(n)]
    )
    bracket = poly_add(poly_mul([-a, 1], kappa), [1])
    pch2 = poly_scale(exact_div(f.h[n - 1], d_prev), bracket)
    return pch1, -ratio * f.h[n - 1], pch2


def christoffel_connector(f: BiorthFamilies, fhat: BiorthFamilies, w: PolyPerturbation) -> Connector:
    """omega-hat = S-hat_1 W_C(Lambda) S_1^{-1} on its valid fhat.size x f.size block."""
    n, m = f.size, fhat.size
    if m > n - w.degree:
        raise InsufficientTruncation("transformed family too large for the source truncation")
    body = polynomial_of_operator(w.coeffs(), shift_matrix(n)) @ unit_lower_inverse(f.s1)
    omega = fhat.s1 @ Matrix(body.rows[:m])
    return Connector(omega=omega, direction="christoffel")


def christoffel_connector_alt(f: BiorthFamilies, fhat: BiorthFamilies) -> Matrix:
    """The other face of the connector: H-hat (S_2 S-hat_2^{-1})^T H^{-1} (m x m)."""
    m = fhat.size
    b = Matrix([row[:m] for row in f.s2.rows[:m]]) @ unit_lower_inverse(fhat.s2)
    return Matrix.from_function(
        m, m, lambda i, j: exact_div(fhat.h[i] * b.rows[j][i], f.h[j])
    )


def geronimus_connector(f: BiorthFamilies, fcheck: BiorthFamilies) -> Connector:
    """omega = S-check_1 S_1^{-1} on the common block."""
    m = min(f.size, fcheck.size)
    omega = Matrix([row[:m] for row in fcheck.s1.rows[:m]]) @ unit_lower_inverse(f.s1).leading(m)
    return Connector(omega=omega, direction="geronimus")


def multiply_measure_by_linear(m: DiscreteMeasure, r) -> DiscreteMeasure:
    """The measure (x - r) mu, exactly; derivative atoms split by Leibniz."""
    atoms = []
    for a in m.atoms:
        atoms.append(Atom(a.q, a.w * (a.q - r), a.d))
        if a.d >= 1:
            atoms.append(Atom(a.q, a.w * a.d, a.d - 1))
    return DiscreteMeasure(tuple(atoms))


def multiply_measure(m: DiscreteMeasure, w: PolyPerturbation) -> DiscreteMeasure:
    out = m
    for r, mult in w.roots:
        for _ in range(mult):
            out = multiply_measure_by_linear(out, r)
    return out


def divide_measure_by_linear(m: DiscreteMeasure, q) -> DiscreteMeasure:
    """The measure mu/(x - q), exactly.

    A derivative atom w delta^(d) at p becomes, by the Leibniz expansion of
    (g/(x-q))^(d), the combination over t <= d of atoms of order d - t with
    weight w C(d,t) (-1)^t t! / (p-q)^(t+1).
    """
    atoms = []
    for a in m.atoms:
        if a.q == q:
            raise PoleAtAtom(f"Geronimus root {q} sits on an atom")
        for t in range(a.d + 1):
            wt = exact_div(
                a.w * comb(a.d, t) * (-1) ** t * factorial(t), (a.q - q) ** (t + 1)
            )
            atoms.append(Atom(a.q, wt, a.d - t))
    return DiscreteMeasure(tuple(atoms))


def geronimus_measure(m: DiscreteMeasure, q, xi) -> DiscreteMeasure:
    atoms = divide_measure_by_linear(m, q).atoms
    return DiscreteMeasure(atoms + (Atom(q, xi, 0),))


@dataclass(frozen=True)
class LinearSpectralResult:
    family: BiorthFamilies
    moments: tuple
    gram: Matrix


def linear_spectral(
    f: BiorthFamilies,
    w_c: PolyPerturbation,
    w_g: PolyPerturbation,
    free: GeronimusFreeData,
    n: int,
) -> LinearSpectralResult:
    """Compose Geronimus steps (one per simple root of W_G) with a Christoffel step.

    Works at the moment-sequence level, which is exact for Hankel sources:
    each Geronimus step prepends the new zeroth moment -c_0(q) + xi and
    shifts the rest through the recurrence, while the stored Markov values
    of the remaining roots update through the exact transformation rule
    C-check_0(y) = (C_0(y) - C_0(q) + xi)/(y - q).
    """
    if not f.hankel:
        raise NotHankel("linear spectral composition needs a Hankel family")
    croots = w_c.root_values()
    for q, mult in w_g.roots:
        if mult != 1:
            raise UnsupportedMeasure("Geronimus roots must be simple")
        if any(q == r for r in croots):
            raise NotCoprime(f"shared root {q} between numerator and denominator")
    if len(free.entries) != len(w_g.roots) or any(
        e[0] != q for e, (q, _) in zip(free.entries, w_g.roots)
    ):
        raise ValueError("free data must align with the Geronimus roots")

    size = f.size
    ms = [f.gram.rows[0][j] for j in range(size)]
    ms += [f.gram.rows[i][size - 1] for i in range(1, size)]
    markov = {q: c0 for q, _, c0 in free.entries}
    for q, xi, _ in free.entries:
        m0 = -markov[q] + xi
        checked = [m0]
        for j in range(len(ms)):
            checked.append(q * checked[j] + ms[j])
        for other in markov:
            if other != q:
                markov[other] = exact_div(markov[other] - markov[q] + xi, other - q)
        ms = checked
    wc = w_c.coeffs()
    tilde = []
    for j in range(len(ms) - w_c.degree):
        tilde.append(sum(wc[t] * ms[j + t] for t in range(len(wc))))
    if len(tilde) < 2 * n - 1:
        raise InsufficientTruncation("source truncation too small for the requested size")
    g = Matrix.from_function(n, n, lambda i, j: tilde[i + j])
    return LinearSpectralResult(family=build_families(g), moments=tuple(tilde), gram=g)


def markov_transform_check(m: DiscreteMeasure, r, q, xi, ys=None):
    """Max residuals of the three Markov-function identities at rational points.

    The left side of each identity is the Markov (Cauchy) function of the
    transformed measure built atom by atom; the right side combines Markov
    values of the original measure. All three residuals are exactly zero
    for exact inputs.
    """
    if ys is None:
        ys = _default_probe_points(m, (r, q), 10)
    mhat = multiply_measure_by_linear(m, r)
    mcheck = geronimus_measure(m, q, xi)
    mtilde = multiply_measure_by_linear(mcheck, r)
    h0 = moments_discrete(m, 0)[0]
    c0q = cauchy_moments(m, q, 0)[0]
    worst = [0, 0, 0]
    for y in ys:
        c0y = cauchy_moments(m, y, 0)[0]
        pairs = (
            (cauchy_moments(mhat, y, 0)[0], (y - r) * c0y - h0),
            (cauchy_moments(mcheck, y, 0)[0], exact_div(c0y - c0q + xi, y - q)),
            (
                cauchy_moments(mtilde, y, 0)[0],
                exact_div((y - r) * c0y - (q - r) * c0q + (q - r) * xi, y - q),
            ),
        )
        for i, (lhs, rhs) in enumerate(pairs):
            worst[i] = max(worst[i], abs(lhs - rhs))
    return tuple(worst)


def _default_probe_points(m: DiscreteMeasure, avoid, count: int):
    banned = {a.q for a in m.atoms} | set(avoid)
    out = []
    step = Fraction(7, 3)
    y = Fraction(11, 7)
    while len(out) < count:
        if y not in banned:
            out.append(y)
        y += step
    return out
