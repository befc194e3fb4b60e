"""Dense univariate polynomials as ascending coefficient lists.

[c0, c1, ..., cn] means c0 + c1 x + ... + cn x^n. Lists may carry trailing
zeros; functions that care call poly_trim first. Coefficients follow the
scalar conventions of scalars.py, so exact lists stay exact.
"""

from fractions import Fraction

from .errors import ZeroDenominator
from .scalars import is_zero


def exact_div(a, b):
    """a / b staying exact when both operands are exact."""
    if isinstance(a, float) or isinstance(b, float):
        return a / b
    q = Fraction(a) / Fraction(b)
    return int(q) if q.denominator == 1 else q


def poly_trim(p):
    n = len(p)
    while n > 1 and p[n - 1] == 0:
        n -= 1
    return list(p[:n])


def poly_degree(p) -> int:
    return len(poly_trim(p)) - 1


def poly_eval(p, x):
    acc = 0 * x if isinstance(x, float) else 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_add(p, q):
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]


def poly_sub(p, q):
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)]


def poly_scale(c, p):
    return [c * a for a in p]


def poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return out


def poly_deriv(p):
    if len(p) <= 1:
        return [0]
    return [i * p[i] for i in range(1, len(p))]


def poly_from_roots(roots):
    """Monic polynomial prod (x - r) over the given roots, with multiplicity."""
    out = [1]
    for r in roots:
        out = poly_mul(out, [-r, 1])
    return out


def poly_divmod_linear(p, a):
    """Synthetic division by (x - a): returns (quotient, remainder)."""
    q = [0] * max(len(p) - 1, 1)
    acc = 0
    for i in range(len(p) - 1, 0, -1):
        acc = p[i] + a * acc
        q[i - 1] = acc
    rem = p[0] + a * acc
    return q, rem


def poly_divmod(p, d):
    """Long division p = q*d + r with deg r < deg d. Leading coeff of d must be nonzero."""
    d = poly_trim(d)
    if is_zero(d[-1]):
        raise ZeroDenominator("division by zero polynomial")
    p = list(p)
    dd = len(d) - 1
    if len(p) - 1 < dd:
        return [0], poly_trim(p)
    lead = d[-1]
    q = [0] * (len(p) - dd)
    for i in range(len(p) - 1, dd - 1, -1):
        coef = exact_div(p[i], lead)
        q[i - dd] = coef
        if coef != 0:
            for j in range(dd + 1):
                p[i - dd + j] = p[i - dd + j] - coef * d[j]
    return q, poly_trim(p[:dd] if dd > 0 else [0])


def poly_jet(p, r, order):
    """First `order` Taylor coefficients of p at r: [p(r), p'(r)/1!, ...].

    Computed by repeated synthetic division, so exact inputs give exact jets.
    """
    out = []
    cur = list(p)
    for _ in range(order):
        cur, rem = poly_divmod_linear(cur, r)
        out.append(rem)
    return out
