"""Gauss quadrature from truncated spectral matrices (float mode).

The k-point rule for a Hankel family takes its nodes from the eigenvalues
of the k x k truncation of the tridiagonal spectral matrix J. With all
H_j > 0 the truncation symmetrizes by the diagonal similarity
diag(H_j^{-1/2}), the symmetric eigenproblem is solved, and each weight is
H_0 times the squared first component of the normalized eigenvector. As an
independent route the same weights must solve the Vandermonde moment
system sum_l w_l x_l^j = m_j (j < k); the two are cross-checked on every
call. Sign-indefinite H falls back to companion-matrix roots of P_k plus
the moment system, and only genuinely complex nodes are surfaced as
NonPositive.
"""

import math
from dataclasses import dataclass

import numpy as np

from .biorth import BiorthFamilies, spectral_matrix
from .config import CONFIG
from .errors import InsufficientTruncation, NonPositive, NotHankel, OpgbError


@dataclass(frozen=True)
class QuadratureRule:
    nodes: tuple
    weights: tuple
    order: int
    method: str


def _scaled_moments(jm, k: int, h0: float):
    a = np.array([[float(v) for v in row] for row in jm.rows])
    out = []
    power = np.eye(a.shape[0])
    for _ in range(k):
        out.append(power[0, 0] * h0)
        power = power @ a
    return np.array(out)


def gauss_rule(f: BiorthFamilies, k: int, h0: float | None = None) -> QuadratureRule:
    """k-point Gauss rule; h0 rescales weights to a physical zeroth moment."""
    if not f.hankel:
        raise NotHankel("Gauss rules need a Hankel family")
    if k < 1:
        raise ValueError("k must be at least 1")
    if f.size - 1 < k:
        raise InsufficientTruncation(f"k = {k} needs a family of size >= {k + 1}")
    h0 = float(f.h[0]) if h0 is None else float(h0)
    jm = spectral_matrix(f, 1).j.leading(k)
    ms = _scaled_moments(jm, k, h0)
    hs = [float(v) for v in f.h[:k]]
    if all(v > 0 for v in hs):
        diag = np.array([float(jm.rows[i][i]) for i in range(k)])
        sub = np.array([float(jm.rows[i + 1][i]) for i in range(k - 1)])
        t = np.diag(diag)
        for i, v in enumerate(np.sqrt(sub)):
            t[i, i + 1] = t[i + 1, i] = v
        eigvals, eigvecs = np.linalg.eigh(t)
        nodes = eigvals
        weights = h0 * eigvecs[0, :] ** 2
        check = _moment_system_weights(nodes, ms)
        if np.max(np.abs(weights - check)) > CONFIG.weight_cross_tol * max(1.0, abs(h0)):
            raise OpgbError("eigenvector and moment-system weights disagree")
        method = "eigh"
    else:
        coeffs = np.array([float(c) for c in f.poly1(k)])
        roots = np.polynomial.polynomial.polyroots(coeffs)
        if np.max(np.abs(roots.imag)) > 1e-9:
            raise NonPositive("P_k has non-real roots; no real quadrature rule exists")
        nodes = np.sort(roots.real)
        weights = _moment_system_weights(nodes, ms)
        method = "companion"
    return QuadratureRule(
        nodes=tuple(float(v) for v in nodes),
        weights=tuple(float(v) for v in weights),
        order=k,
        method=method,
    )


def _moment_system_weights(nodes, ms):
    v = np.vander(np.asarray(nodes, dtype=float), len(nodes), increasing=True).T
    try:
        return np.linalg.solve(v, ms)
    except np.linalg.LinAlgError as exc:
        raise NonPositive(f"degenerate node set: {exc}") from exc


def exactness_check(rule: QuadratureRule, moments) -> float:
    """max_j |sum_l w_l x_l^j - m_j| over j <= min(2k-1, supplied)."""
    nodes = np.asarray(rule.nodes)
    weights = np.asarray(rule.weights)
    top = min(2 * rule.order - 1, len(moments) - 1)
    worst = 0.0
    for j in range(top + 1):
        err = abs(float(np.dot(weights, nodes**j)) - float(moments[j]))
        worst = max(worst, err)
    return worst
