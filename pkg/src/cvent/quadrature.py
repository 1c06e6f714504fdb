"""Gauss-Hermite integration rules on the real line with convergence control.

Nodes come from the Golub-Welsch construction (implicit-shift QL on the
symmetric tridiagonal Jacobi matrix).  Weights are recovered through the
Christoffel function evaluated with the orthonormal Hermite-function
recurrence, which stays representable even for the extreme nodes of an
order-1024 rule.  The stored ``weights`` have the exp(-t^2) factor divided
out, so ``sum(weights * f(nodes))`` approximates a plain dx integral.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from cvent.linalg import symmetric_tridiagonal_eigenvalues

MIN_ORDER = 2
MAX_ORDER = 1024
_SQRT2 = math.sqrt(2.0)


class QuadratureError(RuntimeError):
    pass


class ConvergenceError(QuadratureError):
    def __init__(self, message: str, last_value, previous_value):
        super().__init__(message)
        self.last_value = last_value
        self.previous_value = previous_value


class RuleKind(enum.Enum):
    GAUSS_HERMITE = "gauss-hermite"
    GAUSS_LEGENDRE_MAPPED = "gauss-legendre-mapped"


@dataclass(frozen=True)
class QuadratureRule:
    """Immutable rule: sum(weights * f(nodes)) ~= integral of f over the line.

    ``scale`` is the standard deviation of the Gaussian the rule is matched
    to; ``center`` its mean.  The base Hermite rule has scale 1/sqrt(2).
    """

    nodes: np.ndarray
    weights: np.ndarray
    kind: RuleKind
    order: int
    scale: float
    center: float = 0.0

    def __post_init__(self):
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    def scaled(self, scale: float, center: float = 0.0) -> "QuadratureRule":
        """Affine image of the rule matched to a Gaussian N(center, scale^2)."""
        if not (math.isfinite(scale) and scale > 0.0):
            raise ValueError(f"scale must be finite and positive, got {scale}")
        factor = scale / self.scale
        nodes = center + factor * (self.nodes - self.center)
        weights = factor * self.weights
        return QuadratureRule(
            nodes=nodes,
            weights=weights,
            kind=self.kind,
            order=self.order,
            scale=scale,
            center=float(center),
        )

    @property
    def gauss_weights(self) -> np.ndarray:
        """Classical Gauss-Hermite weights (Gaussian factor reinstated).

        Meaningful for the unscaled base rule; underflows to zero at the
        extreme nodes of very high orders.
        """
        t = (self.nodes - self.center) / (self.scale * _SQRT2)
        return self.weights / (self.scale * _SQRT2) * np.exp(-t * t)


def _christoffel_total_weights(t: np.ndarray, order: int) -> np.ndarray:
    # Orthonormal Hermite functions phi_j(t) = h_j(t) exp(-t^2/2), with a
    # per-node running rescale so neither endpoint of the recurrence can
    # under- or overflow.  Total weight = 1 / sum_j phi_j(t)^2.
    p_prev = np.zeros_like(t)
    p_cur = np.full_like(t, math.pi**-0.25)
    log_scale = -0.5 * t * t  # true phi_j = p_j * exp(log_scale)
    acc = p_cur**2
    for j in range(1, order):
        p_next = t * p_cur * math.sqrt(2.0 / j) - p_prev * math.sqrt((j - 1.0) / j)
        p_prev, p_cur = p_cur, p_next
        big = np.abs(p_cur) > 1e120
        if big.any():
            shrink = np.where(big, 1e-120, 1.0)
            p_prev = p_prev * shrink
            p_cur = p_cur * shrink
            acc = acc * shrink * shrink
            log_scale = log_scale + np.where(big, math.log(1e120), 0.0)
        acc = acc + p_cur**2
    return np.exp(-2.0 * log_scale - np.log(acc))


@lru_cache(maxsize=64)
def _base_rule(order: int) -> QuadratureRule:
    offdiag = np.sqrt(np.arange(1, order) / 2.0)
    t = symmetric_tridiagonal_eigenvalues(np.zeros(order), offdiag)
    t = 0.5 * (t - t[::-1])  # enforce exact symmetry about zero
    weights = _christoffel_total_weights(t, order)
    return QuadratureRule(
        nodes=t,
        weights=weights,
        kind=RuleKind.GAUSS_HERMITE,
        order=order,
        scale=1.0 / _SQRT2,
    )


def gauss_hermite(order: int) -> QuadratureRule:
    """Gauss-Hermite rule of the given order, matched to exp(-t^2)."""
    if not isinstance(order, int) or isinstance(order, bool):
        raise ValueError(f"order must be an integer, got {order!r}")
    if not (MIN_ORDER <= order <= MAX_ORDER):
        raise ValueError(f"order must lie in [{MIN_ORDER}, {MAX_ORDER}], got {order}")
    return _base_rule(order)


def _check_finite(values: np.ndarray, nodes) -> None:
    values = np.atleast_1d(values)
    if np.all(np.isfinite(values)):
        return
    idx = tuple(np.argwhere(~np.isfinite(values))[0])
    where = tuple(float(np.broadcast_to(n, values.shape)[idx]) for n in nodes)
    raise QuadratureError(f"non-finite integrand value at node {where}")


def integrate_1d(f, rule: QuadratureRule) -> float:
    """Weighted sum over the rule nodes (ascending node order)."""
    values = np.asarray(f(rule.nodes), dtype=float)
    _check_finite(values, (rule.nodes,))
    return float(rule.weights @ values)


def integrate_2d(f, rule_a: QuadratureRule, rule_b: QuadratureRule) -> float:
    """Tensor-product integration: f evaluated on the full node grid."""
    xa = rule_a.nodes[:, None]
    xb = rule_b.nodes[None, :]
    values = np.asarray(f(xa, xb), dtype=float)
    values = np.broadcast_to(values, (rule_a.order, rule_b.order))
    _check_finite(values, (np.broadcast_to(xa, values.shape), np.broadcast_to(xb, values.shape)))
    return float(rule_a.weights @ values @ rule_b.weights)


def integrate_rotated(f, u_scale: float, v_scale: float, order: int) -> float:
    """Two-particle integral in rotated coordinates u=(x1-x2)/sqrt2, v=(x1+x2)/sqrt2.

    Both state families separate into Gaussian-enveloped factors along u and
    v, so per-axis scales keep extreme width ratios well conditioned.  The
    Jacobian is 1.
    """
    ru = gauss_hermite(order).scaled(u_scale)
    rv = gauss_hermite(order).scaled(v_scale)
    u = ru.nodes[:, None]
    v = rv.nodes[None, :]
    x1 = (v + u) / _SQRT2
    x2 = (v - u) / _SQRT2
    values = np.asarray(f(x1, x2), dtype=float)
    values = np.broadcast_to(values, (order, order))
    _check_finite(values, (np.broadcast_to(x1, values.shape), np.broadcast_to(x2, values.shape)))
    return float(ru.weights @ values @ rv.weights)


@dataclass(frozen=True)
class ConvergenceResult:
    value: float
    order_used: int
    delta: float


def _delta(cur, prev) -> float:
    cur = np.asarray(cur, dtype=float)
    prev = np.asarray(prev, dtype=float)
    err = np.abs(cur - prev)
    denom = np.where(np.abs(cur) > 1.0, np.abs(cur), 1.0)
    return float(np.max(err / denom))


def converge(
    integral_fn,
    start_order: int = 64,
    tol: float = 1e-9,
    max_order: int = MAX_ORDER,
) -> ConvergenceResult:
    """Double the order until successive values agree to ``tol``.

    Absolute tolerance below magnitude 1, relative above.  Raises
    ``ConvergenceError`` (carrying the last two values) at the order cap.
    """
    if start_order < 16:
        raise ValueError(f"start_order must be >= 16, got {start_order}")
    if start_order >= max_order:
        raise ValueError("start_order must be below max_order")
    order = start_order
    prev = integral_fn(order)
    while order < max_order:
        order = min(2 * order, max_order)
        cur = integral_fn(order)
        delta = _delta(cur, prev)
        if delta < tol:
            value = cur if np.ndim(cur) else float(cur)
            return ConvergenceResult(value=value, order_used=order, delta=delta)
        if order >= max_order:
            break  # keep prev as the second-to-last value for the error
        prev = cur
    raise ConvergenceError(
        f"integral did not converge by order {max_order} (last delta {delta:.3e})",
        cur,
        prev,
    )
