"""Dense numerical kernels: tridiagonal eigenvalues and a one-sided Jacobi SVD.

Both routines target small dense problems (order <= 1024) where accuracy and
determinism matter more than raw speed.  The Jacobi sweep applies disjoint
column rotations a full round-robin round at a time so the O(n^3) work runs
in vectorized batches.
"""

from __future__ import annotations

import math

import numpy as np

_EPS = np.finfo(float).eps


class EigenConvergenceError(RuntimeError):
    pass


class SvdConvergenceError(RuntimeError):
    pass


def symmetric_tridiagonal_eigenvalues(diag, offdiag, max_iter: int = 30) -> np.ndarray:
    """Eigenvalues of a real symmetric tridiagonal matrix, ascending.

    Implicit-shift QL iteration, eigenvalues only.  ``offdiag`` holds the
    n-1 subdiagonal entries.  ``max_iter`` caps the iterations spent on any
    single eigenvalue.
    """
    d = np.array(diag, dtype=float, copy=True)
    n = d.size
    if np.asarray(offdiag, dtype=float).size != n - 1:
        raise ValueError("offdiag must have length n - 1")
    e = np.zeros(n)
    e[: n - 1] = np.asarray(offdiag, dtype=float)

    for l in range(n):
        iters = 0
        while True:
            # find a negligible subdiagonal element to split the matrix
            for m in range(l, n - 1):
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd:
                    break
            else:
                m = n - 1
            if m == l:
                break
            if iters >= max_iter:
                raise EigenConvergenceError(
                    f"eigenvalue {l} did not converge in {max_iter} QL iterations"
                )
            iters += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    # rotation annihilated prematurely; restart this eigenvalue
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
            if not underflow:
                d[l] -= p
                e[l] = g
                e[m] = 0.0
    return np.sort(d)


def _round_robin_rounds(n: int) -> list[np.ndarray]:
    """Tournament schedule: n-1 rounds of disjoint index pairs covering all pairs."""
    players = list(range(n))
    if n % 2:
        players.append(-1)
    m = len(players)
    rounds = []
    for _ in range(m - 1):
        pairs = [
            (players[i], players[m - 1 - i])
            for i in range(m // 2)
            if players[i] != -1 and players[m - 1 - i] != -1
        ]
        rounds.append(np.asarray(pairs, dtype=np.intp))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_singular_values(
    a, tol: float = 1e-12, max_sweeps: int = 30
) -> np.ndarray:
    """Singular values (descending) via one-sided Jacobi column orthogonalization.

    Convergence: the largest off-diagonal Gram entry falls below ``tol`` times
    the largest column norm squared.  Raises ``SvdConvergenceError`` at the
    sweep cap.
    """
    A = np.array(a, dtype=float, copy=True)
    if A.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    n = A.shape[1]
    if n == 0:
        return np.zeros(0)
    if n == 1:
        return np.array([float(np.linalg.norm(A[:, 0]))])

    # work on the transpose so each column of A is a contiguous row
    B = np.ascontiguousarray(A.T)
    rounds = _round_robin_rounds(n)
    for _ in range(max_sweeps):
        gram = B @ B.T
        diag = np.diag(gram).copy()
        np.fill_diagonal(gram, 0.0)
        dmax = diag.max()
        if dmax == 0.0 or np.abs(gram).max() <= tol * dmax:
            norms = np.sqrt(np.maximum(diag, 0.0))
            return np.sort(norms)[::-1]
        for pairs in rounds:
            i = pairs[:, 0]
            j = pairs[:, 1]
            bi = B[i]
            bj = B[j]
            alpha = np.einsum("ik,ik->i", bi, bi)
            beta = np.einsum("ik,ik->i", bj, bj)
            gamma = np.einsum("ik,ik->i", bi, bj)
            # small-angle rotation (|theta| <= pi/4) that orthogonalizes the pair;
            # the large-angle branch can cycle instead of converging
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                zeta = (alpha - beta) / (2.0 * gamma)
                t = np.copysign(1.0, zeta) / (np.abs(zeta) + np.sqrt(1.0 + zeta * zeta))
            t = np.where(gamma == 0.0, 0.0, t)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = (c * t)[:, None]
            c = c[:, None]
            B[i] = c * bi + s * bj
            B[j] = c * bj - s * bi
    raise SvdConvergenceError(f"Jacobi SVD did not converge in {max_sweeps} sweeps")
