"""Real 4x4 polar decomposition, independent of any Lorentz structure.

Two algorithms are provided. :func:`polar_decompose` takes the square root
of ``M^T M`` (or ``M M^T``) through a cyclic Jacobi eigendecomposition and is
the primary route. :func:`newton_polar` runs the Newton iteration
``X <- (X + X^-T) / 2`` and exists to cross-check the first.

The Gram matrix ``M^T M`` is never formed: squaring ``M`` squares its
condition number and destroys the small eigenvalues. Instead the Jacobi
rotations that would diagonalize ``M^T M`` are applied to the columns of
``W = M V``, whose inner products are exactly the entries of ``V^T M^T M V``.
"""

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numba
import numpy as np

from .core import TOL_GROUP, as_mat4, max_abs
from .errors import NoConvergence, NotSymmetric, SingularMatrix

JACOBI_MAX_SWEEPS = 30
JACOBI_REL_TOL = 1e-15
SINGULAR_DET = 1e-12
SINGULAR_EIGENVALUE = 1e-24
NEWTON_TOL = 1e-14
NEWTON_MAX_ITER = 100


class PolarOrder(Enum):
    UP = "UP"
    PU = "PU"


@dataclass(frozen=True, eq=False)
class PolarFactors:
    """Orthogonal factor ``u_factor`` and symmetric positive factor ``p_factor``.

    ``order`` says how they reassemble: ``UP`` means ``M = U P``, ``PU`` means
    ``M = P U``.
    """

    u_factor: np.ndarray
    p_factor: np.ndarray
    order: PolarOrder
    iterations: int = 0

    def product(self):
        if self.order is PolarOrder.UP:
            return self.u_factor @ self.p_factor
        return self.p_factor @ self.u_factor


class SymEig4(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@numba.njit(cache=True)
def _jacobi_kernel(s, rel_tol, max_sweeps):
    # Returns (diagonal, eigenvector columns, sweeps used); sweeps = -1 on failure.
    a = s.copy()
    v = np.eye(4)
    scale = np.max(np.abs(s))
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(4):
            for j in range(i + 1, 4):
                off = max(off, abs(a[i, j]))
        if off <= rel_tol * scale:
            return np.diag(a).copy(), v, sweep
        if sweep == max_sweeps:
            break
        for p in range(3):
            for q in range(p + 1, 4):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                sn = t * c
                a[p, p] -= t * apq
                a[q, q] += t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(4):
                    if k != p and k != q:
                        akp = a[k, p]
                        akq = a[k, q]
                        a[k, p] = c * akp - sn * akq
                        a[p, k] = a[k, p]
                        a[k, q] = sn * akp + c * akq
                        a[q, k] = a[k, q]
                for k in range(4):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - sn * vkq
                    v[k, q] = sn * vkp + c * vkq
    return np.diag(a).copy(), v, -1


@numba.njit(cache=True)
def _precedes(lam, vecs, i, j):
    # Descending eigenvalue; exact ties go to the lexicographically larger vector.
    if lam[i] != lam[j]:
        return lam[i] > lam[j]
    for k in range(4):
        if vecs[k, i] != vecs[k, j]:
            return vecs[k, i] > vecs[k, j]
    return False


@numba.njit(cache=True)
def _canonicalize(lam, vecs):
    for j in range(4):
        for k in range(4):
            if vecs[k, j] != 0.0:
                if vecs[k, j] < 0.0:
                    vecs[:, j] = -vecs[:, j]
                break
    order = np.arange(4)
    for i in range(1, 4):
        j = i
        while j > 0 and _precedes(lam, vecs, order[j], order[j - 1]):
            order[j], order[j - 1] = order[j - 1], order[j]
            j -= 1
    return lam[order].copy(), vecs[:, order].copy()


def sym_eig4(S):
    """Eigendecomposition of a symmetric 4x4 matrix by cyclic Jacobi rotations.

    Pivots are visited in the fixed order (0,1), (0,2), (0,3), (1,2), (1,3),
    (2,3) until the largest off-diagonal entry is at most ``1e-15 * max|S|``.
    Eigenvalues come back in descending order; each eigenvector is signed so
    its first nonzero component is positive, and exact eigenvalue ties are
    ordered by lexicographically largest eigenvector.

    Raises
    ------
    NotSymmetric
        If ``max|S - S^T|`` exceeds the group tolerance.
    NoConvergence
        If 30 sweeps do not reach the off-diagonal threshold.
    """
    S = as_mat4(S)
    asym = max_abs(S - S.T)
    if asym > TOL_GROUP:
        raise NotSymmetric(f"matrix is not symmetric: max|S - S^T| = {asym:.3e}")
    S = 0.5 * (S + S.T)
    diag, vecs, sweeps = _jacobi_kernel(S, JACOBI_REL_TOL, JACOBI_MAX_SWEEPS)
    if sweeps < 0:
        off = max_abs(np.triu(vecs.T @ S @ vecs, 1))
        raise NoConvergence(JACOBI_MAX_SWEEPS, off)

    return SymEig4(*_canonicalize(diag, vecs))


@numba.njit(cache=True)
def _gram_jacobi_kernel(m, rel_tol, max_sweeps):
    # Cyclic Jacobi on m^T m held implicitly as w^T w with w = m v.
    # Returns (w, v, sweeps used); sweeps = -1 on failure.
    w = m.copy()
    v = np.eye(4)
    for sweep in range(max_sweeps + 1):
        rotated = False
        for p in range(3):
            for q in range(p + 1, 4):
                spp = 0.0
                sqq = 0.0
                spq = 0.0
                for k in range(4):
                    spp += w[k, p] * w[k, p]
                    sqq += w[k, q] * w[k, q]
                    spq += w[k, p] * w[k, q]
                if abs(spq) <= rel_tol * np.sqrt(spp * sqq):
                    continue
                if sweep == max_sweeps:
                    return w, v, -1
                rotated = True
                theta = (sqq - spp) / (2.0 * spq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                sn = t * c
                for k in range(4):
                    a = w[k, p]
                    b = w[k, q]
                    w[k, p] = c * a - sn * b
                    w[k, q] = sn * a + c * b
                    a = v[k, p]
                    b = v[k, q]
                    v[k, p] = c * a - sn * b
                    v[k, q] = sn * a + c * b
        if not rotated:
            return w, v, sweep
    return w, v, -1


def _gram_factors(M):
    w, v, sweeps = _gram_jacobi_kernel(M, JACOBI_REL_TOL, JACOBI_MAX_SWEEPS)
    if sweeps < 0:
        g = w.T @ w
        raise NoConvergence(JACOBI_MAX_SWEEPS, max_abs(np.triu(g, 1)))
    sigma = np.sqrt(np.einsum("ij,ij->j", w, w))
    if sigma.min() ** 2 < SINGULAR_EIGENVALUE:
        raise SingularMatrix(
            f"Gram matrix eigenvalue {sigma.min() ** 2:.3e} below {SINGULAR_EIGENVALUE:g}"
        )
    return w, v, sigma


def gram_eig4(M):
    """Eigendecomposition of ``M^T M`` without forming it.

    Same sweep order, ordering and sign conventions as :func:`sym_eig4`;
    small eigenvalues keep full relative accuracy.
    """
    M = as_mat4(M)
    w, v, sigma = _gram_factors(M)
    return SymEig4(*_canonicalize(sigma * sigma, v))


def _check_invertible(M):
    det = float(np.linalg.det(M))
    if abs(det) <= SINGULAR_DET:
        raise SingularMatrix(f"|det M| = {abs(det):.3e} <= {SINGULAR_DET:g}")


def _polar_up(M):
    # U = sum_j (w_j / sigma_j) v_j^T, P = sum_j sigma_j v_j v_j^T
    w, v, sigma = _gram_factors(M)
    return (w / sigma) @ v.T, (v * sigma) @ v.T


def polar_decompose(M, order=PolarOrder.UP):
    """Polar decomposition of an invertible 4x4 matrix.

    For ``order=UP`` the positive factor is ``P = sqrt(M^T M)`` and
    ``U = M P^-1``; for ``order=PU`` it is ``P = sqrt(M M^T)`` and
    ``U = P^-1 M``. Both factors are unique for invertible ``M``.

    Raises
    ------
    SingularMatrix
        If ``|det M| <= 1e-12`` or an eigenvalue of the Gram matrix falls
        below ``1e-24``.
    """
    order = PolarOrder(order)
    M = as_mat4(M)
    _check_invertible(M)
    if order is PolarOrder.UP:
        U, P = _polar_up(M)
    else:
        # M^T = U_t P_t  =>  M = P_t U_t^T
        U_t, P = _polar_up(np.ascontiguousarray(M.T))
        U = U_t.T
    return PolarFactors(U, P, order)


def newton_polar(M, order=PolarOrder.UP, tol=NEWTON_TOL, max_iter=NEWTON_MAX_ITER):
    """Polar decomposition by the unscaled Newton iteration.

    Iterates ``X <- (X + X^-T) / 2`` from ``X = M`` until successive iterates
    differ by at most ``tol`` entrywise. The positive factor is then
    recovered as the symmetric part of ``U^T M`` (or ``M U^T`` for ``PU``).
    """
    order = PolarOrder(order)
    M = as_mat4(M)
    _check_invertible(M)
    X = M
    delta = np.inf
    for it in range(1, max_iter + 1):
        X_next = 0.5 * (X + np.linalg.inv(X).T)
        delta = max_abs(X_next - X)
        X = X_next
        if delta <= tol:
            break
    else:
        raise NoConvergence(max_iter, delta)
    P = X.T @ M if order is PolarOrder.UP else M @ X.T
    P = 0.5 * (P + P.T)
    return PolarFactors(X, P, order, iterations=it)
