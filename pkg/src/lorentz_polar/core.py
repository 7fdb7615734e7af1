"""Minkowski geometry primitives for fixed 4x4 Lorentz matrices.

Conventions used throughout the package: matrices are row-major with the
time index first (index 0), and the metric signature is (-, +, +, +).
Velocities are in units of c.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import (
    NonFiniteInput,
    NotARotation,
    NotUnitTimelike,
    VelocityOutOfRange,
)

ETA = np.diag([-1.0, 1.0, 1.0, 1.0])
ETA.setflags(write=False)

TOL_GROUP = 1e-9
TOL_RESIDUAL = 1e-12
MAX_SPEED = 1.0 - 1e-12


def max_abs(a):
    """Entrywise infinity norm, the norm used for every residual here."""
    return float(np.abs(a).max())


def as_mat4(m):
    """Return ``m`` as a finite float64 array of shape (4, 4)."""
    a = np.array(m, dtype=float)
    if a.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonFiniteInput("matrix has non-finite entries")
    return a


def _as_vec(x, n, what):
    a = np.array(x, dtype=float)
    if a.shape != (n,):
        raise ValueError(f"{what} must have {n} components, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonFiniteInput(f"{what} has non-finite components")
    return a


@dataclass(frozen=True, eq=False)
class BoostParameters:
    """A 3-velocity with ``|v| < 1``; the Lorentz factor is always derived."""

    v: np.ndarray

    def __post_init__(self):
        v = _as_vec(self.v, 3, "velocity")
        speed = float(np.linalg.norm(v))
        if not speed < MAX_SPEED:
            raise VelocityOutOfRange(f"speed must satisfy |v| < 1 (got |v| = {speed!r})")
        v.setflags(write=False)
        object.__setattr__(self, "v", v)

    @property
    def speed(self):
        return float(np.linalg.norm(self.v))

    @property
    def gamma(self):
        return 1.0 / np.sqrt(1.0 - self.v @ self.v)

    def __neg__(self):
        return BoostParameters(-self.v)

    def __repr__(self):
        return f"BoostParameters(v={self.v.tolist()!r}, gamma={self.gamma!r})"


def as_boost(b):
    if isinstance(b, BoostParameters):
        return b
    return BoostParameters(b)


def as_rotation(r, tol=TOL_GROUP):
    """Validate ``r`` as an SO(3) matrix and return it as a float array."""
    a = np.array(r, dtype=float)
    if a.shape != (3, 3):
        raise NotARotation(f"rotation must be 3x3, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonFiniteInput("rotation has non-finite entries")
    orth = max_abs(a.T @ a - np.eye(3))
    det = float(np.linalg.det(a))
    if orth > tol or abs(det - 1.0) > tol:
        raise NotARotation(
            f"not in SO(3): |R^T R - 1| = {orth:.3e}, det = {det!r} (tol {tol:g})"
        )
    return a


def boost_matrix(b):
    """Pure boost for velocity ``b`` (a :class:`BoostParameters` or 3-vector).

    The result is symmetric by construction; ``v = 0`` gives the exact
    identity since the spatial correction term is proportional to ``v v^T``.
    """
    b = as_boost(b)
    return _boost(b.v, b.gamma)


def _boost(v, g):
    m = np.empty((4, 4))
    m[0, 0] = g
    m[0, 1:] = -g * v
    m[1:, 0] = -g * v
    m[1:, 1:] = np.eye(3) + (g * g / (1.0 + g)) * np.outer(v, v)
    return m


def rotation_embedding(r):
    """Embed a spatial rotation as ``diag(1, R)``."""
    return _embed(as_rotation(r))


def _embed(r):
    m = np.eye(4)
    m[1:, 1:] = r
    return m


def lorentz_inverse(L):
    """Inverse of a Lorentz matrix via ``eta L^T eta``; no solve involved."""
    L = as_mat4(L)
    return ETA @ L.T @ ETA


class LorentzClass(Enum):
    PROPER_ORTHOCHRONOUS = "ProperOrthochronous"
    PROPER_ANTICHRONOUS = "ProperAntichronous"
    IMPROPER_ORTHOCHRONOUS = "ImproperOrthochronous"
    IMPROPER_ANTICHRONOUS = "ImproperAntichronous"
    NOT_LORENTZ = "NotLorentz"


@dataclass(frozen=True)
class Classification:
    kind: LorentzClass
    residual: float
    det: float = field(default=float("nan"))

    @property
    def is_proper_orthochronous(self):
        return self.kind is LorentzClass.PROPER_ORTHOCHRONOUS


def lorentz_residual(m):
    m = np.asarray(m, dtype=float)
    return max_abs(m.T @ ETA @ m - ETA)


def validate_lorentz(m, tol=TOL_GROUP):
    """Classify ``m`` by Lorentz condition, determinant sign and time-time sign."""
    m = as_mat4(m)
    residual = lorentz_residual(m)
    det = float(np.linalg.det(m))
    if residual > tol:
        return Classification(LorentzClass.NOT_LORENTZ, residual, det)
    proper = det > 0
    ortho = m[0, 0] > 0
    kind = {
        (True, True): LorentzClass.PROPER_ORTHOCHRONOUS,
        (True, False): LorentzClass.PROPER_ANTICHRONOUS,
        (False, True): LorentzClass.IMPROPER_ORTHOCHRONOUS,
        (False, False): LorentzClass.IMPROPER_ANTICHRONOUS,
    }[proper, ortho]
    return Classification(kind, residual, det)


def frame_covector(v):
    """Lowered 4-velocity ``eta (gamma, gamma v)`` of a frame moving at ``v``."""
    b = as_boost(v)
    g = b.gamma
    return ETA @ np.concatenate(([g], g * b.v))


def hilbert_metric(u, tol=TOL_GROUP):
    """Euclidean metric ``eta + 2 u (x) u`` singled out by the frame covector ``u``.

    ``u`` must be unit timelike (``u . eta^-1 . u = -1``) and future pointing
    (``u[0] < 0`` for a lowered index).
    """
    u = _as_vec(u, 4, "frame covector")
    norm = float(u @ ETA @ u)
    if abs(norm + 1.0) > tol:
        raise NotUnitTimelike(f"eta-norm of u is {norm!r}, expected -1")
    if not u[0] < 0:
        raise NotUnitTimelike("u must be future pointing (u[0] < 0 for a covector)")
    return ETA + 2.0 * np.outer(u, u)


def quadratic_form(L, w):
    """``w^T L w`` for a 4-vector ``w = (t, x)``."""
    L = as_mat4(L)
    w = _as_vec(w, 4, "four-vector")
    return float(w @ L @ w)


def four_vector(t, x):
    """Pack a time component and a spatial 3-vector into one 4-array."""
    return np.concatenate(([float(t)], _as_vec(x, 3, "spatial part")))
