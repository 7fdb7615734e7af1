"""Rotation-boost factorization of proper orthochronous Lorentz matrices.

Every ``L`` in the identity component factors uniquely as ``L = L_R L_v``
(rotation after boost) or ``L = L_{Rv} L_R`` (boost after rotation). Since
``L_R`` is orthogonal and ``L_v`` is symmetric positive definite, these are
also the two real polar decompositions of ``L``; :func:`verify_moretti`
checks that factor by factor against :mod:`lorentz_polar.polar`.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import (
    MAX_SPEED,
    TOL_GROUP,
    BoostParameters,
    as_boost,
    as_mat4,
    as_rotation,
    _boost,
    _embed,
    boost_matrix,
    lorentz_residual,
    max_abs,
    quadratic_form,
    rotation_embedding,
    validate_lorentz,
)
from .errors import (
    InternalInvariantViolation,
    NotARotation,
    NotLorentz,
    ShapeViolation,
    ZeroVelocity,
)
from .polar import PolarOrder, newton_polar, polar_decompose

SHAPE_REL_TOL = 1e-9


class CartanOrder(Enum):
    ROTATION_BOOST = "rb"
    BOOST_ROTATION = "br"


@dataclass(frozen=True, eq=False)
class CartanFactors:
    rotation: np.ndarray
    boost: BoostParameters
    order: CartanOrder

    def rotation_matrix(self):
        return _embed(self.rotation)

    def boost_matrix(self):
        return _boost(self.boost.v, self.boost.gamma)

    def matrix(self):
        if self.order is CartanOrder.ROTATION_BOOST:
            return self.rotation_matrix() @ self.boost_matrix()
        return self.boost_matrix() @ self.rotation_matrix()


@dataclass(frozen=True)
class VerificationReport:
    """Residuals between the polar factors and the Cartan factors of one matrix.

    ``rotation_factor_residual`` and ``boost_factor_residual`` cover the
    ``U P`` / rotation-boost pair; the ``reversed_*`` fields cover the
    ``P' U'`` / boost-rotation pair.
    """

    rotation_factor_residual: float
    boost_factor_residual: float
    reversed_rotation_residual: float
    reversed_boost_residual: float
    group_residual: float
    reassembly_residual: float
    tolerance: float
    verdict: bool


def _require_proper_orthochronous(L, tol):
    L = as_mat4(L)
    cls = validate_lorentz(L, tol)
    if not cls.is_proper_orthochronous:
        raise NotLorentz(cls)
    return L


def extract_velocity(L, tol=TOL_GROUP):
    """Velocity of the image frame's spatial origin: ``v_i = -L[0, i] / L[0, 0]``."""
    return _velocity(_require_proper_orthochronous(L, tol))


def _velocity(L):
    v = -L[0, 1:] / L[0, 0]
    speed = float(np.linalg.norm(v))
    if not speed < MAX_SPEED:
        raise InternalInvariantViolation(
            f"extracted speed {speed!r} is not below 1; input is not a usable Lorentz matrix"
        )
    return BoostParameters(v)


def rotation_boost_decompose(L, tol=TOL_GROUP):
    """Factor ``L = L_R L_v``.

    ``v`` comes from :func:`extract_velocity`; ``L L_v^-1`` must then have
    the block form ``diag(1, R)`` up to ``1e-9 * L[0, 0]``, and ``R`` must be
    proper orthogonal to the same tolerance.
    """
    return _rotation_boost(_require_proper_orthochronous(L, tol), tol)


def _rotation_boost(L, tol):
    b = _velocity(L)
    candidate = L @ _boost(-b.v, b.gamma)
    shape_tol = SHAPE_REL_TOL * L[0, 0]
    offending = {}
    if abs(candidate[0, 0] - 1.0) > shape_tol:
        offending[(0, 0)] = float(candidate[0, 0])
    for i in range(1, 4):
        if abs(candidate[0, i]) > shape_tol:
            offending[(0, i)] = float(candidate[0, i])
        if abs(candidate[i, 0]) > shape_tol:
            offending[(i, 0)] = float(candidate[i, 0])
    if offending:
        raise ShapeViolation(
            f"L L_v^-1 is not block diagonal within {shape_tol:.3e}: {offending}",
            offending,
        )
    try:
        R = as_rotation(candidate[1:, 1:], tol=max(tol, shape_tol))
    except NotARotation as exc:
        raise ShapeViolation(str(exc), {}) from exc
    return CartanFactors(R, b, CartanOrder.ROTATION_BOOST)


def _reverse(rb, L):
    # L_R L_v = L_{Rv} L_R. Since L[1:, 0] = -gamma R v, R v is read off the
    # first column; forming R @ v instead lets the small non-orthogonality
    # of R change |v|, which gamma amplifies like gamma**3.
    return CartanFactors(
        rb.rotation, BoostParameters(-L[1:, 0] / L[0, 0]), CartanOrder.BOOST_ROTATION
    )


def boost_rotation_decompose(L, tol=TOL_GROUP):
    """Factor ``L = L_{Rv} L_R``, reusing the rotation-boost factors."""
    L = _require_proper_orthochronous(L, tol)
    return _reverse(_rotation_boost(L, tol), L)


def cartan_decompose(L, order=CartanOrder.ROTATION_BOOST, tol=TOL_GROUP):
    if CartanOrder(order) is CartanOrder.ROTATION_BOOST:
        return rotation_boost_decompose(L, tol)
    return boost_rotation_decompose(L, tol)


def verify_moretti(L, tol=TOL_GROUP, method="eig"):
    """Compare both polar decompositions of ``L`` with its Cartan factors.

    Factors are compared as matrices, entrywise, so nothing about the polar
    factors is assumed beyond what the polar routine computes. ``method``
    picks the polar algorithm: ``"eig"`` or ``"newton"``. A failed
    comparison gives ``verdict=False``; it is not an error.
    """
    polar = {"eig": polar_decompose, "newton": newton_polar}[method]
    L = _require_proper_orthochronous(L, tol)
    up = polar(L, PolarOrder.UP)
    pu = polar(L, PolarOrder.PU)
    rb = _rotation_boost(L, tol)
    br = _reverse(rb, L)

    residuals = dict(
        rotation_factor_residual=max_abs(up.u_factor - rb.rotation_matrix()),
        boost_factor_residual=max_abs(up.p_factor - rb.boost_matrix()),
        reversed_rotation_residual=max_abs(pu.u_factor - br.rotation_matrix()),
        reversed_boost_residual=max_abs(pu.p_factor - br.boost_matrix()),
        group_residual=lorentz_residual(L),
        reassembly_residual=max(max_abs(rb.matrix() - L), max_abs(br.matrix() - L)),
    )
    verdict = all(r <= tol for r in residuals.values())
    return VerificationReport(**residuals, tolerance=tol, verdict=verdict)


def positive_definiteness_identity_check(v, w):
    """Both sides of the sum-of-squares identity for the boost quadratic form.

    Returns ``(lhs, rhs)`` with ``lhs = w^T L_v w`` and
    ``rhs = gamma (t - v.x)^2 + (v.x)^2 / (gamma |v|^2) + |x - (v.x) v / |v|^2|^2``.
    The right side is undefined for ``v = 0``.
    """
    b = as_boost(v)
    v = b.v
    v2 = float(v @ v)
    if v2 == 0.0:
        raise ZeroVelocity("identity right-hand side needs v != 0")
    w = np.asarray(w, dtype=float)
    lhs = quadratic_form(boost_matrix(b), w)
    t, x = w[0], w[1:]
    g = b.gamma
    vx = float(v @ x)
    perp = x - (vx / v2) * v
    rhs = g * (t - vx) ** 2 + (vx * vx) / (g * v2) + float(perp @ perp)
    return lhs, rhs


# Seeded samplers for tests and the CLI.

def random_rotation(rng):
    """Rotation from a normalized Gaussian quaternion (Haar distributed)."""
    q = rng.normal(size=4)
    w, x, y, z = q / np.linalg.norm(q)
    return np.array([
        [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
        [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
        [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
    ])


def random_velocity(rng, max_speed=0.9, min_speed=0.0):
    """Direction uniform on the sphere, speed uniform in ``[min_speed, max_speed]``."""
    d = rng.normal(size=3)
    d /= np.linalg.norm(d)
    return rng.uniform(min_speed, max_speed) * d


def random_lorentz(rng, max_factors=8, max_speed=0.9):
    """Alternating product of 1..``max_factors`` random rotations and boosts."""
    n = int(rng.integers(1, max_factors + 1))
    boost_first = bool(rng.integers(2))
    L = np.eye(4)
    for i in range(n):
        if (i % 2 == 0) == boost_first:
            L = L @ boost_matrix(random_velocity(rng, max_speed))
        else:
            L = L @ rotation_embedding(random_rotation(rng))
    return L

