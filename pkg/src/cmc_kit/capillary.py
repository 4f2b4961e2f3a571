"""Ruled support surfaces along a boundary curve and the equal-torsion test.

The support surface is S(t, r) = gamma(t) + r d(t), d = cos(theta) Y + sin(theta) N.
Along gamma its normal is N2 = cos(theta) N - sin(theta) Y and its conormal
N2 x X = d, so <N, N2> = cos(theta). Only first-order data along gamma is
needed: the geodesic torsion of gamma in S depends on N2 alone.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .boundary import BoundaryProfile
from .errors import ConsistencyError, PreconditionError
from .identities import Classification, classify
from .jets import dot
from .numerics import PeriodicSamples, spectral_derivative

ANGLE_TOL = 1e-8
CSV_COLUMNS = ("t", "tau_M", "tau_S", "angle_cos")


@dataclass(frozen=True)
class SupportSurface:
    profile: BoundaryProfile
    theta: np.ndarray
    ruling: np.ndarray
    N2: np.ndarray
    r_max: float

    @property
    def Y2(self):
        return self.ruling

    def points(self, r):
        """S(t_k, r) on the profile grid, shape (n, 3)."""
        return self.profile.gamma + r * self.ruling


def _angle_samples(p, angle_fn):
    if callable(angle_fn):
        theta = np.asarray(angle_fn(p.t), dtype=float)
        return np.broadcast_to(theta, p.t.shape).copy()
    return np.full(p.n, float(angle_fn))


def _regular_extent(p, d, r_probe=None, steps=64):
    # informational: largest sampled r with |S_t x S_r| bounded away from zero
    dd = spectral_derivative(PeriodicSamples(d)).values
    dg = spectral_derivative(PeriodicSamples(p.gamma)).values
    r_probe = p.diameter() if r_probe is None else r_probe
    ref = np.max(np.linalg.norm(dg, axis=1))
    r_max = 0.0
    for r in np.linspace(0, r_probe, steps + 1)[1:]:
        area = np.linalg.norm(np.cross(dg + r * dd, d), axis=1)
        if area.min() < 1e-6 * ref:
            break
        r_max = r
    return float(r_max)


def ruled_support(p: BoundaryProfile, angle_fn) -> SupportSurface:
    """Support surface meeting M along gamma at contact angle theta(t).

    ``angle_fn`` is a constant or a vectorized callable of t.
    """
    theta = _angle_samples(p, angle_fn)
    c, s = np.cos(theta)[:, None], np.sin(theta)[:, None]
    d = c * p.Y + s * p.N
    N2 = c * p.N - s * p.Y
    return SupportSurface(p, theta, d, N2, _regular_extent(p, d))


def torsion_in_support(s: SupportSurface):
    """tau_{g,S} = -<dN2/ds, Y2>, with dN2/dt taken spectrally."""
    dN2 = spectral_derivative(PeriodicSamples(s.N2)).values
    return -dot(dN2, s.Y2) / s.profile.ds_dt


@dataclass(frozen=True)
class TorsionComparison:
    t: np.ndarray
    tau_M: np.ndarray
    tau_S: np.ndarray
    angle_cos: np.ndarray
    angle_sin: np.ndarray

    @property
    def max_torsion_gap(self):
        return float(np.max(np.abs(self.tau_M - self.tau_S)))

    @property
    def angle(self):
        return np.unwrap(np.arctan2(self.angle_sin, self.angle_cos))

    @property
    def angle_range(self):
        return float(np.ptp(self.angle))

    def to_csv(self, fp=None):
        out = io.StringIO() if fp is None else fp
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in zip(self.t, self.tau_M, self.tau_S, self.angle_cos):
            writer.writerow([f"{v:.17g}" for v in row])
        if fp is None:
            return out.getvalue()


def compare_torsions(s: SupportSurface) -> TorsionComparison:
    p = s.profile
    return TorsionComparison(
        t=p.t,
        tau_M=p.tau_g,
        tau_S=torsion_in_support(s),
        angle_cos=dot(p.N, s.N2),
        angle_sin=-dot(p.Y, s.N2),
    )


class TJVerdict(str, Enum):
    CONSTANT_ANGLE_EQUAL_TORSION = "ConstantAngleAndEqualTorsion"
    VARYING_ANGLE_UNEQUAL_TORSION = "VaryingAngleAndUnequalTorsion"
    INCONSISTENT = "Inconsistent"


def tj_check(c: TorsionComparison, tol=1e-8, scale=1.0, angle_tol=ANGLE_TOL) -> TJVerdict:
    """Constant contact angle must coincide with equal geodesic torsions.

    A mismatch between the two sides means the numerics violated the
    equivalence and is reported as Inconsistent.
    """
    constant = c.angle_range < angle_tol
    equal = c.max_torsion_gap <= tol * scale
    if constant and equal:
        return TJVerdict.CONSTANT_ANGLE_EQUAL_TORSION
    if not constant and not equal:
        return TJVerdict.VARYING_ANGLE_UNEQUAL_TORSION
    return TJVerdict.INCONSISTENT


class CapillaryVerdict(str, Enum):
    UMBILIC_CERTIFIED = "UmbilicCertified"
    NON_UMBILIC = "NonUmbilic"


def capillary_umbilicity(p: BoundaryProfile, s: SupportSurface, H, tol=1e-6) -> CapillaryVerdict:
    """A capillary disc is totally umbilic iff its boundary has constant
    geodesic torsion in the support surface (and then that torsion is zero)."""
    if np.ptp(s.theta) >= ANGLE_TOL:
        raise PreconditionError("contact angle is not constant: not a capillary configuration")
    tau_S = torsion_in_support(s)
    scale = p.curvature_scale(H)
    if np.ptp(tau_S) >= tol * scale:
        return CapillaryVerdict.NON_UMBILIC
    if np.max(np.abs(tau_S)) >= tol * scale:
        raise ConsistencyError("constant support torsion is not zero")
    if classify(p, H, tol) is not Classification.TOTALLY_UMBILIC:
        raise ConsistencyError("support torsion certifies umbilicity but classify disagrees")
    return CapillaryVerdict.UMBILIC_CERTIFIED
