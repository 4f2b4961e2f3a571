"""Integral, Fourier, flux and classification diagnostics on a boundary profile.

With alpha = (kappa_n - H) nu^2 and beta = -tau_g nu^2 sampled on |w| = rho,
alpha + i beta = -2 w^2 Q(w) extends holomorphically to the disc with a
double zero at the centre. Consequently alpha and beta have no Fourier
modes with |m| <= 1, and c_m(beta) = -i c_m(alpha) for m >= 2.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from . import boundary
from .boundary import BoundaryProfile
from .errors import ConsistencyError, PreconditionError
from .numerics import FourierCoefficients, PeriodicSamples, dft, periodic_integral
from .surfaces import ConformalImmersion

MOMENT_NAMES = ("alpha_cos", "alpha_sin", "beta_cos", "beta_sin")


class Classification(str, Enum):
    TOTALLY_UMBILIC = "TotallyUmbilic"
    STRICTLY_BOUNDED = "StrictlyBounded"
    VIOLATION = "Violation"


def _integral(p: BoundaryProfile, values):
    return float(periodic_integral(PeriodicSamples(values)))


def alpha_beta(p: BoundaryProfile, H):
    return (p.kappa_n - H) * p.nu2, -p.tau_g * p.nu2


def integral_identities(p: BoundaryProfile, H):
    """Return (I1, I2, moments).

    I1 = int (H - kappa_n)(ds/dt)^2 dt, I2 = int tau_g (ds/dt)^2 dt, and the
    moments are the integrals of alpha and beta against cos t and sin t.
    All vanish on a CMC disc.
    """
    alpha, beta = alpha_beta(p, H)
    c, s = np.cos(p.t), np.sin(p.t)
    I1 = _integral(p, (H - p.kappa_n) * p.nu2)
    I2 = _integral(p, p.tau_g * p.nu2)
    moments = tuple(_integral(p, v) for v in (alpha * c, alpha * s, beta * c, beta * s))
    return I1, I2, moments


def recover_H(p: BoundaryProfile):
    """Weighted mean of kappa_n for the measure (ds/dt)^2 dt; returns (H, M)."""
    M = _integral(p, p.nu2)
    assert M > 0, "a valid profile has positive total weight"
    return _integral(p, p.kappa_n * p.nu2) / M, M


@dataclass(frozen=True)
class FourierDiagnostics:
    alpha_c: FourierCoefficients
    beta_c: FourierCoefficients
    low_order_max: float
    pairing_residual: float

    def coefficient_scale(self):
        return max(self.alpha_c.max_abs(), self.beta_c.max_abs())

    def to_dict(self):
        def enc(c):
            return {"m": c.frequencies.tolist(), "re": c.coeffs.real.tolist(), "im": c.coeffs.imag.tolist()}

        return {
            "alpha_c": enc(self.alpha_c),
            "beta_c": enc(self.beta_c),
            "low_order_max": self.low_order_max,
            "pairing_residual": self.pairing_residual,
        }


def fourier_structure(p: BoundaryProfile, H, n_max=16) -> FourierDiagnostics:
    if n_max < 4:
        raise ValueError("n_max must be at least 4")
    alpha, beta = alpha_beta(p, H)
    ca = dft(PeriodicSamples(alpha), n_max)
    cb = dft(PeriodicSamples(beta), n_max)
    low = max(abs(c[m]) for c in (ca, cb) for m in (-1, 0, 1))
    pairing = max(abs(cb[m] + 1j * ca[m]) for m in range(2, n_max + 1))
    return FourierDiagnostics(ca, cb, float(low), float(pairing))


def classify(p: BoundaryProfile, H, tol=1e-6) -> Classification:
    """Umbilicity classification of a disc boundary.

    Constant kappa_n or tau_g (range below tol * scale) must come with
    kappa_n = H and tau_g = 0 everywhere; otherwise H must lie strictly
    between min and max of kappa_n. Anything else is a Violation.
    """
    scale = p.curvature_scale(H)
    margin = 1e-8 * scale
    if np.ptp(p.kappa_n) < tol * scale or np.ptp(p.tau_g) < tol * scale:
        if np.max(np.abs(p.kappa_n - H)) < tol * scale and np.max(np.abs(p.tau_g)) < tol * scale:
            return Classification.TOTALLY_UMBILIC
        return Classification.VIOLATION
    if p.kappa_n.min() + margin < H < p.kappa_n.max() - margin:
        return Classification.STRICTLY_BOUNDED
    return Classification.VIOLATION


def flux_residual(p: BoundaryProfile, H, a):
    """int <Y, a> ds + H int <gamma x X, a> ds along one boundary component.

    Y = N x X is the conormal of the profile's Darboux frame, traversed in the
    direction of increasing t.
    """
    a = np.asarray(a, dtype=float)
    integrand = (p.Y @ a + H * (np.cross(p.gamma, p.X) @ a)) * p.ds_dt
    return _integral(p, integrand)


def boundary_flux(surface: ConformalImmersion, H, rho=None, n=512):
    """Flux vector over the whole boundary of the compact piece bounded by |w| = rho.

    For a disc this is the single circle. For an annulus the piece is
    r_in <= |w| <= rho; the inner circle enters with reversed orientation,
    which negates its contribution. Returns (flux components, total length).
    """
    rho = surface.boundary_radius if rho is None else rho
    basis = np.eye(3)
    outer = boundary.boundary_profile(surface, rho, n)
    flux = np.array([flux_residual(outer, H, e) for e in basis])
    length = outer.length()
    if not surface.domain.is_disc:
        inner = boundary.boundary_profile(surface, surface.domain.inner, n)
        flux -= np.array([flux_residual(inner, H, e) for e in basis])
        length += inner.length()
    return flux, length


def circle_fit(p: BoundaryProfile):
    """(planarity residual, radius spread) of the sampled curve, both relative to its size."""
    g = p.gamma
    c = g.mean(axis=0)
    _, sv, vt = np.linalg.svd(g - c, full_matrices=False)
    normal = vt[-1]
    size = max(np.max(np.linalg.norm(g - c, axis=1)), np.finfo(float).tiny)
    planar = np.max(np.abs((g - c) @ normal)) / size
    r = np.linalg.norm(g - c, axis=1)
    return float(planar), float(np.ptp(r) / size)


def circular_flux(p: BoundaryProfile, H, tol=1e-8):
    """int (kappa_n - H)(ds/dt) dt for a boundary that is a round planar circle."""
    planar, spread = circle_fit(p)
    if planar > tol or spread > tol:
        raise PreconditionError(f"boundary is not a planar circle (planarity {planar:.3g}, spread {spread:.3g})")
    return _integral(p, (p.kappa_n - H) * p.ds_dt)


@dataclass
class IdentityReport:
    I1: float
    I2: float
    moments: tuple
    M: float
    H_recovered: float
    H_nominal: float
    kappa_n_min: float
    kappa_n_max: float
    classification: Classification
    flux_residuals: tuple
    circular_flux: Optional[float]
    fourier: FourierDiagnostics
    warnings: list = field(default_factory=list)

    def __post_init__(self):
        if not self.M > 0:
            raise ConsistencyError("normalization M must be positive")

    def to_dict(self):
        d = {k: v for k, v in asdict(self).items() if k not in ("fourier", "classification", "warnings")}
        d["moments"] = dict(zip(MOMENT_NAMES, self.moments))
        d["flux_residuals"] = list(self.flux_residuals)
        d["classification"] = self.classification.value
        d["fourier"] = self.fourier.to_dict()
        return d

    def to_json(self, **extra):
        d = self.to_dict()
        d.update(extra)
        return json.dumps(d, indent=2, sort_keys=True)


def identity_report(surface: ConformalImmersion, rho=None, n=512, tol=1e-6, n_max=16) -> IdentityReport:
    if not surface.is_cmc:
        raise PreconditionError("identity reports need a surface with a nominal constant H")
    H = surface.nominal_H
    p = boundary.boundary_profile(surface, rho, n)
    I1, I2, moments = integral_identities(p, H)
    H_rec, M = recover_H(p)
    flux, _ = boundary_flux(surface, H, p.rho, n)
    try:
        circ = circular_flux(p, H)
    except PreconditionError:
        circ = None
    warnings = []
    if not surface.disc_topology:
        warnings.append("non-disc topology: disc identities are not expected to hold")
    return IdentityReport(
        I1=I1,
        I2=I2,
        moments=moments,
        M=M,
        H_recovered=H_rec,
        H_nominal=H,
        kappa_n_min=float(p.kappa_n.min()),
        kappa_n_max=float(p.kappa_n.max()),
        classification=classify(p, H, tol),
        flux_residuals=tuple(float(v) for v in flux),
        circular_flux=circ,
        fourier=fourier_structure(p, H, n_max),
        warnings=warnings,
    )
