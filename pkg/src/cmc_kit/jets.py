"""Second-order jets of a surface parameterization and holomorphic changes of coordinate.

A jet stores f, f_x, f_y, f_xx, f_xy, f_yy at one or many parameter points.
All fields are arrays whose last axis has length 3, so every helper here
broadcasts over arbitrary leading shapes.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ImmersionDegeneracyError


def dot(a, b):
    return np.einsum("...i,...i->...", a, b)


@dataclass(frozen=True)
class Jet2:
    f: np.ndarray
    f_x: np.ndarray
    f_y: np.ndarray
    f_xx: np.ndarray
    f_xy: np.ndarray
    f_yy: np.ndarray

    @property
    def shape(self):
        return np.shape(self.f)[:-1]

    @property
    def nu2(self):
        return dot(self.f_x, self.f_x)

    def cross(self):
        return np.cross(self.f_x, self.f_y)

    def normal(self, eps=1e-300):
        """Unit normal (f_x x f_y)/|f_x x f_y|."""
        c = self.cross()
        norm = np.linalg.norm(c, axis=-1)
        if np.any(norm <= eps) or not np.all(np.isfinite(norm)):
            raise ImmersionDegeneracyError("f_x and f_y are parallel or zero")
        return c / norm[..., None]

    def conformality_residuals(self):
        """(|<f_x,f_x> - <f_y,f_y>|, |<f_x,f_y>|) relative to nu^2."""
        nu2 = self.nu2
        return (
            np.abs(nu2 - dot(self.f_y, self.f_y)) / nu2,
            np.abs(dot(self.f_x, self.f_y)) / nu2,
        )

    def take(self, index):
        return Jet2(*(getattr(self, k)[index] for k in _FIELDS))

    def as_array(self):
        """Stack into shape (..., 6, 3)."""
        return np.stack([getattr(self, k) for k in _FIELDS], axis=-2)


_FIELDS = ("f", "f_x", "f_y", "f_xx", "f_xy", "f_yy")


def complex_derivatives(j: Jet2):
    """Return (f_z, f_zz, f_zzbar) as complex vectors."""
    f_z = 0.5 * (j.f_x - 1j * j.f_y)
    f_zz = 0.25 * (j.f_xx - j.f_yy) - 0.5j * j.f_xy
    f_zzbar = 0.25 * (j.f_xx + j.f_yy)
    return f_z, f_zz, f_zzbar


def reparameterize(j: Jet2, dphi, d2phi) -> Jet2:
    """Jet of f o phi at z, given the jet of f at w = phi(z).

    phi must be holomorphic; dphi and d2phi are phi'(z) and phi''(z).
    Uses F_z = f_w phi', F_zz = f_ww phi'^2 + f_w phi'', F_zzbar = f_wwbar |phi'|^2,
    which holds for any smooth real f.
    """
    dphi = np.asarray(dphi, dtype=complex)[..., None]
    d2phi = np.asarray(d2phi, dtype=complex)[..., None]
    f_w, f_ww, f_wwbar = complex_derivatives(j)
    F_z = f_w * dphi
    F_zz = f_ww * dphi**2 + f_w * d2phi
    F_zzbar = f_wwbar * np.abs(dphi) ** 2
    return Jet2(
        f=np.asarray(j.f, dtype=float),
        f_x=2.0 * F_z.real,
        f_y=-2.0 * F_z.imag,
        f_xx=2.0 * F_zz.real + 2.0 * F_zzbar,
        f_xy=-2.0 * F_zz.imag,
        f_yy=2.0 * F_zzbar - 2.0 * F_zz.real,
    )


def conjugate_parameter(j: Jet2) -> Jet2:
    """Jet of (x, y) -> f(x, -y), given the jet of f at the conjugate point."""
    return Jet2(j.f, j.f_x, -j.f_y, j.f_xx, -j.f_xy, j.f_yy)


def strip_map(z, rho=1.0):
    """w = rho * exp(i z) and its first two z-derivatives.

    Inverse of z = -i log(w / rho): the circle |w| = rho is the line y = 0,
    traversed by x = t, and the disc interior is y > 0. Both the Hopf
    coefficient conversion (factor (dw/dz)^2 = -w^2) and the boundary jets
    go through this single routine.
    """
    w = rho * np.exp(1j * np.asarray(z, dtype=complex))
    return w, 1j * w, -w
