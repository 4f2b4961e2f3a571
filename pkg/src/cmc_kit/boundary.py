"""Darboux frame and curvature profile of the boundary curve t -> f(rho e^{it})."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DomainError, ImmersionDegeneracyError, InvalidInputError
from .jets import Jet2, dot, reparameterize, strip_map
from .numerics import PeriodicSamples, spectral_derivative
from .surfaces import ConformalImmersion

CSV_COLUMNS = ("t", "x", "y", "z", "nu2", "ds_dt", "kappa_g", "kappa_n", "tau_g")


@dataclass(frozen=True)
class DarbouxFrame:
    X: np.ndarray
    Y: np.ndarray
    N: np.ndarray


def _unit(v):
    n = np.linalg.norm(v, axis=-1)
    if np.any(n == 0):
        raise ImmersionDegeneracyError("zero vector cannot be normalized")
    return v / n[..., None]


def darboux_frame(j: Jet2, tangent_direction=(1.0, 0.0)) -> DarbouxFrame:
    """Frame (X, N x X, N) with X the unit image of ``tangent_direction``."""
    a, b = (np.asarray(c, dtype=float) for c in tangent_direction)
    if np.any((a == 0) & (b == 0)):
        raise InvalidInputError("tangent direction must be nonzero")
    scale = np.maximum(j.nu2, np.finfo(float).tiny)
    if np.any(np.linalg.norm(j.cross(), axis=-1) < 1e-12 * scale):
        raise ImmersionDegeneracyError("degenerate jet: nu^2 is numerically zero")
    N = j.normal()
    X = _unit(a[..., None] * j.f_x + b[..., None] * j.f_y)
    return DarbouxFrame(X, np.cross(N, X), N)


@dataclass(frozen=True)
class BoundaryProfile:
    """Boundary data on the uniform grid t_k = 2 pi k / n.

    Derivatives are with respect to t in the strip coordinate
    z = -i log(w / rho), so ds/dt = nu and nu2 = |d gamma/dt|^2.
    """

    n: int
    t: np.ndarray
    gamma: np.ndarray
    X: np.ndarray
    Y: np.ndarray
    N: np.ndarray
    nu2: np.ndarray
    ds_dt: np.ndarray
    kappa_g: np.ndarray
    kappa_n: np.ndarray
    tau_g: np.ndarray
    rho: float = 1.0
    w: Optional[np.ndarray] = field(default=None, repr=False)
    disc_jet: Optional[Jet2] = field(default=None, repr=False)
    strip_jet: Optional[Jet2] = field(default=None, repr=False)

    @property
    def frames(self):
        return DarbouxFrame(self.X, self.Y, self.N)

    def frame(self, k):
        return DarbouxFrame(self.X[k], self.Y[k], self.N[k])

    def length(self):
        return float(np.sum(self.ds_dt) * 2 * np.pi / self.n)

    def diameter(self):
        g = self.gamma
        d2 = np.sum((g[:, None, :] - g[None, :, :]) ** 2, axis=-1)
        return float(np.sqrt(d2.max()))

    def curvature_scale(self, H=0.0):
        """max(|kappa_n|, |tau_g|, |H|, 1/diameter)."""
        return float(max(np.max(np.abs(self.kappa_n)), np.max(np.abs(self.tau_g)), abs(H), 1.0 / self.diameter()))

    def replace_values(self, **kw):
        from dataclasses import replace

        return replace(self, **kw)

    def to_csv(self, fp=None):
        """Write the nine profile columns; returns the text when ``fp`` is None."""
        out = io.StringIO() if fp is None else fp
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        cols = (self.t, *self.gamma.T, self.nu2, self.ds_dt, self.kappa_g, self.kappa_n, self.tau_g)
        for row in zip(*cols):
            writer.writerow([f"{v:.17g}" for v in row])
        if fp is None:
            return out.getvalue()


def boundary_profile(surface: ConformalImmersion, rho=None, n=512) -> BoundaryProfile:
    if n < 64:
        raise InvalidInputError("boundary profiles need n >= 64 samples")
    rho = surface.boundary_radius if rho is None else float(rho)
    if not rho > 0 or not surface.domain.contains(rho):
        raise DomainError(f"circle |w| = {rho} is not inside the domain")

    t = 2 * np.pi * np.arange(n) / n
    w, dw, d2w = strip_map(t, rho)
    dj = surface.jet(w)
    sj = reparameterize(dj, dw, d2w)

    gamma = sj.f
    nu2 = sj.nu2
    size = np.max(np.linalg.norm(gamma - gamma.mean(axis=0), axis=-1))
    if np.min(nu2) < 1e-12 * max(size, np.finfo(float).tiny) ** 2:
        raise ImmersionDegeneracyError("nu^2 vanishes on the boundary circle")
    nu = np.sqrt(nu2)

    N = sj.normal()
    X = sj.f_x / nu[:, None]
    Y = np.cross(N, X)
    dN = spectral_derivative(PeriodicSamples(N)).values

    return BoundaryProfile(
        n=n,
        t=t,
        gamma=gamma,
        X=X,
        Y=Y,
        N=N,
        nu2=nu2,
        ds_dt=nu,
        kappa_g=dot(Y, sj.f_xx) / nu2,
        kappa_n=dot(N, sj.f_xx) / nu2,
        tau_g=-dot(dN, Y) / nu,
        rho=rho,
        w=w,
        disc_jet=dj,
        strip_jet=sj,
    )


def space_curvature(p: BoundaryProfile):
    """|gamma' x gamma''| / |gamma'|^3 from spectral derivatives of the sampled curve."""
    d1 = spectral_derivative(PeriodicSamples(p.gamma)).values
    d2 = spectral_derivative(PeriodicSamples(d1)).values
    return np.linalg.norm(np.cross(d1, d2), axis=-1) / np.linalg.norm(d1, axis=-1) ** 3
