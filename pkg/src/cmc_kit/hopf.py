"""Hopf coefficient, mean and principal curvatures, holomorphicity and umbilics."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .boundary import BoundaryProfile
from .errors import DomainError, ImmersionDegeneracyError, InvalidInputError
from .jets import Jet2, dot, strip_map
from .surfaces import ConformalImmersion

CSV_COLUMNS = ("re(z)", "im(z)", "re(Q)", "im(Q)", "nu2", "cr_residual")


def _check(j: Jet2):
    E, F, G = j.nu2, dot(j.f_x, j.f_y), dot(j.f_y, j.f_y)
    det = E * G - F * F
    if np.any(det <= 1e-24 * np.maximum(E * G, np.finfo(float).tiny)) or np.any(E <= 0):
        raise ImmersionDegeneracyError("degenerate jet: first fundamental form is singular")
    return E, F, G, det


def mean_curvature(j: Jet2):
    """H = (E n - 2F m + G l) / (2 (EG - F^2)), N = f_x x f_y normalized.

    For a conformal jet this is (1/2) nu^-2 <f_xx + f_yy, N>.
    """
    E, F, G, det = _check(j)
    N = j.normal()
    l, m, n = dot(N, j.f_xx), dot(N, j.f_xy), dot(N, j.f_yy)
    return (E * n - 2 * F * m + G * l) / (2 * det)


def hopf_coefficient(j: Jet2):
    """Q = <N, f_zz> = (<N,f_xx> - <N,f_yy>)/4 - (i/2) <N,f_xy>."""
    _check(j)
    N = j.normal()
    return 0.25 * (dot(N, j.f_xx) - dot(N, j.f_yy)) - 0.5j * dot(N, j.f_xy)


def principal_curvatures(j: Jet2):
    """(k_plus, k_minus) = H +- 2|Q|/nu^2, valid for conformal jets."""
    H = mean_curvature(j)
    d = 2 * np.abs(hopf_coefficient(j)) / j.nu2
    return H + d, H - d


def to_strip(Q_disc, z, rho=1.0):
    """Hopf coefficient in the strip coordinate: Q_strip = Q_disc (dw/dz)^2 = -w^2 Q_disc."""
    _, dw, _ = strip_map(z, rho)
    return Q_disc * dw**2


def boundary_hopf_identity(p: BoundaryProfile, H):
    """max_k |Q_strip - (kappa_n - H - i tau_g) nu^2 / 2| on the boundary samples.

    Q_strip comes from the surface jets transported from disc to strip
    coordinates; the right-hand side from the curvature profile.
    """
    arrays = (p.t, p.kappa_n, p.tau_g, p.nu2)
    if p.disc_jet is None or any(len(a) != p.n for a in arrays) or p.disc_jet.shape != (p.n,):
        raise InvalidInputError("profile samples do not line up")
    lhs = to_strip(hopf_coefficient(p.disc_jet), p.t, p.rho)
    rhs = 0.5 * (p.kappa_n - H - 1j * p.tau_g) * p.nu2
    return float(np.max(np.abs(lhs - rhs)))


@dataclass(frozen=True)
class HopfField:
    z: np.ndarray
    Q: np.ndarray
    nu2: np.ndarray
    H: np.ndarray
    cr: np.ndarray
    f: np.ndarray

    @property
    def cr_residual_max(self):
        return float(np.max(self.cr))

    def to_csv(self, fp=None):
        out = io.StringIO() if fp is None else fp
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in zip(self.z.real.ravel(), self.z.imag.ravel(), self.Q.real.ravel(),
                       self.Q.imag.ravel(), self.nu2.ravel(), self.cr.ravel()):
            writer.writerow([f"{v:.17g}" for v in row])
        if fp is None:
            return out.getvalue()


def interior_grid(surface: ConformalImmersion, grid_n, extent=0.68, h=1e-4):
    """grid_n x grid_n parameter points strictly inside the domain.

    Discs get a Cartesian square of half-width ``extent * rho``; annuli a polar
    grid. Raises DomainError if any difference stencil would leave the domain.
    """
    dom = surface.domain
    if grid_n < 2:
        raise InvalidInputError("grid_n must be at least 2")
    if dom.is_disc:
        s = np.linspace(-extent * dom.outer, extent * dom.outer, grid_n)
        z = s[None, :] + 1j * s[:, None]
        reach = np.abs(z) + 2 * h
        inside = reach < dom.outer
    else:
        margin = (1 - extent) / 2 * (dom.outer - dom.inner)
        r = np.linspace(dom.inner + margin, dom.outer - margin, grid_n)
        a = 2 * np.pi * np.arange(grid_n) / grid_n
        z = r[:, None] * np.exp(1j * a[None, :])
        inside = (np.abs(z) - 2 * h > dom.inner) & (np.abs(z) + 2 * h < dom.outer)
    if not np.all(inside):
        raise DomainError("grid touches the domain boundary")
    return z


def hopf_field(surface: ConformalImmersion, grid_n=32, h=1e-4, extent=0.68) -> HopfField:
    """Q on an interior grid with the Cauchy-Riemann residual |dQ/dzbar|.

    dQ/dzbar = (Q_x + i Q_y)/2 from central differences of step h.
    """
    z = interior_grid(surface, grid_n, extent, h)
    j = surface.jet(z)
    Q = hopf_coefficient(j)
    Qx = (hopf_coefficient(surface.jet(z + h)) - hopf_coefficient(surface.jet(z - h))) / (2 * h)
    Qy = (hopf_coefficient(surface.jet(z + 1j * h)) - hopf_coefficient(surface.jet(z - 1j * h))) / (2 * h)
    cr = 0.5 * np.abs(Qx + 1j * Qy)
    return HopfField(z, Q, j.nu2, mean_curvature(j), cr, j.f)


def cr_residual(surface: ConformalImmersion, grid_n=32, h=1e-4) -> float:
    return hopf_field(surface, grid_n, h).cr_residual_max


@dataclass(frozen=True)
class UmbilicScan:
    points: list
    totally_umbilic: bool
    q_scale: float

    def summary(self):
        return {
            "count": len(self.points),
            "points": [[p.real, p.imag] for p in self.points],
            "totally_umbilic": self.totally_umbilic,
            "q_scale": self.q_scale,
        }


def _image_diameter(f):
    pts = f.reshape(-1, 3)
    if len(pts) > 400:
        pts = pts[:: len(pts) // 400]
    return float(np.sqrt(np.max(np.sum((pts[:, None] - pts[None]) ** 2, axis=-1))))


def umbilic_scan(surface: ConformalImmersion, grid_n=32, tol=1e-6, h=1e-4, max_iter=100) -> UmbilicScan:
    """Locate zeros of Q (umbilics) on a CMC surface.

    Local minima of |Q| on the grid seed a Newton iteration on the
    holomorphic function Q; converged roots with |Q| < tol * q_scale are
    reported. If max |Q| is below tol * median(nu^2) * max(|H|, 1/diameter)
    the surface is flagged totally umbilic and no points are listed.
    """
    fld = hopf_field(surface, grid_n, h)
    absQ = np.abs(fld.Q)
    qmax = float(absQ.max())
    kscale = max(float(np.median(np.abs(fld.H))), 1.0 / _image_diameter(fld.f))
    ref = float(np.median(fld.nu2)) * kscale
    if qmax < tol * ref:
        return UmbilicScan([], True, ref)

    padded = np.pad(absQ, 1, mode="constant", constant_values=np.inf)
    neigh = np.stack([padded[1 + di: 1 + di + absQ.shape[0], 1 + dj: 1 + dj + absQ.shape[1]]
                      for di in (-1, 0, 1) for dj in (-1, 0, 1) if (di, dj) != (0, 0)])
    seeds = fld.z[(absQ <= neigh.min(axis=0)) & (absQ < 0.5 * qmax)]

    dom = surface.domain
    found = []
    for z in seeds:
        for _ in range(max_iter):
            if not (dom.contains(z + h) and dom.contains(z - h)):
                break
            q = complex(hopf_coefficient(surface.jet(z)))
            dq = complex(hopf_coefficient(surface.jet(z + h)) - hopf_coefficient(surface.jet(z - h))) / (2 * h)
            if q == 0 or dq == 0:
                break
            step = q / dq
            z = z - step
            if abs(step) < 1e-14 * dom.outer:
                break
        if not dom.contains(z):
            continue
        if abs(complex(hopf_coefficient(surface.jet(z)))) < tol * qmax:
            if all(abs(z - other) > 1e-6 * dom.outer for other in found):
                found.append(complex(z))
    return UmbilicScan(sorted(found, key=lambda c: (round(c.real, 9), round(c.imag, 9))), False, qmax)
