"""Catalog of conformally parameterized test surfaces with exact 2-jets.

Every surface is parameterized over a region of the complex w-plane (a disc
|w| <= rho, or an annulus r_in <= |w| <= r_out). The unit normal is always
N = f_x x f_y / |f_x x f_y|; ``orientation = -1`` means the parameter is
replaced by its conjugate, which flips N (and the sign of H) while keeping
the coordinate conformal and positively oriented.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import lru_cache
from typing import Callable, Optional

import numpy as np
from numpy.polynomial import Polynomial

from .errors import BranchPointError, DomainError, InvalidInputError
from .jets import Jet2, conjugate_parameter, reparameterize
from .numerics import fd_jet


class Kind(str, Enum):
    SPHERE_CAP = "SphereCap"
    PLANE = "PlaneDisc"
    ENNEPER = "Enneper"
    CYLINDER = "CylinderAnnulus"
    WEIERSTRASS = "WeierstrassMinimal"
    CUSTOM = "Custom"


@dataclass(frozen=True)
class Domain:
    outer: float
    inner: float = 0.0

    def __post_init__(self):
        if not (self.outer > 0 and 0 <= self.inner < self.outer):
            raise InvalidInputError(f"empty domain: inner={self.inner}, outer={self.outer}")

    @property
    def is_disc(self):
        return self.inner == 0.0

    def contains(self, w, rtol=1e-12):
        r = np.abs(np.asarray(w))
        return (r <= self.outer * (1 + rtol)) & (r >= self.inner * (1 - rtol))


@dataclass(frozen=True)
class WeierstrassData:
    """Polynomial Weierstrass data, coefficients in increasing degree."""

    fpoly: tuple
    gpoly: tuple

    def __post_init__(self):
        object.__setattr__(self, "fpoly", tuple(complex(c) for c in self.fpoly))
        object.__setattr__(self, "gpoly", tuple(complex(c) for c in self.gpoly))
        if len(self.fpoly) > 9 or len(self.gpoly) > 9:
            raise InvalidInputError("polynomial degrees must be <= 8")
        if not self.fpoly or not any(self.fpoly):
            raise InvalidInputError("fpoly must be nonzero")
        if not self.gpoly:
            object.__setattr__(self, "gpoly", (0j,))

    def branch_points(self):
        """Zeros of the induced metric factor |f|(1+|g|^2)/2, i.e. zeros of fpoly."""
        p = Polynomial(np.trim_zeros(np.array(self.fpoly), "b"))
        return p.roots() if p.degree() > 0 else np.array([], dtype=complex)


@dataclass(frozen=True)
class ConformalImmersion:
    kind: Kind
    params: dict
    domain: Domain
    nominal_H: Optional[float]
    orientation: int = 1
    disc_topology: bool = True
    evaluator: Optional[Callable] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.orientation not in (1, -1):
            raise InvalidInputError("orientation must be +1 or -1")

    @property
    def boundary_radius(self):
        """Radius of the circle whose image is treated as the boundary curve."""
        if self.domain.is_disc:
            return self.domain.outer
        return float(self.params.get("rho", 1.0))

    @property
    def is_cmc(self):
        return self.nominal_H is not None

    def jet(self, w) -> Jet2:
        return jet(self, w)

    def __call__(self, w):
        return jet(self, w).f

    def flipped(self):
        """Same surface with reversed parameter orientation (N -> -N, H -> -H)."""
        H = None if self.nominal_H is None else -self.nominal_H
        return replace(self, orientation=-self.orientation, nominal_H=H)

    def to_record(self):
        if self.kind is Kind.CUSTOM:
            raise InvalidInputError("custom evaluators cannot be serialized")
        params = {}
        for k, v in self.params.items():
            if isinstance(v, tuple):
                params[k] = [[c.real, c.imag] for c in v]
            else:
                params[k] = v
        return {
            "kind": self.kind.value,
            "params": params,
            "domain": {"inner": self.domain.inner, "outer": self.domain.outer},
            "orientation": self.orientation,
        }

    def to_text(self):
        return json.dumps(self.to_record(), indent=2, sort_keys=True)


def from_record(record) -> ConformalImmersion:
    """Rebuild a catalog surface from ``ConformalImmersion.to_record`` output."""
    if isinstance(record, str):
        record = json.loads(record)
    kind = Kind(record["kind"])
    p = record.get("params", {})
    dom = record.get("domain", {})
    if kind is Kind.SPHERE_CAP:
        s = sphere_cap(p["H"], dom.get("outer", 1.0))
    elif kind is Kind.PLANE:
        s = plane_disc(dom.get("outer", 1.0))
    elif kind is Kind.ENNEPER:
        s = enneper(dom.get("outer", 1.0))
    elif kind is Kind.CYLINDER:
        s = cylinder_annulus(p["R"], p["half_height"], p.get("rho", 1.0))
    elif kind is Kind.WEIERSTRASS:
        data = WeierstrassData(
            [complex(*c) for c in p["fpoly"]], [complex(*c) for c in p["gpoly"]]
        )
        s = weierstrass_minimal(data, dom.get("outer", 1.0))
    else:
        raise InvalidInputError(f"cannot rebuild {kind}")
    return s.flipped() if record.get("orientation", 1) == -1 else s


# --------------------------------------------------------------------------
# constructors


def sphere_cap(H, domain_radius=1.0) -> ConformalImmersion:
    """Stereographic cap of the sphere of radius 1/H; rho = 1 is a hemisphere."""
    if not H > 0:
        raise InvalidInputError("sphere cap needs H > 0")
    if not 0 < domain_radius <= 1:
        raise InvalidInputError("sphere cap domain radius must lie in (0, 1]")
    return ConformalImmersion(Kind.SPHERE_CAP, {"H": float(H)}, Domain(float(domain_radius)), float(H))


def plane_disc(domain_radius=1.0) -> ConformalImmersion:
    return ConformalImmersion(Kind.PLANE, {}, Domain(float(domain_radius)), 0.0)


def enneper(domain_radius=1.0) -> ConformalImmersion:
    return ConformalImmersion(Kind.ENNEPER, {}, Domain(float(domain_radius)), 0.0)


def cylinder_annulus(R=1.0, half_height=1.0, rho=1.0) -> ConformalImmersion:
    """Round cylinder of radius R over the annulus exp(-h/R) <= |w| <= exp(h/R).

    In the strip coordinate z = -i R log w this is (R cos(x/R), R sin(x/R), -y),
    which has nu = 1 and inward normal, so H = 1/(2R). The circle |w| = 1 is
    the height-zero cross section. Not a disc: used as a negative control.
    """
    if not R > 0:
        raise InvalidInputError("cylinder needs R > 0")
    if not half_height > 0:
        raise InvalidInputError("cylinder needs half_height > 0")
    dom = Domain(float(np.exp(half_height / R)), float(np.exp(-half_height / R)))
    if not dom.contains(rho):
        raise DomainError("boundary circle outside the annulus")
    return ConformalImmersion(
        Kind.CYLINDER,
        {"R": float(R), "half_height": float(half_height), "rho": float(rho)},
        dom,
        1.0 / (2.0 * R),
        disc_topology=False,
    )


def weierstrass_minimal(data: WeierstrassData, domain_radius=1.0) -> ConformalImmersion:
    """Minimal surface Re int Phi dw, Phi = (f(1-g^2)/2, i f(1+g^2)/2, f g)."""
    for root in data.branch_points():
        if abs(root) <= domain_radius * (1 + 1e-9):
            raise BranchPointError(root)
    return ConformalImmersion(
        Kind.WEIERSTRASS,
        {"fpoly": data.fpoly, "gpoly": data.gpoly},
        Domain(float(domain_radius)),
        0.0,
    )


def custom_surface(evaluator, domain: Domain, nominal_H=None, disc_topology=True) -> ConformalImmersion:
    """Wrap a vectorized evaluator (x, y) -> (..., 3); jets come from ``fd_jet``."""
    return ConformalImmersion(Kind.CUSTOM, {}, domain, nominal_H, disc_topology=disc_topology, evaluator=evaluator)


def graph_control() -> ConformalImmersion:
    """The graph (x, y, x^2 + 2y^2) on the unit disc: neither CMC nor conformal."""

    def ev(x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        return np.stack([x, y, x**2 + 2 * y**2], axis=-1)

    return custom_surface(ev, Domain(1.0))


def random_weierstrass_data(rng, degree=3) -> WeierstrassData:
    """Random data whose fpoly has no zeros in the closed unit disc.

    The constant term dominates the sum of the other coefficient moduli,
    so |fpoly| >= c0 - sum|c_k| > 0 on |w| <= 1.
    """
    def cplx(k):
        return rng.normal(size=k) + 1j * rng.normal(size=k)

    f = cplx(degree + 1)
    f[1:] *= 0.6 / np.sum(np.abs(f[1:]))
    f[0] = np.exp(1j * rng.uniform(0, 2 * np.pi)) * rng.uniform(1.0, 1.5)
    g = 0.5 * cplx(degree + 1)
    return WeierstrassData(tuple(f), tuple(g))


# --------------------------------------------------------------------------
# jets


def jet(surface: ConformalImmersion, w, h=1e-4) -> Jet2:
    """Jet of the immersion at parameter(s) w. Analytic for catalog kinds."""
    w = np.asarray(w, dtype=complex)
    if not np.all(surface.domain.contains(w)):
        raise DomainError("parameter point outside the surface domain")
    if surface.orientation == -1:
        return conjugate_parameter(_raw_jet(surface, np.conj(w), h))
    return _raw_jet(surface, w, h)


def _raw_jet(surface, w, h):
    kind = surface.kind
    if kind is Kind.SPHERE_CAP:
        return _sphere_jet(w, surface.params["H"])
    if kind is Kind.PLANE:
        return _plane_jet(w)
    if kind is Kind.ENNEPER:
        return _enneper_jet(w)
    if kind is Kind.CYLINDER:
        return _cylinder_jet(w, surface.params["R"])
    if kind is Kind.WEIERSTRASS:
        return _weierstrass_jet(w, surface.params["fpoly"], surface.params["gpoly"])
    return fd_jet(surface.evaluator, w, h)


def _vec(*components):
    return np.stack(np.broadcast_arrays(*components), axis=-1).astype(float)


def _plane_jet(w):
    x, y = w.real, w.imag
    zero = np.zeros_like(x)
    one = np.ones_like(x)
    return Jet2(_vec(x, y, zero), _vec(one, zero, zero), _vec(zero, one, zero),
                _vec(zero, zero, zero), _vec(zero, zero, zero), _vec(zero, zero, zero))


def _sphere_jet(w, H):
    # f = (1/H) (2x u, 2y u, 1 - 2u) with u = 1/(1 + x^2 + y^2)
    x, y = w.real, w.imag
    u = 1.0 / (1.0 + x * x + y * y)
    u_x, u_y = -2 * x * u**2, -2 * y * u**2
    u_xx = -2 * u**2 + 8 * x * x * u**3
    u_xy = 8 * x * y * u**3
    u_yy = -2 * u**2 + 8 * y * y * u**3
    s = 1.0 / H
    return Jet2(
        f=s * _vec(2 * x * u, 2 * y * u, 1 - 2 * u),
        f_x=s * _vec(2 * u + 2 * x * u_x, 2 * y * u_x, -2 * u_x),
        f_y=s * _vec(2 * x * u_y, 2 * u + 2 * y * u_y, -2 * u_y),
        f_xx=s * _vec(4 * u_x + 2 * x * u_xx, 2 * y * u_xx, -2 * u_xx),
        f_xy=s * _vec(2 * u_y + 2 * x * u_xy, 2 * u_x + 2 * y * u_xy, -2 * u_xy),
        f_yy=s * _vec(2 * x * u_yy, 4 * u_y + 2 * y * u_yy, -2 * u_yy),
    )


def _enneper_jet(w):
    u, v = w.real, w.imag
    one = np.ones_like(u)
    zero = np.zeros_like(u)
    return Jet2(
        f=_vec(u - u**3 / 3 + u * v * v, -(v - v**3 / 3 + u * u * v), u * u - v * v),
        f_x=_vec(1 - u * u + v * v, -2 * u * v, 2 * u),
        f_y=_vec(2 * u * v, -(1 - v * v + u * u), -2 * v),
        f_xx=_vec(-2 * u, -2 * v, 2 * one),
        f_xy=_vec(2 * v, -2 * u, zero),
        f_yy=_vec(2 * u, 2 * v, -2 * one),
    )


def _cylinder_jet(w, R):
    # strip jet G(x, y) = (R cos(x/R), R sin(x/R), -y) pulled back by z = -i R log w
    z = -1j * R * np.log(w)
    x = z.real
    c, s = np.cos(x / R), np.sin(x / R)
    zero = np.zeros_like(x)
    strip = Jet2(
        f=_vec(R * c, R * s, -z.imag),
        f_x=_vec(-s, c, zero),
        f_y=_vec(zero, zero, -np.ones_like(x)),
        f_xx=_vec(-c / R, -s / R, zero),
        f_xy=_vec(zero, zero, zero),
        f_yy=_vec(zero, zero, zero),
    )
    return reparameterize(strip, -1j * R / w, 1j * R / w**2)


@lru_cache(maxsize=64)
def _weierstrass_polys(fpoly, gpoly):
    f = Polynomial(np.array(fpoly))
    g = Polynomial(np.array(gpoly))
    phi = [f * (1 - g * g) / 2, 1j * f * (1 + g * g) / 2, f * g]
    return [p.integ() for p in phi], phi, [p.deriv() for p in phi]


def _weierstrass_jet(w, fpoly, gpoly):
    F, phi, dphi = _weierstrass_polys(tuple(fpoly), tuple(gpoly))
    Fv = np.stack([p(w) for p in F], axis=-1)
    P = np.stack([p(w) for p in phi], axis=-1)
    dP = np.stack([p(w) for p in dphi], axis=-1)
    return Jet2(Fv.real, P.real, -P.imag, dP.real, -dP.imag, -dP.real)


# --------------------------------------------------------------------------
# sampling and catalog metadata


def sample_points(surface: ConformalImmersion, k, seed=0, margin=0.05):
    """Quasi-random parameter points well inside the domain (Halton, area-uniform)."""
    from scipy.stats import qmc

    pts = qmc.Halton(d=2, scramble=True, seed=seed).random(k)
    lo = surface.domain.inner + margin * surface.domain.outer if surface.domain.inner else 0.0
    hi = surface.domain.outer * (1 - margin)
    r = np.sqrt(lo**2 + pts[:, 0] * (hi**2 - lo**2))
    return r * np.exp(2j * np.pi * pts[:, 1])


CATALOG = {
    "sphere-cap": {
        "kind": Kind.SPHERE_CAP.value,
        "params": {"H": "real > 0 (mean curvature)", "rho": "domain radius in (0, 1], default 1"},
        "topology": "disc",
    },
    "plane": {"kind": Kind.PLANE.value, "params": {"rho": "domain radius, default 1"}, "topology": "disc"},
    "enneper": {"kind": Kind.ENNEPER.value, "params": {"rho": "domain radius, default 1"}, "topology": "disc"},
    "cylinder": {
        "kind": Kind.CYLINDER.value,
        "params": {"R": "real > 0 (radius)", "half_height": "real > 0, default 1", "rho": "boundary circle radius, default 1"},
        "topology": "annulus",
    },
    "weierstrass": {
        "kind": Kind.WEIERSTRASS.value,
        "params": {"fpoly": "complex coefficients, degree <= 8", "gpoly": "complex coefficients, degree <= 8",
                   "rho": "domain radius, default 1"},
        "topology": "disc",
    },
}
