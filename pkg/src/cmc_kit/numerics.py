"""Periodic quadrature, discrete Fourier analysis and finite-difference jets."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .jets import Jet2

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class PeriodicSamples:
    """Samples on the uniform grid t_k = k * period / n, k = 0 .. n-1.

    ``values`` has the sample index on axis 0; trailing axes (e.g. vector
    components) are carried along by every operation.
    """

    values: np.ndarray
    period: float = TWO_PI

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.ndim == 0 or v.shape[0] < 4:
            raise InvalidInputError(f"need at least 4 samples, got {v.shape[:1] or 0}")
        if not self.period > 0:
            raise InvalidInputError("period must be positive")
        object.__setattr__(self, "values", v)

    @property
    def n(self):
        return self.values.shape[0]

    @property
    def t(self):
        return np.arange(self.n) * (self.period / self.n)

    @classmethod
    def from_function(cls, func, n, period=TWO_PI):
        t = np.arange(n) * (period / n)
        return cls(np.asarray(func(t)), period)


@dataclass(frozen=True)
class FourierCoefficients:
    """Coefficients c(m) for m = -n_max .. n_max, indexable by frequency."""

    coeffs: np.ndarray
    n_max: int

    def __getitem__(self, m):
        if abs(m) > self.n_max:
            raise KeyError(m)
        return self.coeffs[m + self.n_max]

    @property
    def frequencies(self):
        return np.arange(-self.n_max, self.n_max + 1)

    def as_dict(self):
        return {int(m): complex(c) for m, c in zip(self.frequencies, self.coeffs)}

    def max_abs(self):
        return float(np.max(np.abs(self.coeffs)))


def periodic_integral(s: PeriodicSamples):
    """Periodic trapezoid rule, (period/n) * sum of the samples."""
    total = (s.period / s.n) * np.sum(s.values, axis=0)
    return total if np.ndim(total) else total[()]


def dft(s: PeriodicSamples, n_max: int) -> FourierCoefficients:
    """c(m) = (1/n) sum_k v_k exp(-i m omega t_k), omega = 2 pi / period."""
    n = s.n
    if n_max < 0 or n_max > n / 2 - 1:
        raise InvalidInputError(f"n_max={n_max} too large for n={n} samples")
    if s.values.ndim != 1:
        raise InvalidInputError("dft expects scalar samples")
    full = np.fft.fft(s.values) / n
    m = np.arange(-n_max, n_max + 1)
    return FourierCoefficients(full[m % n], n_max)


def idft(c: FourierCoefficients, n: int, period=TWO_PI, real=None) -> PeriodicSamples:
    """Evaluate sum_m c(m) exp(i m omega t_k) on the n-point grid."""
    if c.n_max > n / 2 - 1:
        raise InvalidInputError("too few samples for the given band")
    full = np.zeros(n, dtype=complex)
    full[c.frequencies % n] = c.coeffs
    values = np.fft.ifft(full) * n
    if real is None:
        real = np.allclose(c.coeffs, np.conj(c.coeffs[::-1]), rtol=0, atol=1e-14 * (1 + c.max_abs()))
    return PeriodicSamples(values.real if real else values, period)


def spectral_derivative(s: PeriodicSamples) -> PeriodicSamples:
    """d/dt by multiplying Fourier modes by i*m*omega (Nyquist mode dropped)."""
    n = s.n
    v = s.values
    k = np.fft.fftfreq(n, d=1.0 / n)
    if n % 2 == 0:
        k[n // 2] = 0.0
    mult = 1j * k * (TWO_PI / s.period)
    mult = mult.reshape((n,) + (1,) * (v.ndim - 1))
    dv = np.fft.ifft(mult * np.fft.fft(v, axis=0), axis=0)
    if not np.iscomplexobj(v):
        dv = dv.real
    return PeriodicSamples(dv, s.period)


def fd_jet(evaluator, z, h=1e-4) -> Jet2:
    """Central second-order finite-difference jet of ``evaluator(x, y)``.

    ``evaluator`` must accept broadcastable arrays x, y and return an array
    whose last axis holds the three coordinates. Truncation error is O(h^2);
    stencils are exact for polynomials of degree <= 2.
    """
    if not h > 0:
        raise InvalidInputError("finite-difference step must be positive")
    z = np.asarray(z, dtype=complex)
    x, y = z.real, z.imag

    def ev(dx, dy):
        return np.asarray(evaluator(x + dx, y + dy), dtype=float)

    f0 = ev(0.0, 0.0)
    fxp, fxm = ev(h, 0.0), ev(-h, 0.0)
    fyp, fym = ev(0.0, h), ev(0.0, -h)
    fpp, fpm = ev(h, h), ev(h, -h)
    fmp, fmm = ev(-h, h), ev(-h, -h)
    return Jet2(
        f=f0,
        f_x=(fxp - fxm) / (2 * h),
        f_y=(fyp - fym) / (2 * h),
        f_xx=(fxp - 2 * f0 + fxm) / h**2,
        f_xy=(fpp - fpm - fmp + fmm) / (4 * h**2),
        f_yy=(fyp - 2 * f0 + fym) / h**2,
    )
