import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from cmc_kit.errors import InvalidInputError
from cmc_kit.numerics import (
    PeriodicSamples,
    dft,
    fd_jet,
    idft,
    periodic_integral,
    spectral_derivative,
)
from cmc_kit import surfaces


def samples(func, n, period=2 * np.pi):
    return PeriodicSamples.from_function(func, n, period)


def test_integral_of_constant():
    assert periodic_integral(samples(lambda t: np.ones_like(t), 16)) == pytest.approx(2 * np.pi, abs=1e-15)


def test_integral_of_cosine_vanishes():
    assert abs(periodic_integral(samples(np.cos, 16))) <= 1e-14


def test_integral_against_closed_form_and_quad_oracle():
    exact = 2 * np.pi / np.sqrt(3)
    oracle, _ = quad(lambda t: 1 / (2 + np.cos(t)), 0, 2 * np.pi, epsabs=1e-13, epsrel=1e-13, limit=200)
    assert oracle == pytest.approx(exact, abs=1e-13)
    value = periodic_integral(samples(lambda t: 1 / (2 + np.cos(t)), 64))
    assert value == pytest.approx(exact, abs=1e-13)


def test_quadrature_error_squares_on_doubling():
    exact = 2 * np.pi / np.sqrt(3)
    errs = [abs(periodic_integral(samples(lambda t: 1 / (2 + np.cos(t)), n)) - exact) for n in (4, 8, 16, 32)]
    for e0, e1 in zip(errs, errs[1:]):
        assert e1 <= max(e0**2, 1e-13)
    assert errs[-1] <= 1e-13


def test_vector_valued_integral():
    v = periodic_integral(samples(lambda t: np.stack([np.ones_like(t), np.sin(t) ** 2], axis=1), 32))
    np.testing.assert_allclose(v, [2 * np.pi, np.pi], atol=1e-14)


def test_general_period():
    s = samples(lambda t: np.cos(2 * np.pi * t) ** 2, 16, period=1.0)
    assert periodic_integral(s) == pytest.approx(0.5, abs=1e-15)
    d = spectral_derivative(samples(lambda t: np.sin(2 * np.pi * t), 32, period=1.0))
    np.testing.assert_allclose(d.values, 2 * np.pi * np.cos(2 * np.pi * d.t), atol=1e-12)


def test_too_few_samples():
    with pytest.raises(InvalidInputError):
        PeriodicSamples(np.ones(3))


def test_dft_of_constant():
    c = dft(samples(lambda t: 5 + 0 * t, 16), 4)
    assert c[0] == pytest.approx(5)
    assert max(abs(c[m]) for m in range(-4, 5) if m) <= 1e-14


def test_dft_cos3():
    c = dft(samples(lambda t: np.cos(3 * t), 32), 8)
    assert c[3] == pytest.approx(0.5, abs=1e-14)
    assert c[-3] == pytest.approx(0.5, abs=1e-14)
    assert max(abs(c[m]) for m in range(-8, 9) if abs(m) != 3) <= 1e-14


def test_dft_cos_sin_pair():
    # 2cos2t and 2sin2t: the second has c2 = -i times the first
    a = dft(samples(lambda t: 2 * np.cos(2 * t), 32), 4)
    b = dft(samples(lambda t: 2 * np.sin(2 * t), 32), 4)
    assert a[2] == pytest.approx(1, abs=1e-14)
    assert b[2] == pytest.approx(-1j * a[2], abs=1e-14)


def test_dft_band_limit():
    with pytest.raises(InvalidInputError):
        dft(samples(np.cos, 16), 8)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=5, max_size=5), st.sampled_from([16, 17, 64]))
def test_real_input_gives_hermitian_coefficients(a, n):
    s = samples(lambda t: sum(ak * np.cos(k * t + k) for k, ak in enumerate(a)), n)
    c = dft(s, (n - 2) // 2 if n % 2 == 0 else (n - 3) // 2)
    for m in range(1, c.n_max + 1):
        assert abs(c[-m] - np.conj(c[m])) <= 1e-14


def test_dft_roundtrip():
    s = samples(lambda t: np.exp(np.cos(t)) + 0.3 * np.sin(3 * t), 64)
    back = idft(dft(s, 31), 64)
    np.testing.assert_allclose(back.values, s.values, atol=1e-12)


def test_spectral_derivative_sin():
    d = spectral_derivative(samples(np.sin, 32))
    np.testing.assert_allclose(d.values, np.cos(d.t), atol=1e-12)


def test_spectral_derivative_sin2t():
    d = spectral_derivative(samples(lambda t: np.sin(2 * t), 64))
    np.testing.assert_allclose(d.values, 2 * np.cos(2 * d.t), atol=1e-12)


def test_spectral_derivative_of_constant_is_zero():
    c = periodic_integral(samples(lambda t: 1 / (2 + np.cos(t)), 64))
    d = spectral_derivative(PeriodicSamples(np.full(64, c)))
    assert np.max(np.abs(d.values)) == 0.0


def test_spectral_derivative_vector_and_complex():
    s = samples(lambda t: np.stack([np.sin(t), np.cos(2 * t)], axis=1), 64)
    d = spectral_derivative(s).values
    np.testing.assert_allclose(d, np.stack([np.cos(s.t), -2 * np.sin(2 * s.t)], axis=1), atol=1e-12)
    z = spectral_derivative(samples(lambda t: np.exp(3j * t), 32))
    np.testing.assert_allclose(z.values, 3j * np.exp(3j * z.t), atol=1e-12)


# --- finite-difference jets


def test_fd_jet_exact_on_affine():
    A = np.array([[1.0, 2.0], [-0.5, 0.3], [4.0, 0.0]])

    def ev(x, y):
        return np.stack([A[i, 0] * x + A[i, 1] * y + i for i in range(3)], axis=-1)

    j = fd_jet(ev, 0.2 - 0.7j, 1e-3)
    np.testing.assert_allclose(j.f_x, A[:, 0], atol=1e-12)
    np.testing.assert_allclose(j.f_y, A[:, 1], atol=1e-12)
    for k in (j.f_xx, j.f_xy, j.f_yy):
        np.testing.assert_allclose(k, 0, atol=1e-9)


def test_fd_jet_exact_on_quadratic():
    def ev(x, y):
        return np.stack([x * x - y * y, 2 * x * y, 0 * x], axis=-1)

    j = fd_jet(ev, 0.4 + 0.1j, 1e-3)
    np.testing.assert_allclose(j.f_xx, [2, 0, 0], atol=1e-7)
    np.testing.assert_allclose(j.f_xy, [0, 2, 0], atol=1e-7)
    np.testing.assert_allclose(j.f_yy, [-2, 0, 0], atol=1e-7)


def test_fd_jet_matches_sphere_cap():
    s = surfaces.sphere_cap(1.0)
    z = 0.3 + 0.4j
    a = s.jet(z).as_array()
    b = fd_jet(lambda x, y: s(x + 1j * y), z, 1e-4).as_array()
    assert np.max(np.abs(a - b)) <= 1e-7


def test_fd_jet_second_order_convergence():
    s = surfaces.sphere_cap(1.0)
    z = 0.3 + 0.4j
    exact = s.jet(z).as_array()
    err = [np.max(np.abs(fd_jet(lambda x, y: s(x + 1j * y), z, h).as_array() - exact)) for h in (1e-2, 5e-3)]
    assert err[0] / err[1] >= 3.0


def test_fd_jet_rejects_nonpositive_step():
    with pytest.raises(InvalidInputError):
        fd_jet(lambda x, y: np.stack([x, y, x], -1), 0j, 0.0)
