import numpy as np
import pytest
from photonent import reference
from photonent import wavepacket
from photonent.exceptions import BasisMismatch
from photonent.exceptions import InvalidInput
from photonent.wavepacket import FrequencyGrid
from photonent.wavepacket import JitterModel


@pytest.mark.parametrize("lo, hi, n", [(0.0, 1.0, 1), (1.0, 0.0, 8), (np.nan, 1.0, 8)])
def test_grid_validation(lo, hi, n):
    with pytest.raises(InvalidInput):
        FrequencyGrid(lo, hi, n)


def test_grid_points_are_midpoints():
    grid = FrequencyGrid.symmetric(1.0, 4)
    np.testing.assert_allclose(grid.points, [-0.75, -0.25, 0.25, 0.75])
    assert grid.step == 0.5
    assert grid.center == 0.0


def test_zero_width_grid_cannot_normalize():
    grid = FrequencyGrid(1.0, 1.0, 8)
    assert grid.step == 0.0
    with pytest.raises(InvalidInput):
        wavepacket.gaussian_packet(grid, 1.0)


def test_gaussian_packet_normalized(grid):
    packet = wavepacket.gaussian_packet(grid, 1.0)
    assert abs(wavepacket.overlap(packet, packet)) == pytest.approx(1.0, abs=1e-12)
    assert packet.sigma == 1.0
    with pytest.raises(InvalidInput):
        wavepacket.gaussian_packet(grid, 0.0)


def test_packet_must_be_normalized(grid):
    with pytest.raises(InvalidInput):
        wavepacket.PurePacket(grid, np.ones(grid.n))


@pytest.mark.parametrize("sigma, tau", [(1.0, 0.5), (0.5, 2.0), (2.0, 1.0)])
def test_delay_overlap(wide_grid, sigma, tau):
    packet = wavepacket.gaussian_packet(wide_grid, sigma)
    later = wavepacket.delayed(packet, tau)
    assert later.delay == tau
    got = wavepacket.overlap(packet, later)
    assert got == pytest.approx(np.exp(-(sigma**2) * tau**2 / 8.0), abs=1e-10)


def test_zero_delay_is_identity(grid):
    packet = wavepacket.gaussian_packet(grid, 1.0)
    assert wavepacket.delayed(packet, 0.0) is packet


def test_overlap_needs_common_grid(grid, small_grid):
    with pytest.raises(BasisMismatch):
        wavepacket.overlap(
            wavepacket.gaussian_packet(grid, 1.0), wavepacket.gaussian_packet(small_grid, 1.0)
        )


def test_jitter_model():
    jitter = JitterModel(1.0, n_tau=41)
    assert jitter.std == 2.0
    assert jitter.taus[0] == pytest.approx(-12.0)
    assert jitter.taus[-1] == pytest.approx(12.0)
    assert jitter.taus[20] == pytest.approx(0.0)
    assert jitter.weights.sum() == pytest.approx(1.0)
    assert np.argmax(jitter.weights) == 20


def test_jitter_model_without_jitter():
    jitter = JitterModel(0.0)
    np.testing.assert_array_equal(jitter.taus, [0.0])
    np.testing.assert_array_equal(jitter.weights, [1.0])


@pytest.mark.parametrize("kwargs", [{"sigma_tau": -1.0}, {"sigma_tau": 1.0, "n_tau": 40}])
def test_jitter_model_validation(kwargs):
    with pytest.raises(InvalidInput):
        JitterModel(**kwargs)


def test_fitted_jitter_clips_to_alias_free_span(caplog):
    jitter = JitterModel(3.0, n_tau=41)
    fitted = jitter.fitted(0.25)
    assert "clipping them to" in caplog.text
    assert fitted.taus[-1] == pytest.approx(2.0 * np.pi)
    assert fitted.taus[0] == pytest.approx(-2.0 * np.pi)
    assert fitted.n_tau == 41
    assert fitted.weights.sum() == pytest.approx(1.0)
    # Largest delay difference is half the period 2π/Δω.
    assert fitted.taus[-1] - fitted.taus[0] == pytest.approx(np.pi / 0.25)


def test_fitted_jitter_keeps_representable_models(caplog):
    jitter = JitterModel(1.0, n_tau=41)
    assert jitter.fitted(0.0625) is jitter
    assert JitterModel(0.0).fitted(10.0).taus.tolist() == [0.0]
    assert not caplog.text


def test_fitted_jitter_warns_on_coarse_delays(caplog):
    JitterModel(1.0, n_tau=3).fitted(0.01)
    assert "raise the number of delays" in caplog.text


def test_jitter_kernel_does_not_alias(small_grid):
    packet = wavepacket.gaussian_packet(small_grid, 1.0)
    purities = [
        wavepacket.kernel_purity(wavepacket.jitter_kernel(packet, JitterModel(st, n_tau=11)))
        for st in (0.0, 1.0, 2.0, 3.0)
    ]
    assert np.all(np.diff(purities) < 0)


def test_jitter_kernel_purity_decreases(wide_grid):
    packet = wavepacket.gaussian_packet(wide_grid, 1.0)
    purities = [
        wavepacket.kernel_purity(wavepacket.jitter_kernel(packet, JitterModel(sigma_tau)))
        for sigma_tau in (0.0, 0.5, 1.0, 2.0, 4.0)
    ]
    assert purities[0] == pytest.approx(1.0, abs=1e-10)
    assert np.all(np.diff(purities) < 0)


@pytest.mark.parametrize("purity", [1.0, 0.7, 0.5, 0.3, 0.05])
def test_kernel_with_purity(wide_grid, purity):
    kernel = wavepacket.kernel_with_purity(wide_grid, purity)
    assert wavepacket.kernel_purity(kernel) == pytest.approx(purity, abs=1e-10)


def test_kernel_with_purity_validation(small_grid):
    with pytest.raises(InvalidInput):
        wavepacket.kernel_with_purity(small_grid, 0.0)
    with pytest.raises(InvalidInput):
        wavepacket.kernel_with_purity(small_grid, 0.01)


@pytest.mark.parametrize("sigma, sigma_tau", [(1.0, 1.0), (0.5, 2.0), (2.0, 0.5), (1.0, 0.0)])
def test_jitter_kernel_purity(wide_grid, sigma, sigma_tau):
    packet = wavepacket.gaussian_packet(wide_grid, sigma)
    kernel = wavepacket.jitter_kernel(packet, JitterModel(sigma_tau))
    assert wavepacket.kernel_purity(kernel) == pytest.approx(
        reference.purity_gauss_jitter(sigma, sigma_tau), abs=1e-6
    )


def test_closed_form_kernel_purity(wide_grid):
    kernel = wavepacket.gaussian_jitter_kernel(wide_grid, 1.0, 1.0)
    assert wavepacket.kernel_purity(kernel) == pytest.approx(5**-0.5, abs=1e-8)


def test_narrow_packet_stays_pure():
    grid = FrequencyGrid.symmetric(1.0, 256)
    packet = wavepacket.gaussian_packet(grid, 0.05)
    kernel = wavepacket.jitter_kernel(packet, JitterModel(1.0))
    assert wavepacket.kernel_purity(kernel) >= 0.99


def test_diagonalize_kernel(grid):
    kernel = wavepacket.gaussian_jitter_kernel(grid, 1.0, 1.0)
    modes = wavepacket.diagonalize_kernel(kernel)
    assert modes.probabilities.sum() == pytest.approx(1.0, abs=1e-10)
    assert np.all(np.diff(modes.probabilities) <= 0)
    gram = np.array([[wavepacket.overlap(a, b) for b in modes.modes] for a in modes.modes])
    np.testing.assert_allclose(gram, np.eye(len(modes.modes)), atol=1e-10)
    rebuilt = wavepacket.kernel_from_modes(
        grid, modes.probabilities / modes.probabilities.sum(), modes.modes
    )
    np.testing.assert_allclose(rebuilt.kernel, kernel.kernel, atol=1e-9)


def test_kernel_validation(grid):
    with pytest.raises(InvalidInput):
        wavepacket.SinglePhotonKernel(grid, np.eye(grid.n))
    bad = np.zeros((grid.n, grid.n))
    bad[0, 0] = 2.0 / grid.step
    bad[1, 1] = -1.0 / grid.step
    with pytest.raises(InvalidInput):
        wavepacket.SinglePhotonKernel(grid, bad)


def test_mixture_kernel(grid):
    a = wavepacket.gaussian_packet(grid, 1.0, center=-0.5)
    b = wavepacket.gaussian_packet(grid, 1.0, center=0.5)
    kernel = wavepacket.mixture_kernel([(0.5, a), (0.5, b)])
    overlap = abs(wavepacket.overlap(a, b))
    assert wavepacket.kernel_purity(kernel) == pytest.approx(0.5 + 0.5 * overlap**2, abs=1e-10)
    with pytest.raises(InvalidInput):
        wavepacket.mixture_kernel([(0.6, a), (0.6, b)])
    with pytest.raises(InvalidInput):
        wavepacket.mixture_kernel([])


def test_temporal_profile(wide_grid):
    packet = wavepacket.delayed(wavepacket.gaussian_packet(wide_grid, 1.0), 2.0)
    times = np.linspace(-10.0, 10.0, 401)
    profile = wavepacket.temporal_profile(packet, times)
    assert (times[1] - times[0]) * np.sum(np.abs(profile) ** 2) == pytest.approx(1.0, abs=1e-6)
    assert times[np.argmax(np.abs(profile))] == pytest.approx(2.0)
