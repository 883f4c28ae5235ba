import numpy as np
import pytest
from photonent import fockspace
from photonent import pairsource
from photonent import reference
from photonent import wavepacket
from photonent.exceptions import InvalidInput
from photonent.pairsource import PhaseMatchParams


def test_joint_amplitude_normalized(joint, grid):
    assert joint.psi.shape == (grid.n, grid.n)
    assert np.sum(np.abs(joint.weighted) ** 2) == pytest.approx(1.0, abs=1e-12)
    assert joint.is_real


def test_joint_amplitude_validation(grid):
    with pytest.raises(InvalidInput):
        pairsource.joint_amplitude(grid, sigma_pump=0.0)
    with pytest.raises(InvalidInput):
        PhaseMatchParams(shape="square")
    with pytest.raises(InvalidInput):
        pairsource.JointAmplitude(grid, grid, np.ones((grid.n, grid.n)), 1.0)


def test_phase_matching_shapes():
    sinc = PhaseMatchParams()
    assert sinc(0.0, 0.0) == 1.0
    assert sinc(np.pi / 2.25, 0.0) == pytest.approx(0.0, abs=1e-15)
    gauss = PhaseMatchParams(shape="gaussian")
    assert gauss(1.0, 0.0) == pytest.approx(np.exp(-0.193 * 2.25**2))


def test_schmidt_reconstructs(joint, schmidt_data):
    lambdas = schmidt_data.lambdas
    assert lambdas.sum() == pytest.approx(1.0, abs=1e-12)
    assert np.all(np.diff(lambdas) <= 0)
    rebuilt = (schmidt_data.h_modes * np.sqrt(lambdas)) @ schmidt_data.v_modes.T
    step = joint.grid_o.step
    assert np.linalg.norm(step * (rebuilt - joint.psi)) < 1e-5
    gram = step * schmidt_data.h_modes.conj().T @ schmidt_data.h_modes
    np.testing.assert_allclose(gram, np.eye(schmidt_data.rank), atol=1e-10)


def test_schmidt_on_unequal_grids():
    grid_o = wavepacket.FrequencyGrid.symmetric(2.0, 24)
    grid_e = wavepacket.FrequencyGrid.symmetric(3.0, 16)
    joint = pairsource.joint_amplitude(grid_o, grid_e)
    sd = pairsource.schmidt(joint)
    assert sd.h_modes.shape == (24, sd.rank)
    assert sd.v_modes.shape == (16, sd.rank)
    rebuilt = (sd.h_modes * np.sqrt(sd.lambdas)) @ sd.v_modes.T
    weight = np.sqrt(grid_o.step * grid_e.step)
    assert np.linalg.norm(weight * (rebuilt - joint.psi)) < 1e-5
    gram = grid_e.step * sd.v_modes.conj().T @ sd.v_modes
    np.testing.assert_allclose(gram, np.eye(sd.rank), atol=1e-10)


def _padded(lambdas, size):
    return np.concatenate([lambdas, np.zeros(size - len(lambdas))])


@pytest.mark.parametrize(
    "cutoff, n, sigma, shape",
    [
        (2.0, 32, 1.0, "sinc"),
        (2.0, 32, 0.5, "sinc"),
        (2.0, 32, 2.0, "sinc"),
        (2.0, 24, 0.25, "sinc"),
        (3.0, 48, 1.0, "sinc"),
        (4.0, 40, 1.5, "gaussian"),
    ],
)
def test_schmidt_routes_agree(cutoff, n, sigma, shape):
    grid = wavepacket.FrequencyGrid.symmetric(cutoff, n)
    joint = pairsource.joint_amplitude(
        grid, sigma_pump=sigma, params=PhaseMatchParams(shape=shape)
    )
    first = pairsource.schmidt(joint).lambdas
    other = pairsource.schmidt_via_reduced_kernel(joint)
    size = max(len(first), len(other.lambdas))
    np.testing.assert_allclose(_padded(other.lambdas, size), _padded(first, size), atol=1e-8)


def test_reduced_kernel_route_reconstructs(joint):
    other = pairsource.schmidt_via_reduced_kernel(joint)
    rebuilt = (other.h_modes * np.sqrt(other.lambdas)) @ other.v_modes.T
    assert np.linalg.norm(joint.grid_o.step * (rebuilt - joint.psi)) < 1e-5


def _entropy_in(grid, sigma=1.0):
    sd = pairsource.schmidt(pairsource.joint_amplitude(grid, sigma_pump=sigma))
    return pairsource.pre_splitter_entanglement(sd)[0]


def test_schmidt_entropy_converges_in_grid_size():
    coarse = _entropy_in(wavepacket.FrequencyGrid.symmetric(2.0, 48))
    fine = _entropy_in(wavepacket.FrequencyGrid.symmetric(2.0, 64))
    assert abs(fine - coarse) < 1e-3


def test_schmidt_entropy_falls_with_pump_width(grid):
    # With Gaussian phase matching the curve has its minimum near σ_p ≈ 1.9.
    entropies = [_entropy_in(grid, sigma) for sigma in (0.25, 0.5, 0.75, 1.0, 1.25)]
    assert np.all(np.diff(entropies) < 0)


def test_reduced_kernel_purity(joint, schmidt_data):
    for photon in ("o", "e"):
        kernel = pairsource.reduced_kernel(joint, photon)
        assert wavepacket.kernel_purity(kernel) == pytest.approx(
            np.sum(schmidt_data.lambdas**2), abs=1e-10
        )
    with pytest.raises(InvalidInput):
        pairsource.reduced_kernel(joint, "x")


def test_gaussian_phase_matching_geometric_spectrum():
    grid = wavepacket.FrequencyGrid.symmetric(10.0, 256)
    params = PhaseMatchParams(shape="gaussian")
    sd = pairsource.schmidt(pairsource.joint_amplitude(grid, sigma_pump=1.0, params=params))
    a = 1.0 + params.gamma * params.a_o**2
    c = 1.0 + params.gamma * params.a_e**2
    b = 1.0 + params.gamma * params.a_o * params.a_e
    mu = b / (np.sqrt(a * c) + np.sqrt(a * c - b**2))
    ratios = sd.lambdas[1:4] / sd.lambdas[:3]
    np.testing.assert_allclose(ratios, mu**2, rtol=1e-5)


@pytest.mark.parametrize("sigma", [0.5, 1.0, 2.0])
def test_pre_splitter_entanglement(grid, sigma):
    sd = pairsource.schmidt(pairsource.joint_amplitude(grid, sigma_pump=sigma))
    e_in, ln_in = pairsource.pre_splitter_entanglement(sd)
    want = reference.pair_measures(sd.lambdas)
    assert e_in == pytest.approx(want[0], abs=1e-12)
    assert ln_in == pytest.approx(want[1], abs=1e-12)
    assert e_in > 0
    assert ln_in >= e_in - 1e-12


def test_delay_keeps_schmidt_spectrum(joint, schmidt_data):
    later = pairsource.delayed_joint(joint, 1.3)
    assert later.delay == 1.3
    assert not later.is_real
    lambdas = pairsource.schmidt(later).lambdas
    count = min(len(lambdas), schmidt_data.rank)
    np.testing.assert_allclose(lambdas[:count], schmidt_data.lambdas[:count], atol=1e-10)
    assert pairsource.delayed_joint(joint, 0.0) is joint


@pytest.mark.parametrize("p", [0.0, 0.3, 1.0])
def test_pair_state(schmidt_data, p):
    state = pairsource.pair_state(schmidt_data, p)
    e_in, ln_in = reference.vac2_measures(p, schmidt_data.lambdas)[:2]
    assert fockspace.entropy_of_entanglement(state) == pytest.approx(e_in, abs=1e-10)
    assert fockspace.log_negativity(state) == pytest.approx(ln_in, abs=1e-10)
    assert (state.basis.left_labels[0].photons == 0) == (p < 1)


def test_jitter_family_without_jitter(small_joint):
    sd = pairsource.schmidt(small_joint)
    family = pairsource.jitter_family(small_joint, wavepacket.JitterModel(0.0))
    assert family.n_pair == 1
    assert family.n_single == sd.rank
    local = family.local_amplitudes()
    assert local.shape == (1, sd.rank, sd.rank)
    np.testing.assert_allclose(
        np.linalg.svd(local[0], compute_uv=False), np.sqrt(sd.lambdas), atol=1e-10
    )


def test_jitter_family_spans_members(small_joint, small_jitter):
    family = pairsource.jitter_family(small_joint, small_jitter)
    assert family.amplitudes.shape[0] == len(small_jitter.taus)
    assert 1 < family.n_pair <= len(small_jitter.taus)
    local = family.local_amplitudes()
    kept = np.sum(family.weights * np.sum(np.abs(local) ** 2, axis=(1, 2)))
    assert kept == pytest.approx(1.0, abs=1e-9)
    norms = np.sum(np.abs(family.pair_coords) ** 2, axis=0)
    np.testing.assert_allclose(norms, np.ones(len(small_jitter.taus)), atol=1e-8)


def test_mixed_pair_density_without_jitter(small_joint):
    sd = pairsource.schmidt(small_joint)
    rho = pairsource.mixed_pair_density(small_joint, wavepacket.JitterModel(0.0))
    assert fockspace.purity(rho) == pytest.approx(1.0, abs=1e-12)
    assert fockspace.log_negativity(rho) == pytest.approx(
        reference.pair_measures(sd.lambdas)[1], abs=1e-10
    )


def test_mixed_pair_density_with_jitter(small_joint, small_jitter):
    rho = pairsource.mixed_pair_density(small_joint, small_jitter)
    assert 0.0 < fockspace.purity(rho) < 1.0
    assert fockspace.log_negativity(rho) > 0.0
    with_vacuum = pairsource.mixed_pair_density(small_joint, small_jitter, p=0.5)
    assert with_vacuum.basis.shape == (rho.basis.shape[0] + 1, rho.basis.shape[1] + 1)
