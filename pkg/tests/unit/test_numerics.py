import numpy as np
import pytest
import scipy.special
from photonent import numerics
from photonent import wavepacket
from photonent.exceptions import InvalidInput


def test_eigh_descending_with_vectors():
    mat = np.diag([1.0, 3.0, 2.0])
    spectrum = numerics.eigh(mat)
    np.testing.assert_allclose(spectrum.values, [3.0, 2.0, 1.0])
    recon = spectrum.vectors @ np.diag(spectrum.values) @ spectrum.vectors.conj().T
    np.testing.assert_allclose(recon, mat, atol=1e-14)


def test_eigvalsh_complex_hermitian():
    mat = np.array([[2.0, 1j], [-1j, 2.0]])
    np.testing.assert_allclose(numerics.eigvalsh(mat), [3.0, 1.0], atol=1e-14)


def test_eigh_rejects_non_hermitian():
    with pytest.raises(InvalidInput):
        numerics.eigh(np.array([[1.0, 1.0], [0.0, 1.0]]))


@pytest.mark.parametrize("bad", [np.nan, np.inf])
def test_non_finite_rejected(bad):
    with pytest.raises(InvalidInput):
        numerics.svd(np.array([[1.0, bad], [0.0, 1.0]]))


def test_non_square_rejected():
    with pytest.raises(InvalidInput):
        numerics.ensure_hermitian(np.ones((2, 3)))


def test_svd_reconstructs():
    rng = np.random.default_rng(7)
    mat = rng.normal(size=(5, 3)) + 1j * rng.normal(size=(5, 3))
    dec = numerics.svd(mat)
    assert np.all(np.diff(dec.singular_values) <= 0)
    recon = dec.left_modes @ np.diag(dec.singular_values) @ dec.right_modes.conj().T
    np.testing.assert_allclose(recon, mat, atol=1e-12)
    np.testing.assert_allclose(numerics.svdvals(mat), dec.singular_values, atol=1e-12)


def test_svdvals_empty():
    assert numerics.svdvals(np.zeros((0, 3))).size == 0


def test_grid_quadrature():
    grid = wavepacket.FrequencyGrid(0.0, 1.0, 4)
    assert numerics.grid_quadrature(np.ones(4), grid) == pytest.approx(1.0)
    with pytest.raises(InvalidInput):
        numerics.grid_quadrature(np.ones(3), grid)


def test_discard_small():
    values = numerics.discard_small([0.5, 1e-13, -1e-14, -0.25])
    np.testing.assert_array_equal(values, [0.5, 0.0, 0.0, -0.25])


def test_grid_quadrature_gaussian():
    grid = wavepacket.FrequencyGrid.symmetric(2.0, 64)
    assert numerics.grid_quadrature(np.ones(64), grid) == pytest.approx(4.0, abs=1e-12)
    got = numerics.grid_quadrature(np.exp(-grid.points**2), grid)
    assert abs(got - np.sqrt(np.pi) * scipy.special.erf(2.0)) < 1e-3


def test_grid_quadrature_empty_interval():
    grid = wavepacket.FrequencyGrid(1.0, 1.0, 8)
    assert numerics.grid_quadrature(np.ones(8), grid) == 0


def test_grid_quadrature_is_linear():
    grid = wavepacket.FrequencyGrid.symmetric(2.0, 64)
    rng = np.random.default_rng(3)
    first, second = rng.normal(size=(2, 64))
    alpha, beta = 0.7, -1.3 + 0.2j
    combined = numerics.grid_quadrature(alpha * first + beta * second, grid)
    separate = alpha * numerics.grid_quadrature(first, grid) + beta * numerics.grid_quadrature(
        second, grid
    )
    assert abs(combined - separate) < 1e-13


@pytest.mark.parametrize("shape", [(128, 128), (128, 40), (17, 96)])
def test_svd_reconstructs_large(shape):
    rng = np.random.default_rng(sum(shape))
    mat = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    dec = numerics.svd(mat)
    recon = (dec.left_modes * dec.singular_values) @ dec.right_modes.conj().T
    assert np.max(np.abs(recon - mat)) <= 1e-10 * np.linalg.norm(mat, 2)


def test_eigh_trace_matches_spectrum():
    rng = np.random.default_rng(9)
    raw = rng.normal(size=(40, 40)) + 1j * rng.normal(size=(40, 40))
    mat = raw + raw.conj().T
    values = numerics.eigvalsh(mat)
    assert abs(values.sum() - np.trace(mat).real) <= 1e-10 * np.linalg.norm(mat, 2)
