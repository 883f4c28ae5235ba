import pytest
from photonent import pairsource
from photonent import wavepacket


@pytest.fixture(scope="session")
def grid():
    return wavepacket.FrequencyGrid.symmetric(2.0, 32)


@pytest.fixture(scope="session")
def small_grid():
    return wavepacket.FrequencyGrid.symmetric(2.0, 16)


@pytest.fixture(scope="session")
def wide_grid():
    """
    Wide enough for the Gaussian closed forms to hold to 1e-6.
    """
    return wavepacket.FrequencyGrid.symmetric(8.0, 256)


@pytest.fixture(scope="session")
def joint(grid):
    return pairsource.joint_amplitude(grid)


@pytest.fixture(scope="session")
def schmidt_data(joint):
    return pairsource.schmidt(joint)


@pytest.fixture(scope="session")
def small_joint(small_grid):
    return pairsource.joint_amplitude(small_grid)


@pytest.fixture(scope="session")
def small_jitter():
    return wavepacket.JitterModel(1.0, n_tau=11)
