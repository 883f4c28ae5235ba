"""
photon-ent: entanglement of single photons and photon pairs behind a beam splitter

Dense linear algebra and quadrature
===================================
Deterministic wrappers around :mod:`scipy.linalg` used by every other module.

:maturity:      new
:depends:       numpy scipy
:platform:      All

Eigenvalues and singular values are returned in descending order, ties keep their
original index order, so identical input bits always give identical output.
"""
import logging
from typing import TYPE_CHECKING
from typing import NamedTuple
from typing import Optional

import numpy as np
import scipy.linalg

from photonent.exceptions import InvalidInput

if TYPE_CHECKING:  # pragma: no cover
    from photonent.wavepacket import FrequencyGrid

# Globals
log = logging.getLogger(__name__)

#: eigenvalues below this magnitude (relative to the trace norm) count as exact zeros
ZERO_TOL = 1e-12
#: tolerance on Hermiticity, relative to the largest absolute entry
HERMITIAN_TOL = 1e-12


class Spectrum(NamedTuple):
    """
    Eigen decomposition of a Hermitian matrix.

    values
        Real eigenvalues, descending.

    vectors
        Orthonormal eigenvectors as columns, same order as ``values``, or ``None``.
    """

    values: np.ndarray
    vectors: Optional[np.ndarray] = None


class SingularDecomposition(NamedTuple):
    """
    Thin singular value decomposition ``a = left @ diag(singular_values) @ right.conj().T``.
    """

    singular_values: np.ndarray
    left_modes: np.ndarray
    right_modes: np.ndarray


def as_finite(a, name="matrix"):
    """
    Return ``a`` as a complex ndarray, raising :class:`InvalidInput` on NaN or infinity.
    """
    arr = np.asarray(a, dtype=complex)
    if not np.all(np.isfinite(arr)):
        msg = f"{name} has non-finite entries"
        log.error(msg)
        raise InvalidInput(msg)
    return arr


def ensure_hermitian(a, name="matrix"):
    """
    Validate a square Hermitian matrix and return it as a complex ndarray.

    a
        Matrix-like input.

    name
        Used in error messages.
    """
    arr = as_finite(a, name)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        msg = f"{name} must be square, got shape {arr.shape}"
        log.error(msg)
        raise InvalidInput(msg)
    scale = np.max(np.abs(arr)) if arr.size else 0.0
    if scale and np.max(np.abs(arr - arr.conj().T)) > HERMITIAN_TOL * scale:
        msg = f"{name} is not Hermitian"
        log.error(msg)
        raise InvalidInput(msg)
    return arr


def _descending(values):
    # stable on the negated values keeps the original index order among ties
    return np.argsort(-values, kind="stable")


def eigh(a, vectors=True):
    """
    Eigen decomposition of a Hermitian matrix.

    a
        Hermitian matrix, checked to within ``1e-12`` of its largest entry.

    vectors
        Also compute the eigenvectors, default is ``True``.

    Returns a :class:`Spectrum` with eigenvalues sorted descending.
    """
    arr = ensure_hermitian(a)
    if vectors:
        values, vecs = scipy.linalg.eigh(arr)
        order = _descending(values)
        return Spectrum(values[order], vecs[:, order])
    values = scipy.linalg.eigh(arr, eigvals_only=True)
    return Spectrum(values[_descending(values)])


def eigvalsh(a):
    """
    Descending eigenvalues of a Hermitian matrix.
    """
    return eigh(a, vectors=False).values


def svd(a):
    """
    Thin singular value decomposition of a finite complex matrix.

    The divide-and-conquer driver is tried first, ``gesvd`` is the fallback when it
    does not converge.
    """
    arr = as_finite(a)
    try:
        left, values, right_h = scipy.linalg.svd(arr, full_matrices=False)
    except np.linalg.LinAlgError:
        log.warning("gesdd did not converge, retrying with gesvd")
        left, values, right_h = scipy.linalg.svd(
            arr, full_matrices=False, lapack_driver="gesvd"
        )
    order = _descending(values)
    return SingularDecomposition(values[order], left[:, order], right_h[order].conj().T)


def svdvals(a):
    """
    Descending singular values of a finite complex matrix.
    """
    arr = as_finite(a)
    if arr.size == 0:
        return np.zeros(0)
    values = scipy.linalg.svdvals(arr)
    return values[_descending(values)]


def grid_quadrature(values, grid: "FrequencyGrid"):
    """
    Rectangle rule ``Δω · Σ_j f_j`` over a frequency grid.

    values
        Samples, one per grid point.

    grid
        The :class:`~photonent.wavepacket.FrequencyGrid` the samples live on.
    """
    arr = np.asarray(values)
    if arr.shape != (grid.n,):
        msg = f"Expected {grid.n} samples, got shape {arr.shape}"
        log.error(msg)
        raise InvalidInput(msg)
    return complex(grid.step * np.sum(arr))


def discard_small(values, tol=ZERO_TOL):
    """
    Copy of ``values`` with entries smaller than ``tol`` in magnitude set to exactly 0.
    """
    arr = np.array(values, dtype=float)
    arr[np.abs(arr) < tol] = 0.0
    return arr
