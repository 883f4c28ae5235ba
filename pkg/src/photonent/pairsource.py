"""
photon-ent: entanglement of single photons and photon pairs behind a beam splitter

Type-II down-conversion pairs
=============================
Joint spectral amplitude of the ordinary (H) and extraordinary (V) photon, its
Schmidt decomposition by two routes, and the arrival-time jitter family used by the
mixed two-photon constructions.

:maturity:      new
:depends:       numpy scipy
:platform:      All

The amplitude is ``ψ(ν_o, ν_e) = exp(−(ν_o+ν_e)²/σ_p²) · Φ(a_o ν_o + a_e ν_e)`` with the
phase-matching function ``Φ`` either ``sinc`` or its Gaussian stand-in
``exp(−γ x²)``. Frequencies are offsets from the degenerate frequency in units of Ω.
"""
import dataclasses
import logging
from typing import Optional

import numpy as np

from photonent import fockspace
from photonent import numerics
from photonent import wavepacket
from photonent.exceptions import BasisMismatch
from photonent.exceptions import InvalidInput
from photonent.fockspace import Side

# Globals
log = logging.getLogger(__name__)

NORM_TOL = 1e-10
#: Schmidt coefficients and single-mode weights below this are dropped
LAMBDA_TOL = 1e-12
#: directions of the delayed-pair family with smaller Gram eigenvalue are dropped
PAIR_TOL = 1e-10
ROUTE_TOL = 1e-8
#: fraction of the family norm a compression may drop without a warning
DISCARD_TOL = 1e-8

PHASE_MATCH_SHAPES = ("sinc", "gaussian")


@dataclasses.dataclass(frozen=True)
class PhaseMatchParams:
    """
    Crystal parameters in units of the reference bandwidth.

    a_o
        ``(k′_o − k′_p) L Ω``, default 2.25.

    a_e
        ``(k′_e − k′_p) L Ω``, default 0.63.

    shape
        ``"sinc"`` (default) or ``"gaussian"``.

    gamma
        Curvature of the Gaussian stand-in, ``exp(−γx²)``, default 0.193.
    """

    a_o: float = 2.25
    a_e: float = 0.63
    shape: str = "sinc"
    gamma: float = 0.193

    def __post_init__(self):
        if not (np.isfinite(self.a_o) and np.isfinite(self.a_e)):
            msg = f"Phase-matching coefficients must be finite, got {self.a_o}, {self.a_e}"
            log.error(msg)
            raise InvalidInput(msg)
        if self.shape not in PHASE_MATCH_SHAPES:
            msg = f"Unknown phase-matching shape {self.shape!r}"
            log.error(msg)
            raise InvalidInput(msg)
        if not self.gamma > 0:
            msg = f"Gaussian phase-matching curvature must be > 0, got {self.gamma}"
            log.error(msg)
            raise InvalidInput(msg)

    def __call__(self, nu_o, nu_e):
        arg = self.a_o * nu_o + self.a_e * nu_e
        if self.shape == "gaussian":
            return np.exp(-self.gamma * arg**2)
        # numpy's sinc is sin(πx)/(πx)
        return np.sinc(arg / np.pi)


@dataclasses.dataclass(frozen=True, eq=False)
class JointAmplitude:
    """
    Sampled two-photon amplitude, rows follow ``grid_o`` (H), columns ``grid_e`` (V).

    Normalized so that ``Δω_o Δω_e Σ |ψ|² = 1``.
    """

    grid_o: wavepacket.FrequencyGrid
    grid_e: wavepacket.FrequencyGrid
    psi: np.ndarray
    sigma_pump: float
    params: PhaseMatchParams = PhaseMatchParams()
    delay: float = 0.0

    def __post_init__(self):
        psi = numerics.as_finite(self.psi, "joint amplitude")
        if psi.shape != (self.grid_o.n, self.grid_e.n):
            msg = f"Amplitude shape {psi.shape} does not match grids"
            log.error(msg)
            raise InvalidInput(msg)
        norm = self.grid_o.step * self.grid_e.step * float(np.sum(np.abs(psi) ** 2))
        if abs(norm - 1.0) > NORM_TOL:
            msg = f"Joint amplitude is not normalized, norm {norm!r}"
            log.error(msg)
            raise InvalidInput(msg)
        object.__setattr__(self, "psi", psi)

    @property
    def is_real(self):
        return self.delay == 0 and not np.any(self.psi.imag)

    @property
    def weighted(self):
        """
        Discrete amplitude ``√(Δω_o Δω_e) ψ`` with unit Frobenius norm.
        """
        return np.sqrt(self.grid_o.step * self.grid_e.step) * self.psi


@dataclasses.dataclass(frozen=True, eq=False)
class SchmidtData:
    """
    Schmidt decomposition ``|2⟩ = Σ_k √λ_k h_k† v_k† |vac⟩``.

    lambdas
        Descending coefficients summing to 1.

    h_modes, v_modes
        Mode functions as columns, continuum normalized on ``grid_o`` / ``grid_e``.
    """

    lambdas: np.ndarray
    h_modes: np.ndarray
    v_modes: np.ndarray
    grid_o: wavepacket.FrequencyGrid
    grid_e: wavepacket.FrequencyGrid

    def __post_init__(self):
        lambdas = np.asarray(self.lambdas, dtype=float)
        if np.any(lambdas < 0) or abs(lambdas.sum() - 1.0) > NORM_TOL:
            msg = f"Schmidt coefficients must be >= 0 and sum to 1, got sum {lambdas.sum()!r}"
            log.error(msg)
            raise InvalidInput(msg)
        if self.h_modes.shape[1] != len(lambdas) or self.v_modes.shape[1] != len(lambdas):
            msg = "Number of Schmidt modes does not match the number of coefficients"
            log.error(msg)
            raise InvalidInput(msg)
        object.__setattr__(self, "lambdas", lambdas)

    @property
    def rank(self):
        return len(self.lambdas)


@dataclasses.dataclass(frozen=True, eq=False)
class JitterFamily:
    """
    Delayed copies of a joint amplitude, weighted by a jitter law, with the bases the
    two-photon constructions expand them in.

    weights, taus
        Jitter weights and delays, one per member.

    amplitudes
        Members ``A_t = √(Δω_o Δω_e) ψ_τt``, shape ``(T, N_o, N_e)``.

    h_basis, v_basis
        Orthonormal columns spanning every member's H and V single-photon modes.

    pair_coords
        Coordinates of each member in an orthonormal basis of the family's span,
        shape ``(n_pair, T)``.
    """

    weights: np.ndarray
    taus: np.ndarray
    amplitudes: np.ndarray
    h_basis: np.ndarray
    v_basis: np.ndarray
    pair_coords: np.ndarray

    @property
    def n_single(self):
        return self.h_basis.shape[1]

    @property
    def n_pair(self):
        return self.pair_coords.shape[0]

    def local_amplitudes(self):
        """
        Member amplitudes in the compressed mode bases, ``Ĥ† A_t conj(V̂)``.
        """
        return np.einsum(
            "oh,toe,ev->thv", self.h_basis.conj(), self.amplitudes, self.v_basis.conj()
        )


def _check_pump(sigma_pump):
    if not sigma_pump > 0:
        msg = f"Pump width must be > 0, got {sigma_pump}"
        log.error(msg)
        raise InvalidInput(msg)


def joint_amplitude(
    grid_o, grid_e=None, sigma_pump=1.0, params: Optional[PhaseMatchParams] = None
):
    """
    Sample and normalize the down-conversion amplitude.

    grid_o
        Frequency grid of the ordinary (H) photon.

    grid_e
        Frequency grid of the extraordinary (V) photon, default is ``grid_o``.

    sigma_pump
        Pump width ``σ_p``, must be > 0.

    params
        :class:`PhaseMatchParams`, default is the sinc shape with 2.25 and 0.63.
    """
    _check_pump(sigma_pump)
    grid_e = grid_o if grid_e is None else grid_e
    params = PhaseMatchParams() if params is None else params
    grid_o.require_width()
    grid_e.require_width()
    nu_o = grid_o.points[:, None]
    nu_e = grid_e.points[None, :]
    psi = np.exp(-((nu_o + nu_e) ** 2) / sigma_pump**2) * params(nu_o, nu_e)
    psi = psi / np.sqrt(grid_o.step * grid_e.step * np.sum(psi**2))
    log.debug(f"Sampled joint amplitude on {psi.shape} grid, σ_p = {sigma_pump}")
    return JointAmplitude(grid_o, grid_e, psi.astype(complex), float(sigma_pump), params)


def _normalized(lambdas):
    return lambdas / lambdas.sum()


def schmidt(ja: JointAmplitude) -> SchmidtData:
    """
    Schmidt decomposition through the SVD of ``√(Δω_o Δω_e) ψ``.

    Coefficients below ``1e-12`` are dropped and the rest renormalized.
    """
    dec = numerics.svd(ja.weighted)
    lambdas = dec.singular_values**2
    keep = lambdas >= LAMBDA_TOL
    log.debug(f"Kept {int(keep.sum())} of {len(lambdas)} Schmidt modes")
    return SchmidtData(
        _normalized(lambdas[keep]),
        dec.left_modes[:, keep] / np.sqrt(ja.grid_o.step),
        dec.right_modes[:, keep].conj() / np.sqrt(ja.grid_e.step),
        ja.grid_o,
        ja.grid_e,
    )


def reduced_kernel(ja: JointAmplitude, photon="o") -> wavepacket.SinglePhotonKernel:
    """
    Reduced single-photon density of one photon of the pair.

    photon
        ``"o"`` for ``ρ̃_A(ω,ω′) = ∫dω″ ψ(ω,ω″)ψ*(ω′,ω″)``, ``"e"`` for ``ρ̃_B``.
    """
    if photon == "o":
        kernel = ja.grid_e.step * ja.psi @ ja.psi.conj().T
        return wavepacket.SinglePhotonKernel(ja.grid_o, 0.5 * (kernel + kernel.conj().T))
    if photon == "e":
        kernel = ja.grid_o.step * ja.psi.T @ ja.psi.conj()
        return wavepacket.SinglePhotonKernel(ja.grid_e, 0.5 * (kernel + kernel.conj().T))
    msg = f"Photon must be 'o' or 'e', got {photon!r}"
    log.error(msg)
    raise InvalidInput(msg)


def schmidt_via_reduced_kernel(ja: JointAmplitude) -> SchmidtData:
    """
    Schmidt decomposition by diagonalizing both reduced kernels.

    The V modes are paired with the H modes by projecting the amplitude onto each
    H mode, ``v_k = ∫dω h_k*(ω) ψ(ω, ·) / √λ_k``.
    """
    modes_a = wavepacket.diagonalize_kernel(reduced_kernel(ja, "o"))
    modes_b = wavepacket.diagonalize_kernel(reduced_kernel(ja, "e"))
    count = min(len(modes_a.probabilities), len(modes_b.probabilities))
    mismatch = np.max(
        np.abs(modes_a.probabilities[:count] - modes_b.probabilities[:count]), initial=0.0
    )
    if mismatch > ROUTE_TOL or len(modes_a.probabilities) != len(modes_b.probabilities):
        log.warning(f"Reduced kernels disagree: {mismatch:.3e} over {count} shared modes")
    lambdas = modes_a.probabilities
    h_modes = np.stack([mode.amplitudes for mode in modes_a.modes], axis=1)
    projected = ja.grid_o.step * ja.psi.T @ h_modes.conj()
    v_modes = projected / np.sqrt(lambdas)
    return SchmidtData(_normalized(lambdas), h_modes, v_modes, ja.grid_o, ja.grid_e)


def pre_splitter_entanglement(sd: SchmidtData):
    """
    ``(E, E_N)`` of the pair before the beam splitter,
    ``E = −Σ λ log₂ λ`` and ``E_N = 2 log₂ Σ √λ``.
    """
    return fockspace.entropy_bits(sd.lambdas), fockspace.log_negativity_pure(sd.lambdas)


def delayed_joint(ja: JointAmplitude, tau) -> JointAmplitude:
    """
    Pair arriving later by ``τ``: ``ψ_τ = ψ e^{−i(ν_o+ν_e)τ}``.
    """
    if not np.isfinite(tau):
        msg = f"Delay must be finite, got {tau}"
        log.error(msg)
        raise InvalidInput(msg)
    if tau == 0:
        return ja
    phase = np.exp(-1j * np.add.outer(ja.grid_o.points, ja.grid_e.points) * tau)
    return dataclasses.replace(ja, psi=ja.psi * phase, delay=ja.delay + float(tau))


def _check_probability(p):
    if not 0.0 <= p <= 1.0:
        msg = f"Probability must lie in [0, 1], got {p}"
        log.error(msg)
        raise InvalidInput(msg)


def pair_state(sd: SchmidtData, p=1.0) -> fockspace.BipartiteState:
    """
    ``√(1−p)|vac⟩ + √p Σ_k √λ_k h_k† v_k† |vac⟩`` between the H photon (left) and the
    V photon (right). The vacuum label is only present for ``p < 1``.
    """
    _check_probability(p)
    with_vacuum = p < 1
    basis = fockspace.BipartiteBasis(
        fockspace.side_labels(Side.LEFT, sd.rank, ("H",), with_vacuum=with_vacuum),
        fockspace.side_labels(Side.RIGHT, sd.rank, ("V",), with_vacuum=with_vacuum),
    )
    amps = np.zeros(basis.shape, dtype=complex)
    offset = int(with_vacuum)
    if with_vacuum:
        amps[0, 0] = np.sqrt(1.0 - p)
    diag = np.arange(sd.rank) + offset
    amps[diag, diag] = np.sqrt(p * sd.lambdas)
    return fockspace.BipartiteState(basis, amps)


def _leading_modes(stacked):
    dec = numerics.svd(stacked)
    weights = dec.singular_values**2
    return dec.left_modes, weights, int(np.sum(weights >= LAMBDA_TOL))


def _check_discarded(what, weights, kept):
    total = float(np.sum(weights))
    lost = total - float(np.sum(weights[:kept]))
    if total > 0 and lost > DISCARD_TOL * total:
        log.warning(f"Compressing {what} dropped {lost / total:.3e} of the norm")


def jitter_family(ja: JointAmplitude, jitter: wavepacket.JitterModel) -> JitterFamily:
    """
    Build the delayed family of a pair under arrival-time jitter.

    The single-photon bases come from the SVD of the weighted members stacked side by
    side, keeping squared singular values above ``1e-12``. The pair basis comes from
    the Gram matrix of the members, keeping eigenvalues above ``1e-10``.
    """
    if ja.grid_o.n != ja.psi.shape[0] or ja.grid_e.n != ja.psi.shape[1]:
        msg = "Joint amplitude does not live on its grids"
        log.error(msg)
        raise BasisMismatch(msg)
    jitter = jitter.fitted(max(ja.grid_o.step, ja.grid_e.step))
    weights, taus = jitter.weights, jitter.taus
    log.debug(f"Building jitter family with {len(taus)} members, στ = {jitter.sigma_tau}")
    sums = np.add.outer(ja.grid_o.points, ja.grid_e.points)
    phase = np.exp(-1j * sums[None] * taus[:, None, None])
    members = ja.weighted[None] * phase
    scaled = np.sqrt(weights)[:, None, None] * members

    h_all, h_weights, k_h = _leading_modes(np.concatenate(list(scaled), axis=1))
    v_all, v_weights, k_v = _leading_modes(np.concatenate([m.T for m in scaled], axis=1))
    n_single = min(max(k_h, k_v), ja.grid_o.n, ja.grid_e.n)
    _check_discarded("H modes", h_weights, n_single)
    _check_discarded("V modes", v_weights, n_single)
    log.debug(f"Kept {n_single} single-photon modes per polarization (H {k_h}, V {k_v})")

    flat = members.reshape(len(taus), -1)
    gram = flat.conj() @ flat.T
    values, vectors = numerics.eigh(0.5 * (gram + gram.conj().T))
    keep = values > PAIR_TOL
    _check_discarded("pair directions", np.clip(values, 0.0, None), int(keep.sum()))
    pair_coords = np.sqrt(values[keep])[:, None] * vectors[:, keep].conj().T
    log.debug(f"Kept {int(keep.sum())} pair directions out of {len(taus)}")
    return JitterFamily(
        weights, taus, members, h_all[:, :n_single], v_all[:, :n_single], pair_coords
    )


def mixed_pair_density(ja: JointAmplitude, jitter: wavepacket.JitterModel, p=1.0):
    """
    Jittered pair ``Σ_t w_t |ψ_τt⟩⟨ψ_τt|`` between the H photon (left) and the V photon
    (right), optionally with a coherent vacuum amplitude ``√(1−p)`` in every member.
    """
    _check_probability(p)
    family = jitter_family(ja, jitter)
    n_single = family.n_single
    with_vacuum = p < 1
    offset = int(with_vacuum)
    basis = fockspace.BipartiteBasis(
        fockspace.side_labels(Side.LEFT, n_single, ("H",), with_vacuum=with_vacuum),
        fockspace.side_labels(Side.RIGHT, n_single, ("V",), with_vacuum=with_vacuum),
    )
    factors = np.zeros(basis.shape + (len(family.weights),), dtype=complex)
    factors[offset:, offset:, :] = np.sqrt(p) * family.local_amplitudes().transpose(1, 2, 0)
    if with_vacuum:
        factors[0, 0, :] = np.sqrt(1.0 - p)
    factors *= np.sqrt(family.weights)
    factors /= np.sqrt(np.sum(np.abs(factors) ** 2))
    return fockspace.BipartiteDensity(basis, factors)
