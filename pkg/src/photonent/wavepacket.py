"""
photon-ent: entanglement of single photons and photon pairs behind a beam splitter

Single-photon wave packets
==========================
Spectral amplitudes on a uniform frequency grid, arrival-time jitter mixtures and the
resulting single-photon kernels.

:maturity:      new
:depends:       numpy scipy
:platform:      All

Frequencies are in units of the reference bandwidth Ω, times in units of 1/Ω. All
inner products carry the grid weight, ``⟨a|b⟩ = Δω Σ_j conj(a_j) b_j``.

The Gaussian packet is ``ψ(ω) ∝ exp(−(ω−ω₀)²/σ²)``. The jitter width ``στ`` is
quoted so that the purity of the jittered Gaussian is ``(1+4σ²στ²)^(−1/2)``, which
makes the arrival-time distribution a normal law with standard deviation ``2στ``.
"""
import dataclasses
import logging
from functools import cached_property
from typing import NamedTuple
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

from photonent import numerics
from photonent.exceptions import BasisMismatch
from photonent.exceptions import InvalidInput

# Globals
log = logging.getLogger(__name__)

NORM_TOL = 1e-10
MODE_TOL = 1e-12


@dataclasses.dataclass(frozen=True)
class FrequencyGrid:
    """
    Uniform midpoint grid ``ν_j = lo + (j+½)Δω`` with ``Δω = (hi−lo)/n``.

    A grid with ``hi == lo`` is accepted and has zero width, every quadrature over it
    vanishes. Nothing can be normalized on it.
    """

    lo: float
    hi: float
    n: int

    def __post_init__(self):
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)):
            msg = f"Grid bounds must be finite, got [{self.lo}, {self.hi}]"
            log.error(msg)
            raise InvalidInput(msg)
        if self.n < 2:
            msg = f"A frequency grid needs at least 2 points, got {self.n}"
            log.error(msg)
            raise InvalidInput(msg)
        if self.hi < self.lo:
            msg = f"Grid upper bound {self.hi} is below lower bound {self.lo}"
            log.error(msg)
            raise InvalidInput(msg)

    @classmethod
    def symmetric(cls, cutoff=2.0, n=64):
        """
        Grid on ``[−cutoff, cutoff]``, the default cut off at ``±2Ω`` with 64 points.
        """
        return cls(-float(cutoff), float(cutoff), int(n))

    @property
    def step(self):
        return (self.hi - self.lo) / self.n

    @property
    def center(self):
        return 0.5 * (self.lo + self.hi)

    @cached_property
    def points(self):
        return self.lo + (np.arange(self.n) + 0.5) * self.step

    def require_width(self):
        if self.hi == self.lo:
            msg = "Cannot normalize on a zero-width frequency grid"
            log.error(msg)
            raise InvalidInput(msg)


@dataclasses.dataclass(frozen=True, eq=False)
class PurePacket:
    """
    Single-photon spectral amplitude ``ψ(ω)`` sampled on a grid.

    grid
        The :class:`FrequencyGrid`.

    amplitudes
        Complex samples, normalized so that ``Δω Σ |ψ_j|² = 1``.

    center
        Central frequency ``ω₀``, ``None`` when the packet is not Gaussian.

    sigma
        Gaussian width, ``None`` when the packet is not Gaussian.

    delay
        Accumulated arrival-time delay.
    """

    grid: FrequencyGrid
    amplitudes: np.ndarray
    center: Optional[float] = None
    sigma: Optional[float] = None
    delay: float = 0.0

    def __post_init__(self):
        amps = numerics.as_finite(self.amplitudes, "packet amplitudes")
        if amps.shape != (self.grid.n,):
            msg = f"Packet has {amps.shape} samples for a grid of {self.grid.n} points"
            log.error(msg)
            raise InvalidInput(msg)
        norm = self.grid.step * float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > NORM_TOL:
            msg = f"Packet is not normalized, Δω Σ|ψ|² = {norm!r}"
            log.error(msg)
            raise InvalidInput(msg)
        object.__setattr__(self, "amplitudes", amps)


@dataclasses.dataclass(frozen=True, eq=False)
class SinglePhotonKernel:
    """
    Single-photon density ``ρ₁(ω, ω′)`` on a grid, unit trace under the Δω weight.
    """

    grid: FrequencyGrid
    kernel: np.ndarray

    def __post_init__(self):
        mat = numerics.ensure_hermitian(self.kernel, "kernel")
        if mat.shape != (self.grid.n, self.grid.n):
            msg = f"Kernel shape {mat.shape} does not match grid of {self.grid.n} points"
            log.error(msg)
            raise InvalidInput(msg)
        trace = self.grid.step * float(np.real(np.trace(mat)))
        if abs(trace - 1.0) > NORM_TOL:
            msg = f"Kernel does not have unit trace, Δω Tr = {trace!r}"
            log.error(msg)
            raise InvalidInput(msg)
        lowest = numerics.eigvalsh(self.grid.step * mat)[-1]
        if lowest < -MODE_TOL:
            msg = f"Kernel is not positive semidefinite, smallest eigenvalue {lowest!r}"
            log.error(msg)
            raise InvalidInput(msg)
        object.__setattr__(self, "kernel", mat)


@dataclasses.dataclass(frozen=True)
class JitterModel:
    """
    Gaussian arrival-time jitter, discretized on an odd number of delays.

    sigma_tau
        Jitter width ``στ``, the delays have standard deviation ``2στ``.

    n_tau
        Number of delays, odd so that ``τ = 0`` is included. Default is 41.

    tau_cutoff
        Half-width of the delay grid in standard deviations. Default is 6.
    """

    sigma_tau: float
    n_tau: int = 41
    tau_cutoff: float = 6.0

    def __post_init__(self):
        if not np.isfinite(self.sigma_tau) or self.sigma_tau < 0:
            msg = f"Jitter width must be finite and >= 0, got {self.sigma_tau}"
            log.error(msg)
            raise InvalidInput(msg)
        if self.n_tau < 1 or self.n_tau % 2 == 0:
            msg = f"Number of delays must be odd, got {self.n_tau}"
            log.error(msg)
            raise InvalidInput(msg)
        if not self.tau_cutoff > 0:
            msg = f"Delay cutoff must be > 0, got {self.tau_cutoff}"
            log.error(msg)
            raise InvalidInput(msg)

    @property
    def std(self):
        return 2.0 * self.sigma_tau

    @cached_property
    def taus(self):
        if self.sigma_tau == 0:
            return np.zeros(1)
        span = self.tau_cutoff * self.std
        return np.linspace(-span, span, self.n_tau)

    @cached_property
    def weights(self):
        if self.sigma_tau == 0:
            return np.ones(1)
        raw = np.exp(-self.taus**2 / (2.0 * self.std**2))
        return raw / raw.sum()

    def fitted(self, step):
        """
        Copy of the model whose delays can be represented on a grid of spacing ``step``.

        Sampled with spacing ``Δω``, ``e^{−iωτ}`` is periodic in ``τ`` with period
        ``2π/Δω``. The span is clipped to ``±π/(2Δω)`` so that no two delays are more than
        half a period apart. A clipped model truncates the Gaussian law.
        """
        if self.sigma_tau == 0:
            return self
        fitted = self
        limit = np.pi / (2.0 * step)
        span = self.tau_cutoff * self.std
        if span > limit:
            log.warning(
                f"Delays up to ±{span:.4g} alias on a grid with spacing {step:.4g}, "
                f"clipping them to ±{limit:.4g}"
            )
            fitted = dataclasses.replace(self, tau_cutoff=limit / self.std)
        if fitted.n_tau > 1:
            spacing = 2.0 * fitted.tau_cutoff * fitted.std / (fitted.n_tau - 1)
            if spacing > fitted.std:
                log.warning(
                    f"Delay spacing {spacing:.4g} exceeds the jitter deviation "
                    f"{fitted.std:.4g}, raise the number of delays"
                )
        return fitted


class KernelModes(NamedTuple):
    """
    Eigen decomposition ``ρ₁ = Σ_k p_k |1_k⟩⟨1_k|`` of a kernel.
    """

    probabilities: np.ndarray
    modes: Tuple[PurePacket, ...]


def gaussian_packet(grid, sigma, center=None):
    """
    Normalized Gaussian packet ``ψ(ω) ∝ exp(−(ω−ω₀)²/σ²)``.

    grid
        The :class:`FrequencyGrid`.

    sigma
        Width, must be > 0.

    center
        ``ω₀``, default is the grid center.
    """
    if not sigma > 0:
        msg = f"Packet width must be > 0, got {sigma}"
        log.error(msg)
        raise InvalidInput(msg)
    grid.require_width()
    center = grid.center if center is None else float(center)
    raw = np.exp(-((grid.points - center) ** 2) / sigma**2).astype(complex)
    raw /= np.sqrt(grid.step * np.sum(np.abs(raw) ** 2))
    return PurePacket(grid, raw, center=center, sigma=float(sigma))


def delayed(packet, tau):
    """
    Packet arriving later by ``τ``: ``ψ_τ(ω) = ψ(ω) e^{−iωτ}``.
    """
    if not np.isfinite(tau):
        msg = f"Delay must be finite, got {tau}"
        log.error(msg)
        raise InvalidInput(msg)
    if tau == 0:
        return packet
    phase = np.exp(-1j * packet.grid.points * tau)
    return dataclasses.replace(
        packet, amplitudes=packet.amplitudes * phase, delay=packet.delay + float(tau)
    )


def overlap(a, b):
    """
    ``⟨a|b⟩`` under the Δω inner product.
    """
    if a.grid != b.grid:
        msg = "Cannot overlap packets on different frequency grids"
        log.error(msg)
        raise BasisMismatch(msg)
    return numerics.grid_quadrature(a.amplitudes.conj() * b.amplitudes, a.grid)


def mixture_kernel(members: Sequence[Tuple[float, PurePacket]]):
    """
    Kernel of the mixture ``Σ_i w_i |ψ_i⟩⟨ψ_i|``, renormalized to unit trace.

    members
        ``(weight, packet)`` pairs, weights ≥ 0 summing to 1, one common grid.
    """
    if not members:
        msg = "Cannot build a kernel from an empty mixture"
        log.error(msg)
        raise InvalidInput(msg)
    weights = np.array([w for w, _ in members], dtype=float)
    if np.any(weights < 0) or abs(weights.sum() - 1.0) > 1e-12:
        msg = f"Mixture weights must be >= 0 and sum to 1, got {weights.tolist()}"
        log.error(msg)
        raise InvalidInput(msg)
    grid = members[0][1].grid
    if any(packet.grid != grid for _, packet in members[1:]):
        msg = "All packets of a mixture must share one frequency grid"
        log.error(msg)
        raise BasisMismatch(msg)
    amps = np.stack([np.sqrt(w) * packet.amplitudes for w, packet in members], axis=1)
    kernel = amps @ amps.conj().T
    kernel /= grid.step * np.real(np.trace(kernel))
    return SinglePhotonKernel(grid, 0.5 * (kernel + kernel.conj().T))


def jitter_kernel(packet, jitter):
    """
    Kernel of a packet with Gaussian arrival-time jitter,
    ``Σ_t w_t ψ(ω)ψ*(ω′) e^{−i(ω−ω′)τ_t}``.

    packet
        The undelayed :class:`PurePacket`.

    jitter
        The :class:`JitterModel`, clipped to the packet grid with :meth:`JitterModel.fitted`.
    """
    jitter = jitter.fitted(packet.grid.step)
    log.debug(f"Building jitter kernel from {len(jitter.taus)} delays, στ = {jitter.sigma_tau}")
    return mixture_kernel(
        [(w, delayed(packet, tau)) for w, tau in zip(jitter.weights, jitter.taus)]
    )


def gaussian_jitter_kernel(grid, sigma, sigma_tau, center=None):
    """
    Closed form of the jittered Gaussian kernel with the delay integral taken exactly,
    ``exp[−(ω−ω₀)²/σ² − (ω′−ω₀)²/σ² − 2(ω−ω′)²στ²]``, normalized on the grid.
    """
    packet = gaussian_packet(grid, sigma, center)
    diff = grid.points[:, None] - grid.points[None, :]
    kernel = np.outer(packet.amplitudes, packet.amplitudes.conj()) * np.exp(
        -2.0 * diff**2 * sigma_tau**2
    )
    kernel /= grid.step * np.real(np.trace(kernel))
    return SinglePhotonKernel(grid, kernel)


def kernel_purity(k):
    """
    ``Tr ρ₁² = Δω² Σ_jk |ρ₁(ω_j, ω_k)|²``.
    """
    return float(k.grid.step**2 * np.sum(np.abs(k.kernel) ** 2))


def _fix_phase(vector):
    # largest entry real and positive
    pivot = vector[np.argmax(np.abs(vector))]
    return vector * (abs(pivot) / pivot)


def diagonalize_kernel(k):
    """
    Split a kernel into orthonormal modes, ``ρ₁ = Σ_k p_k |1_k⟩⟨1_k|``.

    Eigenpairs with ``p_k < 1e-12`` are dropped. Each mode has its largest sample real
    and positive.
    """
    values, vectors = numerics.eigh(k.grid.step * k.kernel)
    keep = values >= MODE_TOL
    log.debug(f"Kernel has {int(keep.sum())} modes above {MODE_TOL}")
    modes = tuple(
        PurePacket(k.grid, _fix_phase(vectors[:, i]) / np.sqrt(k.grid.step))
        for i in np.flatnonzero(keep)
    )
    return KernelModes(values[keep], modes)


def kernel_from_modes(grid, probabilities, modes):
    """
    Kernel ``Σ_k p_k φ_k(ω) φ_k*(ω′)`` from orthonormal modes.

    grid
        The :class:`FrequencyGrid`.

    probabilities
        Mode occupations, ≥ 0 and summing to 1.

    modes
        :class:`PurePacket` instances or raw sample arrays, orthonormal under Δω.
    """
    probs = np.asarray(probabilities, dtype=float)
    if np.any(probs < 0) or abs(probs.sum() - 1.0) > 1e-12 or len(probs) != len(modes):
        msg = "Mode probabilities must be >= 0, sum to 1 and match the number of modes"
        log.error(msg)
        raise InvalidInput(msg)
    amps = np.stack([np.asarray(getattr(m, "amplitudes", m), dtype=complex) for m in modes], 1)
    kernel = (amps * probs) @ amps.conj().T
    return SinglePhotonKernel(grid, 0.5 * (kernel + kernel.conj().T))


def kernel_with_purity(grid, purity):
    """
    Kernel of a given purity on grid-point modes: occupation ``q`` in one mode and
    ``(1−q)/(m−1)`` in each of ``m−1`` others, with ``m = ⌊1/P⌋ + 1``.
    """
    if not 0.0 < purity <= 1.0:
        msg = f"Purity must lie in (0, 1], got {purity}"
        log.error(msg)
        raise InvalidInput(msg)
    count = int(np.floor(1.0 / purity)) + 1
    if count > grid.n:
        msg = f"Purity {purity} needs {count} modes, the grid has {grid.n} points"
        log.error(msg)
        raise InvalidInput(msg)
    lead = (1.0 + np.sqrt(max((count - 1) * (count * purity - 1.0), 0.0))) / count
    probs = np.full(count, (1.0 - lead) / (count - 1))
    probs[0] = lead
    modes = np.eye(grid.n)[:, :count] / np.sqrt(grid.step)
    return kernel_from_modes(grid, probs / probs.sum(), list(modes.T))


def temporal_profile(packet, times):
    """
    Temporal mode ``ψ̃(t) = (2π)^(−½) ∫dω ψ(ω) e^{iωt}`` by the rectangle rule.
    """
    times = np.atleast_1d(np.asarray(times, dtype=float))
    phases = np.exp(1j * np.outer(times, packet.grid.points))
    return packet.grid.step * (phases @ packet.amplitudes) / np.sqrt(2.0 * np.pi)
