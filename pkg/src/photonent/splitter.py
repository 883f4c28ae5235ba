"""
photon-ent: entanglement of single photons and photon pairs behind a beam splitter

50/50 beam splitter outputs
===========================
Output states of a balanced beam splitter for every input scenario (single photon or
photon pair, with or without vacuum, pure or jittered) and the local parity filter on
the left output port.

:maturity:      new
:depends:       numpy scipy
:platform:      All

The splitter maps ``a† → (c† + d†)/√2`` for the input port carrying the light, ``c``
is the left and ``d`` the right output. Two-photon outputs use one label layout per
port: vacuum, H modes, V modes, then the orthonormalized two-photon states.
"""
import dataclasses
import enum
import logging
from typing import Optional

import numpy as np

from photonent import fockspace
from photonent import pairsource
from photonent import wavepacket
from photonent.exceptions import InvalidInput
from photonent.fockspace import BipartiteBasis
from photonent.fockspace import BipartiteDensity
from photonent.fockspace import BipartiteState
from photonent.fockspace import Side

# Globals
log = logging.getLogger(__name__)

#: branches less likely than this are reported as empty
BRANCH_TOL = 1e-12


class ScenarioKind(str, enum.Enum):
    SINGLE_PURE = "single_pure"
    SINGLE_MIXED = "single_mixed"
    SINGLE_VAC_PURE = "single_vac_pure"
    SINGLE_VAC_MIXED = "single_vac_mixed"
    TWO_PURE = "two_pure"
    TWO_MIXED = "two_mixed"
    TWO_VAC_PURE = "two_vac_pure"
    TWO_VAC_MIXED = "two_vac_mixed"


_REQUIRED_SOURCES = {
    ScenarioKind.SINGLE_PURE: ("packet",),
    ScenarioKind.SINGLE_MIXED: ("kernel",),
    ScenarioKind.SINGLE_VAC_PURE: (),
    ScenarioKind.SINGLE_VAC_MIXED: ("kernel",),
    ScenarioKind.TWO_PURE: ("schmidt",),
    ScenarioKind.TWO_MIXED: ("amplitude", "jitter"),
    ScenarioKind.TWO_VAC_PURE: ("schmidt",),
    ScenarioKind.TWO_VAC_MIXED: ("amplitude", "jitter"),
}


@dataclasses.dataclass(frozen=True, eq=False)
class SplitterScenario:
    """
    One input to the beam splitter.

    kind
        :class:`ScenarioKind`.

    p
        Probability of the photon (pair) against the vacuum, used by the ``*_vac_*``
        kinds, default 1.

    packet, kernel, schmidt, amplitude, jitter
        Source objects, the ones the kind needs must be set.
    """

    kind: ScenarioKind
    p: float = 1.0
    packet: Optional[wavepacket.PurePacket] = None
    kernel: Optional[wavepacket.SinglePhotonKernel] = None
    schmidt: Optional[pairsource.SchmidtData] = None
    amplitude: Optional[pairsource.JointAmplitude] = None
    jitter: Optional[wavepacket.JitterModel] = None

    def __post_init__(self):
        try:
            object.__setattr__(self, "kind", ScenarioKind(self.kind))
        except ValueError:
            msg = f"Unknown scenario kind {self.kind!r}"
            log.error(msg)
            raise InvalidInput(msg)  # pylint: disable=raise-missing-from
        _check_probability(self.p)
        missing = [name for name in _REQUIRED_SOURCES[self.kind] if getattr(self, name) is None]
        if missing:
            msg = f"Scenario {self.kind.value} needs {', '.join(missing)}"
            log.error(msg)
            raise InvalidInput(msg)


@dataclasses.dataclass(frozen=True)
class TwoPhotonBasisPlan:
    """
    Per-port label layout of a two-photon output.

    n_single
        One-photon modes kept per polarization.

    n_pair
        Orthonormal two-photon states kept.

    includes_vacuum
        Whether the input carried a vacuum amplitude. The vacuum label is always
        present since one port is empty whenever both photons leave through the other.
    """

    n_single: int
    n_pair: int
    includes_vacuum: bool = False

    @property
    def side_dim(self):
        return 1 + 2 * self.n_single + self.n_pair

    def basis(self):
        labels = {
            side: fockspace.side_labels(side, self.n_single, ("H", "V"), self.n_pair)
            for side in Side
        }
        return BipartiteBasis(labels[Side.LEFT], labels[Side.RIGHT])

    def slices(self):
        """
        ``(h, v, pair)`` index ranges on either side.
        """
        n = self.n_single
        return slice(1, 1 + n), slice(1 + n, 1 + 2 * n), slice(1 + 2 * n, self.side_dim)


@dataclasses.dataclass(frozen=True, eq=False)
class ParityBranches:
    """
    Outcome of a parity measurement on the left port. Empty branches carry ``None``.
    """

    p_even: float
    rho_even: Optional[BipartiteDensity]
    p_odd: float
    rho_odd: Optional[BipartiteDensity]


def _check_probability(p):
    if not 0.0 <= p <= 1.0:
        msg = f"Probability must lie in [0, 1], got {p}"
        log.error(msg)
        raise InvalidInput(msg)


def _unit_trace(factors):
    return factors / np.sqrt(np.sum(np.abs(factors) ** 2))


def split_single_pure(packet: Optional[wavepacket.PurePacket] = None) -> BipartiteState:
    """
    A single photon in one mode leaves as ``(|01⟩ + |10⟩)/√2`` whatever its spectrum.
    """
    if packet is not None:
        log.debug(f"Splitting pure packet on {packet.grid.n} points")
    return fockspace.bell_pair()


def split_single_mixed(kernel: wavepacket.SinglePhotonKernel) -> BipartiteDensity:
    """
    Split a mixed single photon, ``ρ_out = Σ_k (p_k/2)(|1_k 0⟩ + |0 1_k⟩)(h.c.)``.

    kernel
        The input :class:`~photonent.wavepacket.SinglePhotonKernel`, diagonalized first.
    """
    probs = wavepacket.diagonalize_kernel(kernel).probabilities
    count = len(probs)
    basis = BipartiteBasis.symmetric(n_single=count)
    factors = np.zeros(basis.shape + (count,), dtype=complex)
    modes = np.arange(count)
    factors[0, modes + 1, modes] = factors[modes + 1, 0, modes] = np.sqrt(probs / 2.0)
    return BipartiteDensity(basis, _unit_trace(factors))


def split_single_vac_pure(p) -> BipartiteState:
    """
    ``√(1−p)|00⟩ + √(p/2)(|10⟩ + |01⟩)``.
    """
    _check_probability(p)
    basis = BipartiteBasis.symmetric(n_single=1)
    amps = np.zeros(basis.shape, dtype=complex)
    amps[0, 0] = np.sqrt(1.0 - p)
    amps[0, 1] = amps[1, 0] = np.sqrt(p / 2.0)
    return BipartiteState(basis, amps)


def split_single_vac_mixed(p, kernel: wavepacket.SinglePhotonKernel) -> BipartiteDensity:
    """
    ``(1−p)|00⟩⟨00| + (p/2) Σ_k λ_k (|01_k⟩ + |1_k0⟩)(h.c.)``.
    """
    _check_probability(p)
    probs = wavepacket.diagonalize_kernel(kernel).probabilities
    count = len(probs)
    basis = BipartiteBasis.symmetric(n_single=count)
    factors = np.zeros(basis.shape + (count + 1,), dtype=complex)
    modes = np.arange(count)
    factors[0, 0, count] = np.sqrt(1.0 - p)
    factors[0, modes + 1, modes] = factors[modes + 1, 0, modes] = np.sqrt(p * probs / 2.0)
    if p == 1:
        factors = factors[:, :, :count]
    return BipartiteDensity(basis, _unit_trace(factors))


def _two_photon_factors(plan, local, pair_coords, weights, p=None):
    """
    Ensemble factor of split pairs, one member per jitter delay.

    local
        Member amplitudes in the mode bases, ``(T, n_single, n_single)``.

    pair_coords
        Member coordinates in the pair basis, ``(n_pair, T)``.

    p
        ``None`` for a bare pair, otherwise the pair probability against the vacuum.
    """
    dim = plan.side_dim
    h_idx, v_idx, pair_idx = plan.slices()
    factors = np.zeros((dim, dim, len(weights)), dtype=complex)
    h_to_v = local.transpose(1, 2, 0)
    v_to_h = local.transpose(2, 1, 0)
    if p is None:
        factors[pair_idx, 0, :] = 0.5 * pair_coords
        factors[0, pair_idx, :] = -0.5 * pair_coords
        factors[h_idx, v_idx, :] = -0.5 * h_to_v
        factors[v_idx, h_idx, :] = 0.5 * v_to_h
    else:
        amp = 0.5 * np.sqrt(p)
        factors[0, 0, :] = np.sqrt(1.0 - p)
        factors[pair_idx, 0, :] = amp * pair_coords
        factors[0, pair_idx, :] = amp * pair_coords
        factors[h_idx, v_idx, :] = amp * h_to_v
        factors[v_idx, h_idx, :] = amp * v_to_h
    return _unit_trace(factors * np.sqrt(weights))


def _schmidt_layout(sd):
    return np.diag(np.sqrt(sd.lambdas))[None].astype(complex), np.ones((1, 1)), np.ones(1)


def split_two_pure(sd: pairsource.SchmidtData) -> BipartiteState:
    """
    Split a pure pair, both photons entering the same port:
    ``½|2̃⟩_c|0⟩_d − ½|0⟩_c|2̃⟩_d − ½ Σ_k √λ_k (h_ck† v_dk† − v_ck† h_dk†)|vac⟩``.
    """
    plan = TwoPhotonBasisPlan(sd.rank, 1)
    factors = _two_photon_factors(plan, *_schmidt_layout(sd))
    return BipartiteState(plan.basis(), factors[:, :, 0])


def split_two_vac_pure(p, sd: pairsource.SchmidtData) -> BipartiteState:
    """
    Split ``√(1−p)|vac⟩ + √p |2⟩``, signs as in
    ``√(1−p)|00⟩ + (√p/2)(|2̃0⟩ + |02̃⟩) + (√p/2) Σ_k √λ_k (v_ck† h_dk† + h_ck† v_dk†)|vac⟩``.
    """
    _check_probability(p)
    plan = TwoPhotonBasisPlan(sd.rank, 1, includes_vacuum=True)
    factors = _two_photon_factors(plan, *_schmidt_layout(sd), p=p)
    return BipartiteState(plan.basis(), factors[:, :, 0])


def _split_family(ja, jitter, p=None):
    family = pairsource.jitter_family(ja, jitter)
    plan = TwoPhotonBasisPlan(family.n_single, family.n_pair, includes_vacuum=p is not None)
    log.debug(f"Two-photon output on {plan.side_dim} labels per port")
    factors = _two_photon_factors(
        plan, family.local_amplitudes(), family.pair_coords, family.weights, p=p
    )
    return BipartiteDensity(plan.basis(), factors)


def split_two_mixed(ja: pairsource.JointAmplitude, jitter: wavepacket.JitterModel):
    """
    Split a jittered pair, ``ρ_out = Σ_t w_t |2_out(τ_t)⟩⟨2_out(τ_t)|``.

    ja
        The undelayed :class:`~photonent.pairsource.JointAmplitude`.

    jitter
        The :class:`~photonent.wavepacket.JitterModel`.
    """
    return _split_family(ja, jitter)


def split_two_vac_mixed(p, ja: pairsource.JointAmplitude, jitter: wavepacket.JitterModel):
    """
    Jittered version of :func:`split_two_vac_pure`.
    """
    _check_probability(p)
    return _split_family(ja, jitter, p=p)


def hom_state() -> BipartiteState:
    """
    Two identical photons bunch, ``(|2̃,0⟩ − |0,2̃⟩)/√2``.
    """
    basis = BipartiteBasis.symmetric(n_pair=1)
    amps = np.zeros(basis.shape, dtype=complex)
    amps[1, 0] = 1 / np.sqrt(2)
    amps[0, 1] = -1 / np.sqrt(2)
    return BipartiteState(basis, amps)


_BUILDERS = {
    ScenarioKind.SINGLE_PURE: lambda s: split_single_pure(s.packet),
    ScenarioKind.SINGLE_MIXED: lambda s: split_single_mixed(s.kernel),
    ScenarioKind.SINGLE_VAC_PURE: lambda s: split_single_vac_pure(s.p),
    ScenarioKind.SINGLE_VAC_MIXED: lambda s: split_single_vac_mixed(s.p, s.kernel),
    ScenarioKind.TWO_PURE: lambda s: split_two_pure(s.schmidt),
    ScenarioKind.TWO_MIXED: lambda s: split_two_mixed(s.amplitude, s.jitter),
    ScenarioKind.TWO_VAC_PURE: lambda s: split_two_vac_pure(s.p, s.schmidt),
    ScenarioKind.TWO_VAC_MIXED: lambda s: split_two_vac_mixed(s.p, s.amplitude, s.jitter),
}


def run_scenario(scenario: SplitterScenario):
    """
    Output state or density of a :class:`SplitterScenario`.
    """
    log.debug(f"Running scenario {scenario.kind.value}")
    return _BUILDERS[scenario.kind](scenario)


def parity_filter(obj) -> ParityBranches:
    """
    Project the left port onto even (vacuum, two-photon) or odd (one-photon) photon
    number and renormalize each branch.

    obj
        :class:`~photonent.fockspace.BipartiteState` or
        :class:`~photonent.fockspace.BipartiteDensity`.
    """
    rho = fockspace.as_density(obj)
    odd = np.array([label.photons % 2 == 1 for label in rho.basis.left_labels])
    branches = []
    for mask in (~odd, odd):
        factors = np.where(mask[:, None, None], rho.factors, 0)
        prob = float(np.sum(np.abs(factors) ** 2))
        branch = BipartiteDensity(rho.basis, _unit_trace(factors)) if prob > BRANCH_TOL else None
        branches.extend([prob, branch])
    log.debug(f"Parity branches: even {branches[0]:.6f}, odd {branches[2]:.6f}")
    return ParityBranches(*branches)


def filtered_negativity(obj) -> float:
    """
    Logarithmic negativity averaged over the parity branches,
    ``p_even E_N(ρ_even) + p_odd E_N(ρ_odd)``.
    """
    branches = parity_filter(obj)
    total = 0.0
    for prob, rho in ((branches.p_even, branches.rho_even), (branches.p_odd, branches.rho_odd)):
        if rho is not None:
            total += prob * fockspace.log_negativity(rho)
    return total
