"""
photon-ent: entanglement of single photons and photon pairs behind a beam splitter

Bipartite Fock states
=====================
Labeled bases for two output ports, pure states, densities, partial transpose and
the entanglement measures built on them.

:maturity:      new
:depends:       numpy scipy
:platform:      All

A density is stored as an ensemble factor ``F`` of shape ``(|left|, |right|, r)`` with
``ρ = Σ_r |F_r⟩⟨F_r|``, the dense ``|left|·|right|`` square matrix is only built when
asked for. The logarithmic negativity is computed block by block: every label carries a
charge (photon number, H count, V count), and the partial transpose only couples
index pairs whose charges are linked through the total charges present in ρ.
"""
import dataclasses
import enum
import itertools
import logging
from functools import cached_property
from typing import Optional
from typing import Sequence
from typing import Tuple
from typing import Union

import numpy as np
import scipy.special

from photonent import numerics
from photonent.exceptions import BasisMismatch
from photonent.exceptions import InvalidInput

# Globals
log = logging.getLogger(__name__)

NORM_TOL = 1e-12
PSD_TOL = 1e-12
WEIGHT_TOL = 1e-12
# relative weight below which a basis pair is outside the support of ρ
ZERO_SUPPORT = 1e-26

POLARIZATIONS = (None, "H", "V")


class Side(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"


class Sector(str, enum.Enum):
    VACUUM = "vacuum"
    ONE_PHOTON = "one_photon"
    TWO_PHOTON = "two_photon"


_PHOTONS = {Sector.VACUUM: 0, Sector.ONE_PHOTON: 1, Sector.TWO_PHOTON: 2}


@dataclasses.dataclass(frozen=True)
class BasisLabel:
    """
    One basis vector of a single output port.

    side
        :class:`Side` the label belongs to.

    sector
        Photon-number sector, :class:`Sector`.

    index
        Mode index for one-photon labels, pair index for two-photon labels, 0 for vacuum.

    polarization
        ``"H"``, ``"V"`` or ``None`` for one-photon labels, always ``None`` otherwise.
    """

    side: Side
    sector: Sector
    index: int = 0
    polarization: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "side", Side(self.side))
        object.__setattr__(self, "sector", Sector(self.sector))
        if self.index < 0:
            msg = f"Label index must be >= 0, got {self.index}"
            log.error(msg)
            raise InvalidInput(msg)
        if self.polarization not in POLARIZATIONS:
            msg = f"Unknown polarization tag {self.polarization!r}"
            log.error(msg)
            raise InvalidInput(msg)
        if self.sector is not Sector.ONE_PHOTON and self.polarization is not None:
            msg = f"Only one-photon labels carry a polarization, got {self.sector.value}"
            log.error(msg)
            raise InvalidInput(msg)
        if self.sector is Sector.VACUUM and self.index != 0:
            msg = "The vacuum label has index 0"
            log.error(msg)
            raise InvalidInput(msg)

    @property
    def photons(self):
        return _PHOTONS[self.sector]

    @property
    def charge(self) -> Tuple[int, int, int]:
        """
        Conserved charge ``(photons, H photons, V photons)``.
        """
        if self.sector is Sector.TWO_PHOTON:
            return (2, 1, 1)
        if self.sector is Sector.ONE_PHOTON:
            return (1, int(self.polarization == "H"), int(self.polarization == "V"))
        return (0, 0, 0)

    @property
    def group(self):
        return (self.photons, POLARIZATIONS.index(self.polarization))

    @property
    def sort_key(self):
        return self.group + (self.index,)

    def on(self, side):
        """
        Same label on the other (or given) side.
        """
        return dataclasses.replace(self, side=Side(side))

    def __str__(self):
        if self.sector is Sector.VACUUM:
            ket = "0"
        elif self.sector is Sector.TWO_PHOTON:
            ket = f"2~{self.index}"
        else:
            ket = f"1_{self.polarization or ''}{self.index}"
        return f"{self.side.value[0].upper()}|{ket}>"


def vacuum(side):
    return BasisLabel(side, Sector.VACUUM)


def one_photon(side, index, polarization=None):
    return BasisLabel(side, Sector.ONE_PHOTON, index, polarization)


def two_photon(side, index):
    return BasisLabel(side, Sector.TWO_PHOTON, index)


def side_labels(side, n_single=0, polarizations=(None,), n_pair=0, with_vacuum=True):
    """
    Canonically ordered labels for one port.

    side
        :class:`Side` of the labels.

    n_single
        Number of one-photon modes per polarization tag.

    polarizations
        Polarization tags to generate one-photon labels for, default is untagged only.

    n_pair
        Number of two-photon labels.

    with_vacuum
        Prepend the vacuum label, default is ``True``.
    """
    labels = [vacuum(side)] if with_vacuum else []
    for pol in sorted(polarizations, key=POLARIZATIONS.index):
        labels.extend(one_photon(side, k, pol) for k in range(n_single))
    labels.extend(two_photon(side, j) for j in range(n_pair))
    return labels


def _check_side(labels, side):
    if not labels:
        msg = f"The {side.value} side needs at least one label"
        log.error(msg)
        raise InvalidInput(msg)
    if any(label.side is not side for label in labels):
        msg = f"All labels on the {side.value} side must carry side={side.value}"
        log.error(msg)
        raise InvalidInput(msg)
    if len(set(labels)) != len(labels):
        msg = f"Duplicate labels on the {side.value} side"
        log.error(msg)
        raise InvalidInput(msg)
    keys = [label.sort_key for label in labels]
    if keys != sorted(keys):
        msg = f"Labels on the {side.value} side are not in canonical order"
        log.error(msg)
        raise InvalidInput(msg)
    for _, members in itertools.groupby(labels, key=lambda label: label.group):
        indices = [label.index for label in members]
        if indices != list(range(len(indices))):
            msg = f"Indices on the {side.value} side are not dense from 0"
            log.error(msg)
            raise InvalidInput(msg)


@dataclasses.dataclass(frozen=True)
class BipartiteBasis:
    """
    Product basis of the left and right output ports, ordering fixed at construction:
    vacuum, one-photon (untagged, H, V) by index, two-photon by index.
    """

    left_labels: Tuple[BasisLabel, ...]
    right_labels: Tuple[BasisLabel, ...]

    def __post_init__(self):
        object.__setattr__(self, "left_labels", tuple(self.left_labels))
        object.__setattr__(self, "right_labels", tuple(self.right_labels))
        _check_side(self.left_labels, Side.LEFT)
        _check_side(self.right_labels, Side.RIGHT)

    @classmethod
    def symmetric(cls, **kwargs):
        """
        Basis with the same label layout on both sides, see :func:`side_labels`.
        """
        return cls(side_labels(Side.LEFT, **kwargs), side_labels(Side.RIGHT, **kwargs))

    @property
    def shape(self):
        return (len(self.left_labels), len(self.right_labels))

    @property
    def dim(self):
        return len(self.left_labels) * len(self.right_labels)

    @cached_property
    def left_charges(self):
        return np.array([label.charge for label in self.left_labels], dtype=int)

    @cached_property
    def right_charges(self):
        return np.array([label.charge for label in self.right_labels], dtype=int)

    def swapped(self):
        return BipartiteBasis(
            [label.on(Side.LEFT) for label in self.right_labels],
            [label.on(Side.RIGHT) for label in self.left_labels],
        )


@dataclasses.dataclass(frozen=True, eq=False)
class BipartiteState:
    """
    Normalized pure state ``Σ a[i, j] |left_i⟩|right_j⟩``.
    """

    basis: BipartiteBasis
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = numerics.as_finite(self.amplitudes, "amplitudes")
        if amps.shape != self.basis.shape:
            msg = f"Amplitude shape {amps.shape} does not match basis shape {self.basis.shape}"
            log.error(msg)
            raise InvalidInput(msg)
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > NORM_TOL:
            msg = f"State is not normalized, squared norm {norm!r}"
            log.error(msg)
            raise InvalidInput(msg)
        object.__setattr__(self, "amplitudes", amps)

    def swapped(self):
        return BipartiteState(self.basis.swapped(), self.amplitudes.T)


@dataclasses.dataclass(frozen=True, eq=False)
class BipartiteDensity:
    """
    Unit-trace positive semidefinite operator on a :class:`BipartiteBasis`.

    basis
        The basis.

    factors
        Ensemble factor of shape ``(|left|, |right|, r)``, ``ρ = Σ_r |F_r⟩⟨F_r|``.
        Use :meth:`from_matrix` to start from a dense matrix.
    """

    basis: BipartiteBasis
    factors: np.ndarray

    def __post_init__(self):
        fac = numerics.as_finite(self.factors, "density factors")
        if fac.ndim == 2:
            fac = fac[:, :, None]
        if fac.ndim != 3 or fac.shape[:2] != self.basis.shape:
            msg = f"Factor shape {fac.shape} does not match basis shape {self.basis.shape}"
            log.error(msg)
            raise InvalidInput(msg)
        trace = float(np.sum(np.abs(fac) ** 2))
        if abs(trace - 1.0) > NORM_TOL:
            msg = f"Density does not have unit trace, trace {trace!r}"
            log.error(msg)
            raise InvalidInput(msg)
        object.__setattr__(self, "factors", fac)

    @classmethod
    def from_matrix(cls, basis, matrix):
        """
        Build a density from a dense Hermitian matrix over ``basis``.

        Matrices with an eigenvalue below ``-1e-12`` or a trace off by more than
        ``1e-12`` are rejected, not clipped.
        """
        mat = numerics.ensure_hermitian(matrix, "density matrix")
        if mat.shape != (basis.dim, basis.dim):
            msg = f"Matrix shape {mat.shape} does not match basis dimension {basis.dim}"
            log.error(msg)
            raise InvalidInput(msg)
        values, vectors = numerics.eigh(mat)
        if values.size and values[-1] < -PSD_TOL:
            msg = f"Density is not positive semidefinite, smallest eigenvalue {values[-1]!r}"
            log.error(msg)
            raise InvalidInput(msg)
        keep = values > 0
        fac = vectors[:, keep] * np.sqrt(values[keep])
        return cls(basis, fac.reshape(basis.shape + (-1,)))

    @property
    def rank(self):
        return self.factors.shape[2]

    @cached_property
    def matrix(self):
        """
        Dense ``|left|·|right|`` square matrix, row index ``i·|right| + j``.
        """
        flat = self.factors.reshape(self.basis.dim, -1)
        return flat @ flat.conj().T

    def swapped(self):
        return BipartiteDensity(self.basis.swapped(), self.factors.transpose(1, 0, 2))


StateOrDensity = Union[BipartiteState, BipartiteDensity]


def as_density(obj: StateOrDensity) -> BipartiteDensity:
    if isinstance(obj, BipartiteDensity):
        return obj
    if isinstance(obj, BipartiteState):
        return density_from_pure(obj)
    msg = f"Expected a bipartite state or density, got {type(obj).__name__}"
    log.error(msg)
    raise InvalidInput(msg)


def density_from_pure(s: BipartiteState) -> BipartiteDensity:
    """
    The projector ``|s⟩⟨s|``.
    """
    return BipartiteDensity(s.basis, s.amplitudes[:, :, None])


def mix(members: Sequence[Tuple[float, StateOrDensity]]) -> BipartiteDensity:
    """
    Convex combination of densities over the same basis.

    members
        ``(weight, density)`` pairs. Weights must be non-negative and sum to 1,
        pure states are accepted in place of densities.
    """
    if not members:
        msg = "Cannot mix an empty list of densities"
        log.error(msg)
        raise InvalidInput(msg)
    weights = np.array([w for w, _ in members], dtype=float)
    if np.any(weights < 0) or abs(weights.sum() - 1.0) > WEIGHT_TOL:
        msg = f"Mixture weights must be >= 0 and sum to 1, got {weights.tolist()}"
        log.error(msg)
        raise InvalidInput(msg)
    densities = [as_density(rho) for _, rho in members]
    basis = densities[0].basis
    if any(rho.basis != basis for rho in densities[1:]):
        msg = "Cannot mix densities on different bases"
        log.error(msg)
        raise BasisMismatch(msg)
    blocks = [np.sqrt(w) * rho.factors for w, rho in zip(weights, densities) if w > 0]
    return BipartiteDensity(basis, np.concatenate(blocks, axis=2))


def purity(rho: StateOrDensity) -> float:
    """
    ``Tr ρ²``, evaluated on the ``r × r`` Gram matrix of the ensemble factor.
    """
    fac = as_density(rho).factors
    flat = fac.reshape(-1, fac.shape[2])
    gram = flat.conj().T @ flat
    return float(np.sum(np.abs(gram) ** 2))


def partial_transpose(rho: StateOrDensity) -> np.ndarray:
    """
    Dense partial transpose on the right side, ``ρ^Γ[(a,b),(a',b')] = ρ[(a,b'),(a',b)]``.
    """
    rho = as_density(rho)
    n_left, n_right = rho.basis.shape
    mat = rho.matrix.reshape(n_left, n_right, n_left, n_right)
    return mat.transpose(0, 3, 2, 1).reshape(rho.basis.dim, rho.basis.dim)


def _total_charges(rho):
    fac = rho.factors
    weight = np.sum(np.abs(fac) ** 2, axis=2)
    support = weight > (ZERO_SUPPORT * weight.max())
    rows, cols = np.nonzero(support)
    totals = rho.basis.left_charges[rows] + rho.basis.right_charges[cols]
    return {tuple(t) for t in np.unique(totals, axis=0)}


def _class_components(rho):
    """
    Group the PT index pairs ``(a, b)`` into invariant blocks of ``ρ^Γ``.

    Returns a list of ``(members, bipartite)`` where ``members`` is a list of charge
    classes and ``bipartite`` flags a two-class block without self coupling.
    """
    left_q = [tuple(q) for q in rho.basis.left_charges]
    right_q = [tuple(q) for q in rho.basis.right_charges]
    classes = sorted({(a, b) for a in set(left_q) for b in set(right_q)})
    class_set = set(classes)
    totals = _total_charges(rho)

    def sub(x, y):
        return tuple(i - j for i, j in zip(x, y))

    edges = set()
    for alpha, beta in classes:
        for c_1, c_2 in itertools.product(totals, repeat=2):
            partner = (sub(c_2, beta), sub(c_1, alpha))
            if partner in class_set:
                edges.add(((alpha, beta), partner))

    parent = {cls: cls for cls in classes}

    def find(cls):
        while parent[cls] != cls:
            parent[cls] = parent[parent[cls]]
            cls = parent[cls]
        return cls

    for one, two in edges:
        root_one, root_two = find(one), find(two)
        if root_one != root_two:
            parent[max(root_one, root_two)] = min(root_one, root_two)

    groups = {}
    for cls in classes:
        groups.setdefault(find(cls), []).append(cls)
    components = []
    for members in groups.values():
        self_coupled = any((cls, cls) in edges for cls in members)
        coupled = any((one, two) in edges for one in members for two in members)
        components.append((members, coupled, len(members) == 2 and not self_coupled))
    return components, left_q, right_q


def _pt_block(fac, a_rows, b_rows, a_cols, b_cols):
    # ρ^Γ[(a_i,b_i),(a_j,b_j)] = Σ_r F_r[a_i,b_j] conj(F_r[a_j,b_i])
    block = np.zeros((len(a_rows), len(a_cols)), dtype=complex)
    for r in range(fac.shape[2]):
        member = fac[:, :, r]
        block += member[a_rows[:, None], b_cols[None, :]] * member[
            a_cols[None, :], b_rows[:, None]
        ].conj()
    return block


def pt_spectrum(rho: StateOrDensity) -> np.ndarray:
    """
    All eigenvalues of the partial transpose, descending.

    The spectrum is assembled from the invariant blocks of ``ρ^Γ``. A block pairing two
    charge classes without self coupling is off-diagonal, its eigenvalues are the
    singular values of the coupling with both signs.
    """
    rho = as_density(rho)
    fac = rho.factors
    components, left_q, right_q = _class_components(rho)
    log.debug(f"Partial transpose splits into {len(components)} blocks")

    def indices(cls):
        alpha, beta = cls
        rows = np.array([i for i, q in enumerate(left_q) if q == alpha], dtype=int)
        cols = np.array([j for j, q in enumerate(right_q) if q == beta], dtype=int)
        a_idx, b_idx = np.meshgrid(rows, cols, indexing="ij")
        return a_idx.ravel(), b_idx.ravel()

    values = []
    for members, coupled, bipartite in components:
        index_sets = [indices(cls) for cls in members]
        size = sum(len(a) for a, _ in index_sets)
        if not coupled:
            values.append(np.zeros(size))
            continue
        if bipartite:
            (a_1, b_1), (a_2, b_2) = index_sets
            sing = numerics.svdvals(_pt_block(fac, a_1, b_1, a_2, b_2))
            values.extend([sing, -sing, np.zeros(size - 2 * len(sing))])
            continue
        a_all = np.concatenate([a for a, _ in index_sets])
        b_all = np.concatenate([b for _, b in index_sets])
        block = _pt_block(fac, a_all, b_all, a_all, b_all)
        values.append(numerics.eigvalsh(0.5 * (block + block.conj().T)))
    spectrum = np.concatenate(values) if values else np.zeros(0)
    return spectrum[np.argsort(-spectrum, kind="stable")]


def negativity(rho: StateOrDensity) -> float:
    """
    ``(‖ρ^Γ‖₁ − 1) / 2``, the summed magnitude of the negative PT eigenvalues.
    """
    return max(0.0, (_trace_norm(rho) - 1.0) / 2.0)


def _trace_norm(rho):
    values = numerics.discard_small(pt_spectrum(rho))
    return float(np.sum(np.abs(values)))


def log_negativity(rho: StateOrDensity) -> float:
    """
    Logarithmic negativity ``E_N = log₂‖ρ^Γ‖₁`` in ebits.

    PT eigenvalues below ``1e-12`` in magnitude count as zero.
    """
    return max(0.0, float(np.log2(_trace_norm(rho))))


def schmidt_coefficients(s: BipartiteState) -> np.ndarray:
    """
    Descending Schmidt coefficients ``λ_k`` (squared singular values of the amplitudes).
    """
    return numerics.svdvals(s.amplitudes) ** 2


def entropy_bits(probabilities) -> float:
    """
    Shannon entropy in bits, ``0·log 0 = 0``.
    """
    probs = np.clip(np.asarray(probabilities, dtype=float), 0.0, None)
    return float(np.sum(scipy.special.entr(probs)) / np.log(2.0))


def entropy_of_entanglement(s: BipartiteState) -> float:
    """
    Entropy of entanglement ``E = −Σ λ_k log₂ λ_k`` of a pure state.
    """
    return entropy_bits(schmidt_coefficients(s))


def log_negativity_pure(schmidt) -> float:
    """
    ``2 log₂ Σ √λ_k`` for a pure state with Schmidt coefficients ``λ_k``.

    schmidt
        :class:`~photonent.pairsource.SchmidtData` or a plain sequence of coefficients.
    """
    lambdas = np.asarray(getattr(schmidt, "lambdas", schmidt), dtype=float)
    if abs(lambdas.sum() - 1.0) > 1e-10:
        msg = f"Schmidt coefficients must sum to 1, got {lambdas.sum()!r}"
        log.error(msg)
        raise InvalidInput(msg)
    return max(0.0, 2.0 * float(np.log2(np.sum(np.sqrt(np.clip(lambdas, 0.0, None))))))


def reduced_density(obj: StateOrDensity, side=Side.LEFT) -> np.ndarray:
    """
    Reduced density matrix of one port, over that side's labels.
    """
    fac = as_density(obj).factors
    if Side(side) is Side.LEFT:
        return np.einsum("ajr,bjr->ab", fac, fac.conj())
    return np.einsum("iar,ibr->ab", fac, fac.conj())


def bell_pair() -> BipartiteState:
    """
    ``(|01⟩ + |10⟩)/√2``, a single photon delocalized over the two ports.
    """
    basis = BipartiteBasis.symmetric(n_single=1)
    amps = np.zeros(basis.shape, dtype=complex)
    amps[0, 1] = amps[1, 0] = 1 / np.sqrt(2)
    return BipartiteState(basis, amps)


def delocalized_photon_mixture() -> BipartiteDensity:
    """
    Equal mixture of a delocalized photon in two distinguishable colors.
    """
    basis = BipartiteBasis.symmetric(n_single=2)
    members = []
    for k in (1, 2):
        amps = np.zeros(basis.shape, dtype=complex)
        amps[0, k] = amps[k, 0] = 1 / np.sqrt(2)
        members.append((0.5, BipartiteState(basis, amps)))
    return mix(members)


def color_mixed_singlet() -> BipartiteDensity:
    """
    Polarization singlet with the color (two values) classically mixed.

    Each side holds one photon, labels are ``one_photon(color, pol)``.
    """
    basis = BipartiteBasis.symmetric(n_single=2, polarizations=("H", "V"), with_vacuum=False)
    position = {(label.index, label.polarization): i for i, label in enumerate(basis.left_labels)}
    members = []
    for color in (0, 1):
        amps = np.zeros(basis.shape, dtype=complex)
        amps[position[(color, "H")], position[(color, "V")]] = 1 / np.sqrt(2)
        amps[position[(color, "V")], position[(color, "H")]] = -1 / np.sqrt(2)
        members.append((0.5, BipartiteState(basis, amps)))
    return mix(members)
