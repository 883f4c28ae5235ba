"""
photon-ent: entanglement of single photons and photon pairs behind a beam splitter

Closed-form entanglement values
===============================
Scalar formulas for every scenario the splitter module builds numerically. They serve
as oracles for the constructive pipeline and back the ``check`` command.

:maturity:      new
:depends:       numpy scipy
:platform:      All

``0 · log₂ 0`` is taken as 0 throughout.
"""
import enum
import logging

import numpy as np
import scipy.special

from photonent.exceptions import InvalidInput

# Globals
log = logging.getLogger(__name__)


class FormulaId(str, enum.Enum):
    LN_SINGLE_MIXED = "LN_single_mixed"
    PURITY_GAUSS_JITTER = "purity_gauss_jitter"
    LN_GAUSS_JITTER = "LN_gauss_jitter"
    E_VAC1 = "E_vac1"
    LN_VAC1 = "LN_vac1"
    PUR_VAC1_MIXED = "Pur_vac1_mixed"
    LN_VAC1_MIXED = "LN_vac1_mixed"
    E_PAIR = "E_pair"
    LN_PAIR = "LN_pair"
    E_OUT_PAIR = "E_out_pair"
    LN_OUT_PAIR = "LN_out_pair"
    E_VAC2_IN = "E_vac2_in"
    LN_VAC2_IN = "LN_vac2_in"
    E_VAC2_OUT = "E_vac2_out"
    LN_VAC2_OUT = "LN_vac2_out"
    E_DIFF_VAC2 = "E_diff_vac2"
    LN_DIFF_VAC2 = "LN_diff_vac2"
    LN_FILTER_PAPER = "LN_filter_paper"
    LN_FILTER_DIRECT = "LN_filter_direct"


def _xlog2x(x):
    return -float(np.sum(scipy.special.entr(np.clip(x, 0.0, None)))) / np.log(2.0)


def _check_probability(p, name="p"):
    if not 0.0 <= p <= 1.0:
        msg = f"{name} must lie in [0, 1], got {p}"
        log.error(msg)
        raise InvalidInput(msg)


def _check_lambdas(lambdas):
    lam = np.asarray(lambdas, dtype=float)
    if lam.ndim != 1 or lam.size == 0 or np.any(lam < 0) or abs(lam.sum() - 1.0) > 1e-10:
        msg = "Schmidt coefficients must be a non-empty list of probabilities summing to 1"
        log.error(msg)
        raise InvalidInput(msg)
    return lam


def ln_single_mixed(purity):
    """
    Logarithmic negativity of a split mixed single photon, ``log₂(1 + √Tr ρ²)``.

    purity
        Purity of the input, in ``(0, 1]``.
    """
    if not 0.0 < purity <= 1.0:
        msg = f"Purity must lie in (0, 1], got {purity}"
        log.error(msg)
        raise InvalidInput(msg)
    return float(np.log2(1.0 + np.sqrt(purity)))


def purity_gauss_jitter(sigma, sigma_tau):
    """
    Purity ``(1 + 4σ²στ²)^(−1/2)`` of a Gaussian packet under Gaussian jitter.
    """
    if sigma < 0 or sigma_tau < 0:
        msg = f"Widths must be >= 0, got σ = {sigma}, στ = {sigma_tau}"
        log.error(msg)
        raise InvalidInput(msg)
    return float((1.0 + 4.0 * sigma**2 * sigma_tau**2) ** -0.5)


def ln_gauss_jitter(sigma, sigma_tau):
    return ln_single_mixed(purity_gauss_jitter(sigma, sigma_tau))


def ln_vac1(p):
    """
    ``log₂(1 + p)`` for ``√(1−p)|00⟩ + √(p/2)(|10⟩ + |01⟩)``.
    """
    _check_probability(p)
    return float(np.log2(1.0 + p))


def e_vac1(p):
    """
    Entropy of entanglement of the split single photon with vacuum,
    ``1 − ½[(1+s)log₂(1+s) + (1−s)log₂(1−s)]`` with ``s = √(1−p²)``.
    """
    _check_probability(p)
    s = np.sqrt(1.0 - p**2)
    return float(1.0 - 0.5 * (_xlog2x(1.0 + s) + _xlog2x(1.0 - s)))


def pur_vac1_mixed(p, kernel_purity):
    """
    Purity ``(1−p)² + p² Σλ²`` of a mixed single photon with vacuum.
    """
    _check_probability(p)
    _check_probability(kernel_purity, "kernel purity")
    return float((1.0 - p) ** 2 + p**2 * kernel_purity)


def ln_vac1_mixed(p, kernel_purity):
    """
    ``log₂(p + √Pur)`` with ``Pur`` from :func:`pur_vac1_mixed`.

    kernel_purity
        ``Σλ²`` of the single-photon input without the vacuum.
    """
    return float(np.log2(p + np.sqrt(pur_vac1_mixed(p, kernel_purity))))


def pair_measures(lambdas):
    """
    ``(E, E_N)`` of a pure pair with Schmidt coefficients ``λ``.
    """
    lam = _check_lambdas(lambdas)
    return -_xlog2x(lam), float(2.0 * np.log2(np.sum(np.sqrt(lam))))


def pair_out_relations(e_in, ln_in):
    """
    Entanglement after splitting a pure pair, ``E_out = 2 + E_in/2`` and
    ``E_N,out = 2 log₂(1 + 2^(E_N,in/2))``.
    """
    return 2.0 + e_in / 2.0, float(2.0 * np.log2(1.0 + 2.0 ** (ln_in / 2.0)))


def vac2_measures(p, lambdas):
    """
    Closed forms for a pair with vacuum, ``√(1−p)|vac⟩ + √p Σ√λ_k h_k† v_k†|vac⟩``.

    Returns ``(E_in, LN_in, E_out, LN_out, E_diff, LN_diff)`` where
    ``E_diff = E_out − E_in/2`` and ``LN_diff = 2^(LN_out/2) − 2^(LN_in/2)``.
    """
    _check_probability(p)
    lam = _check_lambdas(lambdas)
    root_sum = float(np.sum(np.sqrt(lam)))
    entropy = -_xlog2x(lam)
    e_in = -_xlog2x(1.0 - p) - _xlog2x(p) + p * entropy
    ln_in = 2.0 * np.log2(np.sqrt(1.0 - p) + np.sqrt(p) * root_sum)
    upper = (1.0 - p / 2.0 + np.sqrt(1.0 - p)) / 2.0
    lower = (1.0 - p / 2.0 - np.sqrt(1.0 - p)) / 2.0
    e_out = -_xlog2x(upper) - _xlog2x(lower) + p - _xlog2x(p) / 2.0 + p / 2.0 * entropy
    ln_out = 2.0 * np.log2(1.0 + np.sqrt(p) * root_sum)
    e_diff = e_out - e_in / 2.0
    ln_diff = 1.0 - np.sqrt(1.0 - p)
    return tuple(float(x) for x in (e_in, ln_in, e_out, ln_out, e_diff, ln_diff))


def filter_average_paper(p, lambdas):
    """
    Closed form commonly quoted for the parity-filtered average,
    ``p + p log₂Σ√λ − (1−p/2) log₂(1−p/2)``.

    .. note::
        Disagrees with :func:`filter_average_direct` by ``p/2``.
    """
    _check_probability(p)
    lam = _check_lambdas(lambdas)
    return float(p + p * np.log2(np.sum(np.sqrt(lam))) - _xlog2x(1.0 - p / 2.0))


def filter_average_direct(p, lambdas):
    """
    Parity-filtered average from the branch states,
    ``(1−p/2)(−log₂(1−p/2)) + (p/2)(1 + 2 log₂Σ√λ)``.
    """
    _check_probability(p)
    lam = _check_lambdas(lambdas)
    even = -(1.0 - p / 2.0) * np.log2(1.0 - p / 2.0)
    odd = p / 2.0 * (1.0 + 2.0 * np.log2(np.sum(np.sqrt(lam))))
    return float(even + odd)


def _vac2_component(index):
    return lambda p, lambdas: vac2_measures(p, lambdas)[index]


FORMULAS = {
    FormulaId.LN_SINGLE_MIXED: ln_single_mixed,
    FormulaId.PURITY_GAUSS_JITTER: purity_gauss_jitter,
    FormulaId.LN_GAUSS_JITTER: ln_gauss_jitter,
    FormulaId.E_VAC1: e_vac1,
    FormulaId.LN_VAC1: ln_vac1,
    FormulaId.PUR_VAC1_MIXED: pur_vac1_mixed,
    FormulaId.LN_VAC1_MIXED: ln_vac1_mixed,
    FormulaId.E_PAIR: lambda lambdas: pair_measures(lambdas)[0],
    FormulaId.LN_PAIR: lambda lambdas: pair_measures(lambdas)[1],
    FormulaId.E_OUT_PAIR: lambda e_in: pair_out_relations(e_in, 0.0)[0],
    FormulaId.LN_OUT_PAIR: lambda ln_in: pair_out_relations(0.0, ln_in)[1],
    FormulaId.E_VAC2_IN: _vac2_component(0),
    FormulaId.LN_VAC2_IN: _vac2_component(1),
    FormulaId.E_VAC2_OUT: _vac2_component(2),
    FormulaId.LN_VAC2_OUT: _vac2_component(3),
    FormulaId.E_DIFF_VAC2: _vac2_component(4),
    FormulaId.LN_DIFF_VAC2: _vac2_component(5),
    FormulaId.LN_FILTER_PAPER: filter_average_paper,
    FormulaId.LN_FILTER_DIRECT: filter_average_direct,
}


def formula(formula_id):
    """
    Callable for a :class:`FormulaId` (or its string value).
    """
    try:
        return FORMULAS[FormulaId(formula_id)]
    except ValueError:
        msg = f"Unknown formula {formula_id!r}"
        log.error(msg)
        raise InvalidInput(msg)  # pylint: disable=raise-missing-from
