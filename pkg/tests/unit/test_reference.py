import numpy as np
import pytest
from photonent import reference
from photonent.exceptions import InvalidInput
from photonent.reference import FormulaId

LAMBDAS = [0.6, 0.3, 0.1]


def test_ln_single_mixed_endpoints():
    assert reference.ln_single_mixed(1.0) == pytest.approx(1.0)
    assert reference.ln_single_mixed(0.5) == pytest.approx(np.log2(1.0 + np.sqrt(0.5)))
    with pytest.raises(InvalidInput):
        reference.ln_single_mixed(0.0)


def test_gaussian_jitter():
    assert reference.purity_gauss_jitter(1.0, 0.0) == 1.0
    assert reference.purity_gauss_jitter(1.0, 1.0) == pytest.approx(5**-0.5)
    assert reference.ln_gauss_jitter(0.5, 2.0) == pytest.approx(np.log2(1.0 + 5**-0.25))
    with pytest.raises(InvalidInput):
        reference.purity_gauss_jitter(-1.0, 1.0)


def test_single_photon_with_vacuum():
    assert reference.ln_vac1(0.0) == 0.0
    assert reference.ln_vac1(1.0) == pytest.approx(1.0)
    assert reference.e_vac1(0.0) == pytest.approx(0.0, abs=1e-15)
    assert reference.e_vac1(1.0) == pytest.approx(1.0)
    assert reference.pur_vac1_mixed(0.5, 1.0) == pytest.approx(0.5)
    assert reference.ln_vac1_mixed(1.0, 1.0) == pytest.approx(1.0)
    assert reference.ln_vac1_mixed(1.0, 0.5) == pytest.approx(reference.ln_single_mixed(0.5))
    assert reference.ln_vac1_mixed(0.0, 0.3) == 0.0
    with pytest.raises(InvalidInput):
        reference.ln_vac1(1.5)


def test_pair_measures():
    e_in, ln_in = reference.pair_measures([0.5, 0.5])
    assert e_in == pytest.approx(1.0)
    assert ln_in == pytest.approx(1.0)
    assert reference.pair_out_relations(e_in, ln_in) == pytest.approx(
        (2.5, 2.0 * np.log2(1.0 + np.sqrt(2.0)))
    )
    with pytest.raises(InvalidInput):
        reference.pair_measures([0.5, 0.6])


def test_vac2_limits():
    e_in, ln_in = reference.pair_measures(LAMBDAS)
    full = reference.vac2_measures(1.0, LAMBDAS)
    assert full[0] == pytest.approx(e_in)
    assert full[1] == pytest.approx(ln_in)
    assert full[2:4] == pytest.approx(reference.pair_out_relations(e_in, ln_in))
    assert full[4] == pytest.approx(2.0)
    assert full[5] == pytest.approx(1.0)
    assert reference.vac2_measures(0.0, LAMBDAS) == pytest.approx((0.0,) * 6, abs=1e-15)


@pytest.mark.parametrize("p", [0.1, 0.5, 0.9])
def test_vac2_differences(p):
    e_in, ln_in, e_out, ln_out, e_diff, ln_diff = reference.vac2_measures(p, LAMBDAS)
    assert e_diff == pytest.approx(e_out - e_in / 2.0)
    assert ln_diff == pytest.approx(2.0 ** (ln_out / 2.0) - 2.0 ** (ln_in / 2.0))


def test_filter_average_disagreement():
    lambdas = [0.5, 0.5]
    direct = reference.filter_average_direct(1.0, lambdas)
    printed = reference.filter_average_paper(1.0, lambdas)
    assert direct == pytest.approx(1.5)
    assert printed == pytest.approx(2.0)
    for p in (0.0, 0.3, 0.8):
        gap = reference.filter_average_paper(p, LAMBDAS) - reference.filter_average_direct(
            p, LAMBDAS
        )
        assert gap == pytest.approx(p / 2.0)


def test_formula_lookup():
    assert set(reference.FORMULAS) == set(FormulaId)
    assert reference.formula("LN_vac1")(1.0) == pytest.approx(1.0)
    assert reference.formula(FormulaId.LN_OUT_PAIR)(0.0) == pytest.approx(2.0)
    assert reference.formula(FormulaId.E_DIFF_VAC2)(1.0, LAMBDAS) == pytest.approx(2.0)
    with pytest.raises(InvalidInput):
        reference.formula("LN_three_photons")
