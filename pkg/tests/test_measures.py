import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gqc.bounds import closed_form_w
from gqc.errors import DomainError
from gqc.measures import (
    MeasureReport,
    all_measures,
    concurrence_pure,
    f_q,
    geometric_mean,
    ggm_pure,
    gmc_pure,
    gqc_pure,
    max_fq,
    one_minus_power_sum,
    q_concurrence_pure,
    qconcurrence_report,
)
from gqc.partitions import Bipartition, enumerate_bipartitions
from gqc.states import basis_state, ghz_state, haar_random_pure, paired_tensor, w_state
from gqc.tensor import StateVector, partial_trace

BELL = StateVector(np.array([1, 0, 0, 1]) / np.sqrt(2), (2, 2))
CUT01 = Bipartition((0,), 2)


def naive_gqc(psi, q):
    """Direct product of per-cut values from full reduced matrices, no log space."""
    vals = []
    for cut in enumerate_bipartitions(psi.n):
        r = partial_trace(psi, cut.block_s).entries
        vals.append(1 - np.sum(np.linalg.eigvalsh(r).clip(0) ** q))
    return float(np.prod(vals) ** (1 / len(vals)))


class TestFq:
    def test_pure_is_zero(self):
        assert f_q(BELL.projector(), 3) == pytest.approx(0.0, abs=1e-14)

    @pytest.mark.parametrize("d,q", [(2, 2), (3, 2.5), (4, 5)])
    def test_maximally_mixed(self, d, q):
        assert f_q(np.eye(d) / d, q) == pytest.approx((d ** (q - 1) - 1) / d ** (q - 1))

    def test_diag(self):
        assert f_q(np.diag([2 / 3, 1 / 3]), 2) == pytest.approx(4 / 9)

    @pytest.mark.parametrize("q", [1.0, 1.99, -3])
    def test_q_domain(self, q):
        with pytest.raises(DomainError):
            f_q(np.eye(2) / 2, q)

    def test_stable_near_product(self):
        eps = 1e-13
        lam = np.array([1 - eps, eps])
        assert one_minus_power_sum(lam, 2) == pytest.approx(2 * eps, rel=1e-6)

    @given(st.lists(st.floats(0.0, 1.0), min_size=2, max_size=6), st.floats(2.0, 12.0))
    @settings(max_examples=60, deadline=None)
    def test_stable_formula_matches_naive(self, raw, q):
        lam = np.sort(np.array(raw) + 1e-3)[::-1]
        lam = lam / lam.sum()
        assert one_minus_power_sum(lam, q) == pytest.approx(1 - np.sum(lam**q), abs=1e-12)


class TestConcurrence:
    def test_bell(self):
        assert q_concurrence_pure(BELL, CUT01, 2) == pytest.approx(0.5)
        assert concurrence_pure(BELL, CUT01) == pytest.approx(1.0)

    @pytest.mark.parametrize("cut", enumerate_bipartitions(3), ids=str)
    def test_w3(self, cut):
        assert q_concurrence_pure(w_state(3), cut, 2) == pytest.approx(4 / 9, abs=1e-12)
        assert concurrence_pure(w_state(3), cut) == pytest.approx(np.sqrt(8 / 9))

    @pytest.mark.parametrize("n", [3, 4, 6])
    @pytest.mark.parametrize("q", [2, 3.5, 9])
    def test_ghz(self, n, q):
        for cut in enumerate_bipartitions(n):
            assert q_concurrence_pure(ghz_state(n), cut, q) == pytest.approx(1 - 2 ** (1 - q), abs=1e-12)

    def test_product_exact_zero(self):
        psi = basis_state("01")
        assert q_concurrence_pure(psi, CUT01, 2) == 0.0
        assert concurrence_pure(psi, CUT01) == 0.0

    def test_symmetric_in_sides(self):
        psi = haar_random_pure((2, 3, 2), 8)
        for cut in enumerate_bipartitions(3):
            a = f_q(partial_trace(psi, cut.block_s), 3)
            b = f_q(partial_trace(psi, cut.complement), 3)
            assert a == pytest.approx(b, abs=1e-10)
            assert q_concurrence_pure(psi, cut, 3) == pytest.approx(a, abs=1e-10)


class TestAggregates:
    def test_ghz3(self):
        assert gqc_pure(ghz_state(3), 2).aggregate == pytest.approx(0.5)
        assert gmc_pure(ghz_state(3)).aggregate == pytest.approx(1.0)
        assert ggm_pure(ghz_state(3)).aggregate == pytest.approx(0.5)

    def test_w3(self):
        assert gqc_pure(w_state(3), 2).aggregate == pytest.approx(4 / 9)
        assert gmc_pure(w_state(3)).aggregate == pytest.approx(np.sqrt(8) / 3)
        assert ggm_pure(w_state(3)).aggregate == pytest.approx(1 / 3)

    def test_w4_q3(self):
        expected = ((9 / 16) ** 4 * (3 / 4) ** 3) ** (1 / 7)
        assert gqc_pure(w_state(4), 3).aggregate == pytest.approx(expected, abs=1e-10)
        assert naive_gqc(w_state(4), 3) == pytest.approx(expected, abs=1e-10)

    @pytest.mark.parametrize("seed", range(5))
    def test_against_naive_oracle(self, seed):
        psi = haar_random_pure((2, 2, 2, 2), seed)
        assert gqc_pure(psi, 2.5).aggregate == pytest.approx(naive_gqc(psi, 2.5), abs=1e-10)

    def test_product_all_zero(self):
        psi = basis_state("000")
        assert all_measures(psi, 2) == {"GqC": 0.0, "GMC": 0.0, "GGM": 0.0}

    def test_biseparable(self):
        psi = paired_tensor(ghz_state(3), ghz_state(3))
        assert gqc_pure(psi, 2).aggregate > 0
        bisep = StateVector(np.kron(BELL.amplitudes, [1, 0]), (2, 2, 2))
        assert gqc_pure(bisep, 2).aggregate == 0.0
        assert gmc_pure(bisep).aggregate == 0.0
        assert ggm_pure(bisep).aggregate == 0.0

    def test_all_measures_consistent(self):
        psi = haar_random_pure((2, 2, 2), 1)
        m = all_measures(psi, 3)
        assert m["GqC"] == pytest.approx(gqc_pure(psi, 3).aggregate)
        assert m["GMC"] == pytest.approx(gmc_pure(psi).aggregate)
        assert m["GGM"] == pytest.approx(ggm_pure(psi).aggregate)

    def test_range(self):
        psi = haar_random_pure((2, 3, 2), 2)
        rep = gqc_pure(psi, 4)
        for cut, v in rep.per_cut.items():
            assert 0 <= v <= max_fq(min(cut.block_dims(psi.local_dims)), 4) + 1e-12

    def test_argmin(self):
        rep = qconcurrence_report(w_state(4), 2)
        assert rep.argmin == Bipartition((0,), 4)
        assert rep.aggregate == pytest.approx(closed_form_w(4, 1, 2))


@pytest.mark.parametrize("d,q,expected", [(2, 2, 0.5), (2, 3, 0.75), (4, 2, 0.75)])
def test_max_fq(d, q, expected):
    assert max_fq(d, q) == pytest.approx(expected)


def test_geometric_mean():
    assert geometric_mean([0.25, 1.0]) == pytest.approx(0.5)
    assert geometric_mean([0.3, 0.0]) == 0.0
    assert geometric_mean([1e-300] * 4) == pytest.approx(1e-300)
    with pytest.raises(DomainError):
        geometric_mean([])


def test_report_serialization():
    rep = gmc_pure(w_state(3))
    js = rep.to_json()
    assert js["measure"] == "GMC" and js["argmin"] == "0|1,2"
    csv = rep.to_csv().splitlines()
    assert csv[0] == "measure,q,cut,value,aggregate"
    assert len(csv) == 4
    assert isinstance(rep, MeasureReport)


class TestTensorSubadditivity:
    @pytest.mark.parametrize("seed", range(10))
    def test_cq_under_tensoring(self, seed):
        a, b = haar_random_pure((2, 2), seed), haar_random_pure((2, 2), seed + 100)
        for q in (2, 3.5):
            lhs = q_concurrence_pure(paired_tensor(a, b), CUT01, q)
            assert lhs <= q_concurrence_pure(a, CUT01, q) + q_concurrence_pure(b, CUT01, q) + 1e-9

    @pytest.mark.parametrize("seed", range(10))
    def test_gqc_random_pairs(self, seed):
        a, b = haar_random_pure((2, 2, 2), seed), haar_random_pure((2, 2, 2), seed + 100)
        for q in (2, 3.5):
            lhs = gqc_pure(paired_tensor(a, b), q).aggregate
            assert lhs <= gqc_pure(a, q).aggregate + gqc_pure(b, q).aggregate + 1e-9

    def test_gqc_fails_for_complementary_biseparable_pair(self):
        # each factor is product across a different cut, so both have GqC 0,
        # while the paired product is entangled across every cut
        bell = BELL.amplitudes
        a = StateVector(np.kron([1, 0], bell), (2, 2, 2))
        b = StateVector(np.kron(bell, [1, 0]), (2, 2, 2))
        assert gqc_pure(a, 2).aggregate == 0.0 and gqc_pure(b, 2).aggregate == 0.0
        rep = gqc_pure(paired_tensor(a, b), 2)
        np.testing.assert_allclose(sorted(rep.per_cut.values()), [0.5, 0.5, 0.75], atol=1e-12)
        assert rep.aggregate > 0.5
