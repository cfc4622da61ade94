import numpy as np
import pytest

from oscbasis import Frequency
from oscbasis.frequency import TWO_PI
from oscbasis.oracle import (
    OracleConfig,
    composite_rule,
    cond_estimate,
    hilbert_limit,
    integrate,
    monomial_gram,
    oracle_entry,
    oracle_tables,
)


def test_config_validation_and_panel_count():
    cfg = OracleConfig()
    assert cfg.panels_per_period == 4
    assert cfg.points_per_panel == 24
    assert cfg.min_panels == 8
    assert cfg.panel_count(TWO_PI * 20) == 160
    assert cfg.panel_count(0.5) == 8
    with pytest.raises(ValueError):
        OracleConfig(panels_per_period=0)
    with pytest.raises(ValueError):
        OracleConfig(points_per_panel=-1)


def test_composite_rule_covers_interval():
    freq = Frequency.exact(20)
    rule = composite_rule(freq.omega)
    assert len(rule) == 160 * 24
    assert np.all(np.diff(rule.nodes) > 0.0)
    assert rule.nodes[0] > -1.0 and rule.nodes[-1] < 1.0
    assert np.sum(rule.weights) == pytest.approx(2.0, rel=1e-14)


def test_integrate_constant():
    freq = Frequency.exact(20)
    assert integrate(lambda x: np.ones_like(x), freq) == pytest.approx(2.0, rel=1e-14)


def test_integrate_squared_cosine():
    freq = Frequency.exact(20)
    val = integrate(lambda x: np.cos(freq.omega * x) ** 2, freq)
    assert val == pytest.approx(1.0, abs=1e-13)


def test_integrate_resolves_double_frequency():
    freq = Frequency.exact(20)
    val = integrate(lambda x: x * np.sin(2.0 * freq.omega * x), freq)
    assert val == pytest.approx(-1.0 / freq.omega, rel=1e-12)


def test_integrate_rejects_non_finite_samples():
    freq = Frequency.exact(2)
    with pytest.raises(ValueError, match="non-finite"):
        integrate(lambda x: np.where(np.abs(x) < 0.5, np.nan, 1.0), freq)


def test_oracle_entry_known_values():
    freq = Frequency.exact(10)
    assert oracle_entry("m6", 1, 0, freq) == pytest.approx(-1.0 / freq.omega, rel=1e-12)
    assert oracle_entry("m3", 0, 0, freq) == pytest.approx(1.0, rel=1e-12)
    assert oracle_entry("m5", 0, 1, freq) == pytest.approx(
        oracle_entry("m5", 1, 0, freq), abs=1e-15
    )


def test_oracle_entry_rejects_bad_arguments():
    freq = Frequency.exact(2)
    with pytest.raises(ValueError):
        oracle_entry("m1", 0, 0, freq)
    with pytest.raises(ValueError):
        oracle_entry("m5", -1, 0, freq)


def test_oracle_tables_consistent_under_refinement():
    # doubling the points per panel moves nothing at the tolerance of interest
    freq = Frequency.exact(50)
    coarse = oracle_tables(freq, 16)
    fine = oracle_tables(freq, 16, OracleConfig(points_per_panel=48))
    for key in ("m2", "m3", "m4", "m5", "m6"):
        assert np.max(np.abs(coarse[key] - fine[key])) <= 1e-12


def test_monomial_gram_low_order_entries():
    freq = Frequency.exact(20)
    H = monomial_gram(freq, 3)
    assert H.shape == (4, 4)
    assert np.array_equal(H, H.T)
    assert H[0, 0] == pytest.approx(1.0, abs=1e-13)
    # odd total power pairs an even with an odd function
    assert H[0, 1] == pytest.approx(0.0, abs=1e-14)
    with pytest.raises(ValueError):
        monomial_gram(freq, -1)


def test_hilbert_limit_entries():
    L = hilbert_limit(2)
    assert L.shape == (3, 3)
    assert L[0, 0] == 1.0
    assert L[0, 1] == 0.0
    assert L[1, 1] == 1.0 / 3.0
    for i in range(3):
        for j in range(3):
            assert L[i, j] == (1.0 + (-1.0) ** (i + j)) / (2.0 * (i + j + 1.0))


def test_monomial_gram_approaches_hilbert_limit():
    limit = hilbert_limit(5)
    devs = []
    for k in (10, 100, 1000):
        H = monomial_gram(Frequency.exact(k), 5)
        devs.append(np.max(np.abs(H - limit)))
    assert devs[0] >= devs[1] >= devs[2]
    assert devs[-1] <= 1e-2


def test_cond_estimate_simple_matrices():
    assert cond_estimate(np.eye(5)) == pytest.approx(1.0, rel=1e-10)
    assert cond_estimate(np.diag([1.0, 1e-8])) == pytest.approx(1e8, rel=1e-6)
    assert cond_estimate(np.array([[3.0]])) == 1.0
    assert cond_estimate(np.array([[0.0]])) == np.inf


def test_cond_estimate_tracks_dense_spectra():
    # within a factor of 2 of the factored reference on small dense instances
    rng = np.random.default_rng(7)
    for n in (3, 6, 10):
        A = rng.standard_normal((n, n))
        S = A @ A.T + 1e-6 * np.eye(n)
        ref = np.linalg.cond(S)
        est = cond_estimate(S)
        assert ref / 2.0 <= est <= ref * 2.0
    L = hilbert_limit(10)
    assert cond_estimate(L) == pytest.approx(np.linalg.cond(L), rel=1e-6)


def test_cond_estimate_rejects_bad_input():
    with pytest.raises(ValueError):
        cond_estimate(np.array([[1.0, 2.0], [3.0, 4.0]]))
    with pytest.raises(ValueError):
        cond_estimate(np.ones((2, 3)))


def test_legtrig_units_stay_well_conditioned():
    # normalized single-mode rows at a frequency well above the degree
    from oscbasis import build_tables
    from oscbasis.pairing import LegTrigCoeffs, gram_matrix

    freq = Frequency.exact(50)
    tables = build_tables(freq, 10)
    rows = []
    for j in range(11):
        a = np.zeros(11)
        b = np.zeros(11)
        a[j] = 1.0 / np.sqrt(tables.m3[j, j])
        rows.append(LegTrigCoeffs(a=a, b=np.zeros(11)))
        b[j] = 1.0 / np.sqrt(tables.m4[j, j])
        rows.append(LegTrigCoeffs(a=np.zeros(11), b=b))
    G = gram_matrix(rows, tables)
    assert cond_estimate(G) <= 10.0
