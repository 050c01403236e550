import numpy as np
import pytest

import alomax


def channel(alpha=2.0, lam=1.25, mean_snr=1.0):
    return alomax.Channel(alomax.AlphaLomaxParams(alpha, lam), mean_snr)


def test_invalid_shape_pair_raises():
    with pytest.raises(ValueError):
        alomax.AlphaLomaxParams(0.5, 1.0)


def test_pdf_cdf_quantile_consistency():
    ch = channel()
    g = np.linspace(1e-9, 40.0, 400001)
    mass = np.trapezoid(alomax.snr_pdf(ch, g), g)
    assert mass == pytest.approx(1.0, abs=2e-3)
    u = np.linspace(0.01, 0.99, 99)
    q = alomax.snr_quantile(ch, u)
    assert np.all(np.abs(alomax.snr_cdf(ch, q) - u) < 1e-12)


def test_moment_matches_mean_snr():
    ch = channel(1.75, 1.25, 5.0)
    assert alomax.snr_moment(ch, 1.0) == pytest.approx(5.0, rel=1e-12)


def test_outage_closed_form_value():
    ch = channel(1.0, 2.0, 10.0)
    assert alomax.outage_probability(ch, 1.0) == pytest.approx(
        0.17355371900826446, abs=1e-14
    )


def test_metric_closed_forms():
    ber = alomax.ber_exact(channel(1.75, 1.25, 10.0),
                           alomax.ModulationScheme.bpsk())
    assert ber.value == pytest.approx(0.0099521495951244083, rel=1e-8)

    cap = alomax.capacity_exact(channel(2.0, 1.5, 10.0))
    assert cap.value == pytest.approx(3.1177667738724052, rel=1e-8)

    sp = alomax.ShortPacketConfig(100, 50)
    bler = alomax.bler_exact(channel(1.75, 1.25, 10 ** 0.5), sp)
    assert bler.value == pytest.approx(0.059469866981778887, rel=1e-7)


def test_sampling_and_monte_carlo():
    ch = channel(2.0, 1.25, 1.0)
    values = alomax.sample_inverse(ch, 200000, seed=7)
    assert values.shape == (200000,)
    assert values.min() > 0.0
    assert values.mean() == pytest.approx(1.0, abs=0.02)

    cfg = alomax.MetricConfig()
    cfg.gamma0 = 1.0
    mc = alomax.McConfig()
    mc.seed = 3
    mc.n_samples = 50000
    est = alomax.estimate_metric(alomax.Metric.outage, ch, cfg, mc)
    exact = alomax.outage_probability(ch, 1.0)
    assert est.ci95_low < exact < est.ci95_high


def test_fit_recovers_shape():
    ch = channel(2.0, 1.25, 1.0)
    hi = float(alomax.snr_quantile(ch, 0.995))
    centers = (np.arange(60) + 0.5) * hi / 60
    data = alomax.EmpiricalPdf()
    data.centers = [float(c) for c in centers]
    data.densities = [float(alomax.snr_pdf(ch, c)) for c in centers]
    data.widths = [hi / 60] * 60
    fit = alomax.fit_rad(data, alomax.FitDomain.snr)
    assert fit.converged
    assert fit.alpha == pytest.approx(2.0, rel=0.02)
    assert fit.lambda_ == pytest.approx(1.25, rel=0.05)
