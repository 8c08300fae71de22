import json
import math

import numpy as np
import pytest

from voldist.distributions import (
    DENSITY_CAP,
    TABLE_FAMILIES,
    DistributionSpec,
    cdf,
    exponents,
    log_pdf,
    pdf,
    power_transform,
    sample,
)
from voldist.errors import DomainError

from reference_params import ALL_GROUPS, MONTHLY_RV2_FULL, MONTHLY_RV_FULL

# one representative parameter row per family, used by the generic checks
REPRESENTATIVE = {
    "Ga": (1.1391, 364.0363),
    "GGa": (5.0882, 11.1902, 0.4812),
    "IGa": (1.7394, 319.7392),
    "GIGa": (2.5562, 625.4491, 0.8023),
    "BP": (17.2160, 1.9116, 21.9595),
    "GB2": (15.9183, 1.8735, 1.0150, 23.7045),
    "N": (63.2773, 131.8926),
    "GST": (73.8714, 92.4056, 1.3310),
    "GCHU": (1.7775, 0.7367, 71.2039, 72.3703),
    "S": (1.1842, -0.1503, 86.5044, 77.5295),
}

SCALES = {
    "Ga": 364.0, "GGa": 11.19, "IGa": 319.7, "GIGa": 625.4, "BP": 21.96,
    "GB2": 23.70, "N": 131.9, "GST": 92.4, "GCHU": 71.2, "S": 86.5,
}

LOCS = {"N": 63.2773, "GST": 73.8714, "GCHU": 72.3703, "S": 77.5295}


class TestPdfValues:
    def test_beta_prime_unit(self):
        assert pdf(DistributionSpec("BP", (1, 1, 1)), 1.0) == pytest.approx(0.25, rel=1e-12)

    def test_gamma_exponential(self):
        assert pdf(DistributionSpec("Ga", (1, 1)), 0.5) == pytest.approx(
            math.exp(-0.5), rel=1e-12)

    def test_cauchy_center(self):
        assert pdf(DistributionSpec("S", (1, 0, 1, 0)), 0.0) == pytest.approx(
            1.0 / math.pi, rel=1e-12)

    def test_tricomi_center_closed_form(self):
        spec = DistributionSpec("GCHU", (1.7775, 0.7367, 71.2039, 72.3703))
        # center value via the z -> 0 limit of U (extended-precision oracle)
        assert pdf(spec, 72.3703) == pytest.approx(0.0039884754854699903, rel=1e-10)
        # and via quadrature just off the center
        assert pdf(spec, 72.3703 + 71.2039 * math.sqrt(2e-12)) == pytest.approx(
            0.0039884754854699903, rel=1e-5)

    def test_outside_support_is_zero(self):
        for fam in ("Ga", "GGa", "IGa", "GIGa", "BP", "GB2"):
            spec = DistributionSpec(fam, REPRESENTATIVE[fam])
            assert pdf(spec, -1.0) == 0.0
            assert log_pdf(spec, -1.0) == -math.inf

    def test_boundary_divergence_capped(self):
        # front exponent alpha*gamma - 1 < 0: density diverges at 0
        spec = DistributionSpec("GGa", (0.5, 1.0, 1.0))
        assert pdf(spec, 0.0) == DENSITY_CAP
        assert log_pdf(spec, 0.0) == math.inf
        # front exponent > 0: density vanishes at 0
        spec2 = DistributionSpec("GGa", (5.0882, 11.1902, 0.4812))
        assert pdf(spec2, 0.0) == 0.0


class TestLogPdf:
    def test_gamma_tail(self):
        assert log_pdf(DistributionSpec("Ga", (1, 1)), 50.0) == pytest.approx(-50.0, rel=1e-12)

    def test_gb2_at_scale(self):
        beta = 23.7045
        spec = DistributionSpec("GB2", (1, 1, 1, beta))
        assert log_pdf(spec, beta) == pytest.approx(math.log(1.0 / (4.0 * beta)), rel=1e-12)

    def test_iga_deep_tail_extended_precision(self):
        spec = DistributionSpec("IGa", (1.7394, 319.7392))
        assert log_pdf(spec, 1e6) == pytest.approx(-27.727548720769189, abs=1e-9)

    def test_log_space_no_underflow(self):
        # far enough out that the density itself underflows double precision
        spec = DistributionSpec("GB2", (15.9183, 1.8735, 1.0150, 23.7045))
        lp = log_pdf(spec, 1e120)
        assert np.isfinite(lp)
        direct = -(1.0150 * 1.8735 + 1.0) * math.log(1e120)
        assert lp == pytest.approx(direct, rel=0.02)


class TestCdf:
    def test_elementary_values(self):
        assert cdf(DistributionSpec("BP", (1, 1, 1)), 1.0) == pytest.approx(0.5, rel=1e-12)
        assert cdf(DistributionSpec("IGa", (1, 1)), 1.0) == pytest.approx(
            math.exp(-1.0), rel=1e-12)
        assert cdf(DistributionSpec("S", (2, 0, 1, 0)), 0.0) == pytest.approx(0.5, abs=1e-12)

    @pytest.mark.parametrize("family", sorted(REPRESENTATIVE))
    def test_monotone_and_bounded(self, family):
        spec = DistributionSpec(family, REPRESENTATIVE[family])
        loc = LOCS.get(family, 0.0)
        s = SCALES[family]
        x = loc + s * np.linspace(-6 if family in LOCS else 0.01, 8, 80)
        f = cdf(spec, x)
        assert np.all(np.diff(f) >= -1e-12)
        assert np.all((f >= 0) & (f <= 1))

    @pytest.mark.parametrize("family", sorted(REPRESENTATIVE))
    def test_derivative_matches_pdf(self, family):
        spec = DistributionSpec(family, REPRESENTATIVE[family])
        # probe where the distribution actually lives
        draws = sample(spec, 20_000, seed=4)
        pts = np.quantile(draws, np.linspace(0.05, 0.95, 20))
        h = 2e-5 * (SCALES[family] + np.abs(pts - LOCS.get(family, 0.0)))
        fd = (cdf(spec, pts + h) - cdf(spec, pts - h)) / (2.0 * h)
        dens = pdf(spec, pts)
        rel = np.abs(fd - dens) / np.maximum(np.abs(dens), 1e-300)
        assert np.max(rel) < 1e-5, f"{family}: worst rel {np.max(rel):.2e}"


class TestSampling:
    def test_gamma_mean(self):
        x = sample(DistributionSpec("Ga", (2, 3)), 10**6, seed=101)
        se = math.sqrt(2 * 9 / 1e6)
        assert abs(x.mean() - 6.0) < 3 * se

    def test_inverse_gamma_mean(self):
        x = sample(DistributionSpec("IGa", (3, 2)), 10**6, seed=102)
        se = math.sqrt(1.0 / 1e6)  # var = b^2/((a-1)^2 (a-2)) = 1
        assert abs(x.mean() - 1.0) < 3 * se

    def test_deterministic(self):
        spec = DistributionSpec("GB2", (2.0, 2.0, 1.0, 1.0))
        a = sample(spec, 1000, seed=7)
        b = sample(spec, 1000, seed=7)
        assert np.array_equal(a, b)

    @pytest.mark.parametrize("family", sorted(REPRESENTATIVE))
    def test_sampler_matches_cdf(self, family):
        spec = DistributionSpec(family, REPRESENTATIVE[family])
        n = 100_000 if family not in ("GCHU",) else 30_000
        x = np.sort(sample(spec, n, seed=12))
        f = cdf(spec, x)
        i = np.arange(1, n + 1)
        d = max(np.max(i / n - f), np.max(f - (i - 1) / n))
        assert d <= 1.36 / math.sqrt(n), f"{family}: KS {d:.5f}"


class TestExponents:
    def test_benchmark_rows(self):
        rep = exponents(DistributionSpec("GB2", (15.9183, 1.8735, 1.0150, 23.7045)))
        assert rep.front_exponent == pytest.approx(15.1570, abs=2e-4)
        assert rep.tail_exponent == pytest.approx(-2.9016, abs=2e-4)
        rep = exponents(DistributionSpec("IGa", (1.7394, 319.7392)))
        assert rep.front_exponent is None
        assert rep.tail_exponent == pytest.approx(-2.7394, abs=1e-12)

    def test_unit_beta_prime(self):
        rep = exponents(DistributionSpec("BP", (1, 1, 5)))
        assert rep.front_exponent == 0.0
        assert rep.tail_exponent == -2.0

    def test_table_entries_presence(self):
        present = {
            "S": (False, True), "GB2": (True, True), "BP": (True, True),
            "GIGa": (False, True), "IGa": (False, True),
            "GGa": (True, False), "Ga": (True, False),
        }
        for fam, (has_front, has_tail) in present.items():
            rep = exponents(DistributionSpec(fam, REPRESENTATIVE[fam]))
            assert (rep.front_exponent is not None) == has_front, fam
            assert (rep.tail_exponent is not None) == has_tail, fam

    def test_location_families_unsupported(self):
        for fam in ("N", "GST", "GCHU"):
            with pytest.raises(DomainError):
                exponents(DistributionSpec(fam, REPRESENTATIVE[fam]))


class TestTailLaw:
    @pytest.mark.parametrize("family", ["GB2", "BP", "GIGa", "IGa"])
    def test_log_log_slope(self, family):
        spec = DistributionSpec(family, REPRESENTATIVE[family])
        scale = spec.params[-1] if family in ("GB2", "BP") else spec.params[1]
        tail = exponents(spec).tail_exponent
        x1, x2 = 1e3 * scale, 1.3e3 * scale
        slope = (log_pdf(spec, x2) - log_pdf(spec, x1)) / (math.log(x2) - math.log(x1))
        assert slope == pytest.approx(tail, rel=0.01), family


class TestPowerTransform:
    def test_identity(self):
        spec = DistributionSpec("GB2", (15.9183, 1.8735, 1.0150, 23.7045))
        assert power_transform(spec, 1.0).params == spec.params

    def test_square_map_consistency(self):
        # fitted law of RV transformed by r=2 lands near the fitted law of RV^2
        rv_gb2 = dict((f, p) for f, p, _ in MONTHLY_RV_FULL)["GB2"]
        rv2_gb2 = dict((f, p) for f, p, _ in MONTHLY_RV2_FULL)["GB2"]
        got = power_transform(DistributionSpec("GB2", rv_gb2), 2.0).params
        for g, want in zip(got, rv2_gb2):
            assert g == pytest.approx(want, rel=0.05)

    def test_giga_roundtrip(self):
        spec = DistributionSpec("GIGa", (2.5562, 25.0090, 1.6047))
        back = power_transform(power_transform(spec, 2.0), 0.5)
        assert back.params == pytest.approx(spec.params, rel=1e-14)

    def test_unsupported_family(self):
        with pytest.raises(DomainError):
            power_transform(DistributionSpec("Ga", (2, 3)), 2.0)

    def test_sampled_law_matches_transform(self):
        spec = DistributionSpec("GB2", (15.8782, 1.8724, 2.0309, 4.8757))
        x = sample(spec, 100_000, seed=21)
        y = np.sort(x**2)
        target = power_transform(spec, 2.0)
        f = cdf(target, y)
        i = np.arange(1, y.size + 1)
        d = max(np.max(i / y.size - f), np.max(f - (i - 1) / y.size))
        assert d <= 1.36 / math.sqrt(y.size)


class TestStudentTLimit:
    def test_large_nu_is_normal(self):
        mu, sig = 1.5, 2.0
        gst = DistributionSpec("GST", (mu, sig, 1e6))
        x = mu + sig * np.linspace(-4, 4, 41)
        ref = np.exp(-((x - mu) / sig) ** 2 / 2) / (sig * math.sqrt(2 * math.pi))
        rel = np.abs(pdf(gst, x) - ref) / ref
        assert np.max(rel) < 1e-4


class TestSpecValidation:
    def test_bad_params(self):
        with pytest.raises(DomainError):
            DistributionSpec("Ga", (-1.0, 2.0))
        with pytest.raises(DomainError):
            DistributionSpec("S", (2.5, 0.0, 1.0, 0.0))
        with pytest.raises(DomainError):
            DistributionSpec("S", (1.5, -1.5, 1.0, 0.0))
        with pytest.raises(DomainError):
            DistributionSpec("GST", (0.0, 1.0, -2.0))
        with pytest.raises(DomainError):
            DistributionSpec("Ga", (1.0, 2.0, 3.0))
        with pytest.raises(DomainError):
            DistributionSpec("nope", (1.0,))

    def test_json_round_trip(self):
        for group in ALL_GROUPS.values():
            for fam, params, _ in group:
                spec = DistributionSpec(fam, params)
                payload = json.dumps(spec.to_dict())
                back = DistributionSpec.from_dict(json.loads(payload))
                assert back == spec


class TestNormalizationSpot:
    # full sweep over every benchmark row lives in the acceptance suite
    @pytest.mark.parametrize("family", ["Ga", "GB2", "GST"])
    def test_unit_mass(self, family):
        from scipy.integrate import quad
        spec = DistributionSpec(family, REPRESENTATIVE[family])
        loc = LOCS.get(family, 0.0)
        s = SCALES[family]
        val, _ = quad(lambda w: pdf(spec, loc + s * math.sinh(w)) * s * math.cosh(w),
                      -25 if family in LOCS else 0.0, 25, limit=300)
        assert val == pytest.approx(1.0, abs=1e-7)
