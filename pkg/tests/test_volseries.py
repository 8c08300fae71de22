import math

import numpy as np
import pytest

from voldist.errors import DataError, DegenerateDataError, DomainError
from voldist.volseries import (
    AlignedPair,
    DatedSeries,
    PriceSeries,
    ReturnSeries,
    align,
    autocorrelation,
    clip_date_range,
    difference_series,
    log_returns,
    mean_ratio,
    read_price_csv,
    realized_variance,
    write_series_csv,
)


def days(start, count):
    d = np.arange(np.datetime64(start, "D"), np.datetime64(start, "D") + 2 * count)
    return d[np.is_busday(d)][:count]


def prices_from(closes, start="2010-01-04"):
    return PriceSeries(dates=days(start, len(closes)), closes=np.asarray(closes, float))


class TestLogReturns:
    def test_flat(self):
        r = log_returns(prices_from([100.0, 100.0]))
        assert r.values == pytest.approx([0.0])

    def test_up_move(self):
        r = log_returns(prices_from([100.0, 110.0]))
        assert r.values == pytest.approx([math.log(1.1)])

    def test_antisymmetry(self):
        r = log_returns(prices_from([100.0, 50.0, 100.0]))
        assert r.values == pytest.approx([-math.log(2.0), math.log(2.0)])

    def test_dates_align_to_later_day(self):
        p = prices_from([1.0, 2.0, 3.0])
        r = log_returns(p)
        assert np.array_equal(r.dates, p.dates[1:])

    def test_nonpositive_rejected(self):
        with pytest.raises(DomainError):
            prices_from([100.0, -1.0])

    def test_scale_invariance(self):
        a = log_returns(prices_from([100.0, 105.0, 99.0, 101.0]))
        b = log_returns(prices_from([700.0, 735.0, 693.0, 707.0]))
        assert a.values == pytest.approx(b.values, rel=1e-12)


class TestRealizedVariance:
    def test_single_return(self):
        r = log_returns(prices_from([100.0, 100.0 * math.exp(0.01)]))
        rv = realized_variance(r, 1)
        assert rv.values == pytest.approx([100**2 * 252 * 1e-4])

    def test_zero_returns(self):
        rv = realized_variance(log_returns(prices_from([5.0] * 10)), 3)
        assert np.all(rv.values == 0.0)

    def test_two_day_window(self):
        closes = [100.0, 100.0 * math.exp(0.01), 100.0 * math.exp(0.02)]
        rv = realized_variance(log_returns(prices_from(closes)), 2)
        assert rv.values == pytest.approx([100**2 * 126 * 2e-4])

    def test_sign_flip_invariance(self):
        rng = np.random.default_rng(0)
        vals = rng.normal(0, 0.01, 300)
        r1 = ReturnSeries(dates=days("2010-01-04", 300), values=vals)
        r2 = ReturnSeries(dates=days("2010-01-04", 300), values=-vals)
        a = realized_variance(r1, 21)
        b = realized_variance(r2, 21)
        assert a.values == pytest.approx(b.values, rel=1e-14)

    def test_disjoint_is_strided_rolling(self):
        rng = np.random.default_rng(1)
        r = ReturnSeries(dates=days("2010-01-04", 200),
                         values=rng.normal(0, 0.01, 200))
        roll = realized_variance(r, 7, "rolling")
        disj = realized_variance(r, 7, "disjoint")
        assert disj.values == pytest.approx(roll.values[::7], rel=1e-14)
        assert np.array_equal(disj.dates, roll.dates[::7])

    def test_window_end_stamping(self):
        r = log_returns(prices_from([1.0, 2.0, 3.0, 4.0]))
        rv = realized_variance(r, 2)
        assert np.array_equal(rv.dates, r.dates[1:])

    def test_annualization_consistency(self):
        # E[RV2] is window-length free for i.i.d. returns
        rng = np.random.default_rng(7)
        r = ReturnSeries(dates=days("1950-01-02", 10**6),
                         values=rng.normal(0, 0.01, 10**6))
        m1 = realized_variance(r, 1).values.mean()
        m21 = realized_variance(r, 21).values.mean()
        assert m21 == pytest.approx(m1, rel=0.01)

    def test_too_long_window(self):
        with pytest.raises(DataError):
            realized_variance(log_returns(prices_from([1.0, 2.0])), 5)


class TestMeanRatio:
    def test_identity(self):
        x = np.array([1.0, 2.0, 3.0])
        assert mean_ratio(x, x) == 1.0

    def test_scaling(self):
        rng = np.random.default_rng(3)
        a, b = rng.uniform(1, 2, 50), rng.uniform(1, 2, 50)
        for c in (0.5, 3.0):
            assert mean_ratio(c * a, b) == pytest.approx(c * mean_ratio(a, b), rel=1e-14)

    def test_errors(self):
        with pytest.raises(DataError):
            mean_ratio([], [1.0])
        with pytest.raises(DomainError):
            mean_ratio([1.0], [1.0, -1.0])


class TestDifferenceSeries:
    def test_exact_cancellation(self):
        rv = np.array([10.0, 20.0])
        ratio = 1.7
        assert difference_series(ratio * rv, rv, ratio) == pytest.approx([0.0, 0.0])

    def test_zero_ratio(self):
        iv = np.array([5.0, 6.0])
        assert difference_series(iv, np.array([1.0, 2.0]), 0.0) == pytest.approx(iv)

    def test_arithmetic(self):
        got = difference_series(np.array([200.0, 300.0]),
                                np.array([100.0, 100.0]), 1.4075)
        assert got == pytest.approx([59.25, 159.25])

    def test_length_mismatch(self):
        with pytest.raises(DataError):
            difference_series(np.ones(3), np.ones(4), 1.0)


class TestAutocorrelation:
    def test_white_noise_band(self):
        x = np.random.default_rng(11).normal(size=10**5)
        acf = autocorrelation(x, 20)
        assert np.max(np.abs(acf.values)) <= 3.0 / math.sqrt(x.size)

    def test_alternating_series(self):
        n = 1000
        x = np.tile([1.0, -1.0], n // 2)
        acf = autocorrelation(x, 1)
        assert acf.values[0] == pytest.approx(-(n - 1) / n, rel=1e-12)

    def test_ar1_oracle(self):
        rng = np.random.default_rng(13)
        n, phi = 10**6, 0.9
        x = np.empty(n)
        x[0] = 0.0
        eps = rng.standard_normal(n)
        for t in range(1, n):
            x[t] = phi * x[t - 1] + eps[t]
        acf = autocorrelation(x, 10)
        assert acf.values == pytest.approx(phi ** acf.lags, abs=0.01)

    def test_constant_series(self):
        with pytest.raises(DegenerateDataError):
            autocorrelation(np.ones(100), 5)

    def test_too_short(self):
        with pytest.raises(DataError):
            autocorrelation(np.arange(5.0), 10)


class TestAlign:
    def make_rv(self, n_days=30, window=1):
        d = days("2010-01-04", n_days)
        return (d, realized_variance(
            log_returns(PriceSeries(dates=d, closes=np.linspace(100, 130, n_days))),
            window))

    def test_one_day_offset(self):
        d, rv = self.make_rv(window=1)
        a = DatedSeries(dates=rv.dates, values=np.arange(rv.dates.size, dtype=float))
        pair = align(a, rv)
        # with n=1 each date pairs with the variance stamped one day later
        assert pair.realized == pytest.approx(rv.values[1:])
        assert np.array_equal(pair.dates, rv.dates[:-1])

    def test_disjoint_ranges(self):
        _, rv = self.make_rv()
        far = DatedSeries(dates=days("1990-01-01", 5), values=np.ones(5))
        with pytest.raises(DataError):
            align(far, rv)

    def test_holiday_gap_enumeration(self):
        # toy calendar with one missing trading day; pairing counts trading
        # days, so the gap is skipped exactly as brute force says
        cal = days("2010-01-04", 31)
        cal = np.delete(cal, 10)
        closes = np.linspace(50, 80, cal.size)
        rv = realized_variance(log_returns(PriceSeries(dates=cal, closes=closes)), 5)
        a = DatedSeries(dates=cal, values=np.arange(cal.size, dtype=float))
        pair = align(a, rv)
        # brute-force oracle: date t at rv position k pairs with rv[k+5]
        expected = []
        for t in a.dates:
            k = np.flatnonzero(rv.dates == t)
            if k.size and k[0] + 5 < rv.dates.size:
                expected.append(rv.values[k[0] + 5])
        assert pair.realized == pytest.approx(np.array(expected))

    def test_forward_window_semantics(self):
        # the paired window must cover returns that START the next trading day
        n = 3
        d, rv = self.make_rv(n_days=40, window=n)
        a = DatedSeries(dates=rv.dates[:1], values=np.array([1.0]))
        pair = align(a, rv)
        t_pos = np.flatnonzero(rv.dates == a.dates[0])[0]
        assert pair.realized[0] == rv.values[t_pos + n]


class TestCsvRoundTrip:
    def test_read_write(self, tmp_path):
        p = prices_from([100.0, 101.5, 99.75])
        path = tmp_path / "x.csv"
        write_series_csv(path, p.dates, p.closes, value_name="close")
        back = read_price_csv(path)
        assert np.array_equal(back.dates, p.dates)
        assert back.closes == pytest.approx(p.closes, rel=1e-15)

    def test_malformed_row_reports_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("date,close\n2010-01-04,100.0\n2010-01-05,oops\n")
        with pytest.raises(DataError, match="line 3"):
            read_price_csv(path)

    def test_bad_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("day,price\n2010-01-04,100.0\n")
        with pytest.raises(DataError, match="header"):
            read_price_csv(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError):
            read_price_csv(tmp_path / "nope.csv")


class TestClipRange:
    def test_half_open(self):
        p = prices_from([1.0, 2.0, 3.0, 4.0, 5.0])
        sub = clip_date_range(p, start=str(p.dates[1]), end=str(p.dates[3]))
        assert np.array_equal(sub.dates, p.dates[1:3])

    def test_empty_filter(self):
        p = prices_from([1.0, 2.0])
        with pytest.raises(DataError):
            clip_date_range(p, start="2050-01-01")
