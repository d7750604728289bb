#include <doctest.h>

#include <cmath>
#include <functional>

#include "mffdfa/analysis.hpp"
#include "mffdfa/error.hpp"
#include "mffdfa/generators.hpp"
#include "mffdfa/spectrum.hpp"

using namespace mffdfa;

namespace {

FluctuationSurface power_law_surface(const std::vector<double>& q, const std::vector<std::size_t>& scales,
                                     std::function<double(double)> hq, double amplitude)
{
    FluctuationSurface s;
    s.q.values = q;
    s.scales.scales = scales;
    for (double qq : q)
        for (std::size_t sc : scales)
            s.values.push_back(amplitude * std::pow(static_cast<double>(sc), hq(qq)));
    return s;
}

} // namespace

TEST_CASE("ordinary least squares")
{
    const std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
    const auto fit = ordinary_least_squares(x, y);
    CHECK(fit.slope == doctest::Approx(2.0));
    CHECK(fit.intercept == doctest::Approx(1.0));
    CHECK(fit.r_squared == doctest::Approx(1.0));
    CHECK_THROWS_AS(ordinary_least_squares(std::vector<double>{1.0}, std::vector<double>{1.0}), InputError);
    CHECK_THROWS_AS(ordinary_least_squares(std::vector<double>{1, 1}, std::vector<double>{1, 2}), NumericalError);
}

TEST_CASE("exact power law gives its exponent with unit R^2")
{
    const auto s = power_law_surface({2.0}, {30, 60, 120, 240}, [](double) { return 0.7; }, 4.0);
    const auto h = fit_hurst(s);
    CHECK(h.h[0] == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(h.intercepts[0] == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    CHECK(h.fit_r2[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("scaling range and unusable cells")
{
    auto s = power_law_surface({-1.0, 1.0}, {30, 40, 50, 60, 70, 80}, [](double q) { return 0.5 + 0.1 * q; }, 1.0);
    s.values[0] = 0.0;
    const auto h = fit_hurst(s);
    CHECK(h.h[0] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(h.h[1] == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(fit_hurst(s, ScalingRange{40, 70}).h[1] == doctest::Approx(0.6).epsilon(1e-12));
    CHECK_THROWS_AS(fit_hurst(s, ScalingRange{30, 60}), NumericalError);
    try {
        fit_hurst(s, ScalingRange{30, 60});
    } catch (const NumericalError& e) {
        CHECK(std::string(e.what()).find("q=-1") != std::string::npos);
    }
}

TEST_CASE("monofractal Legendre transform")
{
    GeneralizedHurst h;
    for (int i = -5; i <= 5; ++i) {
        h.q.push_back(i);
        h.h.push_back(0.6);
    }
    const auto sp = legendre_transform(h);
    for (std::size_t i = 0; i < sp.q.size(); ++i) {
        CHECK(sp.alpha[i] == doctest::Approx(0.6));
        CHECK(sp.f_alpha[i] == doctest::Approx(1.0));
    }
    CHECK(sp.delta_alpha == doctest::Approx(0.0));
    REQUIRE(sp.alpha_at_q0.has_value());
    CHECK(*sp.alpha_at_q0 == doctest::Approx(0.6));
}

TEST_CASE("Legendre transform of a linear h(q)")
{
    GeneralizedHurst h;
    for (int i = -10; i <= 10; ++i) {
        h.q.push_back(0.5 * i);
        h.h.push_back(0.8 - 0.02 * 0.5 * i);
    }
    const auto sp = legendre_transform(h);
    for (std::size_t i = 0; i < sp.q.size(); ++i) {
        const double q = sp.q[i];
        CHECK(sp.alpha[i] == doctest::Approx(0.8 - 0.04 * q).epsilon(1e-12));
        CHECK(sp.f_alpha[i] == doctest::Approx(1.0 - 0.02 * q * q).epsilon(1e-12));
    }
    CHECK(sp.delta_alpha == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(spectrum_width(sp) == sp.delta_alpha);
    CHECK_THROWS_AS(legendre_transform(GeneralizedHurst{{0.0, 1.0}, {0.5, 0.5}, {}, {}}), InputError);
}

TEST_CASE("discrete Legendre transform recovers the cascade oracle")
{
    const CascadeOracle oracle(0.65);
    GeneralizedHurst h;
    for (int i = -50; i <= 50; ++i) {
        const double q = 0.2 * i;
        h.q.push_back(i == 0 ? 0.0 : q);
        h.h.push_back(oracle.h(h.q.back()));
    }
    const auto sp = legendre_transform(h);
    REQUIRE(sp.alpha_at_q0.has_value());
    CHECK(*sp.alpha_at_q0 == doctest::Approx(oracle.alpha(0.0)).epsilon(1e-3));
    for (std::size_t i = 1; i + 1 < sp.q.size(); ++i) {
        CHECK(sp.alpha[i] == doctest::Approx(oracle.alpha(sp.q[i])).epsilon(0.02));
        CHECK(std::abs(sp.f_alpha[i] - oracle.f_alpha(sp.q[i])) < 0.02);
    }
}

TEST_CASE("spectrum is invariant to input scaling")
{
    const auto cascade = generate_cascade({0.65, 14});
    AnalysisOptions opts;
    const auto base = analyze(cascade, opts);
    std::vector<double> scaled(cascade.values().begin(), cascade.values().end());
    for (double& v : scaled)
        v *= 1000.0;
    const auto other = analyze(TimeSeries(scaled), opts);
    for (std::size_t i = 0; i < base.hurst.h.size(); ++i) {
        CHECK(other.hurst.h[i] == doctest::Approx(base.hurst.h[i]).epsilon(1e-9));
        CHECK(other.spectrum.alpha[i] == doctest::Approx(base.spectrum.alpha[i]).epsilon(1e-9));
        CHECK(other.spectrum.f_alpha[i] == doctest::Approx(base.spectrum.f_alpha[i]).epsilon(1e-9));
    }
}

TEST_CASE("cascade h(q) and alpha(q) decrease in q")
{
    const auto r = analyze(generate_cascade({0.65, 16}), AnalysisOptions{});
    for (std::size_t i = 1; i < r.hurst.h.size(); ++i)
        CHECK(r.hurst.h[i] <= r.hurst.h[i - 1] + 1e-9);
    for (std::size_t i = 1; i < r.spectrum.alpha.size(); ++i)
        CHECK(r.spectrum.alpha[i] <= r.spectrum.alpha[i - 1] + 0.02);
    CHECK(r.spectrum.delta_alpha > 0.5);
}

TEST_CASE("analyze front end")
{
    CHECK(parse_method("mfdfa") == Method::mfdfa);
    CHECK(parse_method("mfdfa_overlap") == Method::mfdfa_overlap);
    CHECK(parse_method("mffdfa") == Method::mffdfa);
    CHECK(to_string(Method::mfdfa_overlap) == "mfdfa_overlap");
    CHECK_THROWS_AS(parse_method("dfa"), InputError);

    AnalysisOptions mf;
    mf.method = Method::mfdfa;
    mf.overlap = 5;
    CHECK(mf.effective_overlap() == 1);
    mf.method = Method::mfdfa_overlap;
    CHECK(mf.effective_overlap() == 5);

    CHECK_THROWS_AS(analyze(TimeSeries(std::vector<double>(5000, 3.0)), AnalysisOptions{}), NumericalError);
    std::vector<double> short_series(100);
    for (std::size_t i = 0; i < short_series.size(); ++i)
        short_series[i] = i % 2 ? 1.0 : -1.0;
    CHECK_THROWS_AS(analyze(TimeSeries(short_series), AnalysisOptions{}), InputError);

    const auto r = analyze(generate_cascade({0.65, 13}), AnalysisOptions{});
    CHECK(r.selection_fractions.size() == 3);
    AnalysisOptions fixed;
    fixed.method = Method::mfdfa;
    CHECK(analyze(generate_cascade({0.65, 13}), fixed).selection_fractions.empty());
}
