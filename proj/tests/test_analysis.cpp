#include <cmath>
#include <vector>

#include "doctest.h"
#include "qwalk/analysis.hpp"
#include "qwalk/coins.hpp"
#include "qwalk/engine.hpp"
#include "qwalk/errors.hpp"
#include "test_helpers.hpp"

using namespace qwalk;

namespace {

LatticeDescriptor lat(LatticeKind kind, int extent, Boundary b = Boundary::hard_fail) {
  LatticeDescriptor d;
  d.kind = kind;
  d.extent = extent;
  d.boundary = b;
  return d;
}

Distribution two_point_line(int a, int b) {
  Distribution d;
  d.kind = LatticeKind::line;
  d.sites = {{a, 0, 0}, {b, 0, 0}};
  d.p = {0.5, 0.5};
  return d;
}

VarianceSeries synthetic_series(double c0, double c1, double c2, long tmax) {
  VarianceSeries s;
  for (long t = 1; t <= tmax; ++t) {
    s.t.push_back(t);
    s.variance.push_back(c0 + c1 * t + c2 * t * t);
  }
  return s;
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("point masses have the advertised mean and zero variance") {
    Distribution d;
    d.kind = LatticeKind::graphene;
    d.sites = {{0, 1, 0}};
    d.p = {1.0};

    Moments idx = position_moments(d, Metric::index);
    REQUIRE(idx.mean.size() == 3);
    CHECK(idx.mean(0) == doctest::Approx(0.0));
    CHECK(idx.mean(1) == doctest::Approx(1.0));
    CHECK(idx.mean(2) == doctest::Approx(0.0));
    CHECK(idx.variance == doctest::Approx(0.0).epsilon(1e-14));

    Moments euc = position_moments(d, Metric::euclidean);
    REQUIRE(euc.mean.size() == 2);
    CHECK(euc.mean(0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(euc.mean(1) == doctest::Approx(1.0 / (2.0 * std::sqrt(3.0))).epsilon(1e-14));
    CHECK(euc.variance == doctest::Approx(0.0).epsilon(1e-14));
  }

  TEST_CASE("the variance is the per-coordinate average spread") {
    // half the weight at -1 and half at +1: E n = 0, E n^2 = 1
    Moments line = position_moments(two_point_line(-1, 1), Metric::index);
    CHECK(line.mean(0) == doctest::Approx(0.0));
    CHECK(line.variance == doctest::Approx(1.0).epsilon(1e-14));

    Distribution sq;
    sq.kind = LatticeKind::square;
    sq.sites = {{1, 0, 0}, {-1, 0, 0}};
    sq.p = {0.5, 0.5};
    // the same unit spread shared over two coordinates
    CHECK(position_moments(sq, Metric::index).variance == doctest::Approx(0.5).epsilon(1e-14));
  }

  TEST_CASE("streaming moments agree with distribution moments on real states") {
    WalkState s = initial_state(lat(LatticeKind::square, 10), Vector::Ones(4));
    const Matrix coin = coin_by_name("hadamard4").matrix;
    for (int t = 0; t < 6; ++t) step_square_additive(s, coin);
    Moments streamed = position_moments(s, Metric::index);
    Moments tabulated = position_moments(probability_distribution(s), Metric::index);
    CHECK((streamed.mean - tabulated.mean).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(streamed.variance == doctest::Approx(tabulated.variance).epsilon(1e-13));

    Vector chi = Vector::Zero(6);
    chi(1) = 1;
    WalkState g = initial_state(lat(LatticeKind::graphene, 8), chi);
    const Matrix coin6 = compose_graphene_coin(coin_by_name("dft3").matrix);
    for (int t = 0; t < 5; ++t) step_graphene_additive(g, coin6);
    for (Metric m : {Metric::index, Metric::euclidean}) {
      Moments a = position_moments(g, m);
      Moments b = position_moments(probability_distribution(g), m);
      CHECK((a.mean - b.mean).cwiseAbs().maxCoeff() < 1e-13);
      CHECK(a.variance == doctest::Approx(b.variance).epsilon(1e-13));
    }
  }

  TEST_CASE("moment edge cases") {
    Distribution empty;
    empty.kind = LatticeKind::line;
    CHECK_THROWS_AS(position_moments(empty, Metric::index), EmptyDistribution);
    // off the honeycomb the metric choice is documented as irrelevant
    Moments a = position_moments(two_point_line(-1, 1), Metric::euclidean);
    Moments b = position_moments(two_point_line(-1, 1), Metric::index);
    CHECK(a.variance == doctest::Approx(b.variance));
  }

  TEST_CASE("quadratic fit recovers exact polynomials") {
    QuadraticFit fit = quadratic_fit(synthetic_series(0.3, -0.02, 0.07, 40));
    CHECK(fit.c0 == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(fit.c1 == doctest::Approx(-0.02).epsilon(1e-9));
    CHECK(fit.c2 == doctest::Approx(0.07).epsilon(1e-9));
    CHECK(fit.rms_residual < 1e-9);
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("a constant series fits with zero slope and curvature") {
    QuadraticFit fit = quadratic_fit(synthetic_series(2.5, 0.0, 0.0, 10));
    CHECK(fit.c0 == doctest::Approx(2.5).epsilon(1e-10));
    CHECK(std::abs(fit.c1) < 1e-10);
    CHECK(std::abs(fit.c2) < 1e-10);
    // residuals vanish although the series has no spread to explain
    CHECK(fit.r_squared == doctest::Approx(1.0));
  }

  TEST_CASE("fit rejects undersized or degenerate sample sets") {
    VarianceSeries three;
    three.t = {1, 2, 3};
    three.variance = {1.0, 2.0, 3.0};
    CHECK_THROWS_AS(quadratic_fit(three), InsufficientSamples);

    VarianceSeries repeated;
    repeated.t = {4, 4, 4, 4};
    repeated.variance = {1.0, 1.0, 1.0, 1.0};
    CHECK_THROWS_AS(quadratic_fit(repeated), SingularSystem);

    VarianceSeries mismatched;
    mismatched.t = {1, 2, 3, 4};
    mismatched.variance = {1.0, 2.0};
    CHECK_THROWS_AS(quadratic_fit(mismatched), DimensionMismatch);
  }

  TEST_CASE("fit comparison applies only the supplied tolerances") {
    QuadraticFit fit;
    fit.c0 = 1.05;
    fit.c1 = 2.2;
    fit.c2 = 3.3;
    std::array<double, 3> ref{1.0, 2.0, 3.0};

    FitTolerances loose;
    loose.rel_c2 = 0.15;
    FitComparison cmp = compare_fit(fit, ref, loose);
    CHECK(cmp.pass);
    CHECK(cmp.coeff[2].rel_dev == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(cmp.coeff[0].pass);  // no tolerance supplied -> reported, not judged

    FitTolerances tight;
    tight.rel_c2 = 0.05;
    CHECK(!compare_fit(fit, ref, tight).pass);

    FitTolerances absolute;
    absolute.abs_c1 = 0.1;
    CHECK(!compare_fit(fit, ref, absolute).pass);
    absolute.abs_c1 = 0.3;
    CHECK(compare_fit(fit, ref, absolute).pass);

    // a zero reference makes the relative deviation infinite but an absolute
    // tolerance can still pass it
    std::array<double, 3> zref{0.0, 2.0, 3.0};
    FitTolerances abs0;
    abs0.abs_c0 = 1.1;
    FitComparison zc = compare_fit(fit, zref, abs0);
    CHECK(zc.pass);
    CHECK(std::isinf(zc.coeff[0].rel_dev));
  }

  TEST_CASE("variance series samples the configured stride plus the final step") {
    ExperimentConfig cfg;
    cfg.lattice = lat(LatticeKind::line, 12);
    cfg.coin_name = "hadamard2";
    cfg.chi = {Complex(1, 0), Complex(0, 1)};
    cfg.steps = 7;
    cfg.record_stride = 3;
    VarianceSeries s = variance_series(cfg);
    REQUIRE(s.t == std::vector<long>{3, 6, 7});
    CHECK(s.metric == Metric::index);

    cfg.record_stride = 0;  // treated as every step
    VarianceSeries all = variance_series(cfg);
    REQUIRE(all.t.size() == 7);
    CHECK(all.t.front() == 1);
    CHECK(all.t.back() == 7);
    // the strided samples are a subset of the full sweep
    CHECK(s.variance[0] == doctest::Approx(all.variance[2]).epsilon(1e-13));
    CHECK(s.variance[2] == doctest::Approx(all.variance[6]).epsilon(1e-13));
  }

  TEST_CASE("the three-step cycle keeps every sampled variance at zero") {
    ExperimentConfig cfg;
    cfg.lattice = lat(LatticeKind::graphene, 40);
    cfg.coin_name = "grover3";
    cfg.mode = Mode::three_step;
    cfg.chi.assign(6, Complex(0, 0));
    cfg.chi[1] = Complex(1, 0);
    cfg.steps = 12;
    cfg.record_stride = 1;
    CHECK(cfg.effective_metric() == Metric::euclidean);
    VarianceSeries s = variance_series(cfg);
    REQUIRE(s.t.size() == 12);
    for (double v : s.variance) CHECK(std::abs(v) < 1e-13);
  }

  TEST_CASE("a ballistic walk fits an exactly quadratic variance law") {
    // identity coin, balanced start: the two components separate at unit
    // speed, so the index variance is exactly t^2
    ExperimentConfig cfg;
    cfg.lattice = lat(LatticeKind::line, 14);
    cfg.coin_name = "identity(2)";
    cfg.chi = {Complex(1, 0), Complex(1, 0)};
    cfg.steps = 12;
    cfg.record_stride = 1;
    VarianceSeries s = variance_series(cfg);
    for (size_t i = 0; i < s.t.size(); ++i)
      CHECK(s.variance[i] == doctest::Approx(double(s.t[i]) * double(s.t[i])).epsilon(1e-12));
    QuadraticFit fit = quadratic_fit(s);
    CHECK(std::abs(fit.c0) < 1e-10);
    CHECK(std::abs(fit.c1) < 1e-10);
    CHECK(fit.c2 == doctest::Approx(1.0).epsilon(1e-10));
  }
}
