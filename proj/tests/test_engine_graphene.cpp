#include <cmath>
#include <complex>

#include "doctest.h"
#include "qwalk/coins.hpp"
#include "qwalk/engine.hpp"
#include "qwalk/errors.hpp"
#include "test_helpers.hpp"

using namespace qwalk;

namespace {

const Complex kOmega(-0.5, 0.8660254037844386);  // exp(2*pi*i/3)

LatticeDescriptor graphene(int extent, Boundary b = Boundary::hard_fail) {
  LatticeDescriptor d;
  d.kind = LatticeKind::graphene;
  d.extent = extent;
  d.boundary = b;
  return d;
}

WalkState comp_state(int extent, int comp, Boundary b = Boundary::hard_fail) {
  Vector chi = Vector::Zero(6);
  chi(comp) = 1;
  return initial_state(graphene(extent, b), chi);
}

double prob(const WalkState& s, Site site) {
  double p = 0;
  for (int c = 0; c < 6; ++c) p += std::norm(s.amplitude(site, c));
  return p;
}

}  // namespace

TEST_SUITE("engine_graphene") {
  TEST_CASE("composed identity coin swaps the pair and hops along its own axis") {
    WalkState s = comp_state(4, 1);
    step_graphene_additive(s, compose_graphene_coin(Matrix::Identity(3, 3)));
    CHECK(std::abs(s.amplitude({-1, 0, 0}, 0) - Complex(1, 0)) < 1e-14);
    CHECK(std::abs(s.norm() - 1.0) < 1e-14);
  }

  TEST_CASE("Fourier row sums concentrate the uniform minus state onto one bond") {
    Vector chi(6);
    chi << 0, 1, 0, 1, 0, 1;
    WalkState s = initial_state(graphene(4), chi / std::sqrt(3.0));
    step_graphene_additive(s, compose_graphene_coin(coin_by_name("dft3").matrix));
    CHECK(std::abs(s.amplitude({-1, 0, 0}, 0) - Complex(1, 0)) < 1e-13);
  }

  TEST_CASE("three-step walk is a two-cycle between the origin and one displaced site") {
    WalkState s = comp_state(8, 1);
    const CoinSpec dft3 = coin_by_name("dft3");
    step_graphene_threestep(s, dft3);
    // one composite: the mixers advance the phase by omega^2 and park the
    // walker three bonds away
    CHECK(std::abs(s.amplitude({-1, 1, -1}, 0) - kOmega * kOmega) < 1e-13);
    CHECK(prob(s, {-1, 1, -1}) == doctest::Approx(1.0).epsilon(1e-13));

    step_graphene_threestep(s, dft3);
    // the return leg cancels the phase exactly (omega^3 = 1)
    CHECK(std::abs(s.amplitude({0, 0, 0}, 1) - Complex(1, 0)) < 1e-13);

    for (int t = 0; t < 20; ++t) step_graphene_threestep(s, dft3);
    CHECK(std::abs(s.amplitude({0, 0, 0}, 1) - Complex(1, 0)) < 1e-12);
    CHECK(s.step_count() == 22);
  }

  TEST_CASE("three-step trajectory does not depend on the coin choice") {
    WalkState a = comp_state(10, 3);
    WalkState b = comp_state(10, 3);
    WalkState c = comp_state(10, 3);
    const CoinSpec dft3 = coin_by_name("dft3");
    const CoinSpec grover3 = coin_by_name("grover3");
    CoinSpec random_spec = dft3;
    random_spec.matrix = qwalk::test::random_unitary(3, 71);
    for (int t = 0; t < 3; ++t) {
      step_graphene_threestep(a, dft3);
      step_graphene_threestep(b, grover3);
      step_graphene_threestep(c, random_spec);
    }
    for (const Site& q : {Site{0, 0, 0}, Site{-1, 1, -1}, Site{1, -1, 1}})
      for (int comp = 0; comp < 6; ++comp) {
        CHECK(std::abs(a.amplitude(q, comp) - b.amplitude(q, comp)) < 1e-14);
        CHECK(std::abs(a.amplitude(q, comp) - c.amplitude(q, comp)) < 1e-14);
      }
  }

  TEST_CASE("site parity plus direction bit is conserved by composed additive steps") {
    WalkState s = comp_state(8, 1);  // parity 0 + minus bit -> odd invariant
    const Matrix coin6 = compose_graphene_coin(coin_by_name("dft3").matrix);
    for (int t = 0; t < 6; ++t) {
      step_graphene_additive(s, coin6);
      for_each_site_probability(s, [&](const Site& q, double) {
        for (int comp = 0; comp < 6; ++comp) {
          if (std::abs(s.amplitude(q, comp)) < 1e-14) continue;
          int parity = ((q[0] + q[1] + q[2]) % 2 + 2) % 2;
          CHECK((parity + comp % 2) % 2 == 1);
        }
      });
    }
  }

  TEST_CASE("ball storage matches a wide periodic lattice site for site") {
    const Matrix coin6 = compose_graphene_coin(coin_by_name("grover3").matrix);
    Vector chi = Vector::Zero(6);
    chi(4) = Complex(0.6, 0);
    chi(1) = Complex(0, 0.8);
    WalkState ball = initial_state(graphene(10), chi);
    WalkState dense = initial_state(graphene(9, Boundary::periodic), chi);
    for (int t = 0; t < 8; ++t) {
      step_graphene_additive(ball, coin6);
      step_graphene_additive(dense, coin6);
    }
    REQUIRE(ball.uses_ball());
    REQUIRE(!dense.uses_ball());
    for (int n1 = -8; n1 <= 8; ++n1)
      for (int n2 = -8; n2 <= 8; ++n2)
        for (int n3 = -8; n3 <= 8; ++n3)
          for (int comp = 0; comp < 6; ++comp) {
            Complex d = dense.amplitude({n1, n2, n3}, comp);
            CHECK(std::abs(ball.amplitude({n1, n2, n3}, comp) - d) < 1e-13);
          }
  }

  TEST_CASE("ball storage stays small when the support does") {
    // a localised three-step walk on a huge nominal lattice must not allocate
    // a ball that grows with the step count
    WalkState s = comp_state(200, 1);
    const CoinSpec dft3 = coin_by_name("dft3");
    for (int t = 0; t < 50; ++t) step_graphene_threestep(s, dft3);
    REQUIRE(s.uses_ball());
    CHECK(s.ball->radius <= 4);
    CHECK(std::abs(s.amplitude({0, 0, 0}, 1) - Complex(1, 0)) < 1e-12);
  }

  TEST_CASE("hard boundary aborts the step that would escape") {
    WalkState s = comp_state(3, 1);
    const Matrix coin6 = compose_graphene_coin(coin_by_name("dft3").matrix);
    for (int t = 0; t < 3; ++t) step_graphene_additive(s, coin6);
    CHECK_THROWS_AS(step_graphene_additive(s, coin6), BoundaryHit);
  }

  TEST_CASE("norm is preserved over a long ball run") {
    Vector chi(6);
    chi << 1, 1, 1, 1, 1, 1;
    WalkState s = initial_state(graphene(70), chi / std::sqrt(6.0));
    const Matrix coin6 = compose_graphene_coin(coin_by_name("dft3").matrix);
    for (int t = 0; t < 60; ++t) step_graphene_additive(s, coin6);
    CHECK(std::abs(s.norm() - 1.0) < 1e-12);
  }

  TEST_CASE("advance_step composes 3-dim coins and passes 6-dim coins through") {
    CoinSpec dft3 = coin_by_name("dft3");
    WalkState a = comp_state(6, 2);
    WalkState b = comp_state(6, 2);
    advance_step(a, Mode::additive, dft3);
    step_graphene_additive(b, compose_graphene_coin(dft3.matrix));
    for_each_site_probability(b, [&](const Site& q, double) {
      for (int comp = 0; comp < 6; ++comp)
        CHECK(std::abs(a.amplitude(q, comp) - b.amplitude(q, comp)) < 1e-14);
    });

    CoinSpec composed = dft3;
    composed.dim = 6;
    composed.matrix = compose_graphene_coin(dft3.matrix);
    WalkState c = comp_state(6, 2);
    advance_step(c, Mode::additive, composed);
    for (const Site& q : {Site{1, 0, 0}, Site{0, 1, 0}, Site{0, 0, 1}})
      for (int comp = 0; comp < 6; ++comp)
        CHECK(std::abs(a.amplitude(q, comp) - c.amplitude(q, comp)) < 1e-14);
  }

  TEST_CASE("graphene stepping rejects wrong coins, modes, and states") {
    WalkState s = comp_state(4, 0);
    CHECK_THROWS_AS(step_graphene_additive(s, Matrix::Identity(3, 3)), DimensionMismatch);
    Matrix notu = compose_graphene_coin(coin_by_name("dft3").matrix);
    notu(0, 0) += Complex(0.2, 0);
    CHECK_THROWS_AS(step_graphene_additive(s, notu), NotUnitary);
    CoinSpec six = coin_by_name("dft3");
    six.dim = 6;
    six.matrix = compose_graphene_coin(six.matrix);
    CHECK_THROWS_AS(advance_step(s, Mode::three_step, six), DimensionMismatch);
    CHECK_THROWS_AS(advance_step(s, Mode::two_step, coin_by_name("dft3")), BadParam);
    LatticeDescriptor ln;
    ln.kind = LatticeKind::line;
    ln.extent = 3;
    WalkState l = initial_state(ln, Vector::Ones(2));
    CHECK_THROWS_AS(step_graphene_threestep(l, coin_by_name("dft3")), BadParam);
  }
}
