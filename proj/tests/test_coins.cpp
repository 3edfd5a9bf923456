#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qwalk/coins.hpp"
#include "qwalk/errors.hpp"
#include "test_helpers.hpp"

using namespace qwalk;
using qwalk::test::diff;
using qwalk::test::random_unitary;
using std::numbers::pi;

namespace {

const Complex kOmega(-0.5, std::sqrt(3.0) / 2.0);  // exp(2 pi i / 3)

Matrix grover(int d) {
  return Matrix((2.0 / d) * Matrix::Constant(d, d, Complex(1, 0)) - Matrix::Identity(d, d));
}

}  // namespace

TEST_SUITE("coins") {
  TEST_CASE("registry lists nine unitary coins with stable names") {
    std::vector<CoinSpec> coins = registry_coins();
    REQUIRE(coins.size() == 9);
    const char* expected[] = {"hadamard2",
                              "so2(0.7853981633974483)",
                              "su2x(0.7853981633974483)",
                              "y2",
                              "hadamard4",
                              "grover4",
                              "dft4",
                              "grover3",
                              "dft3"};
    for (size_t i = 0; i < coins.size(); ++i) {
      CHECK(coins[i].name == expected[i]);
      CHECK(coins[i].dim == coins[i].matrix.rows());
      CHECK(is_unitary(coins[i].matrix, 1e-12));
      CHECK_FALSE(coins[i].reference.empty());
      // the canonical name resolves back to the same matrix
      CoinSpec again = coin_by_name(coins[i].name);
      CHECK(diff(again.matrix, coins[i].matrix) == 0.0);
    }
  }

  TEST_CASE("fixed coins match their defining matrices") {
    double r = 1.0 / std::sqrt(2.0);
    Matrix h2(2, 2);
    h2 << r, r, r, -r;
    CHECK(diff(coin_by_name("hadamard2").matrix, h2) == 0.0);

    Matrix y(2, 2);
    y << Complex(r, 0), Complex(0, r), Complex(0, r), Complex(r, 0);
    CHECK(diff(coin_by_name("y2").matrix, y) < 1e-15);
    CHECK(diff(coin_by_name("y2").matrix, coin_by_name("su2x", {pi / 4}).matrix) < 1e-15);

    CHECK(diff(coin_by_name("hadamard4").matrix, mat_kron(h2, h2)) == 0.0);
    CHECK(diff(coin_by_name("grover4").matrix, grover(4)) < 1e-15);
    CHECK(diff(coin_by_name("grover3").matrix, grover(3)) < 1e-15);

    Matrix dft4(4, 4);
    Complex i1(0, 1);
    dft4 << 1, 1, 1, 1,
            1, i1, -1, -i1,
            1, -1, 1, -1,
            1, -i1, -1, i1;
    dft4 *= 0.5;
    CHECK(diff(coin_by_name("dft4").matrix, dft4) < 1e-15);

    Matrix dft3(3, 3);
    dft3 << 1, 1, 1,
            1, kOmega, kOmega * kOmega,
            1, kOmega * kOmega, kOmega;
    dft3 *= 1.0 / std::sqrt(3.0);
    CHECK(diff(coin_by_name("dft3").matrix, dft3) < 1e-15);

    CHECK(diff(coin_by_name("identity(4)").matrix, Matrix::Identity(4, 4)) == 0.0);
  }

  TEST_CASE("parametric coins evaluate their angle") {
    for (double th : {0.0, 0.5, -1.25, 3.0}) {
      Matrix so = coin_by_name("so2", {th}).matrix;
      CHECK(so(0, 0).real() == doctest::Approx(std::cos(th)).epsilon(1e-15));
      CHECK(so(0, 1).real() == doctest::Approx(-std::sin(th)).epsilon(1e-15));
      CHECK(so(1, 0).real() == doctest::Approx(std::sin(th)).epsilon(1e-15));
      Matrix su = coin_by_name("su2x", {th}).matrix;
      CHECK(su(0, 0).real() == doctest::Approx(std::cos(th)).epsilon(1e-15));
      CHECK(su(0, 1).imag() == doctest::Approx(std::sin(th)).epsilon(1e-15));
    }
    // name-embedded parameter is equivalent to the params argument
    CHECK(diff(coin_by_name("so2(0.5)").matrix, coin_by_name("so2", {0.5}).matrix) == 0.0);
  }

  TEST_CASE("spin Hamiltonians of the 2-dim coins have closed forms") {
    Matrix hy = spin_hamiltonian(coin_by_name("y2"));
    Matrix expected(2, 2);
    expected << 0, -pi / 4, -pi / 4, 0;
    CHECK(diff(hy, expected) < 1e-12);

    // so2(theta) rotates by theta about the y spin axis: H = theta sigma_y.
    for (double th : {0.4, -0.9, 2.2}) {
      Matrix h = spin_hamiltonian(coin_by_name("so2", {th}));
      Matrix sy(2, 2);
      sy << Complex(0, 0), Complex(0, -th), Complex(0, th), Complex(0, 0);
      CHECK(diff(h, sy) < 1e-10);
    }
  }

  TEST_CASE("every registry coin round-trips through its spin Hamiltonian") {
    for (const CoinSpec& c : registry_coins()) {
      Matrix h = spin_hamiltonian(c);
      CHECK(diff(h, h.adjoint()) < 1e-12);
      CHECK(diff(exp_minus_i_hermitian(h, 1.0), c.matrix) < 1e-12);
    }
  }

  TEST_CASE("direction mixers are the fixed involutive pair swaps") {
    DirectionOperators ops = graphene_direction_ops();
    Matrix m1(2, 2), m2(2, 2), m3(2, 2);
    m1 << 0, 1, 1, 0;
    m2 << 0, kOmega * kOmega, kOmega, 0;
    m3 << 0, kOmega, kOmega * kOmega, 0;
    CHECK(diff(ops.m1, m1) < 1e-15);
    CHECK(diff(ops.m2, m2) < 1e-15);
    CHECK(diff(ops.m3, m3) < 1e-15);
    for (const Matrix& m : {ops.m1, ops.m2, ops.m3}) {
      CHECK(is_unitary(m, 1e-14));
      CHECK(diff(Matrix(m * m), Matrix::Identity(2, 2)) < 1e-14);
    }
  }

  TEST_CASE("composed honeycomb coin scales direction mixers by axis-coin entries") {
    CoinSpec dft3 = coin_by_name("dft3");
    Matrix c6 = compose_graphene_coin(dft3);
    REQUIRE(c6.rows() == 6);
    CHECK(is_unitary(c6, 1e-12));
    DirectionOperators ops = graphene_direction_ops();
    const Matrix* mixers[3] = {&ops.m1, &ops.m2, &ops.m3};
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        CHECK(diff(Matrix(c6.block(2 * j, 2 * k, 2, 2)),
                   Matrix(dft3.matrix(j, k) * (*mixers[j]))) < 1e-15);
    // identity axis coin composes to the block diagonal of the mixers
    Matrix ci = compose_graphene_coin(coin_by_name("identity(3)"));
    CHECK(diff(Matrix(ci.block(0, 0, 2, 2)), ops.m1) == 0.0);
    CHECK(diff(Matrix(ci.block(2, 2, 2, 2)), ops.m2) == 0.0);
    CHECK(diff(Matrix(ci.block(0, 2, 2, 2)), Matrix::Zero(2, 2)) == 0.0);
    // composition preserves unitarity for arbitrary unitary axis coins
    for (unsigned seed : {11u, 12u, 13u}) {
      Matrix u3 = random_unitary(3, seed);
      CHECK(is_unitary(compose_graphene_coin(u3), 1e-12));
    }
  }

  TEST_CASE("lookup failures are specific") {
    CHECK_THROWS_AS(coin_by_name("nope"), UnknownCoin);
    CHECK_THROWS_AS(coin_by_name("so2"), BadParam);
    CHECK_THROWS_AS(coin_by_name("so2(0.2)", {0.3}), BadParam);
    CHECK_THROWS_AS(coin_by_name("so2(junk)"), BadParam);
    CHECK_THROWS_AS(coin_by_name("so2(0.5"), BadParam);
    CHECK_THROWS_AS(coin_by_name("hadamard2", {0.1}), BadParam);
    CHECK_THROWS_AS(coin_by_name("identity"), BadParam);
    CHECK_THROWS_AS(coin_by_name("identity(5)"), BadParam);
  }
}
