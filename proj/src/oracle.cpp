#include "qwalk/oracle.hpp"

#include <string>
#include <unsupported/Eigen/KroneckerProduct>

#include "qwalk/errors.hpp"

namespace qwalk {
namespace {

// Permutation matrix moving each component along its axis with wrap-around.
// moves[c] = {axis, delta}, axis -1 for components that stay put.
Matrix shift_matrix(const LatticeDescriptor& lat, int cdim, const std::array<std::array<int, 2>, 6>& moves) {
  long ns = lat.site_count();
  long dim = cdim * ns;
  Matrix p = Matrix::Zero(dim, dim);
  for (long si = 0; si < ns; ++si) {
    Site s = lat.unflatten(si);
    for (int c = 0; c < cdim; ++c) {
      int axis = moves[static_cast<size_t>(c)][0];
      Site t = s;
      if (axis >= 0) {
        long n = lat.sites_per_axis();
        long lo = lat.axis_lo();
        long shifted = t[axis] + moves[static_cast<size_t>(c)][1] - lo;
        t[axis] = static_cast<int>(lo + ((shifted % n) + n) % n);
      }
      p(lat.flatten(t) * cdim + c, si * cdim + c) = Complex(1, 0);
    }
  }
  return p;
}

std::array<std::array<int, 2>, 6> stay_all() {
  std::array<std::array<int, 2>, 6> m;
  for (auto& mv : m) mv = {-1, 0};
  return m;
}

}  // namespace

Matrix dense_evolution_matrix(const LatticeDescriptor& lattice, Mode mode, const CoinSpec& coin,
                              const ChiralityConvention& conv) {
  lattice.validate();
  if (lattice.boundary != Boundary::periodic)
    throw BadParam("the dense-operator oracle needs a periodic lattice");
  if (lattice.extent > 6)
    throw BadParam("the dense-operator oracle is limited to extent <= 6");
  int cdim = chirality_dim(lattice.kind);
  long ns = lattice.site_count();
  long dim = cdim * ns;
  if (dim > 5000)
    throw TooLarge("dense evolution operator would be " + std::to_string(dim) + "-dimensional; the cap is 5000");

  Matrix eye_sites = Matrix::Identity(ns, ns);
  auto full_coin = [&](const Matrix& c) { return Eigen::kroneckerProduct(eye_sites, c).eval(); };

  switch (lattice.kind) {
    case LatticeKind::line: {
      if (mode != Mode::additive) throw BadParam("the line walk supports additive stepping only");
      if (coin.matrix.rows() != 2) throw DimensionMismatch("line coin must be 2x2");
      if (!is_unitary(coin.matrix)) throw NotUnitary("line coin is not unitary within 1e-10");
      auto moves = stay_all();
      for (int c = 0; c < 2; ++c) moves[static_cast<size_t>(c)] = {0, conv.delta(c)};
      return shift_matrix(lattice, cdim, moves) * full_coin(coin.matrix);
    }
    case LatticeKind::square: {
      if (mode == Mode::three_step)
        throw BadParam("three-step stepping applies to the honeycomb lattice");
      if (coin.matrix.rows() != 4) throw DimensionMismatch("square-lattice coin must be 4x4");
      if (!is_unitary(coin.matrix)) throw NotUnitary("square-lattice coin is not unitary within 1e-10");
      Matrix cf = full_coin(coin.matrix);
      if (mode == Mode::additive) {
        auto moves = stay_all();
        for (int c = 0; c < 4; ++c) moves[static_cast<size_t>(c)] = {conv.axis_of(c), conv.delta(c)};
        return shift_matrix(lattice, cdim, moves) * cf;
      }
      auto mx = stay_all();
      auto my = stay_all();
      for (int c = 0; c < 2; ++c) mx[static_cast<size_t>(c)] = {0, conv.delta(c)};
      for (int c = 2; c < 4; ++c) my[static_cast<size_t>(c)] = {1, conv.delta(c)};
      return shift_matrix(lattice, cdim, my) * cf * shift_matrix(lattice, cdim, mx) * cf;
    }
    case LatticeKind::graphene: {
      if (mode == Mode::two_step) throw BadParam("two-step stepping applies to the square lattice");
      if (mode == Mode::additive) {
        Matrix c6;
        if (coin.matrix.rows() == 3)
          c6 = compose_graphene_coin(coin);
        else if (coin.matrix.rows() == 6)
          c6 = coin.matrix;
        else
          throw DimensionMismatch("additive honeycomb coin must be 3x3 (composed) or 6x6");
        if (!is_unitary(c6)) throw NotUnitary("honeycomb coin is not unitary within 1e-10");
        auto moves = stay_all();
        for (int c = 0; c < 6; ++c) moves[static_cast<size_t>(c)] = {conv.axis_of(c), conv.delta(c)};
        return shift_matrix(lattice, cdim, moves) * full_coin(c6);
      }
      if (coin.matrix.rows() != 3) throw DimensionMismatch("three-step axis coin must be 3x3");
      if (!is_unitary(coin.matrix)) throw NotUnitary("three-step axis coin is not unitary within 1e-10");
      DirectionOperators ops = graphene_direction_ops();
      const Matrix* mixers[3] = {&ops.m1, &ops.m2, &ops.m3};
      Matrix i3 = Matrix::Identity(3, 3);
      Matrix total = Matrix::Identity(dim, dim);
      for (int axis = 0; axis < 3; ++axis) {
        Matrix mix = Eigen::kroneckerProduct(i3, *mixers[axis]).eval();
        auto moves = stay_all();
        for (int c = 0; c < 6; ++c) moves[static_cast<size_t>(c)] = {axis, conv.delta(c)};
        total = (shift_matrix(lattice, cdim, moves) * full_coin(mix) * total).eval();
      }
      return total;
    }
  }
  throw BadParam("unknown lattice kind");
}

}  // namespace qwalk
