#pragma once

// Registry of the chirality coins the simulator supports, the derivation of
// their Hermitian generators, and the 6x6 composite coin for the honeycomb
// walk. The registry is immutable and safe for concurrent reads.

#include <string>
#include <vector>

#include "qwalk/matrixcore.hpp"

namespace qwalk {

struct CoinSpec {
  std::string name;             // canonical, parameters baked in (e.g. "so2(0.5)")
  int dim = 0;                  // one of 2, 3, 4, 6
  Matrix matrix;                // unitary within 1e-10
  std::vector<double> params;   // empty for fixed coins
  std::string reference;        // one-line description of what the matrix is
};

// Builds a coin from its canonical name. Parametric coins accept the angle
// either baked into the name ("so2(0.5)") or through params; identity takes
// its dimension the same way ("identity(4)"). Known names:
//   hadamard2, so2(theta), su2x(theta), y2, hadamard4, grover4, dft4,
//   grover3, dft3, identity(d)
// Throws UnknownCoin for anything else and BadParam for bad arguments.
CoinSpec coin_by_name(const std::string& name, const std::vector<double>& params = {});

// The nine named registry coins (parametric ones at theta = pi/4). The
// identity family is constructible via coin_by_name but is not a registry
// member.
std::vector<CoinSpec> registry_coins();

// Hermitian generator H = i ln S of the coin via the principal logarithm;
// satisfies e^{-iH} = S. Errors propagate from principal_log_unitary.
Matrix spin_hamiltonian(const CoinSpec& coin);

// The three fixed 2x2 direction-flip operators of the honeycomb walk, one per
// bond axis. Each is unitary and purely off-diagonal: moving along an axis
// always flips the direction sub-state. omega = (-1 + sqrt(3) i) / 2.
//   m1 = [[0, 1], [1, 0]]   m2 = [[0, w^2], [w, 0]]   m3 = [[0, w], [w^2, 0]]
struct DirectionOperators {
  Matrix m1, m2, m3;
};
DirectionOperators graphene_direction_ops();

// 6x6 honeycomb coin from a 3x3 axis coin S: block-row j of the result is
// (row j of S) tensor M_j, i.e. entry block (j, k) = S(j, k) * M_j. Unitary
// for every unitary S. Throws DimensionMismatch unless S is 3x3.
Matrix compose_graphene_coin(const Matrix& s3);
Matrix compose_graphene_coin(const CoinSpec& s3);

}  // namespace qwalk
