#pragma once

// Literal dense one-step evolution operators, built by Kronecker products and
// explicit permutation matrices with none of the engine's stepping kernels.
// Small periodic lattices only; used to cross-check the engine.

#include "qwalk/coins.hpp"
#include "qwalk/lattice.hpp"

namespace qwalk {

// One-step operator on the flattened state (site-major, component-fastest;
// see flatten_state). Requires a periodic lattice with extent <= 6 (BadParam
// otherwise) and a total dimension of at most 5000 (TooLarge otherwise).
// The coin follows the same adaptation rules as the engine: 3-dim coins are
// composed for the additive honeycomb walk, and the three-step operator uses
// the fixed direction mixers.
Matrix dense_evolution_matrix(const LatticeDescriptor& lattice, Mode mode, const CoinSpec& coin,
                              const ChiralityConvention& conv = {});

}  // namespace qwalk
