#pragma once

// Walk stepping kernels. Every step is coin-first: the chirality mixer acts on
// each site's component vector (a chunked GEMM on dense storage), then a
// gather moves components between sites. Gathers write disjoint destinations,
// so results are bit-identical for any thread count.

#include <vector>

#include "qwalk/coins.hpp"
#include "qwalk/lattice.hpp"
#include "qwalk/state.hpp"

namespace qwalk {

// One additive step on the line: 2x2 coin, then |+> hops by the convention's
// '+' displacement and |-> by the opposite.
void step_line(WalkState& s, const CoinSpec& coin, const ChiralityConvention& conv = {});

// One additive step on the square lattice: 4x4 coin, then components (1,+-)
// hop along axis 0 and (2,+-) along axis 1 simultaneously.
void step_square_additive(WalkState& s, const Matrix& coin4, const ChiralityConvention& conv = {});

// One composite two-step move: [full 4x4 coin, axis-0 hop of the (1,+-)
// components only], then [full coin again, axis-1 hop of (2,+-) only].
void step_square_twostep(WalkState& s, const Matrix& coin4, const ChiralityConvention& conv = {});

// One additive honeycomb step: 6x6 coin, then component (i,+-) hops along
// axis i. Accepts the composed coin from compose_graphene_coin or any
// unitary 6x6 matrix.
void step_graphene_additive(WalkState& s, const Matrix& coin6, const ChiralityConvention& conv = {});

// One composite three-step move W3 W2 W1: sub-move i applies the fixed
// direction mixer M_i to every axis block, then hops all components along
// axis i by their direction sign. The 3x3 axis coin never enters these
// dynamics (the direction mixers are fixed); the parameter pins the interface
// and is validated to be a unitary 3x3 matrix.
void step_graphene_threestep(WalkState& s, const CoinSpec& coin3, const ChiralityConvention& conv = {});

// Dispatch one time step of `mode` on s's lattice. Adapts the coin where the
// contract allows it: a 3-dim coin on the additive honeycomb walk is composed
// into its 6x6 operator. Throws BadParam on a mode/lattice mismatch and
// DimensionMismatch on a coin of the wrong dimension.
void advance_step(WalkState& s, Mode mode, const CoinSpec& coin, const ChiralityConvention& conv = {});

struct RunRecord {
  long t;
  Distribution distribution;
};

struct RunResult {
  WalkState final_state;
  std::vector<RunRecord> records;  // stride 0: final only; else t=0, every stride, final
  double norm_drift = 0;           // | ||psi|| - 1 | after the last step
};

RunResult run(WalkState state, Mode mode, const CoinSpec& coin, long steps, long record_stride = 0,
              const ChiralityConvention& conv = {});

}  // namespace qwalk
