#include "qwalk/engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <unsupported/Eigen/KroneckerProduct>

#include "qwalk/errors.hpp"
#include "qwalk/util.hpp"

namespace qwalk {
namespace {

// Amplitudes below this are treated as never-populated when deciding whether
// probability is about to cross a hard boundary.
constexpr double kEscapeTol = 1e-14;
constexpr long kCoinChunk = 4096;

// Where each chirality component goes during a gather. axis -1 keeps the
// component on its site.
struct MovePlan {
  std::array<int, 6> axis;
  std::array<int, 6> delta;
  MovePlan() {
    axis.fill(-1);
    delta.fill(0);
  }
};

MovePlan additive_plan(int cdim, const ChiralityConvention& conv) {
  MovePlan p;
  for (int c = 0; c < cdim; ++c) {
    p.axis[static_cast<size_t>(c)] = conv.axis_of(c);
    p.delta[static_cast<size_t>(c)] = conv.delta(c);
  }
  return p;
}

// Square-lattice sub-move: only the two components tied to `axis` hop.
MovePlan square_axis_plan(int axis, const ChiralityConvention& conv) {
  MovePlan p;
  for (int c = 2 * axis; c < 2 * axis + 2; ++c) {
    p.axis[static_cast<size_t>(c)] = axis;
    p.delta[static_cast<size_t>(c)] = conv.delta(c);
  }
  return p;
}

// Honeycomb sub-move: every component hops along `axis` by its direction sign.
MovePlan threestep_plan(int axis, const ChiralityConvention& conv) {
  MovePlan p;
  for (int c = 0; c < 6; ++c) {
    p.axis[static_cast<size_t>(c)] = axis;
    p.delta[static_cast<size_t>(c)] = conv.delta(c);
  }
  return p;
}

void check_square_coin(const Matrix& m, int dim, const char* what) {
  if (m.rows() != dim || m.cols() != dim)
    throw DimensionMismatch(std::string(what) + " must be " + std::to_string(dim) + "x" +
                            std::to_string(dim) + ", got " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()));
  if (!is_unitary(m)) throw NotUnitary(std::string(what) + " is not unitary within 1e-10");
}

// In-place chirality mixing over a component-fastest buffer. Fixed-width
// chunks keep the arithmetic identical for every thread count.
void coin_chunks(Complex* data, long cols, int cdim, const Matrix& coin) {
  if (cols <= 0) return;
  Eigen::Map<Matrix> a(data, cdim, cols);
  long nchunks = (cols + kCoinChunk - 1) / kCoinChunk;
  parallel_for(nchunks, [&](long b, long e) {
    Matrix tmp(cdim, std::min(kCoinChunk, cols));
    for (long ch = b; ch < e; ++ch) {
      long o = ch * kCoinChunk;
      long w = std::min(kCoinChunk, cols - o);
      tmp.leftCols(w).noalias() = coin * a.middleCols(o, w);
      a.middleCols(o, w) = tmp.leftCols(w);
    }
  });
}

// Abort if any component about to hop off a hard-fail box carries amplitude.
// Runs on the coined field, before the gather discards edge amplitude.
void dense_boundary_scan(const WalkState& s, const MovePlan& plan) {
  const LatticeDescriptor& lat = s.lattice;
  if (lat.boundary != Boundary::hard_fail) return;
  long n = lat.sites_per_axis();
  long count = lat.site_count();
  long strides[3] = {1, n, n * n};
  for (int c = 0; c < s.cdim; ++c) {
    int a = plan.axis[static_cast<size_t>(c)];
    if (a < 0) continue;
    long edge = plan.delta[static_cast<size_t>(c)] > 0 ? n - 1 : 0;
    long inner = strides[a];
    long outer = count / (inner * n);
    for (long u = 0; u < outer; ++u) {
      for (long v = 0; v < inner; ++v) {
        long j = u * inner * n + edge * inner + v;
        if (std::abs(s.field(c, j)) > kEscapeTol)
          throw BoundaryHit("amplitude reached the lattice boundary on axis " + std::to_string(a + 1) +
                            " at step " + std::to_string(s.steps_taken + 1) +
                            "; enlarge the lattice or use periodic boundaries");
      }
    }
  }
}

void dense_gather(WalkState& s, const MovePlan& plan) {
  const LatticeDescriptor& lat = s.lattice;
  long n = lat.sites_per_axis();
  long count = lat.site_count();
  int cdim = s.cdim;
  int axes = lattice_axes(lat.kind);
  bool periodic = lat.boundary == Boundary::periodic;
  if (s.scratch.rows() != cdim || s.scratch.cols() != count) s.scratch.resize(cdim, count);
  const Matrix& src = s.field;
  Matrix& dst = s.scratch;
  long strides[3] = {1, n, n * n};
  parallel_for(count, [&](long b, long e) {
    for (long j = b; j < e; ++j) {
      long rem = j;
      int co[3] = {static_cast<int>(rem % n), 0, 0};
      rem /= n;
      if (axes >= 2) {
        co[1] = static_cast<int>(rem % n);
        rem /= n;
      }
      if (axes >= 3) co[2] = static_cast<int>(rem % n);
      for (int c = 0; c < cdim; ++c) {
        int a = plan.axis[static_cast<size_t>(c)];
        if (a < 0) {
          dst(c, j) = src(c, j);
          continue;
        }
        int del = plan.delta[static_cast<size_t>(c)];
        long cs = co[a] - del;
        if (cs >= 0 && cs < n) {
          dst(c, j) = src(c, j - del * strides[a]);
        } else if (periodic) {
          long w = ((cs % n) + n) % n;
          dst(c, j) = src(c, j + (w - co[a]) * strides[a]);
        } else {
          dst(c, j) = Complex(0, 0);
        }
      }
    }
  });
  std::swap(s.field, s.scratch);
}

// Largest L1 radius carrying any exactly nonzero amplitude. Sizing the next
// ball from the true support keeps walks that stay localised (for example the
// three-step collapse cycle) O(1) in memory over arbitrarily many steps.
int support_radius(const BallField& b) {
  int r = 0;
  for (int d1 = -b.radius; d1 <= b.radius; ++d1) {
    for (int d2 = -(b.radius - std::abs(d1)); d2 <= b.radius - std::abs(d1); ++d2) {
      long g = b.grid_index(d1, d2);
      long off = b.col_off[static_cast<size_t>(g)];
      if (off < 0) continue;
      int n3min = b.col_n3min[static_cast<size_t>(g)];
      int cnt = b.col_cnt[static_cast<size_t>(g)];
      for (int k = 0; k < cnt; ++k) {
        bool live = false;
        for (int c = 0; c < 6; ++c)
          if (b.amp[static_cast<size_t>(6 * (off + k) + c)] != Complex(0, 0)) live = true;
        if (live)
          r = std::max(r, std::abs(d1) + std::abs(d2) + std::abs(n3min + 2 * k));
      }
    }
  }
  return r;
}

// Gather for the ball storage. The destination ball has the opposite parity
// and covers the source support grown by one, capped by the distance from the
// walk's start to the lattice edge; a capped step first verifies nothing
// escapes.
void ball_move(WalkState& s, const MovePlan& plan) {
  BallField& src = *s.ball;
  int start_linf = std::max({std::abs(s.start[0]), std::abs(s.start[1]), std::abs(s.start[2])});
  int r_allowed = s.lattice.extent - start_linf;
  int r_support = support_radius(src);
  int r2 = std::min(r_support + 1, r_allowed);
  if (r2 < r_support + 1) {
    for (int d1 = -src.radius; d1 <= src.radius; ++d1) {
      for (int d2 = -(src.radius - std::abs(d1)); d2 <= src.radius - std::abs(d1); ++d2) {
        long g = src.grid_index(d1, d2);
        long off = src.col_off[static_cast<size_t>(g)];
        if (off < 0) continue;
        int n3min = src.col_n3min[static_cast<size_t>(g)];
        int cnt = src.col_cnt[static_cast<size_t>(g)];
        for (int k = 0; k < cnt; ++k) {
          int d3 = n3min + 2 * k;
          for (int c = 0; c < 6; ++c) {
            int nd[3] = {d1, d2, d3};
            nd[plan.axis[static_cast<size_t>(c)]] += plan.delta[static_cast<size_t>(c)];
            int l1 = std::abs(nd[0]) + std::abs(nd[1]) + std::abs(nd[2]);
            if (l1 > r2 && std::abs(src.amp[static_cast<size_t>(6 * (off + k) + c)]) > kEscapeTol)
              throw BoundaryHit("amplitude reached the lattice boundary at step " +
                                std::to_string(s.steps_taken + 1) +
                                "; enlarge the lattice or use periodic boundaries");
          }
        }
      }
    }
  }
  BallField dst = BallField::make(r2, src.parity ^ 1);
  long cells = static_cast<long>(dst.side) * dst.side;
  parallel_for(cells, [&](long b, long e) {
    for (long g = b; g < e; ++g) {
      long offd = dst.col_off[static_cast<size_t>(g)];
      if (offd < 0) continue;
      int d1 = static_cast<int>(g / dst.side) - dst.radius;
      int d2 = static_cast<int>(g % dst.side) - dst.radius;
      int n3min_d = dst.col_n3min[static_cast<size_t>(g)];
      int cnt_d = dst.col_cnt[static_cast<size_t>(g)];
      for (int c = 0; c < 6; ++c) {
        int a = plan.axis[static_cast<size_t>(c)];
        int del = plan.delta[static_cast<size_t>(c)];
        long gs = src.grid_index(d1 - (a == 0 ? del : 0), d2 - (a == 1 ? del : 0));
        if (gs < 0) continue;
        long offs = src.col_off[static_cast<size_t>(gs)];
        if (offs < 0) continue;
        int n3min_s = src.col_n3min[static_cast<size_t>(gs)];
        int cnt_s = src.col_cnt[static_cast<size_t>(gs)];
        // Source d3 = destination d3 - delta on axis 3; run offsets share
        // parity, so the lag below is exact.
        int h = (n3min_d - (a == 2 ? del : 0) - n3min_s) / 2;
        int klo = std::max(0, -h);
        int khi = std::min(cnt_d, cnt_s - h);
        for (int k = klo; k < khi; ++k)
          dst.amp[static_cast<size_t>(6 * (offd + k) + c)] =
              src.amp[static_cast<size_t>(6 * (offs + k + h) + c)];
      }
    }
  });
  s.ball = std::move(dst);
}

void dense_substep(WalkState& s, const Matrix& coin, const MovePlan& plan) {
  coin_chunks(s.field.data(), s.field.cols(), s.cdim, coin);
  dense_boundary_scan(s, plan);
  dense_gather(s, plan);
}

void graphene_substep(WalkState& s, const Matrix& coin, const MovePlan& plan) {
  if (s.uses_ball()) {
    coin_chunks(s.ball->amp.data(), s.ball->nsites, 6, coin);
    ball_move(s, plan);
  } else {
    dense_substep(s, coin, plan);
  }
}

void require_kind(const WalkState& s, LatticeKind kind, const char* fn) {
  if (s.lattice.kind != kind)
    throw BadParam(std::string(fn) + " needs a " + to_string(kind) + "-lattice state, got " +
                   to_string(s.lattice.kind));
}

}  // namespace

void step_line(WalkState& s, const CoinSpec& coin, const ChiralityConvention& conv) {
  require_kind(s, LatticeKind::line, "step_line");
  check_square_coin(coin.matrix, 2, "line coin");
  dense_substep(s, coin.matrix, additive_plan(2, conv));
  ++s.steps_taken;
}

void step_square_additive(WalkState& s, const Matrix& coin4, const ChiralityConvention& conv) {
  require_kind(s, LatticeKind::square, "step_square_additive");
  check_square_coin(coin4, 4, "square-lattice coin");
  dense_substep(s, coin4, additive_plan(4, conv));
  ++s.steps_taken;
}

void step_square_twostep(WalkState& s, const Matrix& coin4, const ChiralityConvention& conv) {
  require_kind(s, LatticeKind::square, "step_square_twostep");
  check_square_coin(coin4, 4, "square-lattice coin");
  for (int axis = 0; axis < 2; ++axis)
    dense_substep(s, coin4, square_axis_plan(axis, conv));
  ++s.steps_taken;
}

void step_graphene_additive(WalkState& s, const Matrix& coin6, const ChiralityConvention& conv) {
  require_kind(s, LatticeKind::graphene, "step_graphene_additive");
  check_square_coin(coin6, 6, "honeycomb coin");
  graphene_substep(s, coin6, additive_plan(6, conv));
  ++s.steps_taken;
}

void step_graphene_threestep(WalkState& s, const CoinSpec& coin3, const ChiralityConvention& conv) {
  require_kind(s, LatticeKind::graphene, "step_graphene_threestep");
  if (coin3.matrix.rows() != 3 || coin3.matrix.cols() != 3)
    throw DimensionMismatch("three-step axis coin must be 3x3, got coin '" + coin3.name + "'");
  if (!is_unitary(coin3.matrix)) throw NotUnitary("three-step axis coin is not unitary within 1e-10");
  DirectionOperators ops = graphene_direction_ops();
  const Matrix* mixers[3] = {&ops.m1, &ops.m2, &ops.m3};
  Matrix i3 = Matrix::Identity(3, 3);
  for (int axis = 0; axis < 3; ++axis) {
    Matrix mix = Eigen::kroneckerProduct(i3, *mixers[axis]).eval();
    graphene_substep(s, mix, threestep_plan(axis, conv));
  }
  ++s.steps_taken;
}

void advance_step(WalkState& s, Mode mode, const CoinSpec& coin, const ChiralityConvention& conv) {
  switch (s.lattice.kind) {
    case LatticeKind::line:
      if (mode != Mode::additive) throw BadParam("the line walk supports additive stepping only");
      step_line(s, coin, conv);
      return;
    case LatticeKind::square:
      if (mode == Mode::three_step)
        throw BadParam("three-step stepping applies to the honeycomb lattice");
      if (mode == Mode::additive)
        step_square_additive(s, coin.matrix, conv);
      else
        step_square_twostep(s, coin.matrix, conv);
      return;
    case LatticeKind::graphene:
      if (mode == Mode::two_step) throw BadParam("two-step stepping applies to the square lattice");
      if (mode == Mode::three_step) {
        step_graphene_threestep(s, coin, conv);
      } else if (coin.matrix.rows() == 3) {
        step_graphene_additive(s, compose_graphene_coin(coin), conv);
      } else {
        step_graphene_additive(s, coin.matrix, conv);
      }
      return;
  }
  throw BadParam("unknown lattice kind");
}

RunResult run(WalkState state, Mode mode, const CoinSpec& coin, long steps, long record_stride,
              const ChiralityConvention& conv) {
  if (steps < 0) throw BadParam("steps must be >= 0");
  if (record_stride < 0) throw BadParam("record stride must be >= 0");
  RunResult out;
  auto record = [&](long t) { out.records.push_back({t, probability_distribution(state)}); };
  if (record_stride > 0) record(0);
  for (long t = 1; t <= steps; ++t) {
    advance_step(state, mode, coin, conv);
    if (record_stride > 0 && t % record_stride == 0) record(t);
  }
  if (out.records.empty() || out.records.back().t != steps) record(steps);
  out.norm_drift = std::abs(state.norm() - 1.0);
  out.final_state = std::move(state);
  return out;
}

}  // namespace qwalk
