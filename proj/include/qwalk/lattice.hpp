#pragma once

// Lattice geometry and the chirality conventions shared by the stepping
// kernels, the dense-operator oracle, and the analysis metrics.

#include <array>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

enum class LatticeKind { line, square, graphene };
enum class Boundary { hard_fail, periodic };
enum class Mode { additive, two_step, three_step };
enum class ShiftSign { paper, mirrored };
enum class Metric { index, euclidean };

// Site coordinates; axes beyond the lattice dimensionality stay 0.
using Site = std::array<int, 3>;

// Internal components per site: 2 on the line, 4 on the square lattice
// (axis tensor direction), 6 on the honeycomb lattice (three bond axes).
int chirality_dim(LatticeKind kind);

// Number of independent integer coordinates: 1, 2, or 3.
int lattice_axes(LatticeKind kind);

const char* to_string(LatticeKind kind);
const char* to_string(Boundary b);
const char* to_string(Mode m);
const char* to_string(ShiftSign s);
const char* to_string(Metric m);

struct LatticeDescriptor {
  LatticeKind kind = LatticeKind::line;
  // Half-width R: sites span -R..R on each axis. For a hard-fail walk of T
  // steps starting at s, R >= max_i |s_i| + T + 1 keeps the walker strictly
  // inside the bounds, so the boundary never fires.
  int extent = 1;
  Boundary boundary = Boundary::hard_fail;
  // Periodic line only: explicit site count, supporting even rings (sites
  // -N/2 .. N/2-1). 0 means the default 2R+1 sites.
  int periodic_sites = 0;

  // Sites along one axis and the inclusive coordinate range [lo, hi].
  int sites_per_axis() const;
  int axis_lo() const;
  int axis_hi() const;
  long site_count() const;

  bool in_bounds(const Site& s) const;
  // Dense linear site index (first axis fastest); site must be in bounds.
  long flatten(const Site& s) const;
  Site unflatten(long idx) const;

  void validate() const;  // throws BadParam on an unusable descriptor
};

// Component layout, identical on every lattice: component c belongs to axis
// c/2; even c is the '+' direction state and odd c the '-' direction state.
// Orders: line (+, -); square (1,+), (1,-), (2,+), (2,-); honeycomb
// (1,+), (1,-), (2,+), (2,-), (3,+), (3,-).
//
// Under ShiftSign::paper, a '+' component moves by -1 and a '-' component
// by +1 along its axis; mirrored negates every shift.
struct ChiralityConvention {
  ShiftSign shift_sign = ShiftSign::paper;

  static constexpr int axis_of(int c) { return c / 2; }
  static constexpr bool is_plus(int c) { return (c % 2) == 0; }

  int delta(int c) const {
    int d = is_plus(c) ? -1 : +1;
    return shift_sign == ShiftSign::paper ? d : -d;
  }
};

}  // namespace qwalk
