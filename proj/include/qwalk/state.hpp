#pragma once

// Chirality-times-position amplitude fields. Two storages back the same
// WalkState interface:
//
//  * a dense field (components x sites) for the line, the square lattice, and
//    periodic honeycomb cubes — the coin stage is then a single GEMM;
//  * a lazily growing L1-ball table for hard-fail honeycomb walks. A walk of
//    t steps from its start site can only populate triples within L1 distance
//    t whose coordinate-sum parity matches t, so the field stores exactly one
//    parity class of one ball and grows by one radius per (sub-)step. That is
//    ~12x smaller than the bounding cube and keeps a walk that stays near its
//    start O(1) in memory no matter how large the lattice is.

#include <optional>
#include <vector>

#include "qwalk/lattice.hpp"
#include "qwalk/matrixcore.hpp"

namespace qwalk {

// One parity class of the L1 ball of a given radius, in coordinates relative
// to the walk's start site. Sites are stored contiguously per (d1, d2) column
// as a stride-2 run over d3; amplitudes are component-fastest (6 per site).
struct BallField {
  int radius = 0;
  int parity = 0;  // stored class: (d1 + d2 + d3) mod 2 == parity
  int side = 1;    // 2 * radius + 1, edge of the column lookup grid
  long nsites = 0;
  std::vector<long> col_off;    // (d1, d2) -> first site slot, -1 if absent
  std::vector<int> col_n3min;   // first d3 of the column's run
  std::vector<int> col_cnt;     // number of run entries (d3 advances by 2)
  std::vector<Complex> amp;     // 6 * nsites amplitudes, zero-initialised

  static BallField make(int radius, int parity);

  long grid_index(int d1, int d2) const {
    if (d1 < -radius || d1 > radius || d2 < -radius || d2 > radius) return -1;
    return static_cast<long>(d1 + radius) * side + (d2 + radius);
  }
  // Site slot of relative coordinates (d1, d2, d3); -1 if not stored.
  long site_index(int d1, int d2, int d3) const;
};

struct WalkState {
  LatticeDescriptor lattice;
  int cdim = 2;
  long steps_taken = 0;
  // Ball-field centre; also the site an initial point mass was placed on.
  Site start{0, 0, 0};

  // Dense storage (cdim x site_count, column = site) — used unless `ball` is
  // engaged. `scratch` is the same-shape gather target reused across steps.
  Matrix field;
  Matrix scratch;
  std::optional<BallField> ball;

  bool uses_ball() const { return ball.has_value(); }
  long step_count() const { return steps_taken; }
  double norm() const;
  // Amplitude of (site, component); 0 outside the stored support.
  Complex amplitude(const Site& site, int c) const;
};

// Point mass: amplitude chi_c (renormalised) at (site, c). Throws ZeroVector
// if chi is numerically zero, OutOfBounds for a site outside the lattice,
// DimensionMismatch if chi's length is not the lattice's chirality dimension.
WalkState initial_state(const LatticeDescriptor& lattice, const Vector& chi, Site site = {0, 0, 0});

// Arbitrary dense state from a (cdim x site_count) field, renormalised.
// Dense-storage lattices only (hard-fail honeycomb states start as point
// masses via initial_state).
WalkState state_from_field(const LatticeDescriptor& lattice, const Matrix& field);

// Site-major, component-fastest flattening used by the dense-operator oracle.
Vector flatten_state(const WalkState& s);
WalkState state_from_flat(const LatticeDescriptor& lattice, const Vector& flat);

// Marginal position distribution: p(site) = sum_c |amplitude(site, c)|^2.
// Sites are listed in ascending lexicographic coordinate order; exact-zero
// entries are omitted.
struct Distribution {
  LatticeKind kind = LatticeKind::line;
  std::vector<Site> sites;
  std::vector<double> p;
};
Distribution probability_distribution(const WalkState& s);

// Planar coordinates of a honeycomb triple: x = sqrt(3) (n2 - n3) / 2,
// y = -n1 + (n2 + n3) / 2 (bond-length units). Triples differing by
// (d, d, d) land on the same point.
std::pair<double, double> graphene_xy(const Site& s);

// Honeycomb distribution aggregated by planar point, keyed exactly on the
// integers (n2 - n3, n2 + n3 - 2 n1); rows ordered by that key.
struct EuclideanPoint {
  double x, y, p;
};
std::vector<EuclideanPoint> euclidean_aggregate(const Distribution& d);

// Calls f(site, probability) for every stored site with p > 0, in the same
// deterministic order as probability_distribution, without materialising the
// distribution. The workhorse for moment streaming on large fields.
template <class F>
void for_each_site_probability(const WalkState& s, F&& f) {
  if (s.uses_ball()) {
    const BallField& b = *s.ball;
    for (int d1 = -b.radius; d1 <= b.radius; ++d1) {
      for (int d2 = -(b.radius - std::abs(d1)); d2 <= b.radius - std::abs(d1); ++d2) {
        long g = b.grid_index(d1, d2);
        long off = b.col_off[static_cast<size_t>(g)];
        if (off < 0) continue;
        int n3min = b.col_n3min[static_cast<size_t>(g)];
        int cnt = b.col_cnt[static_cast<size_t>(g)];
        for (int k = 0; k < cnt; ++k) {
          double p = 0;
          for (int c = 0; c < 6; ++c) p += std::norm(b.amp[static_cast<size_t>(6 * (off + k) + c)]);
          if (p > 0)
            f(Site{s.start[0] + d1, s.start[1] + d2, s.start[2] + n3min + 2 * k}, p);
        }
      }
    }
    return;
  }
  const LatticeDescriptor& lat = s.lattice;
  int axes = lattice_axes(lat.kind);
  long n = lat.sites_per_axis();
  long count = lat.site_count();
  // Visit in ascending (axis0, axis1, axis2) order; the dense index is
  // axis0-fastest, so stride the flat index accordingly.
  for (long i0 = 0; i0 < n; ++i0) {
    long limit1 = axes >= 2 ? n : 1;
    for (long i1 = 0; i1 < limit1; ++i1) {
      long limit2 = axes >= 3 ? n : 1;
      for (long i2 = 0; i2 < limit2; ++i2) {
        long idx = i0 + n * (i1 + n * i2);
        if (idx >= count) continue;
        double p = s.field.col(idx).squaredNorm();
        if (p > 0) f(lat.unflatten(idx), p);
      }
    }
  }
}

}  // namespace qwalk
