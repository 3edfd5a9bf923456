#include "qwalk/state.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qwalk/errors.hpp"

namespace qwalk {

BallField BallField::make(int radius, int parity) {
  BallField b;
  b.radius = radius;
  b.parity = ((parity % 2) + 2) % 2;
  b.side = 2 * radius + 1;
  long cols = static_cast<long>(b.side) * b.side;
  b.col_off.assign(static_cast<size_t>(cols), -1);
  b.col_n3min.assign(static_cast<size_t>(cols), 0);
  b.col_cnt.assign(static_cast<size_t>(cols), 0);
  long sites = 0;
  for (int d1 = -radius; d1 <= radius; ++d1) {
    for (int d2 = -(radius - std::abs(d1)); d2 <= radius - std::abs(d1); ++d2) {
      int m = radius - std::abs(d1) - std::abs(d2);  // |d3| <= m
      // d3 must satisfy (d1 + d2 + d3) mod 2 == parity.
      int q = (((b.parity - d1 - d2) % 2) + 2) % 2;
      int n3min = (((-m % 2) + 2) % 2 == q) ? -m : -m + 1;
      if (n3min > m) continue;  // m == 0 with mismatched parity
      int cnt = (m - n3min) / 2 + 1;
      long g = b.grid_index(d1, d2);
      b.col_off[static_cast<size_t>(g)] = sites;
      b.col_n3min[static_cast<size_t>(g)] = n3min;
      b.col_cnt[static_cast<size_t>(g)] = cnt;
      sites += cnt;
    }
  }
  b.nsites = sites;
  b.amp.assign(static_cast<size_t>(6 * sites), Complex(0, 0));
  return b;
}

long BallField::site_index(int d1, int d2, int d3) const {
  long g = grid_index(d1, d2);
  if (g < 0) return -1;
  long off = col_off[static_cast<size_t>(g)];
  if (off < 0) return -1;
  int n3min = col_n3min[static_cast<size_t>(g)];
  int cnt = col_cnt[static_cast<size_t>(g)];
  int t = d3 - n3min;
  if (t < 0 || (t & 1) != 0) return -1;
  int k = t / 2;
  if (k >= cnt) return -1;
  return off + k;
}

double WalkState::norm() const {
  if (uses_ball()) {
    double s = 0;
    for (const Complex& a : ball->amp) s += std::norm(a);
    return std::sqrt(s);
  }
  return field.norm();
}

Complex WalkState::amplitude(const Site& site, int c) const {
  if (c < 0 || c >= cdim) throw OutOfBounds("chirality component out of range");
  if (uses_ball()) {
    long idx = ball->site_index(site[0] - start[0], site[1] - start[1], site[2] - start[2]);
    if (idx < 0) return Complex(0, 0);
    return ball->amp[static_cast<size_t>(6 * idx + c)];
  }
  if (!lattice.in_bounds(site)) return Complex(0, 0);
  return field(c, lattice.flatten(site));
}

namespace {

Vector normalized_or_throw(const Vector& v) {
  double n = v.norm();
  if (n < 1e-12) throw ZeroVector("initial chirality vector has numerically zero norm");
  return v / n;
}

}  // namespace

WalkState initial_state(const LatticeDescriptor& lattice, const Vector& chi, Site site) {
  lattice.validate();
  WalkState s;
  s.lattice = lattice;
  s.cdim = chirality_dim(lattice.kind);
  s.start = site;
  if (chi.size() != s.cdim)
    throw DimensionMismatch("initial chirality vector has dimension " + std::to_string(chi.size()) +
                            ", lattice needs " + std::to_string(s.cdim));
  if (!lattice.in_bounds(site)) throw OutOfBounds("initial site is outside the lattice");
  Vector unit = normalized_or_throw(chi);
  if (lattice.kind == LatticeKind::graphene && lattice.boundary == Boundary::hard_fail) {
    s.ball = BallField::make(0, 0);
    for (int c = 0; c < 6; ++c) s.ball->amp[static_cast<size_t>(c)] = unit(c);
    return s;
  }
  s.field = Matrix::Zero(s.cdim, lattice.site_count());
  s.field.col(lattice.flatten(site)) = unit;
  return s;
}

WalkState state_from_field(const LatticeDescriptor& lattice, const Matrix& field) {
  lattice.validate();
  if (lattice.kind == LatticeKind::graphene && lattice.boundary == Boundary::hard_fail)
    throw BadParam("state_from_field needs a dense-storage lattice; hard-fail honeycomb states start from initial_state");
  WalkState s;
  s.lattice = lattice;
  s.cdim = chirality_dim(lattice.kind);
  if (field.rows() != s.cdim || field.cols() != lattice.site_count())
    throw DimensionMismatch("field must be chirality_dim x site_count for the lattice");
  double n = field.norm();
  if (n < 1e-12) throw ZeroVector("field has numerically zero norm");
  s.field = field / n;
  return s;
}

Vector flatten_state(const WalkState& s) {
  if (s.uses_ball()) throw BadParam("flatten_state needs dense storage");
  return Eigen::Map<const Vector>(s.field.data(), s.field.size());
}

WalkState state_from_flat(const LatticeDescriptor& lattice, const Vector& flat) {
  int cdim = chirality_dim(lattice.kind);
  long nsites = lattice.site_count();
  if (flat.size() != cdim * nsites) throw DimensionMismatch("flat state has the wrong length for the lattice");
  return state_from_field(lattice, Eigen::Map<const Matrix>(flat.data(), cdim, nsites));
}

Distribution probability_distribution(const WalkState& s) {
  Distribution d;
  d.kind = s.lattice.kind;
  for_each_site_probability(s, [&](const Site& site, double p) {
    d.sites.push_back(site);
    d.p.push_back(p);
  });
  return d;
}

std::pair<double, double> graphene_xy(const Site& s) {
  constexpr double kRoot3 = 1.7320508075688772;
  double x = kRoot3 * (s[1] - s[2]) / 2.0;
  double y = -s[0] + (s[1] + s[2]) / 2.0;
  return {x, y};
}

std::vector<EuclideanPoint> euclidean_aggregate(const Distribution& d) {
  if (d.kind != LatticeKind::graphene)
    throw BadParam("euclidean aggregation applies to honeycomb distributions");
  std::map<std::pair<int, int>, double> acc;
  for (size_t i = 0; i < d.sites.size(); ++i) {
    const Site& s = d.sites[i];
    acc[{s[1] - s[2], s[1] + s[2] - 2 * s[0]}] += d.p[i];
  }
  constexpr double kRoot3 = 1.7320508075688772;
  std::vector<EuclideanPoint> out;
  out.reserve(acc.size());
  for (const auto& [key, p] : acc)
    out.push_back({kRoot3 * key.first / 2.0, key.second / 2.0, p});
  return out;
}

}  // namespace qwalk
