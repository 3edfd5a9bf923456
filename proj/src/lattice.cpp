#include "qwalk/lattice.hpp"

namespace qwalk {

int chirality_dim(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::line: return 2;
    case LatticeKind::square: return 4;
    case LatticeKind::graphene: return 6;
  }
  return 0;
}

int lattice_axes(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::line: return 1;
    case LatticeKind::square: return 2;
    case LatticeKind::graphene: return 3;
  }
  return 0;
}

const char* to_string(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::line: return "line";
    case LatticeKind::square: return "square";
    case LatticeKind::graphene: return "graphene";
  }
  return "?";
}

const char* to_string(Boundary b) {
  return b == Boundary::hard_fail ? "hard-fail" : "periodic";
}

const char* to_string(Mode m) {
  switch (m) {
    case Mode::additive: return "additive";
    case Mode::two_step: return "two-step";
    case Mode::three_step: return "three-step";
  }
  return "?";
}

const char* to_string(ShiftSign s) { return s == ShiftSign::paper ? "paper" : "mirrored"; }

const char* to_string(Metric m) { return m == Metric::index ? "index" : "euclidean"; }

int LatticeDescriptor::sites_per_axis() const {
  if (kind == LatticeKind::line && boundary == Boundary::periodic && periodic_sites > 0)
    return periodic_sites;
  return 2 * extent + 1;
}

int LatticeDescriptor::axis_lo() const { return -(sites_per_axis() / 2); }

int LatticeDescriptor::axis_hi() const {
  int n = sites_per_axis();
  return n - 1 - n / 2;
}

long LatticeDescriptor::site_count() const {
  long n = sites_per_axis();
  long total = 1;
  for (int a = 0; a < lattice_axes(kind); ++a) total *= n;
  return total;
}

bool LatticeDescriptor::in_bounds(const Site& s) const {
  int axes = lattice_axes(kind);
  for (int a = 0; a < 3; ++a) {
    if (a < axes) {
      if (s[a] < axis_lo() || s[a] > axis_hi()) return false;
    } else if (s[a] != 0) {
      return false;
    }
  }
  return true;
}

long LatticeDescriptor::flatten(const Site& s) const {
  long n = sites_per_axis();
  long idx = 0, stride = 1;
  for (int a = 0; a < lattice_axes(kind); ++a) {
    idx += (s[a] - axis_lo()) * stride;
    stride *= n;
  }
  return idx;
}

Site LatticeDescriptor::unflatten(long idx) const {
  long n = sites_per_axis();
  Site s{0, 0, 0};
  for (int a = 0; a < lattice_axes(kind); ++a) {
    s[a] = static_cast<int>(idx % n) + axis_lo();
    idx /= n;
  }
  return s;
}

void LatticeDescriptor::validate() const {
  if (extent < 1) throw BadParam("lattice: extent must be >= 1");
  if (periodic_sites != 0) {
    if (kind != LatticeKind::line || boundary != Boundary::periodic)
      throw BadParam("lattice: periodic_sites applies only to the periodic line");
    if (periodic_sites < 2) throw BadParam("lattice: periodic_sites must be >= 2");
  }
}

}  // namespace qwalk
