#include "qwalk/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "qwalk/errors.hpp"

namespace qwalk {

std::string format_double(double v) {
  char buf[64];
  std::to_chars_result r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

void write_distribution_csv(const std::string& path, const Distribution& d) {
  std::ofstream out = open_out(path);
  switch (d.kind) {
    case LatticeKind::line: {
      out << "site,probability\n";
      for (size_t i = 0; i < d.sites.size(); ++i)
        out << d.sites[i][0] << ',' << format_double(d.p[i]) << '\n';
      break;
    }
    case LatticeKind::square: {
      out << "n1,n2,probability\n";
      for (size_t i = 0; i < d.sites.size(); ++i)
        out << d.sites[i][0] << ',' << d.sites[i][1] << ',' << format_double(d.p[i]) << '\n';
      break;
    }
    case LatticeKind::graphene: {
      out << "n1,n2,n3,x,y,probability\n";
      for (size_t i = 0; i < d.sites.size(); ++i) {
        auto [x, y] = graphene_xy(d.sites[i]);
        out << d.sites[i][0] << ',' << d.sites[i][1] << ',' << d.sites[i][2] << ','
            << format_double(x) << ',' << format_double(y) << ',' << format_double(d.p[i]) << '\n';
      }
      break;
    }
  }
  if (!out) throw Error("failed writing '" + path + "'");
}

void write_euclidean_csv(const std::string& path, const Distribution& d) {
  std::vector<EuclideanPoint> pts = euclidean_aggregate(d);
  std::ofstream out = open_out(path);
  out << "x,y,probability\n";
  for (const EuclideanPoint& pt : pts)
    out << format_double(pt.x) << ',' << format_double(pt.y) << ',' << format_double(pt.p) << '\n';
  if (!out) throw Error("failed writing '" + path + "'");
}

void write_variance_csv(const std::string& path, const VarianceSeries& s) {
  std::ofstream out = open_out(path);
  out << "t,variance\n";
  for (size_t i = 0; i < s.t.size(); ++i)
    out << s.t[i] << ',' << format_double(s.variance[i]) << '\n';
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace qwalk
