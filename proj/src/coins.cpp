#include "qwalk/coins.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

namespace qwalk {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

// Primitive cube root of unity used by the 3-dimensional DFT coin and the
// honeycomb direction operators.
const Complex kOmega{-0.5, std::sqrt(3.0) / 2.0};

std::string format_param(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Matrix hadamard2_matrix() {
  Matrix m(2, 2);
  double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

Matrix so2_matrix(double theta) {
  Matrix m(2, 2);
  m << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return m;
}

Matrix su2x_matrix(double theta) {
  // exp(i theta sigma_x): generator -theta * sigma_x.
  Matrix m(2, 2);
  Complex c = std::cos(theta), is = kI * std::sin(theta);
  m << c, is, is, c;
  return m;
}

Matrix grover_matrix(int d) {
  // Diffusion about the uniform vector: 2|s><s| - I.
  return (2.0 / d) * Matrix::Ones(d, d) - Matrix::Identity(d, d);
}

Matrix dft4_matrix() {
  Matrix m(4, 4);
  m << 1, 1, 1, 1,
       1, kI, -1, -kI,
       1, -1, 1, -1,
       1, -kI, -1, kI;
  return 0.5 * m;
}

Matrix dft3_matrix() {
  // Note omega^4 = omega, so the bottom-right entry closes back to omega.
  Matrix m(3, 3);
  Complex w = kOmega, w2 = kOmega * kOmega;
  m << 1, 1, 1,
       1, w, w2,
       1, w2, w;
  return (1.0 / std::sqrt(3.0)) * m;
}

struct ParsedName {
  std::string base;
  std::vector<double> args;
};

// Accepts "name" or "name(arg)"; the single argument is parsed as a real.
ParsedName parse_name(const std::string& name) {
  auto open = name.find('(');
  if (open == std::string::npos) return {name, {}};
  if (name.back() != ')')
    throw BadParam("coin_by_name: unbalanced parameter list in '" + name + "'");
  std::string base = name.substr(0, open);
  std::string arg = name.substr(open + 1, name.size() - open - 2);
  try {
    size_t used = 0;
    double v = std::stod(arg, &used);
    if (used != arg.size()) throw BadParam("");
    return {base, {v}};
  } catch (const std::exception&) {
    throw BadParam("coin_by_name: cannot parse parameter '" + arg + "' in '" + name + "'");
  }
}

CoinSpec make(std::string name, Matrix m, std::vector<double> params, std::string reference) {
  CoinSpec c;
  c.dim = static_cast<int>(m.rows());
  c.name = std::move(name);
  c.matrix = std::move(m);
  c.params = std::move(params);
  c.reference = std::move(reference);
  return c;
}

}  // namespace

CoinSpec coin_by_name(const std::string& name, const std::vector<double>& params) {
  ParsedName parsed = parse_name(name);
  std::vector<double> args = parsed.args;
  if (!params.empty()) {
    if (!args.empty())
      throw BadParam("coin_by_name: parameter given both in name and params for '" + name + "'");
    args = params;
  }
  const std::string& base = parsed.base;

  auto need_angle = [&]() -> double {
    if (args.size() != 1)
      throw BadParam("coin_by_name: '" + base + "' takes exactly one angle parameter");
    if (!std::isfinite(args[0]))
      throw BadParam("coin_by_name: angle for '" + base + "' must be finite");
    return args[0];
  };
  auto no_args = [&]() {
    if (!args.empty()) throw BadParam("coin_by_name: '" + base + "' takes no parameters");
  };

  if (base == "hadamard2") {
    no_args();
    return make("hadamard2", hadamard2_matrix(), {}, "Hadamard mixing coin on C^2");
  }
  if (base == "so2") {
    double t = need_angle();
    return make("so2(" + format_param(t) + ")", so2_matrix(t), {t},
                "Real rotation coin on C^2, angle theta");
  }
  if (base == "su2x") {
    double t = need_angle();
    return make("su2x(" + format_param(t) + ")", su2x_matrix(t), {t},
                "x-axis spin rotation coin exp(i theta sigma_x)");
  }
  if (base == "y2") {
    no_args();
    return make("y2", su2x_matrix(kPi / 4.0), {},
                "Balanced complex coin on C^2 (x-rotation at pi/4)");
  }
  if (base == "hadamard4") {
    no_args();
    return make("hadamard4", mat_kron(hadamard2_matrix(), hadamard2_matrix()), {},
                "Tensor square of the Hadamard coin on C^4");
  }
  if (base == "grover4") {
    no_args();
    return make("grover4", grover_matrix(4), {}, "Grover diffusion coin on C^4");
  }
  if (base == "dft4") {
    no_args();
    return make("dft4", dft4_matrix(), {}, "Discrete Fourier transform coin on C^4");
  }
  if (base == "grover3") {
    no_args();
    return make("grover3", grover_matrix(3), {}, "Grover diffusion coin on C^3");
  }
  if (base == "dft3") {
    no_args();
    return make("dft3", dft3_matrix(), {}, "Discrete Fourier transform coin on C^3");
  }
  if (base == "identity") {
    if (args.size() != 1)
      throw BadParam("coin_by_name: identity takes its dimension, e.g. identity(2)");
    double dv = args[0];
    int d = static_cast<int>(dv);
    if (dv != d || (d != 2 && d != 3 && d != 4 && d != 6))
      throw BadParam("coin_by_name: identity dimension must be one of 2, 3, 4, 6");
    return make("identity(" + std::to_string(d) + ")", Matrix::Identity(d, d),
                {static_cast<double>(d)}, "Identity coin (no chirality mixing)");
  }
  throw UnknownCoin("coin_by_name: unknown coin '" + name + "'");
}

std::vector<CoinSpec> registry_coins() {
  return {
      coin_by_name("hadamard2"), coin_by_name("so2", {kPi / 4.0}),
      coin_by_name("su2x", {kPi / 4.0}), coin_by_name("y2"),
      coin_by_name("hadamard4"), coin_by_name("grover4"),
      coin_by_name("dft4"),      coin_by_name("grover3"),
      coin_by_name("dft3"),
  };
}

Matrix spin_hamiltonian(const CoinSpec& coin) {
  return kI * principal_log_unitary(coin.matrix);
}

DirectionOperators graphene_direction_ops() {
  DirectionOperators ops;
  Complex w = kOmega, w2 = kOmega * kOmega;
  ops.m1 = Matrix(2, 2);
  ops.m1 << 0, 1, 1, 0;
  ops.m2 = Matrix(2, 2);
  ops.m2 << 0, w2, w, 0;
  ops.m3 = Matrix(2, 2);
  ops.m3 << 0, w, w2, 0;
  return ops;
}

Matrix compose_graphene_coin(const Matrix& s3) {
  if (s3.rows() != 3 || s3.cols() != 3)
    throw DimensionMismatch("compose_graphene_coin: axis coin must be 3x3");
  DirectionOperators ops = graphene_direction_ops();
  const Matrix* ms[3] = {&ops.m1, &ops.m2, &ops.m3};
  Matrix out = Matrix::Zero(6, 6);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k)
      out.block<2, 2>(2 * j, 2 * k) = s3(j, k) * (*ms[j]);
  return out;
}

Matrix compose_graphene_coin(const CoinSpec& s3) {
  if (s3.dim != 3)
    throw DimensionMismatch("compose_graphene_coin: coin '" + s3.name + "' is not 3x3");
  return compose_graphene_coin(s3.matrix);
}

}  // namespace qwalk
