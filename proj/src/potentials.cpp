#include "scatter2d/potentials.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

#include "scatter2d/errors.hpp"
#include "scatter2d/specfun.hpp"

namespace scatter2d::potentials {
namespace {

using std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_number(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw DomainError("potential spec: missing key '" + key + "'");
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != it->second.size()) {
    throw DomainError("potential spec: bad number for '" + key + "': " + it->second);
  }
  return value;
}

}  // namespace

void validate(const PotentialSpec& p) {
  std::visit(overloaded{
                 [](const InverseSquare& s) {
                   require(std::isfinite(s.lambda), "inverse-square: lambda must be finite");
                 },
                 [](const RegularizedDelta& d) {
                   require(std::isfinite(d.radius_a) && d.radius_a > 0.0,
                           "regularized delta: radius a must be > 0");
                   std::visit(overloaded{
                                  [](const LogRunning& s) {
                                    require(std::isfinite(s.a0) && s.a0 > 0.0,
                                            "log-running scheme: a0 must be > 0");
                                  },
                                  [](const ConstantStrength& s) {
                                    require(std::isfinite(s.v),
                                            "constant-strength scheme: v must be finite");
                                  },
                              },
                              d.scheme);
                 },
             },
             p);
}

double pole_radius(const LogRunning& s) { return s.a0 * std::exp(-specfun::euler_gamma); }

double coupling(const Scheme& s, double a) {
  return std::visit(overloaded{
                        [a](const LogRunning& r) {
                          const double denom = std::log(a / r.a0) + specfun::euler_gamma;
                          if (std::abs(denom) < 1e-14) {
                            throw PoleError("running coupling v(a) has a pole at a = a0*exp(-gamma) = " +
                                            format_number(pole_radius(r)));
                          }
                          return 2.0 * pi / denom;
                        },
                        [](const ConstantStrength& c) { return c.v; },
                    },
                    s);
}

double evaluate(const PotentialSpec& p, double r) {
  require(r > 0.0, "evaluate: r must be > 0");
  return std::visit(overloaded{
                        [r](const InverseSquare& s) { return s.lambda / (r * r); },
                        [r](const RegularizedDelta& d) {
                          const double a = d.radius_a;
                          const double v = coupling(d.scheme, a);
                          return r <= a ? v / (pi * a * a) : 0.0;
                        },
                    },
                    p);
}

ScaledPotential scale_transform(const PotentialSpec& p, ScaleTransformation t) {
  require(t.rho > 0.0 && std::isfinite(t.rho), "scale transformation: rho must be > 0");
  if (t.rho == 1.0) return {p, 1.0};
  return std::visit(overloaded{
                        [&](const InverseSquare& s) -> ScaledPotential { return {s, t.rho}; },
                        [&](const RegularizedDelta& d) -> ScaledPotential {
                          // U(r / sqrt(rho)) is a well of radius sqrt(rho) a and height
                          // rho * v(a) / (pi a'^2); the family member at a' carries v(a').
                          RegularizedDelta moved = d;
                          moved.radius_a = std::sqrt(t.rho) * d.radius_a;
                          return {moved, t.rho};
                        },
                    },
                    p);
}

double scale_covariance_defect(const Scheme& s, double a, double rho) {
  require(a > 0.0 && rho > 0.0, "scale_covariance_defect: a and rho must be > 0");
  if (rho == 1.0) {
    (void)coupling(s, a);
    return 0.0;
  }
  return coupling(s, a / std::sqrt(rho)) - coupling(s, a);
}

std::string to_key_value(const PotentialSpec& p) {
  return std::visit(overloaded{
                        [](const InverseSquare& s) {
                          return "kind=inverse-square lambda=" + format_number(s.lambda);
                        },
                        [](const RegularizedDelta& d) {
                          std::string out = "kind=delta ";
                          out += std::visit(overloaded{
                                                [](const LogRunning& s) {
                                                  return "scheme=log a0=" + format_number(s.a0);
                                                },
                                                [](const ConstantStrength& s) {
                                                  return "scheme=const v=" + format_number(s.v);
                                                },
                                            },
                                            d.scheme);
                          out += " a=" + format_number(d.radius_a);
                          return out;
                        },
                    },
                    p);
}

PotentialSpec parse_key_value(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw DomainError("potential spec: expected key=value, got '" + token + "'");
    }
    kv[token.substr(0, eq)] = token.substr(eq + 1);
  }
  auto kind = kv.find("kind");
  if (kind == kv.end()) throw DomainError("potential spec: missing key 'kind'");

  PotentialSpec spec;
  if (kind->second == "inverse-square") {
    spec = InverseSquare{parse_number(kv, "lambda")};
  } else if (kind->second == "delta") {
    auto scheme = kv.find("scheme");
    if (scheme == kv.end()) throw DomainError("potential spec: missing key 'scheme'");
    RegularizedDelta d;
    d.radius_a = parse_number(kv, "a");
    if (scheme->second == "log") {
      d.scheme = LogRunning{parse_number(kv, "a0")};
    } else if (scheme->second == "const") {
      d.scheme = ConstantStrength{parse_number(kv, "v")};
    } else {
      throw DomainError("potential spec: unknown scheme '" + scheme->second + "'");
    }
    spec = d;
  } else {
    throw DomainError("potential spec: unknown kind '" + kind->second + "'");
  }
  validate(spec);
  return spec;
}

}  // namespace scatter2d::potentials
