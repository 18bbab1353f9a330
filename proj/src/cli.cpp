#include "scatter2d/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "scatter2d/errors.hpp"
#include "scatter2d/greens.hpp"
#include "scatter2d/oracle.hpp"
#include "scatter2d/partialwave.hpp"
#include "scatter2d/sae.hpp"

namespace scatter2d::cli {
namespace {

namespace pot = potentials;
using std::numbers::pi;

using Cell = std::variant<double, long long, std::string, bool>;
using Row = std::vector<Cell>;

struct Table {
  std::vector<std::string> columns;
  std::vector<Row> rows;
};

constexpr double kNotApplicable = std::numeric_limits<double>::quiet_NaN();

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return std::get<std::string>(c);
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

std::string cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? format_double(*d) : "null";
  if (const auto* s = std::get_if<std::string>(&c)) return json_string(*s);
  return cell_text(c);
}

std::string render(const Table& t, Format f) {
  std::string out;
  switch (f) {
    case Format::Csv: {
      for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
      out += '\n';
      for (const Row& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell_text(row[i]);
        out += '\n';
      }
      break;
    }
    case Format::Json: {
      out += "[";
      for (std::size_t r = 0; r < t.rows.size(); ++r) {
        out += r ? ",\n {" : "\n {";
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
          out += (i ? ", " : "") + json_string(t.columns[i]) + ": " + cell_json(t.rows[r][i]);
        }
        out += "}";
      }
      out += t.rows.empty() ? "]\n" : "\n]\n";
      break;
    }
    case Format::Text: {
      for (std::size_t r = 0; r < t.rows.size(); ++r) {
        if (r) out += '\n';
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
          std::string key = t.columns[i];
          std::replace(key.begin(), key.end(), '_', '-');
          out += key + ": " + cell_text(t.rows[r][i]) + '\n';
        }
      }
      break;
    }
  }
  return out;
}

// Runs f(0..n-1) on up to thread_count() workers; results keep index order.
template <class F>
std::vector<std::vector<Row>> parallel_map(std::size_t n, F f) {
  std::vector<std::vector<Row>> out(n);
  const unsigned workers = std::min<std::size_t>(thread_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          out[i] = f(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

struct Problem {
  bool inverse = false;
  double lambda = 0.0;
  pot::Scheme scheme;
  std::string echo;
};

Problem problem_of(const RunConfig& cfg) {
  Problem p;
  if (cfg.inverse_square) {
    p.inverse = true;
    p.lambda = cfg.lambda ? *cfg.lambda : *cfg.two_m_lambda / (2.0 * cfg.m);
    p.echo = "inverse-square lambda=" + format_double(p.lambda) +
             " two-m-lambda=" + format_double(2.0 * cfg.m * p.lambda);
  } else if (cfg.scheme == SchemeKind::Log) {
    p.scheme = pot::LogRunning{*cfg.a0};
    p.echo = "delta scheme=log a0=" + format_double(*cfg.a0);
  } else {
    p.scheme = pot::ConstantStrength{*cfg.v};
    p.echo = "delta scheme=const v=" + format_double(*cfg.v);
  }
  return p;
}

pot::PotentialSpec spec_of(const Problem& p, double a) {
  if (p.inverse) return pot::InverseSquare{p.lambda};
  return pot::RegularizedDelta{p.scheme, a};
}

struct Shift {
  PhaseShift shift;
  std::string method;
};

Shift shift_of(const RunConfig& cfg, const Problem& p, int ell, double k) {
  const ScatteringConfig sc{cfg.m, k};
  sc.validate();
  if (p.inverse) return {partialwave::inverse_square_phase_shift(ell, cfg.m, p.lambda), "closed_form"};
  if (cfg.a) return {partialwave::phase_shift_finite_a(ell, sc, pot::RegularizedDelta{p.scheme, *cfg.a}), "matching"};
  return {partialwave::zero_radius_limit(ell, sc, p.scheme, cfg.a_start, cfg.shrink, cfg.tol), "limit"};
}

double a_cell(const RunConfig& cfg, const Problem& p) {
  if (p.inverse) return kNotApplicable;
  return cfg.a ? *cfg.a : 0.0;
}

std::vector<std::pair<double, int>> k_ell_items(const RunConfig& cfg) {
  std::vector<std::pair<double, int>> items;
  for (double k : cfg.k_grid) {
    for (int l = cfg.ell_min; l <= cfg.ell_max; ++l) items.emplace_back(k, l);
  }
  return items;
}

Table phase_shift_table(const RunConfig& cfg) {
  const Problem p = problem_of(cfg);
  Table t;
  t.columns = {"potential", "m", "k", "a", "a_start", "shrink", "tol", "ell", "method",
               "tan_delta", "delta", "sin_delta"};
  const auto items = k_ell_items(cfg);
  auto blocks = parallel_map(items.size(), [&](std::size_t i) {
    const auto [k, ell] = items[i];
    const Shift s = shift_of(cfg, p, ell, k);
    return std::vector<Row>{Row{p.echo, cfg.m, k, a_cell(cfg, p), cfg.a_start, cfg.shrink, cfg.tol,
                                static_cast<long long>(ell), s.method, s.shift.tan_delta,
                                s.shift.delta(), s.shift.sin_delta()}};
  });
  for (auto& b : blocks) t.rows.insert(t.rows.end(), b.begin(), b.end());
  return t;
}

Table sweep_table(const RunConfig& cfg) {
  const Problem p = problem_of(cfg);
  Table t;
  t.columns = {"potential", "m", "k", "a_start", "shrink", "tol", "ell", "kind", "n",
               "a", "tan_delta", "estimate"};
  const auto items = k_ell_items(cfg);
  auto blocks = parallel_map(items.size(), [&](std::size_t i) {
    const auto [k, ell] = items[i];
    const ScatteringConfig sc{cfg.m, k};
    const auto sweep = partialwave::zero_radius_sweep(ell, sc, p.scheme, cfg.a_start, cfg.shrink, cfg.tol);
    std::vector<Row> rows;
    auto row = [&](const char* kind, long long n, double a, double tan_delta, double estimate) {
      rows.push_back(Row{p.echo, cfg.m, k, cfg.a_start, cfg.shrink, cfg.tol,
                         static_cast<long long>(ell), std::string(kind), n, a, tan_delta, estimate});
    };
    for (std::size_t n = 0; n < sweep.radii.size(); ++n) {
      row("finite", static_cast<long long>(n), sweep.radii[n], sweep.tan_deltas[n], sweep.estimates[n]);
    }
    const long long terms = static_cast<long long>(sweep.radii.size());
    row("limit", terms, 0.0, sweep.limit.tan_delta, sweep.limit.tan_delta);
    if (const auto* lr = std::get_if<pot::LogRunning>(&p.scheme); lr && ell == 0) {
      const double closed = partialwave::scheme_a_closed_form(k, lr->a0).tan_delta;
      row("closed_form", terms, 0.0, closed, closed);
    }
    return rows;
  });
  for (auto& b : blocks) t.rows.insert(t.rows.end(), b.begin(), b.end());
  return t;
}

Table cross_section_table(const RunConfig& cfg) {
  const Problem p = problem_of(cfg);
  Table t;
  t.columns = {"potential", "m", "k", "a", "L", "theta", "re_f", "im_f", "dsigma", "k_dsigma",
               "convergence"};
  auto blocks = parallel_map(cfg.k_grid.size(), [&](std::size_t i) {
    const double k = cfg.k_grid[i];
    const int L = cfg.truncation;
    std::vector<PhaseShift> shifts;
    for (int l = 0; l <= 2 * L; ++l) shifts.push_back(shift_of(cfg, p, l, k).shift);
    const auto amp_l = greens::make_amplitude(std::span(shifts).first(L + 1), k);
    const auto amp_2l = greens::make_amplitude(shifts, k);
    std::vector<Row> rows;
    for (int j = 0; j < cfg.n_theta; ++j) {
      const double theta = cfg.n_theta == 1 ? 0.0 : pi * j / (cfg.n_theta - 1);
      const auto f = amp_l(theta);
      const double ds = std::norm(f);
      const double ds2 = std::norm(amp_2l(theta));
      rows.push_back(Row{p.echo, cfg.m, k, a_cell(cfg, p), static_cast<long long>(L), theta, f.real(),
                         f.imag(), ds, k * ds, std::abs(ds - ds2)});
    }
    return rows;
  });
  for (auto& b : blocks) t.rows.insert(t.rows.end(), b.begin(), b.end());
  return t;
}

Table sae_table(const RunConfig& cfg) {
  std::optional<Problem> p;
  if (!cfg.tan_delta0) p = problem_of(cfg);
  Table t;
  t.columns = {"potential", "m", "k", "tol", "tan_delta0", "A", "B", "dilated_A", "dilated_B",
               "ratio_change", "boundary_residual_vs_free", "scale_invariant"};
  auto blocks = parallel_map(cfg.k_grid.size(), [&](std::size_t i) {
    const double k = cfg.k_grid[i];
    const double t0 = p ? shift_of(cfg, *p, 0, k).shift.tan_delta : *cfg.tan_delta0;
    const auto e = sae::near_origin_expansion(t0, k, 1.0);
    const auto d = sae::dilation_apply(e);
    const double change = (e.A == 0.0 || d.A == 0.0) ? std::numeric_limits<double>::infinity()
                                                     : std::abs(d.B / d.A - e.B / e.A);
    const double residual = sae::boundary_residual({0.0, 1.0}, {t0, 1.0});
    return std::vector<Row>{Row{p ? p->echo : std::string("given"), cfg.m, k, cfg.tol, t0, e.A, e.B,
                                d.A, d.B, change, residual, sae::scale_invariance_test(t0, cfg.tol)}};
  });
  for (auto& b : blocks) t.rows.insert(t.rows.end(), b.begin(), b.end());
  return t;
}

Table oracle_table(const RunConfig& cfg) {
  const Problem p = problem_of(cfg);
  Table t;
  t.columns = {"potential", "m", "k", "a", "ell", "tan_delta_exact", "tan_delta_oracle",
               "sin_delta_exact", "sin_delta_integral", "condition_number", "max_abs_difference"};
  const auto items = k_ell_items(cfg);
  auto blocks = parallel_map(items.size(), [&](std::size_t i) {
    const auto [k, ell] = items[i];
    const ScatteringConfig sc{cfg.m, k};
    const pot::PotentialSpec spec = spec_of(p, cfg.a.value_or(1.0));
    const PhaseShift exact = shift_of(cfg, p, ell, k).shift;
    const auto sol = oracle::integrate_radial(ell, sc, spec, oracle::RadialGrid::for_problem(sc, spec));
    const auto fit = oracle::extract_phase_shift(sol, sc, ell);
    const double integral =
        greens::integral_phase_shift(ell, sc, spec, partialwave::exact_radial_solution(ell, sc, spec));
    const double diff = std::max(std::abs(exact.tan_delta - fit.shift.tan_delta),
                                 std::abs(exact.sin_delta() - integral));
    return std::vector<Row>{Row{p.echo, cfg.m, k, a_cell(cfg, p), static_cast<long long>(ell),
                                exact.tan_delta, fit.shift.tan_delta, exact.sin_delta(), integral,
                                fit.condition_number, diff}};
  });
  for (auto& b : blocks) t.rows.insert(t.rows.end(), b.begin(), b.end());
  return t;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--k-grid: not a number: '" + item + "'");
    }
  }
  return out;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const int l = std::stoi(text);
      return {l, l};
    }
    return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw UsageError("--ell-range: expected lo:hi, got '" + text + "'");
  }
}

constexpr const char* kColumnsHelp[] = {
    "CSV columns: potential,m,k,a,a_start,shrink,tol,ell,method,tan_delta,delta,sin_delta\n"
    "method is closed_form (1/r^2), matching (disc with --a) or limit (a -> 0).",
    "CSV columns: potential,m,k,a_start,shrink,tol,ell,kind,n,a,tan_delta,estimate\n"
    "kind is finite (one row per radius), limit, or closed_form ((pi/2)/ln(k a0/2), log scheme, l = 0).",
    "CSV columns: potential,m,k,a,L,theta,re_f,im_f,dsigma,k_dsigma,convergence\n"
    "convergence is |dsigma(L) - dsigma(2L)|.",
    "CSV columns: potential,m,k,tol,tan_delta0,A,B,dilated_A,dilated_B,ratio_change,"
    "boundary_residual_vs_free,scale_invariant\nDefault format is text.",
    "CSV columns: potential,m,k,a,ell,tan_delta_exact,tan_delta_oracle,sin_delta_exact,"
    "sin_delta_integral,condition_number,max_abs_difference",
};

}  // namespace

unsigned thread_count() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("SCATTER2D_THREADS");
  if (env == nullptr || *env == '\0') return hw;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 0) return hw;
  return n == 0 ? 1u : static_cast<unsigned>(n);
}

void RunConfig::validate() const {
  const bool has_scheme = scheme != SchemeKind::None;
  if (inverse_square && has_scheme) throw UsageError("--inverse-square and --scheme are mutually exclusive");
  if (inverse_square) {
    if (two_m_lambda.has_value() == lambda.has_value()) {
      throw UsageError("--inverse-square needs exactly one of --two-m-lambda, --lambda");
    }
    if (a0 || v || a) throw UsageError("--a0, --v, --a apply to --scheme only");
  } else if (two_m_lambda || lambda) {
    throw UsageError("--two-m-lambda/--lambda need --inverse-square");
  }
  if (scheme == SchemeKind::Log) {
    if (!a0) throw UsageError("--scheme log needs --a0");
    if (v) throw UsageError("--v applies to --scheme const");
  }
  if (scheme == SchemeKind::Const) {
    if (!v) throw UsageError("--scheme const needs --v");
    if (a0) throw UsageError("--a0 applies to --scheme log");
  }
  if (!has_scheme && (a0 || v || a)) throw UsageError("--a0, --v, --a need --scheme");
  if (a && !(*a > 0.0)) throw UsageError("--a must be > 0");

  const bool has_potential = inverse_square || has_scheme;
  switch (command) {
    case Command::PhaseShift:
    case Command::CrossSection:
      if (!has_potential) throw UsageError("a potential is required (--inverse-square or --scheme)");
      break;
    case Command::SweepA:
      if (!has_scheme) throw UsageError("sweep-a needs --scheme");
      if (a) throw UsageError("sweep-a takes --a-start, not --a");
      break;
    case Command::OracleCompare:
      if (!has_potential) throw UsageError("a potential is required (--inverse-square or --scheme)");
      if (has_scheme && !a) throw UsageError("oracle-compare needs a finite --a for a disc");
      break;
    case Command::SaeCheck:
      if (tan_delta0.has_value() == has_potential) {
        throw UsageError("sae-check needs exactly one of --tan-delta0 or a potential");
      }
      break;
  }
  if (tan_delta0 && command != Command::SaeCheck) throw UsageError("--tan-delta0 applies to sae-check only");

  if (!(m > 0.0) || !std::isfinite(m)) throw UsageError("--m must be > 0");
  if (k_grid.empty()) throw UsageError("empty k grid");
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    if (!(k_grid[i] > 0.0) || !std::isfinite(k_grid[i])) throw UsageError("k values must be > 0");
    if (i > 0 && !(k_grid[i] > k_grid[i - 1])) throw UsageError("k grid must be strictly ascending");
  }
  if (ell_min > ell_max) throw UsageError("--ell-range: lo > hi");
  if (!(a_start > 0.0) || !(shrink > 0.0 && shrink < 1.0) || !(tol > 0.0)) {
    throw UsageError("need --a-start > 0, 0 < --shrink < 1, --tol > 0");
  }
  if (truncation < 0 || n_theta < 1) throw UsageError("need --L >= 0 and --n-theta >= 1");
}

Format RunConfig::effective_format() const {
  if (format) return *format;
  return command == Command::SaeCheck ? Format::Text : Format::Csv;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    cfg.validate();
    Table t;
    switch (cfg.command) {
      case Command::PhaseShift: t = phase_shift_table(cfg); break;
      case Command::SweepA: t = sweep_table(cfg); break;
      case Command::CrossSection: t = cross_section_table(cfg); break;
      case Command::SaeCheck: t = sae_table(cfg); break;
      case Command::OracleCompare: t = oracle_table(cfg); break;
    }
    text = render(t, cfg.effective_format());
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  if (cfg.output.empty()) {
    out << text;
    out.flush();
    return 0;
  }
  std::ofstream file(cfg.output, std::ios::binary | std::ios::trunc);
  file << text;
  if (!file) {
    err << "error: cannot write " << cfg.output << '\n';
    return 1;
  }
  return 0;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-dimensional scattering by 1/r^2 and regularized delta potentials (hbar = 1)."};
  app.require_subcommand(1);
  app.name("scatter2d");

  RunConfig cfg;
  std::string scheme_text;
  std::string format_text;
  std::optional<double> k_single;
  std::string k_grid_text;
  std::optional<int> ell_single;
  std::string ell_range_text;

  const std::pair<const char*, Command> commands[] = {
      {"phase-shift", Command::PhaseShift},   {"sweep-a", Command::SweepA},
      {"cross-section", Command::CrossSection}, {"sae-check", Command::SaeCheck},
      {"oracle-compare", Command::OracleCompare}};
  const char* descriptions[] = {"phase shifts per (k, l)", "finite-a sequence and its a -> 0 limit",
                                "scattering amplitude and dsigma/dtheta", "self-adjointness and dilation report",
                                "matching vs integral representation vs ODE oracle"};

  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i].first, descriptions[i]);
    sub->footer(kColumnsHelp[i]);
    sub->add_flag("--inverse-square", cfg.inverse_square, "1/r^2 potential U = lambda/r^2");
    sub->add_option("--two-m-lambda", cfg.two_m_lambda, "coupling 2m*lambda");
    sub->add_option("--lambda", cfg.lambda, "coupling lambda");
    sub->add_option("--scheme", scheme_text, "disc regularization: log (running v) or const")
        ->check(CLI::IsMember({"log", "const"}));
    sub->add_option("--a0", cfg.a0, "scale of the running coupling (log scheme)");
    sub->add_option("--v", cfg.v, "constant strength (const scheme)");
    sub->add_option("--a", cfg.a, "disc radius; omit for the a -> 0 limit");
    sub->add_option("--m", cfg.m, "mass")->capture_default_str();
    auto* k_opt = sub->add_option("--k", k_single, "wavenumber");
    sub->add_option("--k-grid", k_grid_text, "comma-separated ascending wavenumbers")->excludes(k_opt);
    auto* ell_opt = sub->add_option("--ell", ell_single, "partial wave l");
    sub->add_option("--ell-range", ell_range_text, "inclusive range lo:hi")->excludes(ell_opt);
    sub->add_option("--a-start", cfg.a_start, "first radius of the a -> 0 sequence")->capture_default_str();
    sub->add_option("--shrink", cfg.shrink, "ratio a_{n+1}/a_n")->capture_default_str();
    sub->add_option("--tol", cfg.tol, "extrapolation / ratio tolerance")->capture_default_str();
    sub->add_option("--tan-delta0", cfg.tan_delta0, "S-wave tan(delta0) to test");
    sub->add_option("--L", cfg.truncation, "partial-wave truncation")->capture_default_str();
    sub->add_option("--n-theta", cfg.n_theta, "angles on [0, pi]")->capture_default_str();
    sub->add_option("--output", cfg.output, "output file (default stdout)");
    sub->add_option("--format", format_text, "csv, json or text")
        ->check(CLI::IsMember({"csv", "json", "text"}));
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (subs[i]->parsed()) cfg.command = commands[i].second;
    }
    if (scheme_text == "log") cfg.scheme = SchemeKind::Log;
    if (scheme_text == "const") cfg.scheme = SchemeKind::Const;
    if (format_text == "csv") cfg.format = Format::Csv;
    if (format_text == "json") cfg.format = Format::Json;
    if (format_text == "text") cfg.format = Format::Text;
    if (k_single) cfg.k_grid = {*k_single};
    if (!k_grid_text.empty()) cfg.k_grid = parse_grid(k_grid_text);
    if (ell_single) cfg.ell_min = cfg.ell_max = *ell_single;
    if (!ell_range_text.empty()) std::tie(cfg.ell_min, cfg.ell_max) = parse_range(ell_range_text);
    cfg.validate();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }
  return run(cfg, out, err);
}

}  // namespace scatter2d::cli
