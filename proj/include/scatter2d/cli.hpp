#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace scatter2d::cli {

enum class Command { PhaseShift, SweepA, CrossSection, SaeCheck, OracleCompare };
enum class Format { Csv, Json, Text };
enum class SchemeKind { None, Log, Const };

/// Invalid flag combination; exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Command command = Command::PhaseShift;

  bool inverse_square = false;
  std::optional<double> two_m_lambda;
  std::optional<double> lambda;
  SchemeKind scheme = SchemeKind::None;
  std::optional<double> a0;
  std::optional<double> v;
  /// Disc radius; absent means the a -> 0 limit.
  std::optional<double> a;

  double m = 0.5;
  std::vector<double> k_grid{1.0};
  int ell_min = 0;
  int ell_max = 0;

  double a_start = 1e-2;
  double shrink = 0.5;
  double tol = 1e-6;

  std::optional<double> tan_delta0;
  /// Partial-wave truncation for cross-section (checked against 2L).
  int truncation = 8;
  int n_theta = 13;

  std::string output;
  std::optional<Format> format;

  /// Throws UsageError.
  void validate() const;
  [[nodiscard]] Format effective_format() const;
};

/// Runs one command and writes the table to out (or cfg.output).
/// Returns 0, or 1 after printing "error: ..." to err.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and runs. Usage errors print to err and return 2.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Worker count from SCATTER2D_THREADS (0 = serial, unset = hardware).
unsigned thread_count();

}  // namespace scatter2d::cli
