#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace slqft {

/// Where a reference value comes from. "exact" marks identities that hold to
/// roundoff, "oracle" marks independently computed closed forms or
/// quadrature-error bounds, "model" marks counts and contrasts whose expected
/// magnitude is set by construction rather than by an identity.
enum class Provenance { exact, oracle, model };

const char* provenance_name(Provenance p);

/// How measured is compared against reference:
///   abs    |measured - reference| <= tolerance
///   upper  measured <= reference
///   lower  measured >= reference
enum class CheckKind { abs, upper, lower };

const char* check_kind_name(CheckKind k);

struct CheckResult {
  std::string name;
  CheckKind kind = CheckKind::abs;
  double measured = 0.0;
  double reference = 0.0;
  Provenance provenance = Provenance::exact;
  double tolerance = 0.0;
  double quad_error = 0.0;
  bool pass = false;
};

CheckResult abs_check(std::string name, double measured, double reference,
                      double tolerance, Provenance prov, double quad_error = 0.0);
CheckResult upper_check(std::string name, double measured, double bound,
                        Provenance prov, double quad_error = 0.0);
CheckResult lower_check(std::string name, double measured, double bound,
                        Provenance prov, double quad_error = 0.0);

struct SuiteConfig {
  std::string suite = "all";
  std::string out_dir = ".";
  std::string resolution = "med";
  std::uint64_t seed = 20240915;
  std::array<double, 3> epsilon_ladder{1e-2, 5e-3, 2.5e-3};
  // scales the tolerance of abs checks only; upper/lower bounds are part of
  // the claims themselves and never move
  double tolerance_scale = 1.0;
  bool fail_fast = false;

  /// Throws std::invalid_argument on unknown suite or resolution, a ladder
  /// that is not positive strictly decreasing, or tolerance_scale <= 0.
  void validate() const;

  /// 0, 1, 2 for low, med, high.
  std::size_t res_index() const;
};

/// Names accepted by SuiteConfig::suite, "all" last.
const std::vector<std::string>& suite_names();

/// Applies one key=value pair. Keys mirror the CLI flags: suite, out_dir,
/// resolution, seed, epsilon_ladder (comma separated), tolerance_scale,
/// fail_fast. Unknown keys and unparsable values throw.
void apply_config_entry(SuiteConfig& cfg, const std::string& key,
                        const std::string& value);

/// Flat key=value file, one pair per line, # starts a comment, blank lines
/// ignored. Throws when the file cannot be opened.
void load_config_file(SuiteConfig& cfg, const std::string& path);

struct VerificationReport {
  std::string suite;
  SuiteConfig config;
  std::vector<CheckResult> checks;
  double wall_seconds = 0.0;

  /// Records the check, applying config.tolerance_scale to abs tolerances
  /// and re-deriving pass.
  void add(CheckResult c);
  bool all_pass() const;
  void sort_checks();

  /// Stable key order; wall_seconds is the last line of the object so the
  /// rest can be compared byte for byte across runs.
  std::string to_json() const;
  void write(const std::string& path) const;
};

/// CSV with a header row; doubles printed round-trip exact.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace slqft
