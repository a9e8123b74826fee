#include "slqft/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace slqft {

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::exact: return "exact";
    case Provenance::oracle: return "oracle";
    case Provenance::model: return "model";
  }
  return "?";
}

const char* check_kind_name(CheckKind k) {
  switch (k) {
    case CheckKind::abs: return "abs";
    case CheckKind::upper: return "upper";
    case CheckKind::lower: return "lower";
  }
  return "?";
}

namespace {

bool evaluate(const CheckResult& c) {
  switch (c.kind) {
    case CheckKind::abs: return std::abs(c.measured - c.reference) <= c.tolerance;
    case CheckKind::upper: return c.measured <= c.reference;
    case CheckKind::lower: return c.measured >= c.reference;
  }
  return false;
}

}  // namespace

CheckResult abs_check(std::string name, double measured, double reference,
                      double tolerance, Provenance prov, double quad_error) {
  CheckResult c{std::move(name), CheckKind::abs, measured, reference,
                prov,            tolerance,      quad_error, false};
  c.pass = evaluate(c);
  return c;
}

CheckResult upper_check(std::string name, double measured, double bound,
                        Provenance prov, double quad_error) {
  CheckResult c{std::move(name), CheckKind::upper, measured, bound,
                prov,            0.0,              quad_error, false};
  c.pass = evaluate(c);
  return c;
}

CheckResult lower_check(std::string name, double measured, double bound,
                        Provenance prov, double quad_error) {
  CheckResult c{std::move(name), CheckKind::lower, measured, bound,
                prov,            0.0,              quad_error, false};
  c.pass = evaluate(c);
  return c;
}

void SuiteConfig::validate() const {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw std::invalid_argument("unknown suite: " + suite);
  if (resolution != "low" && resolution != "med" && resolution != "high")
    throw std::invalid_argument("resolution must be low, med, or high");
  for (double e : epsilon_ladder)
    if (!(e > 0.0)) throw std::invalid_argument("epsilon ladder must be positive");
  if (!(epsilon_ladder[0] > epsilon_ladder[1] &&
        epsilon_ladder[1] > epsilon_ladder[2]))
    throw std::invalid_argument("epsilon ladder must be strictly decreasing");
  if (!(tolerance_scale > 0.0))
    throw std::invalid_argument("tolerance_scale must be positive");
}

std::size_t SuiteConfig::res_index() const {
  if (resolution == "low") return 0;
  if (resolution == "high") return 2;
  return 1;
}

namespace {

double parse_double(const std::string& s, const std::string& key) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad value for " + key + ": " + s);
  }
  if (used != s.size()) throw std::invalid_argument("bad value for " + key + ": " + s);
  return v;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void apply_config_entry(SuiteConfig& cfg, const std::string& key,
                        const std::string& value) {
  if (key == "suite") {
    cfg.suite = value;
  } else if (key == "out_dir") {
    cfg.out_dir = value;
  } else if (key == "resolution") {
    cfg.resolution = value;
  } else if (key == "seed") {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(value, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad value for seed: " + value);
    }
    if (used != value.size())
      throw std::invalid_argument("bad value for seed: " + value);
    cfg.seed = v;
  } else if (key == "epsilon_ladder") {
    std::array<double, 3> ladder{};
    std::stringstream ss(value);
    std::string part;
    std::size_t i = 0;
    while (std::getline(ss, part, ',')) {
      if (i >= 3) throw std::invalid_argument("epsilon_ladder needs 3 values");
      ladder[i++] = parse_double(trim(part), "epsilon_ladder");
    }
    if (i != 3) throw std::invalid_argument("epsilon_ladder needs 3 values");
    cfg.epsilon_ladder = ladder;
  } else if (key == "tolerance_scale") {
    cfg.tolerance_scale = parse_double(value, "tolerance_scale");
  } else if (key == "fail_fast") {
    if (value == "true" || value == "1") cfg.fail_fast = true;
    else if (value == "false" || value == "0") cfg.fail_fast = false;
    else throw std::invalid_argument("bad value for fail_fast: " + value);
  } else {
    throw std::invalid_argument("unknown config key: " + key);
  }
}

void load_config_file(SuiteConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key=value");
    apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void VerificationReport::add(CheckResult c) {
  if (c.kind == CheckKind::abs) {
    c.tolerance *= config.tolerance_scale;
    c.pass = std::abs(c.measured - c.reference) <= c.tolerance;
  }
  checks.push_back(std::move(c));
}

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

void VerificationReport::sort_checks() {
  std::sort(checks.begin(), checks.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
}

std::string VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  nlohmann::ordered_json jc;
  jc["epsilon_ladder"] = config.epsilon_ladder;
  jc["fail_fast"] = config.fail_fast;
  jc["out_dir"] = config.out_dir;
  jc["resolution"] = config.resolution;
  jc["seed"] = config.seed;
  jc["suite"] = config.suite;
  jc["tolerance_scale"] = config.tolerance_scale;
  j["config"] = jc;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["kind"] = check_kind_name(c.kind);
    e["measured"] = c.measured;
    e["name"] = c.name;
    e["pass"] = c.pass;
    e["provenance"] = provenance_name(c.provenance);
    e["quad_error"] = c.quad_error;
    e["reference"] = c.reference;
    e["tolerance"] = c.tolerance;
    arr.push_back(std::move(e));
  }
  j["checks"] = arr;
  j["all_pass"] = all_pass();
  j["wall_seconds"] = wall_seconds;
  return j.dump(2) + "\n";
}

void VerificationReport::write(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report: " + path);
  out << to_json();
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write csv: " + path);
  for (std::size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << "\n";
  char buf[32];
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      out << (i ? "," : "") << buf;
    }
    out << "\n";
  }
}

}  // namespace slqft
