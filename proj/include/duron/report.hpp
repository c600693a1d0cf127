#ifndef DURON_REPORT_HPP
#define DURON_REPORT_HPP

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace duron::report {

// One verified fact. `anchor` tags the identity the check exercises ("eq-31",
// "rule-3", ...) or "plumbing" for infrastructure checks. `value` is the
// measured deviation, `tolerance` the bound it must stay under (0 for exact
// checks).
struct Check {
  std::string name;
  std::string anchor;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

inline Check make_check(std::string name, std::string anchor, double value, double tol) {
  Check c;
  c.name = std::move(name);
  c.anchor = std::move(anchor);
  c.value = value;
  c.tolerance = tol;
  c.pass = value <= tol;
  return c;
}

inline Check make_exact_check(std::string name, std::string anchor, bool ok) {
  Check c;
  c.name = std::move(name);
  c.anchor = std::move(anchor);
  c.value = ok ? 0.0 : 1.0;
  c.tolerance = 0.0;
  c.pass = ok;
  return c;
}

struct Suite {
  std::string name;
  std::vector<Check> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Doubles are always rendered with 17 significant digits so identical runs
// serialize to identical bytes.
std::string format_double(double v);

// Minimal streaming JSON writer. Keys are emitted in insertion order and all
// numbers go through format_double, which is what makes reports byte-stable.
class JsonWriter {
 public:
  explicit JsonWriter(std::ostream& os) : os_(os) {}

  void begin_object();
  void end_object();
  void begin_array();
  void end_array();
  void key(const std::string& k);
  void value(const std::string& v);
  void value(const char* v) { value(std::string(v)); }
  void value(double v);
  void value(long long v);
  void value(int v) { value(static_cast<long long>(v)); }
  void value(bool v);

 private:
  void separator();
  static std::string escape(const std::string& s);
  std::ostream& os_;
  std::vector<bool> needs_comma_;
  bool pending_key_ = false;
};

using ConfigKV = std::vector<std::pair<std::string, std::string>>;

// Full report: {config, checks: [...], summary: {passed, failed}}.
// runtime_ms is only emitted when with_timing is set, because identical
// configurations must produce byte-identical files.
void write_report(std::ostream& os, const ConfigKV& config, const std::vector<Suite>& suites,
                  bool with_timing = false, double runtime_ms = 0.0);

void write_report_csv(std::ostream& os, const std::vector<Suite>& suites);

// Identity tags every full run must touch; verify-all appends a coverage
// check comparing these against the anchors present in its report.
const std::vector<std::string>& required_anchors();
Check anchor_coverage_check(const std::vector<Suite>& suites);

}  // namespace duron::report

#endif
