#include "duron/report.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

namespace duron::report {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void JsonWriter::separator() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!needs_comma_.empty()) {
    if (needs_comma_.back()) os_ << ',';
    needs_comma_.back() = true;
  }
}

std::string JsonWriter::escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

void JsonWriter::begin_object() {
  separator();
  os_ << '{';
  needs_comma_.push_back(false);
}

void JsonWriter::end_object() {
  os_ << '}';
  needs_comma_.pop_back();
}

void JsonWriter::begin_array() {
  separator();
  os_ << '[';
  needs_comma_.push_back(false);
}

void JsonWriter::end_array() {
  os_ << ']';
  needs_comma_.pop_back();
}

void JsonWriter::key(const std::string& k) {
  separator();
  os_ << '"' << escape(k) << "\":";
  pending_key_ = true;
}

void JsonWriter::value(const std::string& v) {
  separator();
  os_ << '"' << escape(v) << '"';
}

void JsonWriter::value(double v) {
  separator();
  os_ << format_double(v);
}

void JsonWriter::value(long long v) {
  separator();
  os_ << v;
}

void JsonWriter::value(bool v) {
  separator();
  os_ << (v ? "true" : "false");
}

void write_report(std::ostream& os, const ConfigKV& config, const std::vector<Suite>& suites,
                  bool with_timing, double runtime_ms) {
  JsonWriter w(os);
  w.begin_object();
  w.key("config");
  w.begin_object();
  for (const auto& [k, v] : config) {
    w.key(k);
    w.value(v);
  }
  w.end_object();

  long long passed = 0, failed = 0;
  w.key("checks");
  w.begin_array();
  for (const auto& suite : suites) {
    for (const auto& c : suite.checks) {
      w.begin_object();
      w.key("name");
      w.value(suite.name + "." + c.name);
      w.key("paper_anchor");
      w.value(c.anchor);
      w.key("value");
      w.value(c.value);
      w.key("tolerance");
      w.value(c.tolerance);
      w.key("pass");
      w.value(c.pass);
      w.end_object();
      (c.pass ? passed : failed) += 1;
    }
  }
  w.end_array();

  w.key("summary");
  w.begin_object();
  w.key("passed");
  w.value(passed);
  w.key("failed");
  w.value(failed);
  if (with_timing) {
    w.key("runtime_ms");
    w.value(runtime_ms);
  }
  w.end_object();
  w.end_object();
  os << '\n';
}

void write_report_csv(std::ostream& os, const std::vector<Suite>& suites) {
  os << "name,paper_anchor,value,tolerance,pass\n";
  for (const auto& suite : suites)
    for (const auto& c : suite.checks)
      os << suite.name << '.' << c.name << ',' << c.anchor << ',' << format_double(c.value)
         << ',' << format_double(c.tolerance) << ',' << (c.pass ? "true" : "false") << '\n';
}

const std::vector<std::string>& required_anchors() {
  static const std::vector<std::string> anchors = {
      // process algebra
      "rule-1", "rule-2", "rule-3", "rule-4", "rule-5", "eq-1", "eq-2", "eq-4", "ritz",
      // classical bilocal
      "eq-6-7", "eq-10-11", "eq-12", "eq-13", "eq-14", "eq-15",
      // quantum bilocal
      "eq-16", "eq-19", "eq-20", "eq-22", "eq-25",
      // brackets / bi-algebra
      "moyal-bracket", "baker-bracket", "eq-26", "eq-27-28", "eq-29-30", "eq-31",
      "eq-32-33", "eq-34", "eq-35", "eq-36",
      // thermofield
      "eq-37", "eq-38", "eq-39", "eq-44-45", "eq-48-51", "eq-52-53", "eq-54-56", "eq-57",
      "sec-6.1"};
  return anchors;
}

Check anchor_coverage_check(const std::vector<Suite>& suites) {
  std::set<std::string> seen;
  for (const auto& suite : suites)
    for (const auto& c : suite.checks) seen.insert(c.anchor);
  long long missing = 0;
  for (const auto& a : required_anchors())
    if (!seen.count(a)) ++missing;
  Check c;
  c.name = "anchor_coverage";
  c.anchor = "plumbing";
  c.value = static_cast<double>(missing);
  c.tolerance = 0.0;
  c.pass = missing == 0;
  return c;
}

}  // namespace duron::report
