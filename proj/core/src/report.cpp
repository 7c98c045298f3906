#include "supercms/report.hpp"

#include <algorithm>
#include <cstdio>

#include "json.hpp"

namespace supercms {

namespace {
std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
} // namespace

std::string render_point(const Configuration &pt) {
  std::string s = "s1=[";
  for (std::size_t i = 0; i < pt.s1.size(); ++i)
    s += (i ? "," : "") + fmt(pt.s1[i]);
  s += "] s2=[";
  for (std::size_t i = 0; i < pt.s2.size(); ++i)
    s += (i ? "," : "") + fmt(pt.s2[i]);
  s += "]";
  return s;
}

void canonicalize(SuiteReport &report) {
  std::stable_sort(report.checks.begin(), report.checks.end(),
                   [](const CheckResult &a, const CheckResult &b) {
                     return a.name < b.name;
                   });
}

namespace {

nlohmann::ordered_json to_json_obj(const SuiteReport &report) {
  nlohmann::ordered_json j;
  j["suite"] = report.suite;
  j["pass"] = report.all_pass();
  auto &arr = j["checks"] = nlohmann::ordered_json::array();
  for (const auto &c : report.checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["model"] = c.model;
    e["point"] = c.point;
    e["residual"] = c.residual;
    e["tolerance"] = c.tolerance;
    e["pass"] = c.pass;
    arr.push_back(std::move(e));
  }
  return j;
}

} // namespace

std::string to_json(const SuiteReport &report) {
  return to_json_obj(report).dump(2) + "\n";
}

std::string to_json(const std::vector<SuiteReport> &reports) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto &r : reports)
    j.push_back(to_json_obj(r));
  return j.dump(2) + "\n";
}

} // namespace supercms
