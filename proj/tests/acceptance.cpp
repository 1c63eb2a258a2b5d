// Acceptance run: one line per criterion, tolerances pinned below.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "flist/verify.hpp"

using namespace flist;

namespace {

struct Bound {
  std::string relation;  // "<", ">=", "==", "in"
  double lo;
  double hi;
};

// Pinned tolerances by record id; a record passes only against this table.
const std::map<std::string, Bound> kPinned{
    {"1a", {"<", 0, 1e-10}},     {"1b", {"<", 0, 1e-10}},    {"2a", {"<", 0, 1e-6}},     {"2b", {"<", 0, 1e-6}},
    {"3a", {"<", 0, 1e-8}},      {"3b", {"<", 0, 1e-8}},     {"3c", {"<", 0, 1e-8}},     {"3d", {"<", 0, 1e-8}},
    {"4", {"<", 0, 1e-6}},       {"5a", {">=", 2.7, 0}},     {"5b", {"<", 0, 1e-6}},     {"5c", {"<", 0, 1e-3}},
    {"5c+", {"<", 0, 1e-3}},     {"6a", {"<", 0, 1e-4}},     {"6b", {"<", 0, 1e-4}},     {"6c", {"<", 0, 1e-4}},
    {"7a", {"<", 0, 1e-8}},      {"7b", {"<", 0, 1e-10}},    {"7c", {"<", 0, 1e-8}},     {"7c+", {"<", 0, 1e-8}},
    {"8a", {"<", 0, 1e-3}},      {"8b", {"<", 0, 2.0}},      {"8c", {"<", 0, 1e-6}},     {"8d", {"<", 0, 1e-3}},
    {"9s", {"==", 1, 0}},        {"9a", {"in", -0.75, -0.40}}, {"9b", {"<=", 0, 3.0}},
    {"10a", {"<", 0, 1e-10}},    {"10b", {"<", 0, 1e-10}},   {"10c", {"<", 0, 1e-6}},    {"10d", {"<", 0, 1e-300}},
};

bool judge(const CriterionRecord& r) {
  const auto it = kPinned.find(r.id);
  if (it == kPinned.end()) return false;
  const Bound& b = it->second;
  const double m = r.measured;
  if (b.relation == "<") return m < b.hi;
  if (b.relation == "<=") return m <= b.hi;
  if (b.relation == ">=") return m >= b.lo;
  if (b.relation == "==") return m == b.lo;
  return m >= b.lo && m <= b.hi;
}

struct Group {
  int number;
  std::function<std::vector<CriterionRecord>()> run;
  double time_limit;  // seconds; 0 for none
};

}  // namespace

int main() {
  const std::uint64_t seed = 7;
  const std::vector<Group> groups{
      {1, [] { return check_zero_potential(); }, 5.0},
      {10, [&] { return check_pc_coefficients(seed); }, 0.0},
      {2, [] { return check_unitarity(); }, 120.0},
      {3, [&] { return check_symmetries(seed); }, 0.0},
      {4, [] { return check_formulations(); }, 0.0},
      {5, [] { return check_scattering_asymptotics(); }, 0.0},
      {6, [] { return check_soliton_roundtrip(); }, 300.0},
      {7, [&] { return check_rhp_identities(seed); }, 0.0},
      {8, [] { return check_pde_soliton(); }, 600.0},
      {9, [] { return check_resolution_rate(); }, 3600.0},
  };

  std::vector<CriterionRecord> all;
  std::map<int, std::string> lines;
  int failed = 0;
  for (const auto& g : groups) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<CriterionRecord> recs;
    std::string error;
    try {
      recs = g.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = error.empty() && !recs.empty();
    std::string detail;
    for (const auto& r : recs) {
      const bool p = judge(r);
      ok = ok && p;
      char buf[160];
      std::snprintf(buf, sizeof buf, " %s=%.3g%s", r.id.c_str(), r.measured, p ? "" : "(x)");
      detail += buf;
    }
    if (g.time_limit > 0.0) {
      const bool in_time = secs < g.time_limit;
      ok = ok && in_time;
      char buf[96];
      std::snprintf(buf, sizeof buf, " runtime=%.1fs/%.0fs%s", secs, g.time_limit, in_time ? "" : "(x)");
      detail += buf;
    } else {
      char buf[64];
      std::snprintf(buf, sizeof buf, " runtime=%.1fs", secs);
      detail += buf;
    }
    if (!error.empty()) detail += " error: " + error;
    lines[g.number] = std::string(ok ? "PASS" : "FAIL") + " criterion " + std::to_string(g.number) + ":" + detail;
    failed += ok ? 0 : 1;
    all.insert(all.end(), recs.begin(), recs.end());
    std::fflush(stdout);
  }

  // Criterion 11: a second full run must reproduce the report bytes.
  const VerifyOptions opts{seed};
  const std::string staged = report_json("all", opts, all).dump(2);
  const std::string again = report_json("all", opts, verify_suite("all", opts)).dump(2);
  const bool same = staged == again;
  lines[11] = std::string(same ? "PASS" : "FAIL") + " criterion 11: report bytes identical across two runs (" +
              std::to_string(staged.size()) + " bytes)";
  failed += same ? 0 : 1;

  for (const auto& [n, line] : lines) std::printf("%s\n", line.c_str());
  std::printf("%d of 11 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
