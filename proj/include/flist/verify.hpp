#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flist/io.hpp"

namespace flist {

struct CriterionRecord {
  std::string id;        // e.g. "1a"
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  std::string relation;  // "<", "<=", ">=", "in[lo,hi]"
  bool pass = false;
};

struct VerifyOptions {
  std::uint64_t seed = 7;
};

// Suites: trivial, roundtrip, soliton, rates, all.
std::vector<CriterionRecord> verify_suite(const std::string& suite, const VerifyOptions& opts = {});
bool known_suite(const std::string& suite);

json report_json(const std::string& suite, const VerifyOptions& opts, const std::vector<CriterionRecord>& recs);

// Individual criterion groups (numbered as in the acceptance list).
std::vector<CriterionRecord> check_zero_potential();
std::vector<CriterionRecord> check_unitarity();
std::vector<CriterionRecord> check_symmetries(std::uint64_t seed);
std::vector<CriterionRecord> check_formulations();
std::vector<CriterionRecord> check_scattering_asymptotics();
std::vector<CriterionRecord> check_soliton_roundtrip();
std::vector<CriterionRecord> check_rhp_identities(std::uint64_t seed);
std::vector<CriterionRecord> check_pde_soliton();
std::vector<CriterionRecord> check_resolution_rate();
std::vector<CriterionRecord> check_pc_coefficients(std::uint64_t seed);

}  // namespace flist
