#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "flist/flist.h"

using nlohmann::json;

namespace {

// Takes ownership of a returned string.
std::string take(char* s) {
  std::string out = s ? s : "";
  fl_string_free(s);
  return out;
}

fl_potential* sampled(double lo, double hi, std::size_t n, double (*re)(double), double (*im)(double)) {
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = lo + (hi - lo) * double(i) / double(n - 1);
    a[i] = re(x);
    b[i] = im(x);
  }
  fl_potential* u = nullptr;
  REQUIRE(fl_potential_create(lo, hi, n, a.data(), b.data(), &u) == FL_OK);
  return u;
}

double zero(double) { return 0.0; }
double bump(double x) { return 0.3 * std::exp(-x * x); }
double tilt(double x) { return 0.15 * x * std::exp(-x * x); }
double ramp(double x) { return 0.1 + 0.0 * x; }

}  // namespace

TEST_CASE("status helpers") {
  CHECK(std::string(fl_version()).size() > 0);
  CHECK(std::string(fl_status_name(FL_DECAY_ERROR)) == "DecayError");
  CHECK(std::string(fl_status_name(FL_OK)) == "Ok");
  CHECK(fl_status_is_config(FL_CONFIG_ERROR) == 1);
  CHECK(fl_status_is_config(FL_IO_ERROR) == 1);
  CHECK(fl_status_is_config(FL_DECAY_ERROR) == 0);
  CHECK(fl_status_is_config(FL_OK) == 0);
}

TEST_CASE("configuration errors carry a message") {
  fl_potential* u = nullptr;
  const double v[1] = {0.0};
  CHECK(fl_potential_create(0.0, 1.0, 1, v, v, &u) == FL_CONFIG_ERROR);
  CHECK(u == nullptr);
  CHECK(std::string(fl_last_error()).size() > 0);
  CHECK(fl_potential_create(0.0, 1.0, 2, nullptr, v, &u) == FL_CONFIG_ERROR);
  char* out = nullptr;
  CHECK(fl_scatter(nullptr, "{}", &out) == FL_CONFIG_ERROR);
  fl_potential* z = sampled(-10.0, 10.0, 201, zero, zero);
  CHECK(fl_scatter(z, "{not json", &out) == FL_CONFIG_ERROR);
  CHECK(fl_potential_read_csv("/nonexistent/u.csv", &u) == FL_IO_ERROR);
  fl_potential_free(z);
}

TEST_CASE("zero potential scatters trivially") {
  fl_potential* z = sampled(-10.0, 10.0, 2001, zero, zero);
  char* out = nullptr;
  REQUIRE(fl_scatter(z, R"({"k_min": 0.05, "k_max": 8, "n_per_ray": 100})", &out) == FL_OK);
  const json j = json::parse(take(out));
  REQUIRE(j["samples"].size() == 400);
  double worst = 0.0;
  for (const auto& r : j["samples"]) {
    worst = std::max(worst, std::hypot(r[2].get<double>() - 1.0, r[3].get<double>()));
    worst = std::max(worst, std::hypot(r[4].get<double>(), r[5].get<double>()));
  }
  CHECK(worst < 1e-10);
  fl_potential_free(z);
}

TEST_CASE("numeric failures map to their codes") {
  fl_potential* bad = sampled(-10.0, 10.0, 201, ramp, zero);
  char* out = nullptr;
  CHECK(fl_scatter(bad, "{}", &out) == FL_DECAY_ERROR);
  CHECK(out == nullptr);
  fl_potential_free(bad);

  fl_potential* u = sampled(-12.0, 12.0, 2401, bump, tilt);
  REQUIRE(fl_scatter(u, R"({"k_min": 0.1, "k_max": 3, "n_per_ray": 10})", &out) == FL_OK);
  const std::string sd = take(out);
  CHECK(fl_asymptote(sd.c_str(), R"({"cone": [-1, 1, -1.0, -0.5], "t": 50})", &out) == FL_DEGENERATE_CONE);
  CHECK(fl_asymptote(sd.c_str(), R"({"cone": [-1, 1, -0.6, -0.5], "t": 50, "n_points": 5})", &out) == FL_OK);
  const json rows = json::parse(take(out));
  CHECK(rows["rows"].size() == 5);
  CHECK(rows["n_in_cone"] == 0);
  fl_potential_free(u);
}

TEST_CASE("soliton round trip through the C interface") {
  const char* ens = R"({"poles": [{"re_k": 0.7071067811865476, "im_k": 0.7071067811865476, "re_c": 1, "im_c": 0}]})";
  fl_potential* u = nullptr;
  REQUIRE(fl_nsoliton(ens, R"({"x_min": -25, "x_max": 25, "n_points": 5001})", &u) == FL_OK);
  double lo = 0.0, hi = 0.0;
  std::size_t n = 0;
  REQUIRE(fl_potential_grid(u, &lo, &hi, &n) == FL_OK);
  CHECK(n == 5001);
  char* out = nullptr;
  REQUIRE(fl_spectrum(u, R"({"box": [0.3, 1.5, 0.3, 1.5]})", &out) == FL_OK);
  const json j = json::parse(take(out));
  REQUIRE(j["poles"].size() == 1);
  CHECK(std::abs(j["poles"][0]["re_k"].get<double>() - std::sqrt(0.5)) < 1e-4);
  CHECK(std::abs(j["poles"][0]["re_c"].get<double>() - 1.0) < 1e-4);
  CHECK(fl_spectrum(u, "{}", &out) == FL_CONFIG_ERROR);

  REQUIRE(fl_potential_csv(u, R"({"tool": "test"})", &out) == FL_OK);
  const std::string csv = take(out);
  CHECK(csv.rfind("# ", 0) == 0);
  fl_potential_free(u);
}

TEST_CASE("evolution handle") {
  fl_potential* z = sampled(-20.0, 19.9, 400, zero, zero);
  fl_evolution* run = nullptr;
  REQUIRE(fl_evolve(z, R"({"dt": 0.01, "t_end": 0.1, "snap_every": 0.05})", &run) == FL_OK);
  CHECK(fl_evolution_count(run) == 3);
  double t = -1.0;
  fl_potential* s = nullptr;
  REQUIRE(fl_evolution_snapshot(run, 2, &t, &s) == FL_OK);
  CHECK(t == doctest::Approx(0.1));
  std::vector<double> re(400), im(400);
  REQUIRE(fl_potential_values(s, re.data(), im.data()) == FL_OK);
  for (std::size_t i = 0; i < 400; ++i) CHECK(re[i] == 0.0);
  CHECK(fl_evolution_snapshot(run, 3, &t, &s) == FL_CONFIG_ERROR);
  char* out = nullptr;
  REQUIRE(fl_evolution_summary(run, &out) == FL_OK);
  CHECK(json::parse(take(out)).contains("conserved_drift"));
  fl_potential_free(s);
  fl_evolution_free(run);
  CHECK(fl_evolve(z, R"({"dt": 0.01, "t_end": 0.1, "zero_mode": "bogus"})", &run) == FL_CONFIG_ERROR);
  fl_potential_free(z);
}

TEST_CASE("provenance and verify") {
  char* out = nullptr;
  REQUIRE(fl_provenance("scatter", R"({"k_max": 5})", nullptr, 0, &out) == FL_OK);
  const json p = json::parse(take(out));
  CHECK(p["command"] == "scatter");
  CHECK(p["parameters"]["k_max"] == 5);

  int pass = 0;
  REQUIRE(fl_verify("trivial", 7, &out, &pass) == FL_OK);
  const std::string a = take(out);
  CHECK(pass == 1);
  REQUIRE(fl_verify("trivial", 7, &out, &pass) == FL_OK);
  CHECK(take(out) == a);
  CHECK(fl_verify("nope", 7, &out, &pass) == FL_CONFIG_ERROR);
}
