#include "flist/flist.h"

#include <cstring>
#include <string>

#include "flist/asymptotic_engine.hpp"
#include "flist/errors.hpp"
#include "flist/io.hpp"
#include "flist/pde_oracle.hpp"
#include "flist/soliton_rhp.hpp"
#include "flist/spectrum_trace.hpp"
#include "flist/verify.hpp"

struct fl_potential {
  flist::SampledPotential u;
};

struct fl_evolution {
  flist::EvolutionResult run;
  flist::json summary;
};

namespace {

using flist::json;

thread_local std::string g_last_error;

fl_status status_of(flist::ErrorKind k) { return static_cast<fl_status>(static_cast<int>(k) + 1); }

template <class F>
fl_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return FL_OK;
  } catch (const flist::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const json::exception& e) {
    g_last_error = std::string("ConfigError: ") + e.what();
    return FL_CONFIG_ERROR;
  } catch (const std::exception& e) {
    g_last_error = std::string("InternalError: ") + e.what();
    return FL_INTERNAL_ERROR;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json parse_options(const char* text) {
  if (text == nullptr || *text == '\0') return json::object();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    flist::raise(flist::ErrorKind::Config, std::string("options are not valid JSON: ") + e.what());
  }
  if (!j.is_object()) flist::raise(flist::ErrorKind::Config, "options must be a JSON object");
  return j;
}

template <class T>
T opt(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    flist::raise(flist::ErrorKind::Config, std::string("option '") + key + "' has the wrong type");
  }
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) flist::raise(flist::ErrorKind::Config, std::string(name) + " must be positive");
}

void need(const void* p, const char* name) {
  if (p == nullptr) flist::raise(flist::ErrorKind::Config, std::string(name) + " is null");
}

flist::JostOptions jost_options(const json& o) {
  flist::JostOptions j;
  j.k_switch = opt(o, "k_switch", j.k_switch);
  j.a_floor = opt(o, "a_floor", j.a_floor);
  j.decay_tol = opt(o, "decay_tol", j.decay_tol);
  require_positive(j.k_switch, "k_switch");
  require_positive(j.a_floor, "a_floor");
  require_positive(j.decay_tol, "decay_tol");
  return j;
}

flist::ZeroSearchOptions search_options(const json& o) {
  flist::ZeroSearchOptions z;
  z.edge_samples = opt(o, "edge_samples", z.edge_samples);
  z.max_depth = opt(o, "max_depth", z.max_depth);
  z.newton_tol = opt(o, "newton_tol", z.newton_tol);
  z.simple_tol = opt(o, "simple_tol", z.simple_tol);
  if (z.edge_samples < 4) flist::raise(flist::ErrorKind::Config, "edge_samples must be at least 4");
  require_positive(z.newton_tol, "newton_tol");
  require_positive(z.simple_tol, "simple_tol");
  return z;
}

flist::SearchBox box_of(const json& o) {
  const auto b = o.at("box").get<std::vector<double>>();
  if (b.size() != 4) flist::raise(flist::ErrorKind::Config, "box needs [re_min, re_max, im_min, im_max]");
  return {b[0], b[1], b[2], b[3]};
}

flist::FlParams params_of(const json& o) {
  flist::FlParams p;
  p.alpha = opt(o, "alpha", p.alpha);
  p.beta = opt(o, "beta", p.beta);
  require_positive(p.alpha, "alpha");
  require_positive(p.beta, "beta");
  return p;
}

flist::Cone cone_of(const json& o) {
  const auto c = o.at("cone").get<std::vector<double>>();
  if (c.size() != 4) flist::raise(flist::ErrorKind::Config, "cone needs [x1, x2, v1, v2]");
  return {c[0], c[1], c[2], c[3]};
}

json parse_document(const char* text, const char* what) {
  if (text == nullptr) flist::raise(flist::ErrorKind::Config, std::string(what) + " is null");
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    flist::raise(flist::ErrorKind::Config, std::string(what) + " is not valid JSON: " + e.what());
  }
}

}  // namespace

extern "C" {

const char* fl_version(void) { return FLIST_VERSION; }

const char* fl_last_error(void) { return g_last_error.c_str(); }

const char* fl_status_name(fl_status status) {
  if (status == FL_OK) return "Ok";
  if (status == FL_INTERNAL_ERROR) return "InternalError";
  const int k = static_cast<int>(status) - 1;
  if (k < 0 || k > static_cast<int>(flist::ErrorKind::StabilityViolation)) return "UnknownError";
  return flist::error_name(static_cast<flist::ErrorKind>(k));
}

int fl_status_is_config(fl_status status) { return status == FL_CONFIG_ERROR || status == FL_IO_ERROR ? 1 : 0; }

void fl_string_free(char* s) { delete[] s; }

fl_status fl_provenance(const char* command, const char* parameters_json, const char* const* input_paths,
                        size_t n_inputs, char** provenance_json) {
  return guarded([&] {
    need(command, "command");
    need(provenance_json, "provenance_json");
    const json params = parameters_json ? parse_document(parameters_json, "parameters") : json::object();
    json inputs = json::object();
    for (size_t i = 0; i < n_inputs; ++i) {
      need(input_paths[i], "input path");
      inputs[input_paths[i]] = flist::file_hash(input_paths[i]);
    }
    *provenance_json = dup_string(flist::provenance(command, params, inputs).dump());
  });
}

fl_status fl_potential_create(double x_min, double x_max, size_t n, const double* re, const double* im,
                              fl_potential** out) {
  return guarded([&] {
    need(re, "re");
    need(im, "im");
    need(out, "out");
    flist::cvec v(n);
    for (size_t i = 0; i < n; ++i) v[i] = {re[i], im[i]};
    const auto g = flist::make_grid(x_min, x_max, n);
    *out = new fl_potential{flist::make_potential(g, std::move(v))};
  });
}

fl_status fl_potential_read_csv(const char* path, fl_potential** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new fl_potential{flist::read_potential_csv(path)};
  });
}

fl_status fl_potential_write_csv(const fl_potential* u, const char* path, const char* provenance_json) {
  return guarded([&] {
    need(u, "potential");
    need(path, "path");
    const json prov = provenance_json ? parse_document(provenance_json, "provenance") : json::object();
    flist::write_potential_csv(path, u->u, prov);
  });
}

fl_status fl_potential_csv(const fl_potential* u, const char* provenance_json, char** csv) {
  return guarded([&] {
    need(u, "potential");
    need(csv, "csv");
    const json prov = provenance_json ? parse_document(provenance_json, "provenance") : json::object();
    *csv = dup_string(flist::potential_csv(u->u, prov));
  });
}

fl_status fl_potential_grid(const fl_potential* u, double* x_min, double* x_max, size_t* n) {
  return guarded([&] {
    need(u, "potential");
    if (x_min) *x_min = u->u.grid.x_min;
    if (x_max) *x_max = u->u.grid.x_max;
    if (n) *n = u->u.grid.n_points;
  });
}

fl_status fl_potential_values(const fl_potential* u, double* re, double* im) {
  return guarded([&] {
    need(u, "potential");
    for (size_t i = 0; i < u->u.values.size(); ++i) {
      if (re) re[i] = u->u.values[i].real();
      if (im) im[i] = u->u.values[i].imag();
    }
  });
}

void fl_potential_free(fl_potential* u) { delete u; }

fl_status fl_scatter(const fl_potential* u, const char* options_json, char** result_json) {
  return guarded([&] {
    need(u, "potential");
    need(result_json, "result_json");
    const json o = parse_options(options_json);
    const std::string sp = opt<std::string>(o, "spacing", "log");
    if (sp != "log" && sp != "linear") flist::raise(flist::ErrorKind::Config, "spacing must be log or linear");
    const auto contour = flist::make_contour(opt(o, "k_min", 0.05), opt(o, "k_max", 5.0),
                                             opt<std::size_t>(o, "n_per_ray", 50),
                                             sp == "log" ? flist::NodeSpacing::Logarithmic : flist::NodeSpacing::Linear);
    const auto jo = jost_options(o);
    auto sd = flist::scattering_coefficients(u->u, contour, jo);
    if (o.contains("box")) sd.discrete = flist::find_discrete_spectrum(u->u, box_of(o), jo, search_options(o));
    *result_json = dup_string(flist::scattering_to_json(sd).dump(2));
  });
}

fl_status fl_spectrum(const fl_potential* u, const char* options_json, char** ensemble_json) {
  return guarded([&] {
    need(u, "potential");
    need(ensemble_json, "ensemble_json");
    const json o = parse_options(options_json);
    if (!o.contains("box")) flist::raise(flist::ErrorKind::Config, "spectrum needs a search box");
    const auto ens = flist::find_discrete_spectrum(u->u, box_of(o), jost_options(o), search_options(o));
    json j;
    j["poles"] = flist::ensemble_to_json(ens);
    *ensemble_json = dup_string(j.dump(2));
  });
}

fl_status fl_nsoliton(const char* ensemble_json, const char* options_json, fl_potential** out) {
  return guarded([&] {
    need(out, "out");
    const auto ens = flist::ensemble_from_json(parse_document(ensemble_json, "ensemble"));
    const json o = parse_options(options_json);
    const auto g = flist::make_grid(opt(o, "x_min", -20.0), opt(o, "x_max", 20.0), opt<std::size_t>(o, "n_points", 2001));
    auto f = flist::nsoliton_field(ens, g, opt(o, "t", 0.0), params_of(o));
    *out = new fl_potential{std::move(f)};
  });
}

fl_status fl_evolve(const fl_potential* u0, const char* options_json, fl_evolution** out) {
  return guarded([&] {
    need(u0, "potential");
    need(out, "out");
    const json o = parse_options(options_json);
    const auto prm = params_of(o);
    flist::EvolverConfig cfg;
    cfg.alpha = prm.alpha;
    cfg.beta = prm.beta;
    cfg.dt = opt(o, "dt", cfg.dt);
    cfg.t_end = opt(o, "t_end", cfg.t_end);
    cfg.dealias_fraction = opt(o, "dealias_fraction", cfg.dealias_fraction);
    cfg.blowup_threshold = opt(o, "blowup_threshold", cfg.blowup_threshold);
    cfg.decay_tol = opt(o, "decay_tol", cfg.decay_tol);
    const std::string zm = opt<std::string>(o, "zero_mode", "analytic_limit");
    if (zm == "project_out")
      cfg.zero_mode = flist::ZeroModePolicy::ProjectOut;
    else if (zm != "analytic_limit")
      flist::raise(flist::ErrorKind::Config, "zero_mode must be analytic_limit or project_out");
    const double every = opt(o, "snap_every", 0.0);
    if (every < 0.0) flist::raise(flist::ErrorKind::Config, "snap_every must be non-negative");
    if (every > 0.0)
      for (double t = every; std::abs(t) < std::abs(cfg.t_end) - 1e-12; t += every)
        cfg.snapshot_times.push_back(cfg.dt > 0 ? t : -t);
    auto run = flist::evolve(u0->u, cfg);
    json s;
    s["conserved_drift"] = run.conserved_drift;
    s["mass_drift"] = run.mass_drift;
    json log = json::array();
    for (const auto& e : run.energy_log) log.push_back({{"t", e.t}, {"mass_like", e.mass_like}, {"d0", e.d0}});
    s["energy_log"] = log;
    *out = new fl_evolution{std::move(run), std::move(s)};
  });
}

size_t fl_evolution_count(const fl_evolution* run) { return run ? run->run.snapshots.size() : 0; }

fl_status fl_evolution_snapshot(const fl_evolution* run, size_t i, double* t, fl_potential** out) {
  return guarded([&] {
    need(run, "run");
    need(out, "out");
    if (i >= run->run.snapshots.size()) flist::raise(flist::ErrorKind::Config, "snapshot index out of range");
    if (t) *t = run->run.snapshots[i].t;
    *out = new fl_potential{run->run.snapshots[i].u};
  });
}

fl_status fl_evolution_summary(const fl_evolution* run, char** summary_json) {
  return guarded([&] {
    need(run, "run");
    need(summary_json, "summary_json");
    *summary_json = dup_string(run->summary.dump(2));
  });
}

void fl_evolution_free(fl_evolution* run) { delete run; }

fl_status fl_asymptote(const char* scattering_json, const char* options_json, char** result_json) {
  return guarded([&] {
    need(result_json, "result_json");
    const auto sd = flist::scattering_from_json(parse_document(scattering_json, "scattering"));
    const json o = parse_options(options_json);
    const auto prm = params_of(o);
    const auto cone = cone_of(o);
    const double t = opt(o, "t", 50.0);
    const std::size_t n = opt<std::size_t>(o, "n_points", 201);
    if (n < 2) flist::raise(flist::ErrorKind::Config, "n_points must be at least 2");
    const auto r = flist::ReflectionSamples::from_scattering(sd);
    const auto sel = flist::cone_select(sd.discrete, r, cone, prm.alpha, prm.beta);
    const double lo = cone.x1 + cone.v1 * t, hi = cone.x2 + cone.v2 * t;
    json rows = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      const double x = lo + (hi - lo) * double(i) / double(n - 1);
      const auto la = flist::leading_asymptotic(sel, r, prm.alpha, prm.beta, x, t);
      rows.push_back({{"x", x},
                      {"re_u", la.u_lead.real()},
                      {"im_u", la.u_lead.imag()},
                      {"abs_u", std::abs(la.u_lead)},
                      {"bound", la.correction_bound},
                      {"pre_asymptotic", la.pre_asymptotic}});
    }
    json j;
    j["n_in_cone"] = sel.N_I;
    j["rows"] = rows;
    *result_json = dup_string(j.dump(2));
  });
}

fl_status fl_resolution_study(const fl_potential* u0, const char* scattering_json, const char* options_json,
                              char** result_json) {
  return guarded([&] {
    need(u0, "potential");
    need(result_json, "result_json");
    const auto sd = flist::scattering_from_json(parse_document(scattering_json, "scattering"));
    const json o = parse_options(options_json);
    const auto prm = params_of(o);
    flist::EvolverConfig cfg;
    cfg.alpha = prm.alpha;
    cfg.beta = prm.beta;
    cfg.dt = opt(o, "dt", 0.01);
    const auto times = o.at("times").get<std::vector<double>>();
    const auto rows = flist::resolution_study(u0->u, sd.discrete, flist::ReflectionSamples::from_scattering(sd),
                                              cone_of(o), cfg, times);
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"t", r.t}, {"residual_sup", r.residual_sup}, {"bound", r.bound}, {"slope_running", r.slope_running}});
    json j;
    j["rows"] = arr;
    *result_json = dup_string(j.dump(2));
  });
}

fl_status fl_verify(const char* suite, uint64_t seed, char** report_json, int* all_pass) {
  return guarded([&] {
    need(suite, "suite");
    need(report_json, "report_json");
    flist::VerifyOptions vo;
    vo.seed = seed;
    const auto recs = flist::verify_suite(suite, vo);
    const json j = flist::report_json(suite, vo, recs);
    if (all_pass) *all_pass = j["all_pass"].get<bool>() ? 1 : 0;
    *report_json = dup_string(j.dump(2));
  });
}

}  // extern "C"
