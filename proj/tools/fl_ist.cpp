// fl-ist: command-line front end over the flist C API.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "flist/flist.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumeric = 2;

// Failure carrying the exit code it maps to.
struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void config_fail(const std::string& msg) { throw Failure{kExitConfig, "ConfigError: " + msg}; }

void check(fl_status st) {
  if (st == FL_OK) return;
  std::string msg = fl_last_error();
  if (msg.empty()) msg = fl_status_name(st);
  throw Failure{fl_status_is_config(st) ? kExitConfig : kExitNumeric, msg};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  fl_string_free(s);
  return out;
}

using Potential = std::unique_ptr<fl_potential, decltype(&fl_potential_free)>;

Potential read_field(const std::string& path) {
  fl_potential* p = nullptr;
  check(fl_potential_read_csv(path.c_str(), &p));
  return Potential(p, &fl_potential_free);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_fail("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) config_fail("cannot write " + path);
  out << text;
}

json provenance(const std::string& command, const json& params, const std::vector<std::string>& inputs) {
  std::vector<const char*> paths;
  for (const auto& s : inputs) paths.push_back(s.c_str());
  char* out = nullptr;
  check(fl_provenance(command.c_str(), params.dump().c_str(), paths.data(), paths.size(), &out));
  return json::parse(take(out));
}

std::vector<double> parse_list(const std::string& text, std::size_t n, const char* what, char sep = ',') {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      config_fail(std::string(what) + ": '" + item + "' is not a number");
    }
  }
  if (out.size() != n) config_fail(std::string(what) + " needs " + std::to_string(n) + " comma-separated values");
  return out;
}

// Typed option that can also be filled from the JSON config file; explicit
// flags win over config values.
class Params {
public:
  explicit Params(CLI::App* app) : app_(app) {}

  template <class T>
  CLI::Option* add(const std::string& key, T& var, const std::string& help) {
    std::string flag = "--" + key;
    for (auto& ch : flag)
      if (ch == '_') ch = '-';
    CLI::Option* o = app_->add_option(flag, var, help)->capture_default_str();
    entries_.push_back({key, o, [&var](const json& j) { var = j.get<T>(); }, [&var] { return json(var); }});
    return o;
  }

  void apply(const json& cfg) {
    for (auto& e : entries_) {
      if (e.opt->count() > 0 || !cfg.contains(e.key)) continue;
      try {
        e.load(cfg.at(e.key));
      } catch (const json::exception&) {
        config_fail("config key '" + e.key + "' has the wrong type");
      }
    }
  }

  json values() const {
    json j = json::object();
    for (const auto& e : entries_) j[e.key] = e.dump();
    return j;
  }

  CLI::App* app() const { return app_; }

private:
  struct Entry {
    std::string key;
    CLI::Option* opt;
    std::function<void(const json&)> load;
    std::function<json()> dump;
  };
  CLI::App* app_;
  std::vector<Entry> entries_;
};

struct ScatterArgs {
  std::string in, out = "-", spacing = "log", box;
  double k_min = 0.05, k_max = 5.0, k_switch = 1.0, a_floor = 1e-6, decay_tol = 1e-8;
  std::size_t n_per_ray = 50;
};

struct SpectrumArgs {
  std::string in, out = "-", box;
  int edge_samples = 32, max_depth = 8;
  double newton_tol = 1e-10, simple_tol = 1e-8, k_switch = 1.0;
};

struct NsolitonArgs {
  std::string ensemble, out = "-", grid = "-20,20,2001";
  double t = 0.0, alpha = 1.0, beta = 2.0;
};

struct EvolveArgs {
  std::string in, out, snap, zero_mode = "analytic_limit";
  double alpha = 1.0, beta = 2.0, dt = 0.005, t_end = 1.0, dealias_fraction = 2.0 / 3.0, blowup_threshold = 1e6;
};

struct AsymptoteArgs {
  std::string scattering, cone, in, t_sweep, out = "-";
  double alpha = 1.0, beta = 2.0, t = 50.0, dt = 0.01;
  std::size_t n_points = 201;
};

struct VerifyArgs {
  std::string suite = "all", out = "-";
  std::uint64_t seed = 7;
};

json box_json(const std::string& text) {
  const auto b = parse_list(text, 4, "--box");
  return json::array({b[0], b[1], b[2], b[3]});
}

int run_scatter(const ScatterArgs& a, const json& params) {
  const Potential u = read_field(a.in);
  json o = {{"k_min", a.k_min},     {"k_max", a.k_max},       {"n_per_ray", a.n_per_ray},
            {"spacing", a.spacing}, {"k_switch", a.k_switch}, {"a_floor", a.a_floor},
            {"decay_tol", a.decay_tol}};
  if (!a.box.empty()) o["box"] = box_json(a.box);
  char* res = nullptr;
  check(fl_scatter(u.get(), o.dump().c_str(), &res));
  json doc;
  doc["provenance"] = provenance("scatter", params, {a.in});
  const json body = json::parse(take(res));
  for (const auto& [k, v] : body.items()) doc[k] = v;
  write_text(a.out, doc.dump(2) + "\n");
  return kExitOk;
}

int run_spectrum(const SpectrumArgs& a, const json& params) {
  const Potential u = read_field(a.in);
  const json o = {{"box", box_json(a.box)},       {"edge_samples", a.edge_samples}, {"max_depth", a.max_depth},
                  {"newton_tol", a.newton_tol}, {"simple_tol", a.simple_tol},     {"k_switch", a.k_switch}};
  char* res = nullptr;
  check(fl_spectrum(u.get(), o.dump().c_str(), &res));
  json doc;
  doc["provenance"] = provenance("spectrum", params, {a.in});
  doc["poles"] = json::parse(take(res))["poles"];
  write_text(a.out, doc.dump(2) + "\n");
  return kExitOk;
}

int run_nsoliton(const NsolitonArgs& a, const json& params) {
  const auto g = parse_list(a.grid, 3, "--grid");
  if (!(g[2] >= 2.0) || g[2] != std::floor(g[2])) config_fail("--grid point count must be an integer >= 2");
  const json o = {{"x_min", g[0]}, {"x_max", g[1]}, {"n_points", static_cast<std::size_t>(g[2])},
                  {"t", a.t},      {"alpha", a.alpha}, {"beta", a.beta}};
  fl_potential* p = nullptr;
  check(fl_nsoliton(read_text(a.ensemble).c_str(), o.dump().c_str(), &p));
  const Potential u(p, &fl_potential_free);
  const std::string prov = provenance("nsoliton", params, {a.ensemble}).dump();
  if (a.out == "-") {
    char* csv = nullptr;
    check(fl_potential_csv(u.get(), prov.c_str(), &csv));
    std::cout << take(csv);
  } else {
    check(fl_potential_write_csv(u.get(), a.out.c_str(), prov.c_str()));
  }
  return kExitOk;
}

double parse_snap(const std::string& s) {
  if (s.empty()) return 0.0;
  if (s.rfind("every:", 0) != 0) config_fail("--snap expects every:S");
  const double v = parse_list(s.substr(6), 1, "--snap")[0];
  if (!(v > 0.0)) config_fail("--snap interval must be positive");
  return v;
}

int run_evolve(const EvolveArgs& a, const json& params) {
  const Potential u = read_field(a.in);
  const json o = {{"alpha", a.alpha},
                  {"beta", a.beta},
                  {"dt", a.dt},
                  {"t_end", a.t_end},
                  {"snap_every", parse_snap(a.snap)},
                  {"dealias_fraction", a.dealias_fraction},
                  {"zero_mode", a.zero_mode},
                  {"blowup_threshold", a.blowup_threshold}};
  fl_evolution* r = nullptr;
  check(fl_evolve(u.get(), o.dump().c_str(), &r));
  const std::unique_ptr<fl_evolution, decltype(&fl_evolution_free)> run(r, &fl_evolution_free);
  std::error_code ec;
  std::filesystem::create_directories(a.out, ec);
  if (ec) config_fail("cannot create " + a.out + ": " + ec.message());
  const json prov = provenance("evolve", params, {a.in});
  json files = json::array();
  for (std::size_t i = 0; i < fl_evolution_count(run.get()); ++i) {
    double t = 0.0;
    fl_potential* p = nullptr;
    check(fl_evolution_snapshot(run.get(), i, &t, &p));
    const Potential snap(p, &fl_potential_free);
    char name[32];
    std::snprintf(name, sizeof(name), "snap_%04zu.csv", i);
    json sp = prov;
    sp["snapshot_t"] = t;
    check(fl_potential_write_csv(snap.get(), (std::filesystem::path(a.out) / name).c_str(), sp.dump().c_str()));
    files.push_back({{"t", t}, {"file", name}});
  }
  char* summary = nullptr;
  check(fl_evolution_summary(run.get(), &summary));
  json man;
  man["provenance"] = prov;
  man["snapshots"] = files;
  const json body = json::parse(take(summary));
  for (const auto& [k, v] : body.items()) man[k] = v;
  write_text((std::filesystem::path(a.out) / "manifest.json").string(), man.dump(2) + "\n");
  return kExitOk;
}

std::vector<double> parse_sweep(const std::string& s) {
  const auto v = parse_list(s, 3, "--t-sweep", ':');
  if (!(v[0] > 0.0) || !(v[1] > v[0]) || v[2] < 2.0 || v[2] != std::floor(v[2]))
    config_fail("--t-sweep needs 0 < start < stop and an integer count >= 2");
  std::vector<double> ts;
  const int n = static_cast<int>(v[2]);
  for (int i = 0; i < n; ++i) ts.push_back(v[0] * std::pow(v[1] / v[0], double(i) / double(n - 1)));
  return ts;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int run_asymptote(const AsymptoteArgs& a, const json& params) {
  const auto c = parse_list(a.cone, 4, "--cone");
  json o = {{"alpha", a.alpha}, {"beta", a.beta}, {"cone", json::array({c[0], c[1], c[2], c[3]})},
            {"t", a.t},         {"dt", a.dt},     {"n_points", a.n_points}};
  const std::string sd = read_text(a.scattering);
  std::vector<std::string> inputs{a.scattering};
  std::string csv;
  if (!a.t_sweep.empty()) {
    if (a.in.empty()) config_fail("--t-sweep needs --in with the initial field");
    inputs.push_back(a.in);
    o["times"] = parse_sweep(a.t_sweep);
    const Potential u = read_field(a.in);
    char* res = nullptr;
    check(fl_resolution_study(u.get(), sd.c_str(), o.dump().c_str(), &res));
    csv = "t,residual_sup,bound,slope_running\n";
    const json body = json::parse(take(res));
    for (const auto& r : body["rows"])
      csv += fmt(r["t"]) + "," + fmt(r["residual_sup"]) + "," + fmt(r["bound"]) + "," + fmt(r["slope_running"]) + "\n";
  } else {
    char* res = nullptr;
    check(fl_asymptote(sd.c_str(), o.dump().c_str(), &res));
    csv = "x,re_u,im_u,abs_u,bound\n";
    const json body = json::parse(take(res));
    for (const auto& r : body["rows"])
      csv += fmt(r["x"]) + "," + fmt(r["re_u"]) + "," + fmt(r["im_u"]) + "," + fmt(r["abs_u"]) + "," +
             fmt(r["bound"]) + "\n";
  }
  write_text(a.out, "# " + json{{"provenance", provenance("asymptote", params, inputs)}}.dump() + "\n" + csv);
  return kExitOk;
}

int run_verify(const VerifyArgs& a, const json& params) {
  char* res = nullptr;
  int all_pass = 0;
  check(fl_verify(a.suite.c_str(), a.seed, &res, &all_pass));
  json doc;
  doc["provenance"] = provenance("verify", params, {});
  const json body = json::parse(take(res));
  for (const auto& [k, v] : body.items()) doc[k] = v;
  write_text(a.out, doc.dump(2) + "\n");
  if (!all_pass) {
    for (const auto& r : doc["records"])
      if (!r["pass"].get<bool>()) std::cerr << "FAIL " << r["id"].get<std::string>() << " " << r["name"].get<std::string>() << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}

json config_section(const json& cfg, const std::string& name) {
  json out = json::object();
  for (auto& [k, v] : cfg.items())
    if (!v.is_object()) out[k] = v;
  if (cfg.contains(name) && cfg[name].is_object())
    for (auto& [k, v] : cfg[name].items()) out[k] = v;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inverse-scattering toolkit for the focusing Fokas-Lenells equation"};
  app.set_version_flag("--version", std::string(fl_version()));
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; top-level keys apply to every command, "
                                          "an object under the command name overrides them. Flags win.");

  ScatterArgs sa;
  Params sp(app.add_subcommand("scatter", "Scattering data a(k), b(k) on the cross R u iR"));
  sp.add("in", sa.in, "field CSV (x,re_u,im_u)");
  sp.add("out", sa.out, "scattering JSON output ('-' for stdout)");
  sp.add("k_min", sa.k_min, "smallest |k| on each half-axis");
  sp.add("k_max", sa.k_max, "largest |k| on each half-axis");
  sp.add("n_per_ray", sa.n_per_ray, "nodes per half-axis (contour size 4n)");
  sp.add("spacing", sa.spacing, "node spacing: log or linear");
  sp.add("k_switch", sa.k_switch, "|k| at which the large-k formulation takes over");
  sp.add("a_floor", sa.a_floor, "SpectralSingularity threshold for |a| on the contour");
  sp.add("decay_tol", sa.decay_tol, "largest admissible boundary modulus");
  sp.add("box", sa.box, "optional re_min,re_max,im_min,im_max box for discrete spectrum");

  SpectrumArgs pa;
  Params pp(app.add_subcommand("spectrum", "Discrete spectrum and norming constants"));
  pp.add("in", pa.in, "field CSV");
  pp.add("out", pa.out, "ensemble JSON output ('-' for stdout)");
  pp.add("box", pa.box, "search box re_min,re_max,im_min,im_max in the first quadrant");
  pp.add("edge_samples", pa.edge_samples, "samples per box edge for the winding number");
  pp.add("max_depth", pa.max_depth, "box subdivision depth");
  pp.add("newton_tol", pa.newton_tol, "Newton step tolerance");
  pp.add("simple_tol", pa.simple_tol, "smallest |a'(k_j)| accepted as a simple zero");
  pp.add("k_switch", pa.k_switch, "|k| at which the large-k formulation takes over");

  NsolitonArgs na;
  Params np(app.add_subcommand("nsoliton", "Reflectionless N-soliton field from an ensemble"));
  np.add("ensemble", na.ensemble, "ensemble JSON ({\"poles\": [{re_k, im_k, re_c, im_c}, ...]})");
  np.add("grid", na.grid, "x_min,x_max,n_points");
  np.add("t", na.t, "time");
  np.add("alpha", na.alpha, "alpha > 0");
  np.add("beta", na.beta, "beta > 0");
  np.add("out", na.out, "field CSV output ('-' for stdout)");

  EvolveArgs ea;
  Params ep(app.add_subcommand("evolve", "Pseudo-spectral PDE oracle on a periodic box"));
  ep.add("in", ea.in, "initial field CSV");
  ep.add("alpha", ea.alpha, "alpha > 0");
  ep.add("beta", ea.beta, "beta > 0");
  ep.add("dt", ea.dt, "time step");
  ep.add("t_end", ea.t_end, "final time");
  ep.add("snap", ea.snap, "snapshot schedule every:S");
  ep.add("dealias_fraction", ea.dealias_fraction, "retained fraction of the wavenumber range");
  ep.add("zero_mode", ea.zero_mode, "analytic_limit or project_out");
  ep.add("blowup_threshold", ea.blowup_threshold, "BlowUp threshold on the field norm");
  ep.add("out", ea.out, "output directory for snapshots and manifest.json");

  AsymptoteArgs aa;
  Params ap(app.add_subcommand("asymptote", "Cone-restricted leading asymptotics and residual rates"));
  ap.add("scattering", aa.scattering, "scattering JSON with discrete data");
  ap.add("cone", aa.cone, "x1,x2,v1,v2 with -alpha < v1 <= v2 < 0");
  ap.add("alpha", aa.alpha, "alpha > 0");
  ap.add("beta", aa.beta, "beta > 0");
  ap.add("t", aa.t, "time of the cone slice (without --t-sweep)");
  ap.add("n_points", aa.n_points, "samples across the cone slice");
  ap.add("t_sweep", aa.t_sweep, "start:stop:count, geometrically spaced; writes rates CSV");
  ap.add("in", aa.in, "initial field CSV for the PDE comparison (with --t-sweep)");
  ap.add("dt", aa.dt, "PDE time step for --t-sweep");
  ap.add("out", aa.out, "CSV output ('-' for stdout)");

  VerifyArgs va;
  Params vp(app.add_subcommand("verify", "Acceptance suites: trivial, roundtrip, soliton, rates, all"));
  vp.add("suite", va.suite, "suite name");
  vp.add("seed", va.seed, "seed for randomized probe points");
  vp.add("out", va.out, "JSON report output ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    json cfg = json::object();
    if (!config_path.empty()) {
      try {
        cfg = json::parse(read_text(config_path));
      } catch (const json::exception& e) {
        config_fail("invalid JSON config: " + std::string(e.what()));
      }
      if (!cfg.is_object()) config_fail("config must be a JSON object");
    }
    for (Params* p : {&sp, &pp, &np, &ep, &ap, &vp}) {
      if (!p->app()->parsed()) continue;
      const std::string name = p->app()->get_name();
      p->apply(config_section(cfg, name));
      const json params = p->values();
      auto need = [](const std::string& v, const char* flag) {
        if (v.empty()) config_fail(std::string(flag) + " is required");
      };
      if (name == "scatter") {
        need(sa.in, "--in");
        return run_scatter(sa, params);
      }
      if (name == "spectrum") {
        need(pa.in, "--in");
        need(pa.box, "--box");
        return run_spectrum(pa, params);
      }
      if (name == "nsoliton") {
        need(na.ensemble, "--ensemble");
        return run_nsoliton(na, params);
      }
      if (name == "evolve") {
        need(ea.in, "--in");
        need(ea.out, "--out");
        return run_evolve(ea, params);
      }
      if (name == "asymptote") {
        need(aa.scattering, "--scattering");
        need(aa.cone, "--cone");
        return run_asymptote(aa, params);
      }
      if (name == "verify") return run_verify(va, params);
    }
    config_fail("no command given");
  } catch (const Failure& f) {
    std::cerr << "fl-ist: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "fl-ist: InternalError: " << e.what() << "\n";
    return kExitNumeric;
  }
}
