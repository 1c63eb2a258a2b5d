#include "flist/io.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "flist/errors.hpp"

namespace flist {

std::string fmt_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::Io, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::size_t h = std::hash<std::string>{}(ss.str());
  std::ostringstream hex;
  hex << std::hex << h;
  return hex.str();
}

json provenance(const std::string& command, const json& parameters, const json& input_hashes) {
  json p;
  p["tool"] = "fl-ist";
  p["version"] = FLIST_VERSION;
  p["command"] = command;
  p["parameters"] = parameters;
  p["inputs"] = input_hashes.is_null() ? json::object() : input_hashes;
  return p;
}

std::string potential_csv(const SampledPotential& u, const json& prov) {
  json header;
  header["provenance"] = prov;
  header["grid"] = {{"x_min", u.grid.x_min}, {"x_max", u.grid.x_max}, {"n_points", u.grid.n_points}};
  std::string out = "# " + header.dump() + "\n";
  out += "x,re_u,im_u\n";
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    out += fmt_double(u.grid.x(i));
    out += ',';
    out += fmt_double(u.values[i].real());
    out += ',';
    out += fmt_double(u.values[i].imag());
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorKind::Io, "cannot write " + path);
  out << text;
  if (!out) raise(ErrorKind::Io, "write failed for " + path);
}

void write_potential_csv(const std::string& path, const SampledPotential& u, const json& prov) {
  write_text_file(path, potential_csv(u, prov));
}

SampledPotential read_potential_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::Io, "cannot read " + path);
  std::string line;
  json header;
  std::vector<double> xs;
  cvec vals;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      try {
        header = json::parse(line.substr(1));
      } catch (const std::exception& e) {
        raise(ErrorKind::Io, "bad CSV header in " + path + ": " + e.what());
      }
      continue;
    }
    if (line.rfind("x,", 0) == 0) continue;
    std::istringstream ls(line);
    std::string a, b, c;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c, ','))
      raise(ErrorKind::Io, "malformed CSV row in " + path);
    try {
      xs.push_back(std::stod(a));
      vals.emplace_back(std::stod(b), std::stod(c));
    } catch (const std::exception&) {
      raise(ErrorKind::Io, "non-numeric CSV row in " + path);
    }
  }
  if (xs.size() < 2) raise(ErrorKind::Io, path + " holds fewer than two samples");
  SpatialGrid g;
  if (header.contains("grid")) {
    const auto& gj = header["grid"];
    g = make_grid(gj.at("x_min").get<double>(), gj.at("x_max").get<double>(), gj.at("n_points").get<std::size_t>());
  } else {
    g = make_grid(xs.front(), xs.back(), xs.size());
  }
  if (g.n_points != xs.size()) raise(ErrorKind::Io, "grid header disagrees with row count in " + path);
  const double tol = 1e-9 * std::max(1.0, g.x_max - g.x_min);
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (std::abs(xs[i] - g.x(i)) > tol)
      raise(ErrorKind::Config, "non-uniform sampling in " + path + "; resample onto a uniform grid");
  return make_potential(g, std::move(vals));
}

json ensemble_to_json(const SolitonEnsemble& ens) {
  json arr = json::array();
  for (const auto& p : ens.representatives())
    arr.push_back({{"re_k", p.k.real()}, {"im_k", p.k.imag()}, {"re_c", p.c.real()}, {"im_c", p.c.imag()}});
  return arr;
}

SolitonEnsemble ensemble_from_json(const json& j) {
  const json& arr = j.is_object() && j.contains("poles") ? j["poles"] : j;
  if (!arr.is_array()) raise(ErrorKind::Config, "ensemble JSON must be a list of poles");
  std::vector<Pole> poles;
  try {
    for (const auto& e : arr)
      poles.push_back(Pole{cd(e.at("re_k").get<double>(), e.at("im_k").get<double>()),
                           cd(e.at("re_c").get<double>(), e.at("im_c").get<double>())});
  } catch (const json::exception& e) {
    raise(ErrorKind::Config, std::string("bad ensemble entry: ") + e.what());
  }
  return SolitonEnsemble(poles);
}

json scattering_to_json(const ScatteringData& sd) {
  json j;
  const cvec ks = sd.contour.nodes();
  json rows = json::array();
  for (std::size_t i = 0; i < ks.size(); ++i)
    rows.push_back({ks[i].real(), ks[i].imag(), sd.a_values[i].real(), sd.a_values[i].imag(), sd.b_values[i].real(),
                    sd.b_values[i].imag()});
  j["n_real"] = sd.contour.real_nodes.size();
  j["samples"] = rows;
  j["a0"] = {sd.a0.real(), sd.a0.imag()};
  j["discrete"] = ensemble_to_json(sd.discrete);
  const auto& r = sd.report;
  j["report"] = {{"unitarity_real", r.unitarity_real}, {"unitarity_imag", r.unitarity_imag},
                 {"symmetry_a", r.symmetry_a},         {"symmetry_b", r.symmetry_b},
                 {"wronskian_drift", r.wronskian_drift}, {"wronskian_ok", r.wronskian_ok},
                 {"observed_c", r.observed_c},         {"d0", r.d0}};
  return j;
}

ScatteringData scattering_from_json(const json& j) {
  ScatteringData sd;
  try {
    const std::size_t nr = j.at("n_real").get<std::size_t>();
    const auto& rows = j.at("samples");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      if (i < nr)
        sd.contour.real_nodes.push_back(r.at(0).get<double>());
      else
        sd.contour.imag_nodes.push_back(r.at(1).get<double>());
      const cd a(r.at(2).get<double>(), r.at(3).get<double>());
      const cd b(r.at(4).get<double>(), r.at(5).get<double>());
      sd.a_values.push_back(a);
      sd.b_values.push_back(b);
      sd.r_values.push_back(b / a);
    }
    sd.a0 = cd(j.at("a0").at(0).get<double>(), j.at("a0").at(1).get<double>());
    if (j.contains("discrete")) sd.discrete = ensemble_from_json(j["discrete"]);
  } catch (const json::exception& e) {
    raise(ErrorKind::Config, std::string("bad scattering JSON: ") + e.what());
  }
  return sd;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::Io, "cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    raise(ErrorKind::Io, "invalid JSON in " + path + ": " + e.what());
  }
}

}  // namespace flist
