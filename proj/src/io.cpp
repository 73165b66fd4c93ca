#include "tnz/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tnz/errors.hpp"

namespace tnz {

namespace {

std::vector<long long> int_vector(const json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be an array of integers");
  std::vector<long long> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw InputError(what + " must contain integers only");
    out.push_back(x.get<long long>());
  }
  return out;
}

}  // namespace

Triangulation parse_triangulation(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("top level must be a JSON object");
  if (!doc.contains("num_tetrahedra") || !doc["num_tetrahedra"].is_number_integer())
    throw InputError("missing integer field num_tetrahedra");
  if (!doc.contains("gluings") || !doc["gluings"].is_array()) throw InputError("missing array field gluings");
  Triangulation t;
  t.n_tets = doc["num_tetrahedra"].get<int>();
  if (t.n_tets <= 0) throw InputError("num_tetrahedra must be positive");
  const json& g = doc["gluings"];
  if (static_cast<int>(g.size()) != t.n_tets)
    throw InputError("gluings has " + std::to_string(g.size()) + " rows, expected " + std::to_string(t.n_tets));
  t.gluings.resize(static_cast<std::size_t>(t.n_tets));
  for (int j = 0; j < t.n_tets; ++j) {
    const json& row = g[j];
    if (!row.is_array() || row.size() != 4) throw InputError("tetrahedron " + std::to_string(j) + ": need 4 faces");
    for (int f = 0; f < 4; ++f) {
      const std::string where = "tetrahedron " + std::to_string(j) + " face " + std::to_string(f);
      const json& e = row[f];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_array() || e[1].size() != 4)
        throw InputError(where + ": expected [neighbor, [p0, p1, p2, p3]]");
      t.gluings[j][f].neighbor = e[0].get<int>();
      for (int k = 0; k < 4; ++k) {
        if (!e[1][k].is_number_integer()) throw InputError(where + ": permutation entries must be integers");
        t.gluings[j][f].perm[k] = e[1][k].get<int>();
      }
    }
  }
  if (doc.contains("peripheral_curves")) {
    for (const auto& c : doc["peripheral_curves"]) {
      PeripheralCurve pc;
      if (!c.contains("name") || !c["name"].is_string()) throw InputError("peripheral curve without a name");
      pc.name = c["name"].get<std::string>();
      for (const char* key : {"C", "Cp", "Cpp"})
        if (!c.contains(key)) throw InputError("peripheral curve '" + pc.name + "' lacks " + key);
      pc.C = int_vector(c["C"], pc.name + ".C");
      pc.Cp = int_vector(c["Cp"], pc.name + ".Cp");
      pc.Cpp = int_vector(c["Cpp"], pc.name + ".Cpp");
      t.peripheral_curves.push_back(std::move(pc));
    }
  }
  if (doc.contains("meridian_dual_path"))
    for (long long k : int_vector(doc["meridian_dual_path"], "meridian_dual_path"))
      t.meridian_dual_path.push_back(static_cast<int>(k));
  if (doc.contains("cocycle")) t.cocycle = int_vector(doc["cocycle"], "cocycle");
  validate_triangulation(t);
  return t;
}

Triangulation load_triangulation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_triangulation(ss.str());
}

json triangulation_to_json(const Triangulation& t) {
  json doc;
  doc["num_tetrahedra"] = t.n_tets;
  json g = json::array();
  for (const auto& row : t.gluings) {
    json r = json::array();
    for (const auto& gl : row) r.push_back({gl.neighbor, gl.perm});
    g.push_back(r);
  }
  doc["gluings"] = g;
  json curves = json::array();
  for (const auto& c : t.peripheral_curves) curves.push_back({{"name", c.name}, {"C", c.C}, {"Cp", c.Cp}, {"Cpp", c.Cpp}});
  doc["peripheral_curves"] = curves;
  if (!t.meridian_dual_path.empty()) doc["meridian_dual_path"] = t.meridian_dual_path;
  if (t.cocycle) doc["cocycle"] = *t.cocycle;
  return doc;
}

double round15(double x) {
  if (!std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

json to_json(const ZPoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({e, c.str()});
  return {{"terms", terms}};
}

json to_json(const CPoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({e, round15(c.real()), round15(c.imag())});
  return {{"terms", terms}};
}

json to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(r);
  }
  return rows;
}

json to_json(const ZLMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_json(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

json complex_to_json(std::complex<double> c) { return {round15(c.real()), round15(c.imag())}; }

json to_json(const std::vector<std::complex<double>>& v) {
  json out = json::array();
  for (const auto& c : v) out.push_back(complex_to_json(c));
  return out;
}

std::vector<long long> parse_int_list(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &pos);
    } catch (const std::exception&) {
      throw InputError("not an integer: '" + item + "'");
    }
    while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
    if (pos != item.size()) throw InputError("not an integer: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw InputError("empty integer list");
  return out;
}

}  // namespace tnz
