#include "tnz/cli.hpp"

#include <CLI11.hpp>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "tnz/errors.hpp"
#include "tnz/homology.hpp"
#include "tnz/invariant.hpp"
#include "tnz/io.hpp"
#include "tnz/shapes.hpp"
#include "tnz/twist.hpp"

namespace tnz {

namespace {

std::string cstr(Complex c) {
  std::ostringstream os;
  os << std::setprecision(15) << round15(c.real()) << (c.imag() < 0 ? " - " : " + ") << round15(std::abs(c.imag()))
     << "i";
  return os.str();
}

template <class M, class F>
void text_matrix(std::ostream& os, const std::string& name, const M& m, F cell) {
  os << name << " =\n";
  std::vector<std::vector<std::string>> cells(m.rows());
  std::vector<std::size_t> width(m.cols(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      cells[i].push_back(cell(m(i, j)));
      width[j] = std::max(width[j], cells[i].back().size());
    }
  for (const auto& row : cells) {
    os << " ";
    for (std::size_t j = 0; j < row.size(); ++j) os << "  " << std::setw(static_cast<int>(width[j])) << row[j];
    os << "\n";
  }
}

void text_int(std::ostream& os, const std::string& name, const IntMatrix& m) {
  text_matrix(os, name, m, [](long long v) { return std::to_string(v); });
}

void text_laurent(std::ostream& os, const std::string& name, const ZLMatrix& m) {
  text_matrix(os, name, m, [](const ZPoly& p) { return p.to_string(); });
}

std::string list_str(const std::vector<long long>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

json flattening_json(const Flattening& f) { return {{"f", f.f}, {"fp", f.fp}, {"fpp", f.fpp}}; }

json check_json(const CheckReport& r) {
  return {{"pass", r.pass}, {"residual", round15(r.residual)}, {"detail", r.detail}};
}

struct Emitter {
  const RunConfig& cfg;
  std::ostream& out;
  void emit(const json& j, const std::string& text) const {
    if (cfg.format == "json")
      out << j.dump(2) << "\n";
    else
      out << text;
  }
};

NewtonOptions newton(const RunConfig& cfg) {
  NewtonOptions o;
  o.tolerance = cfg.tolerance;
  return o;
}

int cmd_parse(const RunConfig& cfg, const Triangulation& t, const Emitter& em) {
  std::ostringstream os;
  os << "tetrahedra: " << t.n_tets << "\n";
  const auto classes = compute_edge_classes(t);
  os << "edge classes: " << classes.size() << "\n";
  for (const auto& c : t.peripheral_curves) os << "peripheral curve: " << c.name << "\n";
  if (t.cocycle) os << "cocycle: " << list_str(*t.cocycle) << "\n";
  (void)cfg;
  em.emit(triangulation_to_json(t), os.str());
  return 0;
}

int cmd_shapes(const RunConfig& cfg, const Triangulation& t, const Emitter& em) {
  const ShapeSolution s = solve_shapes(t, newton(cfg));
  json j = {{"shapes", to_json(s.z)},
            {"residual", round15(s.residual)},
            {"iterations", s.iterations},
            {"geometric", s.geometric}};
  std::ostringstream os;
  for (std::size_t k = 0; k < s.z.size(); ++k) os << "z" << k << " = " << cstr(s.z[k]) << "\n";
  os << "residual " << s.residual << " after " << s.iterations << " iterations"
     << (s.geometric ? ", geometric\n" : ", not geometric\n");
  em.emit(j, os.str());
  return 0;
}

int cmd_nz(const Triangulation& t, const Emitter& em) {
  const GluingMatrices g = gluing_matrices(t);
  const NZMatrices nz = nz_matrices(g);
  const IntMatrix abt = nz.A * nz.B.transpose();
  json j = {{"G", to_json(g.G)},   {"Gp", to_json(g.Gp)}, {"Gpp", to_json(g.Gpp)},
            {"A", to_json(nz.A)},  {"B", to_json(nz.B)},  {"ABt", to_json(abt)}};
  std::ostringstream os;
  text_int(os, "G", g.G);
  text_int(os, "G'", g.Gp);
  text_int(os, "G''", g.Gpp);
  text_int(os, "A", nz.A);
  text_int(os, "B", nz.B);
  text_int(os, "A B^T", abt);
  em.emit(j, os.str());
  return 0;
}

std::vector<long long> cocycle_for(const RunConfig& cfg, const Triangulation& t, bool* ambiguous = nullptr) {
  std::vector<long long> c;
  if (cfg.cocycle_override) {
    c = *cfg.cocycle_override;
  } else if (t.cocycle) {
    c = *t.cocycle;
  } else {
    const CocycleResult r = solve_cocycle(t);
    if (ambiguous) *ambiguous = r.sign_ambiguous;
    c = r.values;
  }
  check_cocycle(t, c);
  return c;
}

int cmd_twisted_nz(const RunConfig& cfg, const Triangulation& t, const Emitter& em) {
  bool ambiguous = false;
  const auto cocycle = cocycle_for(cfg, t, &ambiguous);
  const TwistedGluingData d = twisted_gluing_matrices(t, cocycle);
  const TwistedNZ nz = twisted_nz(d);
  json j = {{"cocycle", cocycle},         {"sign_ambiguous", ambiguous}, {"G", to_json(d.Gt)},
            {"Gp", to_json(d.Gpt)},       {"Gpp", to_json(d.Gppt)},     {"A", to_json(nz.A)},
            {"B", to_json(nz.B)}};
  std::ostringstream os;
  os << "cocycle: " << list_str(cocycle) << (ambiguous ? " (sign ambiguous)" : "") << "\n";
  text_laurent(os, "G(t)", d.Gt);
  text_laurent(os, "G'(t)", d.Gpt);
  text_laurent(os, "G''(t)", d.Gppt);
  text_laurent(os, "A(t)", nz.A);
  text_laurent(os, "B(t)", nz.B);
  em.emit(j, os.str());
  return 0;
}

int cmd_one_loop(const RunConfig& cfg, const Triangulation& t, const Emitter& em) {
  const ShapeSolution s = solve_shapes(t, newton(cfg));
  const Flattening f = solve_flattening(t);
  const OneLoopValue v = one_loop(t, s.z, f, cfg.curve);
  json j = {{"tau_one_loop", {{v.curve, complex_to_json(v.value)}}}, {"flattening", flattening_json(f)}};
  em.emit(j, "tau_" + v.curve + " = " + cstr(v.value) + "\n");
  return 0;
}

int cmd_twisted_one_loop(const RunConfig& cfg, const Triangulation& t, const Emitter& em) {
  const Setup s = prepare(t, cfg.cocycle_override ? &*cfg.cocycle_override : nullptr, newton(cfg));
  const TwistedOneLoop r = twisted_one_loop(s.tri, s.cocycle, s.shapes.z, s.flattening);
  json j = {{"tau_twisted", to_json(r.canonical.poly)},
            {"shift", r.canonical.shift},
            {"sign", r.canonical.sign},
            {"cocycle", s.cocycle},
            {"sign_ambiguous", s.sign_ambiguous},
            {"flattening", flattening_json(s.flattening)},
            {"shapes", to_json(s.shapes.z)}};
  std::ostringstream os;
  os << "tau(t) = " << r.canonical.poly.to_string() << "  (up to +-t^k)\n";
  os << "cocycle: " << list_str(s.cocycle) << "\n";
  em.emit(j, os.str());
  return 0;
}

int cmd_cover(const RunConfig& cfg, const Triangulation& t, const Emitter& em) {
  if (cfg.n < 1) throw InputError("--n must be at least 1");
  const auto cocycle = cocycle_for(cfg, t);
  const Triangulation cov = cyclic_cover(t, cocycle, cfg.n);
  std::ostringstream os;
  os << cfg.n << "-fold cyclic cover with " << cov.n_tets << " tetrahedra\n";
  em.emit(triangulation_to_json(cov), os.str());
  return 0;
}

int cmd_pachner(const RunConfig& cfg, const Triangulation& t, const Emitter& em) {
  int pairing = 0;
  if (cfg.face) {
    pairing = *cfg.face;
  } else {
    const auto cands = pachner_candidates(t);
    if (cands.empty()) throw InputError("no face pairing joins two distinct tetrahedra");
    pairing = cands.front();
  }
  Triangulation src = t;
  if (cfg.cocycle_override) {
    check_cocycle(t, *cfg.cocycle_override);
    src.cocycle = *cfg.cocycle_override;
  }
  const PachnerResult r = pachner_23(src, pairing);
  std::ostringstream os;
  os << "2-3 move on face pairing " << pairing << " (tetrahedra " << r.move.alpha << ", " << r.move.beta << "): "
     << r.tri.n_tets << " tetrahedra\n";
  em.emit(triangulation_to_json(r.tri), os.str());
  return 0;
}

int cmd_verify(const RunConfig& cfg, const Triangulation& t, const Emitter& em) {
  const Setup s = prepare(t, cfg.cocycle_override ? &*cfg.cocycle_override : nullptr, newton(cfg));
  const TwistedOneLoop tw = twisted_one_loop(s.tri, s.cocycle, s.shapes.z, s.flattening);
  json loops = json::object();
  for (const auto& c : s.tri.peripheral_curves)
    loops[c.name] = complex_to_json(one_loop(s.tri, s.shapes.z, s.flattening, c.name).value);
  const auto checks = run_verify(s);
  json cj = json::object();
  bool all = true;
  std::ostringstream os;
  os << "tau(t) = " << tw.canonical.poly.to_string() << "\n";
  for (const auto& [name, rep] : checks) {
    cj[name] = check_json(rep);
    all = all && rep.pass;
    os << (rep.pass ? "PASS " : "FAIL ") << std::left << std::setw(22) << name << std::right << " residual "
       << rep.residual << "  " << rep.detail << "\n";
  }
  json j = {{"tau_twisted", to_json(tw.canonical.poly)}, {"tau_one_loop", loops}, {"checks", cj}};
  em.emit(j, os.str());
  return all ? 0 : 1;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (!(cfg.tolerance > 0.0)) throw InputError("--tolerance must be positive");
    if (cfg.n < 1) throw InputError("--n must be at least 1");
    if (cfg.format != "json" && cfg.format != "text") throw InputError("--format must be json or text");
    const Triangulation t = load_triangulation(cfg.input_path);
    const Emitter em{cfg, out};
    const std::string& c = cfg.command;
    if (c == "parse") return cmd_parse(cfg, t, em);
    if (c == "shapes") return cmd_shapes(cfg, t, em);
    if (c == "nz") return cmd_nz(t, em);
    if (c == "twisted-nz") return cmd_twisted_nz(cfg, t, em);
    if (c == "one-loop") return cmd_one_loop(cfg, t, em);
    if (c == "twisted-one-loop") return cmd_twisted_one_loop(cfg, t, em);
    if (c == "cover") return cmd_cover(cfg, t, em);
    if (c == "pachner") return cmd_pachner(cfg, t, em);
    if (c == "verify") return cmd_verify(cfg, t, em);
    throw InputError("unknown command '" + c + "'");
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Twisted Neumann-Zagier matrices and the twisted 1-loop invariant"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string cocycle;
  int face = -1;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"parse", "validate a triangulation and echo it"},
      {"shapes", "solve the gluing equations"},
      {"nz", "gluing and Neumann-Zagier matrices"},
      {"twisted-nz", "twisted gluing and Neumann-Zagier matrices"},
      {"one-loop", "1-loop invariant for a peripheral curve"},
      {"twisted-one-loop", "twisted 1-loop polynomial"},
      {"cover", "explicit n-fold cyclic cover"},
      {"pachner", "apply a 2-3 move"},
      {"verify", "run the full check suite"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("input", cfg.input_path, "triangulation file (JSON)")->required();
    sub->add_option("--cocycle", cocycle, "comma-separated cocycle values, one per face pairing");
    sub->add_option("--tolerance", cfg.tolerance, "Newton tolerance")->capture_default_str();
    sub->add_option("--n", cfg.n, "cover degree")->capture_default_str();
    sub->add_option("--format", cfg.format, "json or text")->capture_default_str();
    sub->add_option("--curve", cfg.curve, "peripheral curve for one-loop")->capture_default_str();
    sub->add_option("--face", face, "face pairing index (0-based) for pachner");
    sub->callback([&cfg, name = name] { cfg.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  try {
    if (!cocycle.empty()) cfg.cocycle_override = parse_int_list(cocycle);
  } catch (const InputError& e) {
    err << "input error: --cocycle: " << e.what() << "\n";
    return 2;
  }
  if (face >= 0) cfg.face = face;
  return run(cfg, out, err);
}

}  // namespace tnz
