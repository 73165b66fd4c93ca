#include "tnz/invariant.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tnz/errors.hpp"

namespace tnz {

namespace {

Complex ipow(Complex z, long long k) {
  if (k < 0) return 1.0 / ipow(z, -k);
  Complex r = 1.0;
  while (k) {
    if (k & 1) r *= z;
    z *= z;
    k >>= 1;
  }
  return r;
}

double rel_scale(const CPoly& p) { return std::max(1.0, p.max_abs_coeff()); }

double sup_diff(const CPoly& a, const CPoly& b) {
  double d = 0.0;
  for (const auto& [e, c] : a.terms()) d = std::max(d, std::abs(c - b.coeff(e)));
  for (const auto& [e, c] : b.terms())
    if (!a.terms().count(e)) d = std::max(d, std::abs(c));
  return d;
}

// Substitute t -> w t.
CPoly rotate(const CPoly& p, Complex w) {
  CPoly out;
  for (const auto& [e, c] : p.terms()) out.set(e, c * ipow(w, e));
  return out;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

Complex flattening_denominator(const cvec& z, const Flattening& f) {
  const ZetaTriple zt = zeta(z);
  Complex d = 1.0;
  for (std::size_t j = 0; j < z.size(); ++j)
    d *= ipow(zt.zeta[j], f.f[j]) * ipow(zt.zetap[j], f.fp[j]) * ipow(zt.zetapp[j], f.fpp[j]);
  return d;
}

OneLoopValue one_loop(const Triangulation& t, const cvec& z, const Flattening& f, const std::string& curve) {
  const PeripheralCurve* pc = t.curve(curve);
  if (!pc) throw InputError("no peripheral curve named '" + curve + "'");
  const std::size_t n = static_cast<std::size_t>(t.n_tets);
  if (z.size() != n) throw InputError("shape vector has the wrong length");
  const NZMatrices nz = nz_matrices(gluing_matrices(t));
  const ZetaTriple zt = zeta(z);
  Matrix<Complex> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double a = static_cast<double>(nz.A(i, j)), b = static_cast<double>(nz.B(i, j));
      if (i + 1 == n) {
        a = static_cast<double>(pc->C[j] - pc->Cp[j]);
        b = static_cast<double>(pc->Cpp[j] - pc->Cp[j]);
      }
      m(i, j) = a * zt.zeta[j] + b * zt.zetapp[j];
    }
  const Complex den = 2.0 * flattening_denominator(z, f);
  if (std::abs(den) == 0.0) throw DegeneracyError("1-loop denominator vanishes");
  return {scalar_det(m) / den, curve};
}

TwistedOneLoop twisted_one_loop(const TwistedGluingData& d, const cvec& z, const Flattening& f) {
  const std::size_t n = d.Gt.cols();
  if (z.size() != n) throw InputError("shape vector has the wrong length");
  const TwistedNZ nz = twisted_nz(d);
  const ZetaTriple zt = zeta(z);
  CLMatrix ab(n, n), g3(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      ab(i, j) = zt.zeta[j] * to_complex(nz.A(i, j)) + zt.zetapp[j] * to_complex(nz.B(i, j));
      g3(i, j) = zt.zeta[j] * to_complex(d.Gt(i, j)) + zt.zetap[j] * to_complex(d.Gpt(i, j)) +
                 zt.zetapp[j] * to_complex(d.Gppt(i, j));
    }
  const Complex den = flattening_denominator(z, f);
  if (std::abs(den) == 0.0) throw DegeneracyError("1-loop denominator vanishes");
  TwistedOneLoop out;
  const CPoly p1 = (1.0 / den) * lmat_det_numeric(ab);
  const CPoly p2 = (1.0 / den) * lmat_det_numeric(g3);
  out.form_agreement = sup_diff(p1, p2);
  if (out.form_agreement > 1e-9 * rel_scale(p1))
    throw InternalError("the two determinant forms disagree by " + fmt(out.form_agreement));
  out.raw = p1;
  out.canonical = lp_canonicalize(p1);
  out.cocycle = d.cocycle_used;
  out.flattening = f;
  out.shapes = z;
  return out;
}

TwistedOneLoop twisted_one_loop(const Triangulation& t, const std::vector<long long>& cocycle, const cvec& z,
                                const Flattening& f) {
  return twisted_one_loop(twisted_gluing_matrices(t, cocycle), z, f);
}

Complex derivative_at_one(const CPoly& p) {
  Complex s = 0.0;
  for (const auto& [e, c] : p.terms()) s += static_cast<double>(e) * c;
  return s;
}

Setup prepare(const Triangulation& t, const std::vector<long long>* cocycle_override, const NewtonOptions& opt) {
  Setup s;
  s.tri = t;
  if (cocycle_override) {
    s.cocycle = *cocycle_override;
  } else if (t.cocycle) {
    s.cocycle = *t.cocycle;
  } else {
    const CocycleResult r = solve_cocycle(t);
    s.cocycle = r.values;
    s.sign_ambiguous = r.sign_ambiguous;
  }
  check_cocycle(t, s.cocycle);
  s.tri.cocycle = s.cocycle;
  s.shapes = solve_shapes(t, opt);
  s.flattening = solve_flattening(t);
  return s;
}

// Twisted 1-loop of the n-fold cover with n stacked copies of the shapes and
// the flattening, as a polynomial in the cover variable.
CPoly cover_one_loop(const Setup& s, int n) {
  const Triangulation cov = cyclic_cover(s.tri, s.cocycle, n);
  cvec zc;
  Flattening fc;
  for (int k = 0; k < n; ++k) {
    zc.insert(zc.end(), s.shapes.z.begin(), s.shapes.z.end());
    fc.f.insert(fc.f.end(), s.flattening.f.begin(), s.flattening.f.end());
    fc.fp.insert(fc.fp.end(), s.flattening.fp.begin(), s.flattening.fp.end());
    fc.fpp.insert(fc.fpp.end(), s.flattening.fpp.begin(), s.flattening.fpp.end());
  }
  return twisted_one_loop(cov, *cov.cocycle, zc, fc).raw;
}

CheckReport check_cyclic_product(const Setup& s, int n) {
  if (n < 1) throw InputError("cover degree must be at least 1");
  const CPoly cover_tau = cover_one_loop(s, n);
  CPoly lhs;
  for (const auto& [e, c] : cover_tau.terms()) lhs.set(e * n, c);

  const CPoly tau = twisted_one_loop(s.tri, s.cocycle, s.shapes.z, s.flattening).raw;
  CPoly rhs(1);
  for (int k = 0; k < n; ++k) rhs = rhs * rotate(tau, std::polar(1.0, 2.0 * std::numbers::pi * k / n));

  CheckReport rep;
  if (lhs.is_zero() || rhs.is_zero()) {
    rep.pass = lhs.is_zero() && rhs.is_zero();
    rep.detail = "zero polynomial";
    return rep;
  }
  const CPoly L = lhs.shifted(-lhs.min_exp());
  const CPoly R = rhs.shifted(-rhs.min_exp());
  Complex num = 0.0;
  double den = 0.0;
  for (const auto& [e, c] : L.terms()) {
    num += std::conj(c) * R.coeff(e);
    den += std::norm(c);
  }
  const Complex lambda = num / den;
  const double resid = sup_diff(lambda * L, R) / rel_scale(R);
  const double unit_gap = std::abs(std::abs(lambda) - 1.0);
  rep.residual = std::max(resid, unit_gap);
  rep.pass = rep.residual < 1e-6;
  rep.detail = "scalar " + fmt(lambda.real()) + (lambda.imag() < 0 ? "" : "+") + fmt(lambda.imag()) +
               "i, relative coefficient residual " + fmt(resid);
  return rep;
}

CheckReport check_derivative(const Setup& s, const std::string& curve) {
  const CPoly tau = twisted_one_loop(s.tri, s.cocycle, s.shapes.z, s.flattening).raw;
  const double at_one = std::abs(tau.eval(1.0));
  const double d = std::abs(derivative_at_one(tau));
  const double tl = std::abs(one_loop(s.tri, s.shapes.z, s.flattening, curve).value);
  CheckReport rep;
  rep.residual = std::abs(d - tl);
  rep.pass = at_one < 1e-9 && rep.residual < 1e-8 * std::max(1.0, tl);
  rep.detail = "|tau(1)| = " + fmt(at_one) + ", |tau'(1)| = " + fmt(d) + ", |tau_" + curve + "| = " + fmt(tl);
  return rep;
}

CheckReport check_cover_derivative(const Setup& s, int n, const std::string& curve) {
  const CPoly cover_tau = cover_one_loop(s, n);
  const CPoly tau = twisted_one_loop(s.tri, s.cocycle, s.shapes.z, s.flattening).raw;
  double rhs = std::abs(one_loop(s.tri, s.shapes.z, s.flattening, curve).value) / n;
  for (int k = 1; k < n; ++k) rhs *= std::abs(tau.eval(std::polar(1.0, 2.0 * std::numbers::pi * k / n)));
  const double lhs = std::abs(derivative_at_one(cover_tau));
  CheckReport rep;
  rep.residual = std::abs(lhs - rhs) / std::max(1.0, rhs);
  rep.pass = rep.residual < 1e-8;
  rep.detail = "|cover tau'(1)| = " + fmt(lhs) + ", expected " + fmt(rhs);
  return rep;
}

CheckReport check_symmetry(const Setup& s) {
  const CPoly tau = twisted_one_loop(s.tri, s.cocycle, s.shapes.z, s.flattening).raw;
  CheckReport rep;
  rep.residual = lp_distance_mod(tau.involution(), tau, false) / rel_scale(tau);
  rep.pass = rep.residual < 1e-8;
  rep.detail = "tau(t) against tau(1/t) up to +-t^Z";
  return rep;
}

CheckReport check_palindromic(const Setup& s, bool use_b) {
  const TwistedNZ nz = twisted_nz(twisted_gluing_matrices(s.tri, s.cocycle));
  const ZPoly d = lmat_det_exact(use_b ? nz.B : nz.A);
  const auto pal = lp_is_palindromic(d);
  CheckReport rep;
  rep.pass = pal.has_value();
  rep.detail = std::string(use_b ? "det B(t) = " : "det A(t) = ") + d.to_string();
  if (pal) rep.detail += ", eps = " + std::to_string(pal->eps) + ", r = " + std::to_string(pal->r);
  return rep;
}

std::vector<int> pachner_candidates(const Triangulation& t) {
  std::vector<int> out;
  for (const auto& p : face_pairings(t).pairings)
    if (p.tet_a != p.tet_b) out.push_back(p.index);
  return out;
}

CheckReport check_pachner_invariance(const Setup& s, const std::vector<int>& pairings) {
  const CPoly before = twisted_one_loop(s.tri, s.cocycle, s.shapes.z, s.flattening).raw;
  Triangulation cur = s.tri;
  cvec z = s.shapes.z;
  Flattening f = s.flattening;
  std::ostringstream detail;
  for (int p : pairings) {
    const PachnerResult r = pachner_23(cur, p, &z, &f);
    if (!is_flattening(r.tri, *r.flattening)) throw InternalError("transferred flattening is not a flattening");
    cur = r.tri;
    z = r.shapes;
    f = *r.flattening;
    detail << "move on pairing " << p << " -> " << cur.n_tets << " tetrahedra; ";
  }
  const double shape_resid = verify_solution(cur, z).max_residual;
  const CPoly after = twisted_one_loop(cur, *cur.cocycle, z, f).raw;
  CheckReport rep;
  rep.residual = lp_distance_mod(before, after, false) / rel_scale(before);
  rep.pass = rep.residual < 1e-8 && shape_resid < 1e-9;
  detail << "transferred shapes residual " << fmt(shape_resid);
  rep.detail = detail.str();
  return rep;
}

std::map<std::string, CheckReport> run_verify(const Setup& s) {
  std::map<std::string, CheckReport> out;
  {
    const TwistedNZ nz = twisted_nz(twisted_gluing_matrices(s.tri, s.cocycle));
    const SymplecticReport sr = check_symplectic(nz.A, nz.B);
    out["symplectic"] = {sr.pass, sr.hermitian_residual,
                         "max coefficient of A(t)B(1/t)^T - B(t)A(1/t)^T = " + sr.max_coeff.str()};
  }
  {
    const CoverComparison c = compare_cover_circulant(s.tri, s.cocycle, 2);
    out["circulant_cover_n2"] = {c.pass, static_cast<double>(c.max_abs_diff), "explicit cover vs block circulant"};
  }
  {
    const auto cands = pachner_candidates(s.tri);
    if (cands.empty()) {
      out["pachner"] = {false, 0.0, "no face pairing between distinct tetrahedra"};
    } else {
      out["pachner"] = check_pachner_invariance(s, {cands.front()});
      const PachnerNZReport nzr = check_pachner_nz(s.tri, s.cocycle, cands.front());
      out["pachner_nz"] = {nzr.pass, 0.0, nzr.detail};
    }
  }
  out["cyclic_product_n2"] = check_cyclic_product(s, 2);
  out["derivative"] = check_derivative(s);
  out["cover_derivative_n2"] = check_cover_derivative(s, 2);
  out["symmetry"] = check_symmetry(s);
  out["palindromic_detA"] = check_palindromic(s, false);
  out["palindromic_detB"] = check_palindromic(s, true);
  return out;
}

}  // namespace tnz
