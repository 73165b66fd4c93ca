#include "tnz/shapes.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "tnz/errors.hpp"

namespace tnz {

namespace {

using cd = std::complex<double>;
constexpr cd kTwoPiI{0.0, 2.0 * std::numbers::pi};

void check_nondegenerate(const cvec& z, double radius) {
  for (std::size_t j = 0; j < z.size(); ++j)
    if (!std::isfinite(z[j].real()) || !std::isfinite(z[j].imag()) || std::abs(z[j]) <= radius ||
        std::abs(z[j] - 1.0) <= radius)
      throw DegeneracyError("shape of tetrahedron " + std::to_string(j) + " is degenerate");
}

struct LogShapes {
  cvec lz, lzp, lzpp;
};

LogShapes log_shapes(const cvec& z) {
  LogShapes l;
  for (const cd& w : z) {
    l.lz.push_back(std::log(w));
    l.lzp.push_back(std::log(1.0 / (1.0 - w)));
    l.lzpp.push_back(std::log(1.0 - 1.0 / w));
  }
  return l;
}

const PeripheralCurve& meridian(const Triangulation& t) {
  if (t.peripheral_curves.empty()) throw InputError("shape solving needs a meridian peripheral curve");
  if (const auto* m = t.curve("meridian")) return *m;
  return t.peripheral_curves.front();
}

template <class Row>
cd combine(const Row& c, const Row& cp, const Row& cpp, const LogShapes& l, std::size_t n) {
  cd s = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    s += static_cast<double>(c(j)) * l.lz[j] + static_cast<double>(cp(j)) * l.lzp[j] +
         static_cast<double>(cpp(j)) * l.lzpp[j];
  return s;
}

}  // namespace

ZetaTriple zeta(const cvec& z) {
  check_nondegenerate(z, 0.0);
  ZetaTriple out;
  for (const cd& w : z) {
    out.zeta.push_back(1.0 / w);
    out.zetap.push_back(1.0 / (1.0 - w));
    out.zetapp.push_back(1.0 / (w * (w - 1.0)));
  }
  return out;
}

cvec shape_equations(const Triangulation& t, const cvec& z) {
  const std::size_t n = static_cast<std::size_t>(t.n_tets);
  const GluingMatrices g = gluing_matrices(t);
  const PeripheralCurve& mu = meridian(t);
  const LogShapes l = log_shapes(z);
  cvec f(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    auto row = [&](const IntMatrix& m) { return [&m, i](std::size_t j) { return m(i, j); }; };
    f[i] = combine(row(g.G), row(g.Gp), row(g.Gpp), l, n) - kTwoPiI;
  }
  auto vec = [](const std::vector<long long>& v) { return [&v](std::size_t j) { return v[j]; }; };
  f[n - 1] = combine(vec(mu.C), vec(mu.Cp), vec(mu.Cpp), l, n);
  return f;
}

Matrix<cd> shape_jacobian(const Triangulation& t, const cvec& z) {
  const std::size_t n = static_cast<std::size_t>(t.n_tets);
  const GluingMatrices g = gluing_matrices(t);
  const PeripheralCurve& mu = meridian(t);
  const ZetaTriple zt = zeta(z);
  Matrix<cd> jac(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i + 1 < n; ++i)
      jac(i, j) = static_cast<double>(g.G(i, j)) * zt.zeta[j] + static_cast<double>(g.Gp(i, j)) * zt.zetap[j] +
                  static_cast<double>(g.Gpp(i, j)) * zt.zetapp[j];
    jac(n - 1, j) = static_cast<double>(mu.C[j]) * zt.zeta[j] + static_cast<double>(mu.Cp[j]) * zt.zetap[j] +
                    static_cast<double>(mu.Cpp[j]) * zt.zetapp[j];
  }
  return jac;
}

ResidualReport verify_solution(const Triangulation& t, const cvec& z) {
  const std::size_t n = static_cast<std::size_t>(t.n_tets);
  if (z.size() != n) throw InputError("shape vector has the wrong length");
  check_nondegenerate(z, 0.0);
  const GluingMatrices g = gluing_matrices(t);
  const LogShapes l = log_shapes(z);
  ResidualReport rep;
  auto push = [&](std::string name, cd r) {
    const int w = static_cast<int>(std::lround(r.imag() / (2.0 * std::numbers::pi)));
    rep.rows.push_back({std::move(name), r, w});
    rep.max_residual = std::max(rep.max_residual, std::abs(r));
  };
  for (std::size_t i = 0; i < g.G.rows(); ++i) {
    auto row = [&](const IntMatrix& m) { return [&m, i](std::size_t j) { return m(i, j); }; };
    push("edge " + std::to_string(i), combine(row(g.G), row(g.Gp), row(g.Gpp), l, n) - kTwoPiI);
  }
  for (const auto& c : t.peripheral_curves) {
    auto vec = [](const std::vector<long long>& v) { return [&v](std::size_t j) { return v[j]; }; };
    push(c.name, combine(vec(c.C), vec(c.Cp), vec(c.Cpp), l, n));
  }
  return rep;
}

ShapeSolution solve_shapes(const Triangulation& t, const NewtonOptions& opt) {
  if (!(opt.tolerance > 0.0)) throw InputError("tolerance must be positive");
  const std::size_t n = static_cast<std::size_t>(t.n_tets);
  ShapeSolution sol;
  sol.z.assign(n, std::polar(1.0, std::numbers::pi / 3.0));
  auto max_abs = [](const cvec& v) {
    double m = 0.0;
    for (const cd& x : v) m = std::max(m, std::abs(x));
    return m;
  };
  const auto dim = static_cast<Eigen::Index>(n);
  bool converged = false;
  for (int it = 0; it <= opt.max_iterations; ++it) {
    const cvec f = shape_equations(t, sol.z);
    sol.residual = max_abs(f);
    sol.iterations = it;
    if (sol.residual < opt.tolerance) {
      converged = true;
      break;
    }
    if (it == opt.max_iterations) break;
    const Matrix<cd> jac = shape_jacobian(t, sol.z);
    Eigen::MatrixXcd J(dim, dim);
    Eigen::VectorXcd rhs(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      rhs(i) = -f[i];
      for (Eigen::Index j = 0; j < dim; ++j) J(i, j) = jac(i, j);
    }
    const Eigen::VectorXcd step = J.fullPivLu().solve(rhs);
    for (std::size_t j = 0; j < n; ++j) sol.z[j] += step(static_cast<Eigen::Index>(j));
    for (std::size_t j = 0; j < n; ++j)
      if (!std::isfinite(sol.z[j].real()) || !std::isfinite(sol.z[j].imag()) ||
          std::abs(sol.z[j]) < opt.exclusion_radius || std::abs(sol.z[j] - 1.0) < opt.exclusion_radius)
        throw SolverError("Newton iterate of tetrahedron " + std::to_string(j) + " entered the degenerate locus");
  }
  if (!converged)
    throw SolverError("Newton iteration did not converge in " + std::to_string(opt.max_iterations) +
                      " steps (residual " + std::to_string(sol.residual) + ")");

  // the dropped edge row and the remaining cusp rows must hold on the principal branch
  const ResidualReport rep = verify_solution(t, sol.z);
  const double cert_tol = std::max(1e-9, 1e3 * opt.tolerance);
  for (const auto& r : rep.rows) {
    sol.winding.push_back(r.winding);
    if (r.winding != 0 || std::abs(r.residual) > cert_tol)
      throw SolverError("branch certificate failed on " + r.name);
  }
  sol.geometric = true;
  for (const cd& w : sol.z)
    if (!(w.imag() > 0)) sol.geometric = false;
  return sol;
}

}  // namespace tnz
