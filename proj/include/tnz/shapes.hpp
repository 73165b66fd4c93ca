#pragma once

#include <complex>
#include <string>
#include <vector>

#include "tnz/matrix.hpp"
#include "tnz/triangulation.hpp"

namespace tnz {

using cvec = std::vector<std::complex<double>>;

struct ZetaTriple {
  cvec zeta, zetap, zetapp;
};

struct ShapeSolution {
  cvec z;
  double residual = 0.0;
  std::vector<int> winding;  // per edge row, then per peripheral curve
  int iterations = 0;
  bool geometric = false;    // all Im z_j > 0
};

struct EquationResidual {
  std::string name;
  std::complex<double> residual;  // value minus target, principal logs
  int winding = 0;                // round(residual / 2 pi i)
};

struct ResidualReport {
  std::vector<EquationResidual> rows;
  double max_residual = 0.0;
};

struct NewtonOptions {
  double tolerance = 1e-12;
  int max_iterations = 100;
  double exclusion_radius = 1e-8;
};

ZetaTriple zeta(const cvec& z);

// Square system: first n-1 edge rows (target 2 pi i) and the meridian row.
cvec shape_equations(const Triangulation& t, const cvec& z);
Matrix<std::complex<double>> shape_jacobian(const Triangulation& t, const cvec& z);

ShapeSolution solve_shapes(const Triangulation& t, const NewtonOptions& opt = {});
ResidualReport verify_solution(const Triangulation& t, const cvec& z);

}  // namespace tnz
