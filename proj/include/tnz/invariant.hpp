#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tnz/homology.hpp"
#include "tnz/laurent.hpp"
#include "tnz/shapes.hpp"
#include "tnz/twist.hpp"

namespace tnz {

struct OneLoopValue {
  Complex value;
  std::string curve;
};

struct TwistedOneLoop {
  CPoly raw;  // the representative produced by the default lifts
  CanonicalForm<Complex> canonical;
  double form_agreement = 0.0;  // max coefficient gap between the A/B and G forms
  std::vector<long long> cocycle;
  Flattening flattening;
  cvec shapes;
};

Complex flattening_denominator(const cvec& z, const Flattening& f);

OneLoopValue one_loop(const Triangulation& t, const cvec& z, const Flattening& f, const std::string& curve);

TwistedOneLoop twisted_one_loop(const Triangulation& t, const std::vector<long long>& cocycle, const cvec& z,
                                const Flattening& f);
// Same, for explicit twisted matrices (any lift choice).
TwistedOneLoop twisted_one_loop(const TwistedGluingData& d, const cvec& z, const Flattening& f);

// Value of p'(t) at t = 1.
Complex derivative_at_one(const CPoly& p);

struct CheckReport {
  bool pass = false;
  double residual = 0.0;
  std::string detail;
};

// Everything the consistency checks need about one triangulation.
struct Setup {
  Triangulation tri;
  std::vector<long long> cocycle;
  bool sign_ambiguous = false;
  ShapeSolution shapes;
  Flattening flattening;
};

// Cocycle precedence: override, then the one stored in t, then the solver.
Setup prepare(const Triangulation& t, const std::vector<long long>* cocycle_override = nullptr,
              const NewtonOptions& opt = {});

// Twisted 1-loop of the n-fold cover in its own variable s.
CPoly cover_one_loop(const Setup& s, int n);

CheckReport check_cyclic_product(const Setup& s, int n);
CheckReport check_derivative(const Setup& s, const std::string& curve = "longitude");
CheckReport check_cover_derivative(const Setup& s, int n, const std::string& curve = "longitude");
CheckReport check_symmetry(const Setup& s);
CheckReport check_palindromic(const Setup& s, bool use_b);
CheckReport check_pachner_invariance(const Setup& s, const std::vector<int>& pairings);

// Face pairings whose two sides are distinct tetrahedra.
std::vector<int> pachner_candidates(const Triangulation& t);

// Full suite keyed by check name.
std::map<std::string, CheckReport> run_verify(const Setup& s);

}  // namespace tnz
