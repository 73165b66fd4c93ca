#pragma once

#include <string>
#include <vector>

#include "tnz/laurent.hpp"
#include "tnz/triangulation.hpp"

namespace tnz {

struct TwistedGluingData {
  ZLMatrix Gt, Gpt, Gppt;
  std::vector<long long> cocycle_used;
  std::vector<long long> edge_lift_offsets;  // row i is multiplied by t^{c_i}
  std::vector<long long> tet_lift_offsets;   // column j is multiplied by t^{-e_j}
};

struct TwistedNZ {
  ZLMatrix A, B;
};

// Empty lift vectors mean all zero.
TwistedGluingData twisted_gluing_matrices(const Triangulation& t, const std::vector<long long>& cocycle,
                                          const std::vector<long long>& edge_lifts = {},
                                          const std::vector<long long>& tet_lifts = {});
TwistedNZ twisted_nz(const TwistedGluingData& d);

struct SymplecticReport {
  ZLMatrix product;  // A(t) B(1/t)^T
  BigInt max_coeff = 0;
  double hermitian_residual = 0.0;
  bool pass = false;
};

SymplecticReport check_symplectic(const ZLMatrix& A, const ZLMatrix& B);

struct CoverMatrices {
  IntMatrix G, Gp, Gpp, A, B;
};

CoverMatrices circulant_assemble(const TwistedGluingData& d, int n);

// Gluing matrices of the explicit cover, rows reordered to (r, i).
CoverMatrices explicit_cover_matrices(const Triangulation& t, const std::vector<long long>& cocycle, int n);

struct CoverComparison {
  bool pass = false;
  long long max_abs_diff = 0;
};

CoverComparison compare_cover_circulant(const Triangulation& t, const std::vector<long long>& cocycle, int n);

struct PachnerNZReport {
  bool pass = false;
  std::string detail;
  ZLMatrix P;
  ZLMatrix PA, PB;          // P * Abar, P * Bbar in the a, b, c, rest column order
  ZLMatrix target_A, target_B;
};

// Runs the 2-3 move on `pairing`, aligns beta's quads and both sides' lifts,
// then reconstructs P and checks both matrix identities.
PachnerNZReport check_pachner_nz(const Triangulation& t, const std::vector<long long>& cocycle, int pairing);

}  // namespace tnz
