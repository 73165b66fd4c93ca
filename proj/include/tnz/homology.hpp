#pragma once

#include <optional>
#include <vector>

#include "tnz/laurent.hpp"
#include "tnz/triangulation.hpp"

namespace tnz {

using BigMatrix = Matrix<BigInt>;

// U * M * V = D with U, V unimodular and d1 | d2 | ... on the diagonal of D.
struct SmithResult {
  BigMatrix U, D, V;
  BigMatrix U_inv;
  int rank = 0;
};

// U * M = H, H in row echelon form with positive pivots and the entries
// above each pivot reduced into [0, pivot).
struct HermiteResult {
  BigMatrix U, H;
  int rank = 0;
  std::vector<int> pivot_cols;
};

SmithResult smith_decomposition(const BigMatrix& m);
HermiteResult hermite_form(const BigMatrix& m);

BigMatrix to_big(const IntMatrix& m);
BigInt big_det(const BigMatrix& m);

// Integer solution of M x = b, size-reduced against the integer kernel.
std::optional<std::vector<BigInt>> solve_integer(const BigMatrix& m, const std::vector<BigInt>& b);

// Rows: edge classes. Columns: face pairings. Entries: signed crossing counts.
IntMatrix edge_relation_matrix(const Triangulation& t);

struct CocycleResult {
  std::vector<long long> values;
  bool sign_ambiguous = false;
};

CocycleResult solve_cocycle(const Triangulation& t);
// Throws InputError when the values violate an edge relation.
void check_cocycle(const Triangulation& t, const std::vector<long long>& values);
// Signed sum of the values along the meridian dual path.
long long evaluate_dual_path(const std::vector<int>& path, const std::vector<long long>& values);
std::vector<long long> apply_coboundary(const Triangulation& t, const std::vector<long long>& values,
                                        const std::vector<long long>& c);

Flattening solve_flattening(const Triangulation& t);
bool is_flattening(const Triangulation& t, const Flattening& f);

}  // namespace tnz
