#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tnz/errors.hpp"
#include "tnz/homology.hpp"

using namespace tnz;
using tnz::testing::fixture;

namespace {

BigMatrix mul(const BigMatrix& a, const BigMatrix& b) {
  BigMatrix c(a.rows(), b.cols(), BigInt(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
  return c;
}

BigMatrix ident(std::size_t n) {
  BigMatrix m(n, n, BigInt(0));
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

// Laplace expansion along the first row.
BigInt cofactor_det(const BigMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  BigInt d = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    BigMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    const BigInt term = m(0, j) * cofactor_det(minor);
    d += (j % 2 ? -term : term);
  }
  return d;
}

BigMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int range) {
  std::uniform_int_distribution<int> d(-range, range);
  BigMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

bool is_diagonal_chain(const BigMatrix& d, int rank) {
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0) return false;
  const std::size_t k = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i < k; ++i) {
    const bool nonzero = static_cast<int>(i) < rank;
    if (nonzero != (d(i, i) != 0)) return false;
    if (nonzero && d(i, i) < 0) return false;
    if (i + 1 < k && d(i, i) != 0 && d(i + 1, i + 1) % d(i, i) != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("Smith normal form examples") {
  const SmithResult a = smith_decomposition(BigMatrix{{3, 0}, {0, 5}});
  CHECK(a.D == (BigMatrix{{1, 0}, {0, 15}}));
  const SmithResult b = smith_decomposition(BigMatrix{{2, 4}, {6, 8}});
  CHECK(b.D == (BigMatrix{{2, 0}, {0, 4}}));
  const SmithResult z = smith_decomposition(BigMatrix(2, 3, BigInt(0)));
  CHECK(z.D == BigMatrix(2, 3, BigInt(0)));
  CHECK(z.U == ident(2));
  CHECK(z.V == ident(3));
  CHECK(z.rank == 0);
}

TEST_CASE("Smith and Hermite forms of random matrices") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> dim(1, 6);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t r = dim(rng), c = dim(rng);
    BigMatrix m = random_matrix(rng, r, c, trial % 3 == 0 ? 2 : 9);
    if (trial % 7 == 0 && r > 1)  // force a rank drop
      for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) * 3;
    const SmithResult s = smith_decomposition(m);
    CHECK(mul(mul(s.U, m), s.V) == s.D);
    CHECK(abs(cofactor_det(s.U)) == 1);
    CHECK(abs(cofactor_det(s.V)) == 1);
    CHECK(mul(s.U, s.U_inv) == ident(r));
    CHECK(is_diagonal_chain(s.D, s.rank));
    if (r == c) CHECK(abs(cofactor_det(m)) == abs(cofactor_det(s.D)));

    const HermiteResult h = hermite_form(m);
    CHECK(mul(h.U, m) == h.H);
    CHECK(abs(cofactor_det(h.U)) == 1);
    CHECK(h.rank == s.rank);
    CHECK(static_cast<int>(h.pivot_cols.size()) == h.rank);
    for (int i = 0; i < h.rank; ++i) {
      const std::size_t p = h.pivot_cols[i];
      CHECK(h.H(i, p) > 0);
      if (i > 0) CHECK(h.pivot_cols[i - 1] < h.pivot_cols[i]);
      for (std::size_t j = 0; j < p; ++j) CHECK(h.H(i, j) == 0);
      for (int k = 0; k < i; ++k) {
        CHECK(h.H(k, p) >= 0);
        CHECK(h.H(k, p) < h.H(i, p));
      }
    }
    for (std::size_t i = h.rank; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) CHECK(h.H(i, j) == 0);
  }
}

TEST_CASE("integer linear solving") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const BigMatrix m = random_matrix(rng, 4, 6, 5);
    const BigMatrix x0 = random_matrix(rng, 6, 1, 4);
    const BigMatrix b = mul(m, x0);
    std::vector<BigInt> bv;
    for (std::size_t i = 0; i < 4; ++i) bv.push_back(b(i, 0));
    const auto x = solve_integer(m, bv);
    REQUIRE(x);
    BigMatrix xm(6, 1);
    for (std::size_t i = 0; i < 6; ++i) xm(i, 0) = (*x)[i];
    CHECK(mul(m, xm) == b);
  }
  CHECK_FALSE(solve_integer(BigMatrix{{2, 4}}, {BigInt(3)}));
  CHECK_FALSE(solve_integer(BigMatrix{{1, 1}, {1, 1}}, {BigInt(1), BigInt(2)}));
}

TEST_CASE("cocycles of the fixtures") {
  for (const char* name : {"4_1", "6_3"}) {
    Triangulation t = fixture(name);
    const std::vector<long long> pinned = *t.cocycle;
    t.cocycle.reset();
    const IntMatrix R = edge_relation_matrix(t);
    const CocycleResult c = solve_cocycle(t);
    CHECK_FALSE(c.sign_ambiguous);
    CHECK(evaluate_dual_path(t.meridian_dual_path, c.values) == 1);
    CHECK(evaluate_dual_path(t.meridian_dual_path, pinned) == 1);
    for (std::size_t i = 0; i < R.rows(); ++i) {
      long long s = 0;
      for (std::size_t j = 0; j < R.cols(); ++j) s += R(i, j) * c.values[j];
      CHECK(s == 0);
    }
    // same class as the pinned cocycle: the difference is a coboundary
    const PairingIndex idx = face_pairings(t);
    BigMatrix D(idx.pairings.size(), t.n_tets, BigInt(0));
    std::vector<BigInt> diff;
    for (const auto& p : idx.pairings) {
      D(p.index, p.tet_b) += 1;
      D(p.index, p.tet_a) -= 1;
      diff.push_back(BigInt(c.values[p.index] - pinned[p.index]));
    }
    const auto shift = solve_integer(D, diff);
    REQUIRE(shift);
    std::vector<long long> cs;
    for (const auto& v : *shift) cs.push_back(v.convert_to<long long>());
    CHECK(apply_coboundary(t, pinned, cs) == c.values);
  }
}

TEST_CASE("cocycle sign is ambiguous without a dual path") {
  Triangulation t = fixture("4_1");
  t.cocycle.reset();
  t.meridian_dual_path.clear();
  const CocycleResult c = solve_cocycle(t);
  CHECK(c.sign_ambiguous);
  check_cocycle(t, c.values);
}

TEST_CASE("coboundaries") {
  const Triangulation t = fixture("6_3");
  const auto& phi = *t.cocycle;
  CHECK(apply_coboundary(t, phi, std::vector<long long>(6, 0)) == phi);
  CHECK(apply_coboundary(t, phi, std::vector<long long>(6, 4)) == phi);
  const auto moved = apply_coboundary(t, phi, {1, -2, 0, 3, 0, 5});
  CHECK(moved != phi);
  check_cocycle(t, moved);
  CHECK(evaluate_dual_path(t.meridian_dual_path, moved) == 1);
  std::vector<long long> bad = phi;
  bad[0] += 1;
  CHECK_THROWS_AS(check_cocycle(t, bad), InputError);
  CHECK_THROWS_AS(check_cocycle(t, {1, 2, 3}), InputError);
}

TEST_CASE("flattenings") {
  const Triangulation t41 = fixture("4_1"), t63 = fixture("6_3");
  CHECK(is_flattening(t41, Flattening{{0, 0}, {1, 1}, {0, 0}}));
  CHECK(is_flattening(t63, Flattening{{0, 1, 0, 1, 0, 0}, {1, 0, 1, 0, 1, 1}, {0, 0, 0, 0, 0, 0}}));
  CHECK_FALSE(is_flattening(t41, Flattening{{1, 0}, {0, 1}, {0, 0}}));
  for (const Triangulation* t : {&t41, &t63}) {
    const Flattening f = solve_flattening(*t);
    CHECK(is_flattening(*t, f));
    for (int j = 0; j < t->n_tets; ++j) CHECK(f.f[j] + f.fp[j] + f.fpp[j] == 1);
  }
}
