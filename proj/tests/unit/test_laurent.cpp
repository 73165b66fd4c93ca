#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tnz/errors.hpp"
#include "tnz/laurent.hpp"

using namespace tnz;
using tnz::testing::zmat;
using tnz::testing::zp;

namespace {

// Independent evaluation-based check: p and q agree at several points.
bool agree_at_points(const CPoly& p, const ZPoly& q, double tol) {
  for (double ang : {0.3, 1.1, 2.5, 4.0})
    for (double r : {0.7, 1.0, 1.3}) {
      const Complex t = std::polar(r, ang);
      if (std::abs(p.eval(t) - q.eval(t)) > tol * std::max(1.0, std::abs(q.eval(t)))) return false;
    }
  return true;
}

double coeff_gap(const CPoly& p, const ZPoly& q) {
  const CPoly d = p - to_complex(q);
  return d.max_abs_coeff();
}

}  // namespace

TEST_CASE("arithmetic and pruning") {
  const ZPoly p = zp("t^2 - 5t + 1");
  CHECK((p * zp("t - 1")) == zp("t^3 - 6t^2 + 6t - 1"));
  CHECK((p - p).is_zero());
  CHECK(p.involution() == zp("t^-2 - 5t^-1 + 1"));
  CHECK(p.sum() == -3);
  CHECK(zp("2t - 2t").size() == 0);
  CPoly c;
  c.set(3, Complex(1e-12, 0));
  CHECK(c.is_zero());
}

TEST_CASE("canonical forms") {
  const auto a = lp_canonicalize(zp("2t^3 - 2t^2"));
  CHECK(a.poly == zp("2 - 2t"));
  CHECK(a.shift == 2);
  CHECK(a.sign == -1);
  CHECK(a.reconstruct() == zp("2t^3 - 2t^2"));

  const auto b = lp_canonicalize(zp("-t^4 + 6t^3 - 6t^2 + t"));
  CHECK(b.poly == zp("1 - 6t + 6t^2 - t^3"));
  CHECK(b.shift == 1);
  CHECK(b.sign == 1);
  CHECK(b.reconstruct() == zp("-t^4 + 6t^3 - 6t^2 + t"));

  const auto z = lp_canonicalize(ZPoly());
  CHECK(z.poly.is_zero());
  CHECK(z.shift == 0);
  CHECK(z.sign == 1);

  const auto c = lp_canonicalize(to_complex(zp("-3t^-2 + t")));
  CHECK(c.sign == -1);
  CHECK(c.shift == -2);
  CHECK(lp_distance_mod(c.poly, to_complex(zp("3 - t^3")), false) < 1e-15);
}

TEST_CASE("equality modulo units") {
  const ZPoly tau = zp("t") * zp("t - 1") * zp("t^2 - 5t + 1");
  CHECK(lp_eq_mod(tau, -zp("t^3") * zp("t - 1") * zp("t^2 - 5t + 1"), false));
  CHECK_FALSE(lp_eq_mod(zp("t^2 - 5t + 1"), zp("t^2 + 5t + 1"), false));
  CHECK(lp_eq_mod(zp("2t - 1"), zp("t - 2"), true));
  CHECK_FALSE(lp_eq_mod(zp("2t - 1"), zp("t - 2"), false));
  CHECK(lp_eq_mod(to_complex(tau), to_complex(tau.shifted(4)), false, 1e-12));
  CHECK(lp_distance_mod(to_complex(zp("t + 1")), to_complex(zp("t + 3")), false) == doctest::Approx(2.0));
}

TEST_CASE("palindromy") {
  const auto a = lp_is_palindromic(zp("t^2 - 5t + 1"));
  REQUIRE(a);
  CHECK(a->eps == 1);
  CHECK(a->r == 2);
  const auto b = lp_is_palindromic(zp("t^4 - 2t^3 + 2t^2 - t"));
  REQUIRE(b);
  CHECK(b->eps == -1);
  CHECK(b->r == 5);
  CHECK_FALSE(lp_is_palindromic(zp("t^2 + t + 2")));
  const auto c = lp_is_palindromic(to_complex(zp("t^4 - 2t^3 + 2t^2 - t")), 1e-12);
  REQUIRE(c);
  CHECK(c->r == 5);
}

TEST_CASE("exact division") {
  const ZPoly a = zp("t^2 - 5t + 1"), b = zp("t - 1 + t^-3");
  CHECK(lp_exact_div(a * b, b) == a);
  CHECK(lp_exact_div(a * b, a) == b);
  CHECK_THROWS_AS(lp_exact_div(zp("t^2 + 1"), zp("t - 1")), InternalError);
}

TEST_CASE("determinants of small matrices") {
  CHECK(lmat_det_exact(zmat({{"3t"}})) == zp("3t"));
  CHECK(lmat_det_exact(from_int_matrix(IntMatrix::identity(3))) == zp("1"));
  CHECK(lmat_det_exact(from_int_matrix(IntMatrix{{1, 1}, {-1, -1}})).is_zero());
  const ZLMatrix At = zmat({{"-t^2+2t", "2t-1"}, {"-t", "-t^2"}});
  CHECK(lmat_det_cofactor(At) == zp("t^4 - 2t^3 + 2t^2 - t"));
  CHECK(lmat_det_exact(At) == zp("t^4 - 2t^3 + 2t^2 - t"));
  const CPoly num = lmat_det_numeric(to_complex(At));
  CHECK(coeff_gap(num, zp("t^4 - 2t^3 + 2t^2 - t")) < 1e-12);
  CHECK(lmat_det_numeric(CLMatrix(0, 0)) == CPoly(1));
}

TEST_CASE("exact and numeric determinants agree with cofactor expansion") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const ZLMatrix m = tnz::testing::random_laurent_matrix(rng, n, 3, 3, 4);
    const ZPoly ref = lmat_det_cofactor(m);
    CHECK(lmat_det_exact(m) == ref);
    const CPoly num = lmat_det_numeric(to_complex(m));
    CHECK(coeff_gap(num, ref) < 1e-9 * std::max(1.0, ref.max_abs_coeff()));
  }
}

TEST_CASE("numeric determinant on larger matrices") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const ZLMatrix m = tnz::testing::random_laurent_matrix(rng, 8, 2, 2, 3);
    const ZPoly exact = lmat_det_exact(m);
    const CPoly num = lmat_det_numeric(to_complex(m));
    const double scale = std::max(1.0, exact.max_abs_coeff());
    CHECK(coeff_gap(num, exact) / scale < 1e-9);
    CHECK(agree_at_points(num, exact, 1e-8));
  }
}
