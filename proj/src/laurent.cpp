#include "tnz/laurent.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace tnz {

namespace {

// Sign and magnitude text of a coefficient; complex values with a visible
// imaginary part are parenthesised and always count as positive.
std::pair<bool, std::string> coeff_string(const BigInt& c) {
  return {c < 0, c < 0 ? BigInt(-c).str() : c.str()};
}

std::pair<bool, std::string> coeff_string(const Complex& c) {
  std::ostringstream os;
  os.precision(12);
  if (std::abs(c.imag()) < kPruneEps) {
    os << std::abs(c.real());
    return {c.real() < 0, os.str()};
  }
  os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
  return {false, os.str()};
}

int complex_sign(const Complex& c0) {
  if (c0.real() >= kPruneEps) return 1;
  if (c0.real() <= -kPruneEps) return -1;
  return c0.imag() > 0 ? 1 : -1;
}

template <class C>
CanonicalForm<C> canonicalize_impl(const LaurentPoly<C>& p, int sign) {
  CanonicalForm<C> cf;
  if (p.is_zero()) return cf;
  cf.shift = p.min_exp();
  cf.sign = sign;
  cf.poly = p.shifted(-cf.shift);
  if (sign < 0) cf.poly = -cf.poly;
  return cf;
}

double sup_diff(const CPoly& a, const CPoly& b) {
  double d = 0.0;
  for (const auto& [e, c] : a.terms()) d = std::max(d, std::abs(c - b.coeff(e)));
  for (const auto& [e, c] : b.terms())
    if (!a.terms().count(e)) d = std::max(d, std::abs(c));
  return d;
}

double distance_one_way(const CPoly& p, const CPoly& q) {
  if (p.is_zero() || q.is_zero()) return std::max(p.max_abs_coeff(), q.max_abs_coeff());
  CPoly a = p.shifted(-p.min_exp());
  CPoly b = q.shifted(-q.min_exp());
  // the sign choice is made by minimization so that near-ties on the
  // constant coefficient cannot flip the verdict
  return std::min(sup_diff(a, b), sup_diff(a, -b));
}

}  // namespace

template <class C>
std::string LaurentPoly<C>::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto [neg, mag] = coeff_string(it->second);
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    const int e = it->first;
    if (e == 0 || mag != "1") os << mag;
    if (e != 0) os << "t";
    if (e != 0 && e != 1) os << "^" << e;
  }
  return os.str();
}

template class LaurentPoly<BigInt>;
template class LaurentPoly<Complex>;

CanonicalForm<BigInt> lp_canonicalize(const ZPoly& p) {
  if (p.is_zero()) return {};
  return canonicalize_impl(p, p.coeff(p.min_exp()) > 0 ? 1 : -1);
}

CanonicalForm<Complex> lp_canonicalize(const CPoly& p) {
  if (p.is_zero()) return {};
  return canonicalize_impl(p, complex_sign(p.coeff(p.min_exp())));
}

double lp_distance_mod(const CPoly& p, const CPoly& q, bool allow_involution) {
  double d = distance_one_way(p, q);
  if (allow_involution) d = std::min(d, distance_one_way(p.involution(), q));
  return d;
}

bool lp_eq_mod(const CPoly& p, const CPoly& q, bool allow_involution, double tol) {
  return lp_distance_mod(p, q, allow_involution) <= tol;
}

bool lp_eq_mod(const ZPoly& p, const ZPoly& q, bool allow_involution) {
  auto cq = lp_canonicalize(q).poly;
  if (lp_canonicalize(p).poly == cq) return true;
  return allow_involution && lp_canonicalize(p.involution()).poly == cq;
}

namespace {

template <class C, class Close>
std::optional<Palindromy> palindromic_impl(const LaurentPoly<C>& p, Close close) {
  if (p.is_zero()) return Palindromy{1, 0};
  Palindromy out;
  out.r = p.min_exp() + p.max_exp();
  const C lo = p.coeff(p.min_exp());
  const C hi = p.coeff(p.max_exp());
  if (close(hi, lo))
    out.eps = 1;
  else if (close(hi, -lo))
    out.eps = -1;
  else
    return std::nullopt;
  for (const auto& [e, c] : p.terms()) {
    C mirrored = p.coeff(out.r - e);
    if (!close(c, out.eps > 0 ? mirrored : C(-mirrored))) return std::nullopt;
  }
  return out;
}

}  // namespace

std::optional<Palindromy> lp_is_palindromic(const ZPoly& p) {
  return palindromic_impl(p, [](const BigInt& a, const BigInt& b) { return a == b; });
}

std::optional<Palindromy> lp_is_palindromic(const CPoly& p, double tol) {
  return palindromic_impl(p, [tol](const Complex& a, const Complex& b) { return std::abs(a - b) <= tol; });
}

CPoly to_complex(const ZPoly& p) {
  return p.map_coeffs([](const BigInt& c) { return Complex(c.convert_to<double>(), 0.0); });
}

CLMatrix to_complex(const ZLMatrix& m) {
  CLMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_complex(m(i, j));
  return out;
}

ZLMatrix from_int_matrix(const IntMatrix& m) {
  ZLMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = ZPoly(BigInt(m(i, j)));
  return out;
}

IntMatrix lmat_at_one(const ZLMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).sum().convert_to<long long>();
  return out;
}

ZPoly lp_exact_div(const ZPoly& a, const ZPoly& b) {
  if (b.is_zero()) throw InternalError("exact division by zero polynomial");
  if (a.is_zero()) return {};
  const int bmin = b.min_exp();
  const int bdeg = b.max_exp() - bmin;
  const BigInt lead = b.coeff(b.max_exp());
  ZPoly rem = a.shifted(-a.min_exp());
  const int shift = a.min_exp() - bmin;
  ZPoly bb = b.shifted(-bmin);
  ZPoly quot;
  while (!rem.is_zero() && rem.max_exp() >= bdeg) {
    const int d = rem.max_exp() - bdeg;
    const BigInt top = rem.coeff(rem.max_exp());
    if (top % lead != 0) throw InternalError("exact division left a fractional coefficient");
    const BigInt q = top / lead;
    quot.set(d, q);
    rem -= ZPoly::monomial(q, d) * bb;
  }
  if (!rem.is_zero()) throw InternalError("exact division left a remainder");
  return quot.shifted(shift);
}

ZPoly lmat_det_exact(const ZLMatrix& m) {
  if (!m.is_square()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return ZPoly(1);
  ZLMatrix a = m;
  int sign = 1;
  ZPoly prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && a(piv, k).is_zero()) ++piv;
      if (piv == n) return {};
      a.swap_rows(k, piv);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        ZPoly num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        a(i, j) = lp_exact_div(num, prev);
      }
      a(i, k) = ZPoly();
    }
    prev = a(k, k);
  }
  ZPoly d = a(n - 1, n - 1);
  return sign < 0 ? -d : d;
}

namespace {

ZPoly cofactor_rec(const ZLMatrix& m, std::vector<std::size_t>& cols, std::size_t row) {
  if (row == m.rows()) return ZPoly(1);
  ZPoly acc;
  int sign = 1;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const std::size_t c = cols[k];
    if (!m(row, c).is_zero()) {
      cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(k));
      ZPoly sub = m(row, c) * cofactor_rec(m, cols, row + 1);
      cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(k), c);
      acc += sign > 0 ? sub : -sub;
    }
    sign = -sign;
  }
  return acc;
}

}  // namespace

ZPoly lmat_det_cofactor(const ZLMatrix& m) {
  if (!m.is_square()) throw InputError("determinant of a non-square matrix");
  std::vector<std::size_t> cols(m.cols());
  for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = j;
  return cofactor_rec(m, cols, 0);
}

Complex scalar_det(const Matrix<Complex>& m) {
  if (!m.is_square()) throw InputError("determinant of a non-square matrix");
  const auto n = static_cast<Eigen::Index>(m.rows());
  if (n == 0) return Complex(1.0);
  Eigen::MatrixXcd e(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) e(i, j) = m(i, j);
  return e.partialPivLu().determinant();
}

CPoly lmat_det_numeric(const CLMatrix& m) {
  if (!m.is_square()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return CPoly(1);
  std::vector<int> lo(n), hi(n);
  long long degree = 0;
  int total_shift = 0;
  for (std::size_t j = 0; j < n; ++j) {
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      const CPoly& p = m(i, j);
      if (p.is_zero()) continue;
      lo[j] = any ? std::min(lo[j], p.min_exp()) : p.min_exp();
      hi[j] = any ? std::max(hi[j], p.max_exp()) : p.max_exp();
      any = true;
    }
    if (!any) return {};
    degree += hi[j] - lo[j];
    total_shift += lo[j];
  }
  constexpr long long kMaxDegree = 1 << 16;
  if (degree > kMaxDegree) throw SolverError("determinant degree bound exceeds guard");

  const std::size_t pts = static_cast<std::size_t>(degree) + 1;
  std::vector<Complex> values(pts);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(pts);
  Matrix<Complex> ev(n, n);
  for (std::size_t k = 0; k < pts; ++k) {
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) {
        Complex s(0.0);
        for (const auto& [e, c] : m(i, j).terms())
          s += c * std::polar(1.0, step * static_cast<double>((k * static_cast<std::size_t>(e - lo[j])) % pts));
        ev(i, j) = s;
      }
    values[k] = scalar_det(ev);
  }
  CPoly out;
  for (std::size_t d = 0; d < pts; ++d) {
    Complex s(0.0);
    for (std::size_t k = 0; k < pts; ++k)
      s += values[k] * std::polar(1.0, -step * static_cast<double>((k * d) % pts));
    out.set(static_cast<int>(d) + total_shift, s / static_cast<double>(pts));
  }
  return out;
}

}  // namespace tnz
