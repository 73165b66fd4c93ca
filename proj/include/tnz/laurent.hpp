#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "tnz/matrix.hpp"

namespace tnz {

using BigInt = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

// Coefficients below this magnitude are dropped in the complex domain.
inline constexpr double kPruneEps = 1e-10;

template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<BigInt> {
  static constexpr bool exact = true;
  static bool negligible(const BigInt& c) { return c == 0; }
  static double magnitude(const BigInt& c) { return std::abs(c.convert_to<double>()); }
  static Complex to_complex(const BigInt& c) { return Complex(c.convert_to<double>(), 0.0); }
};

template <>
struct CoeffTraits<Complex> {
  static constexpr bool exact = false;
  static bool negligible(const Complex& c) { return std::abs(c) < kPruneEps; }
  static double magnitude(const Complex& c) { return std::abs(c); }
  static Complex to_complex(const Complex& c) { return c; }
};

// Finitely supported map exponent -> coefficient. Zero is the empty map.
template <class C>
class LaurentPoly {
 public:
  using Traits = CoeffTraits<C>;
  using Terms = std::map<int, C>;

  LaurentPoly() = default;
  LaurentPoly(int c) { set(0, C(c)); }  // NOLINT(google-explicit-constructor)
  explicit LaurentPoly(const C& c) { set(0, c); }

  static LaurentPoly monomial(const C& c, int e) {
    LaurentPoly p;
    p.set(e, c);
    return p;
  }
  static LaurentPoly t() { return monomial(C(1), 1); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  int min_exp() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  int max_exp() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

  C coeff(int e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? C(0) : it->second;
  }

  void set(int e, const C& c) {
    if (Traits::negligible(c))
      terms_.erase(e);
    else
      terms_[e] = c;
  }
  void add(int e, const C& c) { set(e, coeff(e) + c); }

  // Value at t = 1.
  C sum() const {
    C s(0);
    for (const auto& [e, c] : terms_) s += c;
    return s;
  }

  Complex eval(Complex t) const {
    Complex s(0.0);
    for (const auto& [e, c] : terms_) s += Traits::to_complex(c) * std::pow(t, e);
    return s;
  }

  // t -> 1/t
  LaurentPoly involution() const {
    LaurentPoly out;
    for (const auto& [e, c] : terms_) out.terms_[-e] = c;
    return out;
  }

  LaurentPoly shifted(int k) const {
    LaurentPoly out;
    for (const auto& [e, c] : terms_) out.terms_[e + k] = c;
    return out;
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [e, c] : terms_) m = std::max(m, Traits::magnitude(c));
    return m;
  }

  LaurentPoly operator-() const {
    LaurentPoly out;
    for (const auto& [e, c] : terms_) out.terms_[e] = -c;
    return out;
  }
  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add(e, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    std::map<int, C> acc;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        auto [it, fresh] = acc.try_emplace(ea + eb, C(ca * cb));
        if (!fresh) it->second += ca * cb;
      }
    LaurentPoly out;
    for (auto& [e, c] : acc) out.set(e, c);
    return out;
  }
  friend LaurentPoly operator*(const C& s, const LaurentPoly& p) {
    LaurentPoly out;
    for (const auto& [e, c] : p.terms_) out.set(e, s * c);
    return out;
  }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

  template <class F>
  auto map_coeffs(F f) const {
    using D = decltype(f(std::declval<C>()));
    LaurentPoly<D> out;
    for (const auto& [e, c] : terms_) out.set(e, f(c));
    return out;
  }

 private:
  Terms terms_;
};

template <class C>
std::ostream& operator<<(std::ostream& os, const LaurentPoly<C>& p) {
  return os << p.to_string();
}

using ZPoly = LaurentPoly<BigInt>;
using CPoly = LaurentPoly<Complex>;
template <class C>
using LaurentMatrix = Matrix<LaurentPoly<C>>;
using ZLMatrix = LaurentMatrix<BigInt>;
using CLMatrix = LaurentMatrix<Complex>;

// original = sign * t^shift * poly, poly has minimum exponent 0.
template <class C>
struct CanonicalForm {
  LaurentPoly<C> poly;
  int shift = 0;
  int sign = 1;

  LaurentPoly<C> reconstruct() const {
    LaurentPoly<C> p = poly.shifted(shift);
    return sign < 0 ? -p : p;
  }
};

struct Palindromy {
  int eps = 1;
  int r = 0;
};

CanonicalForm<BigInt> lp_canonicalize(const ZPoly& p);
CanonicalForm<Complex> lp_canonicalize(const CPoly& p);

// Smallest coefficientwise sup-distance between the +/- t^Z classes of p and q
// (and of p(1/t), q when allow_involution is set).
double lp_distance_mod(const CPoly& p, const CPoly& q, bool allow_involution);
bool lp_eq_mod(const CPoly& p, const CPoly& q, bool allow_involution, double tol);
bool lp_eq_mod(const ZPoly& p, const ZPoly& q, bool allow_involution);

std::optional<Palindromy> lp_is_palindromic(const ZPoly& p);
std::optional<Palindromy> lp_is_palindromic(const CPoly& p, double tol);

CPoly to_complex(const ZPoly& p);
CLMatrix to_complex(const ZLMatrix& m);
ZLMatrix from_int_matrix(const IntMatrix& m);

// Exact quotient a / b in Z[t^{+-1}]; throws InternalError if b does not divide a.
ZPoly lp_exact_div(const ZPoly& a, const ZPoly& b);

CPoly lmat_det_numeric(const CLMatrix& m);
ZPoly lmat_det_exact(const ZLMatrix& m);

// Cofactor expansion; exponential cost, meant as a test oracle for small sizes.
ZPoly lmat_det_cofactor(const ZLMatrix& m);

template <class C>
LaurentMatrix<C> lmat_involution(const LaurentMatrix<C>& m) {
  LaurentMatrix<C> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).involution();
  return out;
}

template <class C>
Matrix<Complex> lmat_eval(const LaurentMatrix<C>& m, Complex t) {
  Matrix<Complex> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).eval(t);
  return out;
}

// Entrywise value at t = 1.
IntMatrix lmat_at_one(const ZLMatrix& m);

Complex scalar_det(const Matrix<Complex>& m);

}  // namespace tnz
