#include "tnz/homology.hpp"

#include <algorithm>

#include "tnz/errors.hpp"

namespace tnz {

namespace {

using std::size_t;

BigInt babs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

// Quotient rounded toward negative infinity.
BigInt bfloor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void row_swap(BigMatrix& m, size_t a, size_t b) { m.swap_rows(a, b); }
void col_swap(BigMatrix& m, size_t a, size_t b) { m.swap_cols(a, b); }

// row_i += q * row_t
void row_add(BigMatrix& m, size_t i, size_t t, const BigInt& q) {
  for (size_t j = 0; j < m.cols(); ++j) m(i, j) += q * m(t, j);
}
// col_j += q * col_t
void col_add(BigMatrix& m, size_t j, size_t t, const BigInt& q) {
  for (size_t i = 0; i < m.rows(); ++i) m(i, j) += q * m(i, t);
}

struct SmithState {
  BigMatrix A, U, Uinv, V;

  void swap_r(size_t a, size_t b) {
    row_swap(A, a, b);
    row_swap(U, a, b);
    col_swap(Uinv, a, b);
  }
  void swap_c(size_t a, size_t b) {
    col_swap(A, a, b);
    col_swap(V, a, b);
  }
  void add_r(size_t i, size_t t, const BigInt& q) {
    row_add(A, i, t, q);
    row_add(U, i, t, q);
    col_add(Uinv, t, i, -q);
  }
  void add_c(size_t j, size_t t, const BigInt& q) {
    col_add(A, j, t, q);
    col_add(V, j, t, q);
  }
  void negate_r(size_t i) {
    for (size_t j = 0; j < A.cols(); ++j) A(i, j) = -A(i, j);
    for (size_t j = 0; j < U.cols(); ++j) U(i, j) = -U(i, j);
    for (size_t k = 0; k < Uinv.rows(); ++k) Uinv(k, i) = -Uinv(k, i);
  }
};

}  // namespace

SmithResult smith_decomposition(const BigMatrix& m) {
  const size_t rows = m.rows(), cols = m.cols();
  SmithState s{m, BigMatrix::identity(rows), BigMatrix::identity(rows), BigMatrix::identity(cols)};
  size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    while (true) {
      // smallest nonzero entry of the trailing block goes to (t, t)
      size_t pi = rows, pj = cols;
      for (size_t i = t; i < rows; ++i)
        for (size_t j = t; j < cols; ++j)
          if (s.A(i, j) != 0 && (pi == rows || babs(s.A(i, j)) < babs(s.A(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) goto done;
      s.swap_r(t, pi);
      s.swap_c(t, pj);
      bool clean = true;
      for (size_t i = t + 1; i < rows; ++i)
        if (s.A(i, t) != 0) {
          s.add_r(i, t, -(s.A(i, t) / s.A(t, t)));
          if (s.A(i, t) != 0) clean = false;
        }
      for (size_t j = t + 1; j < cols; ++j)
        if (s.A(t, j) != 0) {
          s.add_c(j, t, -(s.A(t, j) / s.A(t, t)));
          if (s.A(t, j) != 0) clean = false;
        }
      if (!clean) continue;
      // divisibility: fold an offending row into row t and retry
      size_t bad = rows;
      for (size_t i = t + 1; i < rows && bad == rows; ++i)
        for (size_t j = t + 1; j < cols; ++j)
          if (s.A(i, j) % s.A(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      s.add_r(t, bad, BigInt(1));
    }
    if (s.A(t, t) < 0) s.negate_r(t);
  }
done:
  SmithResult r;
  r.rank = static_cast<int>(t);
  r.U = std::move(s.U);
  r.U_inv = std::move(s.Uinv);
  r.V = std::move(s.V);
  r.D = std::move(s.A);
  return r;
}

HermiteResult hermite_form(const BigMatrix& m) {
  const size_t rows = m.rows(), cols = m.cols();
  BigMatrix H = m;
  BigMatrix U = BigMatrix::identity(rows);
  HermiteResult out;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    while (true) {
      size_t piv = rows;
      for (size_t i = r; i < rows; ++i)
        if (H(i, c) != 0 && (piv == rows || babs(H(i, c)) < babs(H(piv, c)))) piv = i;
      if (piv == rows) break;
      H.swap_rows(r, piv);
      U.swap_rows(r, piv);
      bool clean = true;
      for (size_t i = r + 1; i < rows; ++i)
        if (H(i, c) != 0) {
          const BigInt q = -(H(i, c) / H(r, c));
          row_add(H, i, r, q);
          row_add(U, i, r, q);
          if (H(i, c) != 0) clean = false;
        }
      if (clean) break;
    }
    if (r >= rows || H(r, c) == 0) continue;
    if (H(r, c) < 0) {
      for (size_t j = 0; j < cols; ++j) H(r, j) = -H(r, j);
      for (size_t j = 0; j < rows; ++j) U(r, j) = -U(r, j);
    }
    for (size_t i = 0; i < r; ++i) {
      const BigInt q = -bfloor_div(H(i, c), H(r, c));
      if (q != 0) {
        row_add(H, i, r, q);
        row_add(U, i, r, q);
      }
    }
    out.pivot_cols.push_back(static_cast<int>(c));
    ++r;
  }
  out.rank = static_cast<int>(r);
  out.H = std::move(H);
  out.U = std::move(U);
  return out;
}

BigMatrix to_big(const IntMatrix& m) {
  BigMatrix out(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

BigInt big_det(const BigMatrix& m) {
  if (!m.is_square()) throw InputError("determinant of a non-square matrix");
  const size_t n = m.rows();
  BigMatrix a = m;
  BigInt prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return n == 0 ? BigInt(1) : BigInt(sign * a(n - 1, n - 1));
}

namespace {

BigInt dot(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  BigInt s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Greedy size reduction of x against the given lattice vectors.
void size_reduce(std::vector<BigInt>& x, const std::vector<std::vector<BigInt>>& basis) {
  for (int sweep = 0; sweep < 64; ++sweep) {
    bool changed = false;
    for (const auto& k : basis) {
      const BigInt kk = dot(k, k);
      if (kk == 0) continue;
      const BigInt c = bfloor_div(2 * dot(x, k) + kk, 2 * kk);
      if (c == 0) continue;
      for (size_t i = 0; i < x.size(); ++i) x[i] -= c * k[i];
      changed = true;
    }
    if (!changed) break;
  }
}

}  // namespace

std::optional<std::vector<BigInt>> solve_integer(const BigMatrix& m, const std::vector<BigInt>& b) {
  if (b.size() != m.rows()) throw InputError("right-hand side has the wrong length");
  const SmithResult s = smith_decomposition(m);
  const size_t n = m.cols();
  std::vector<BigInt> ub(m.rows(), 0);
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.rows(); ++j) ub[i] += s.U(i, j) * b[j];
  std::vector<BigInt> y(n, 0);
  for (size_t i = 0; i < m.rows(); ++i) {
    if (i < static_cast<size_t>(s.rank)) {
      if (ub[i] % s.D(i, i) != 0) return std::nullopt;
      y[i] = ub[i] / s.D(i, i);
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<BigInt> x(n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) x[i] += s.V(i, k) * y[k];
  std::vector<std::vector<BigInt>> kernel;
  for (size_t k = static_cast<size_t>(s.rank); k < n; ++k) {
    std::vector<BigInt> v(n);
    for (size_t i = 0; i < n; ++i) v[i] = s.V(i, k);
    kernel.push_back(std::move(v));
  }
  size_reduce(x, kernel);
  return x;
}

IntMatrix edge_relation_matrix(const Triangulation& t) {
  const auto classes = compute_edge_classes(t);
  IntMatrix r(classes.size(), static_cast<size_t>(2 * t.n_tets), 0);
  for (const auto& ec : classes)
    for (const auto& v : ec.walk) r(ec.index, v.pairing) += v.sign;
  return r;
}

void check_cocycle(const Triangulation& t, const std::vector<long long>& values) {
  if (values.size() != static_cast<size_t>(2 * t.n_tets))
    throw InputError("cocycle must have " + std::to_string(2 * t.n_tets) + " entries");
  const IntMatrix r = edge_relation_matrix(t);
  for (size_t i = 0; i < r.rows(); ++i) {
    long long s = 0;
    for (size_t p = 0; p < r.cols(); ++p) s += r(i, p) * values[p];
    if (s != 0) throw InputError("cocycle violates the relation of edge " + std::to_string(i));
  }
}

long long evaluate_dual_path(const std::vector<int>& path, const std::vector<long long>& values) {
  long long s = 0;
  for (int k : path) s += (k > 0 ? 1 : -1) * values.at(static_cast<size_t>(std::abs(k) - 1));
  return s;
}

std::vector<long long> apply_coboundary(const Triangulation& t, const std::vector<long long>& values,
                                        const std::vector<long long>& c) {
  if (c.size() != static_cast<size_t>(t.n_tets)) throw InputError("coboundary vector has the wrong length");
  const PairingIndex idx = face_pairings(t);
  if (values.size() != idx.pairings.size()) throw InputError("cocycle has the wrong length");
  std::vector<long long> out = values;
  for (const auto& p : idx.pairings) out[p.index] += c[p.tet_b] - c[p.tet_a];
  return out;
}

CocycleResult solve_cocycle(const Triangulation& t) {
  const size_t n = static_cast<size_t>(t.n_tets);
  const size_t np = 2 * n;
  const SmithResult sr = smith_decomposition(to_big(edge_relation_matrix(t)));
  const size_t k = np - static_cast<size_t>(sr.rank);
  if (k == 0) throw SolverError("edge relations have trivial kernel");
  BigMatrix K(np, k);
  for (size_t i = 0; i < np; ++i)
    for (size_t c = 0; c < k; ++c) K(i, c) = sr.V(i, static_cast<size_t>(sr.rank) + c);

  const PairingIndex idx = face_pairings(t);
  BigMatrix delta(np, n, 0);
  for (const auto& p : idx.pairings) {
    delta(p.index, p.tet_a) -= 1;
    delta(p.index, p.tet_b) += 1;
  }
  BigMatrix Y(k, n, 0);
  for (size_t j = 0; j < n; ++j) {
    std::vector<BigInt> col(np);
    for (size_t i = 0; i < np; ++i) col[i] = delta(i, j);
    auto y = solve_integer(K, col);
    if (!y) throw InternalError("coboundary outside the edge-relation kernel");
    for (size_t c = 0; c < k; ++c) Y(c, j) = (*y)[c];
  }
  const SmithResult sy = smith_decomposition(Y);
  const size_t free_rank = k - static_cast<size_t>(sy.rank);
  if (free_rank != 1)
    throw SolverError("first cohomology has free rank " + std::to_string(free_rank) + ", expected 1");
  std::vector<BigInt> gen(k);
  for (size_t c = 0; c < k; ++c) gen[c] = sy.U_inv(c, static_cast<size_t>(sy.rank));
  std::vector<BigInt> phi(np, 0);
  for (size_t i = 0; i < np; ++i)
    for (size_t c = 0; c < k; ++c) phi[i] += K(i, c) * gen[c];
  std::vector<std::vector<BigInt>> cob;
  for (size_t j = 0; j < n; ++j) {
    std::vector<BigInt> v(np);
    for (size_t i = 0; i < np; ++i) v[i] = delta(i, j);
    cob.push_back(std::move(v));
  }
  size_reduce(phi, cob);

  CocycleResult out;
  for (const auto& v : phi) out.values.push_back(v.convert_to<long long>());
  if (!t.meridian_dual_path.empty()) {
    const long long m = evaluate_dual_path(t.meridian_dual_path, out.values);
    if (m == 0) throw SolverError("cocycle vanishes on the meridian dual path");
    if (m < 0)
      for (auto& v : out.values) v = -v;
  } else {
    out.sign_ambiguous = true;
    for (long long v : out.values)
      if (v != 0) {
        if (v < 0)
          for (auto& w : out.values) w = -w;
        break;
      }
  }
  check_cocycle(t, out.values);
  return out;
}

namespace {

BigMatrix flattening_system(const Triangulation& t, std::vector<BigInt>& rhs) {
  const size_t n = static_cast<size_t>(t.n_tets);
  const GluingMatrices g = gluing_matrices(t);
  const size_t rows = 2 * n + t.peripheral_curves.size();
  BigMatrix m(rows, 3 * n, 0);
  rhs.assign(rows, 0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      m(i, j) = g.G(i, j);
      m(i, n + j) = g.Gp(i, j);
      m(i, 2 * n + j) = g.Gpp(i, j);
    }
    rhs[i] = 2;
    m(n + i, i) = m(n + i, n + i) = m(n + i, 2 * n + i) = 1;
    rhs[n + i] = 1;
  }
  for (size_t c = 0; c < t.peripheral_curves.size(); ++c) {
    const auto& pc = t.peripheral_curves[c];
    for (size_t j = 0; j < n; ++j) {
      m(2 * n + c, j) = pc.C[j];
      m(2 * n + c, n + j) = pc.Cp[j];
      m(2 * n + c, 2 * n + j) = pc.Cpp[j];
    }
  }
  return m;
}

}  // namespace

Flattening solve_flattening(const Triangulation& t) {
  if (t.peripheral_curves.empty()) throw InputError("flattening needs peripheral curves");
  std::vector<BigInt> rhs;
  const BigMatrix m = flattening_system(t, rhs);
  auto x = solve_integer(m, rhs);
  if (!x) throw SolverError("flattening system has no integer solution");
  const size_t n = static_cast<size_t>(t.n_tets);
  Flattening f{std::vector<long long>(n), std::vector<long long>(n), std::vector<long long>(n)};
  for (size_t j = 0; j < n; ++j) {
    f.f[j] = (*x)[j].convert_to<long long>();
    f.fp[j] = (*x)[n + j].convert_to<long long>();
    f.fpp[j] = (*x)[2 * n + j].convert_to<long long>();
  }
  return f;
}

bool is_flattening(const Triangulation& t, const Flattening& f) {
  const size_t n = static_cast<size_t>(t.n_tets);
  if (f.f.size() != n || f.fp.size() != n || f.fpp.size() != n) return false;
  std::vector<BigInt> rhs;
  const BigMatrix m = flattening_system(t, rhs);
  for (size_t i = 0; i < m.rows(); ++i) {
    BigInt s = 0;
    for (size_t j = 0; j < n; ++j) s += m(i, j) * f.f[j] + m(i, n + j) * f.fp[j] + m(i, 2 * n + j) * f.fpp[j];
    if (s != rhs[i]) return false;
  }
  return true;
}

}  // namespace tnz
