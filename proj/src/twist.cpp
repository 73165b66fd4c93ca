#include "tnz/twist.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tnz/errors.hpp"
#include "tnz/homology.hpp"

namespace tnz {

namespace {

std::vector<long long> or_zeros(const std::vector<long long>& v, std::size_t n, const char* what) {
  if (v.empty()) return std::vector<long long>(n, 0);
  if (v.size() != n) throw InputError(std::string(what) + " has the wrong length");
  return v;
}

// Accumulated cocycle offset at each visit of the walk, starting from 0.
std::vector<long long> walk_offsets(const EdgeClass& ec, const std::vector<long long>& cocycle) {
  std::vector<long long> out;
  long long d = 0;
  for (const auto& v : ec.walk) {
    out.push_back(d);
    d += v.sign * cocycle[v.pairing];
  }
  return out;
}

ZLMatrix mat_sub(const ZLMatrix& a, const ZLMatrix& b) { return a - b; }

}  // namespace

TwistedGluingData twisted_gluing_matrices(const Triangulation& t, const std::vector<long long>& cocycle,
                                          const std::vector<long long>& edge_lifts,
                                          const std::vector<long long>& tet_lifts) {
  const auto n = static_cast<std::size_t>(t.n_tets);
  if (cocycle.size() != 2 * n) throw InputError("cocycle must have " + std::to_string(2 * n) + " entries");
  const auto classes = compute_edge_classes(t);
  TwistedGluingData d;
  d.cocycle_used = cocycle;
  d.edge_lift_offsets = or_zeros(edge_lifts, classes.size(), "edge lift vector");
  d.tet_lift_offsets = or_zeros(tet_lifts, n, "tetrahedron lift vector");
  d.Gt = d.Gpt = d.Gppt = ZLMatrix(classes.size(), n);
  ZLMatrix* by_quad[3] = {&d.Gt, &d.Gpt, &d.Gppt};
  for (const auto& ec : classes) {
    long long off = 0;
    for (const auto& v : ec.walk) {
      const long long e = off + d.edge_lift_offsets[ec.index] - d.tet_lift_offsets[v.tet];
      (*by_quad[v.quad])(ec.index, v.tet).add(static_cast<int>(e), BigInt(1));
      off += v.sign * cocycle[v.pairing];
    }
    if (off != 0)
      throw InputError("cocycle does not close up around edge " + std::to_string(ec.index) + " (offset " +
                       std::to_string(off) + ")");
  }
  return d;
}

TwistedNZ twisted_nz(const TwistedGluingData& d) { return {mat_sub(d.Gt, d.Gpt), mat_sub(d.Gppt, d.Gpt)}; }

SymplecticReport check_symplectic(const ZLMatrix& A, const ZLMatrix& B) {
  if (!A.is_square() || A.rows() != B.rows() || A.cols() != B.cols())
    throw InputError("symplectic check needs square matrices of equal size");
  SymplecticReport rep;
  rep.product = A * lmat_involution(B).transpose();
  const ZLMatrix other = B * lmat_involution(A).transpose();
  const ZLMatrix s = rep.product - other;
  for (const auto& p : s.data())
    for (const auto& [e, c] : p.terms())
      if ((c < 0 ? BigInt(-c) : c) > rep.max_coeff) rep.max_coeff = c < 0 ? BigInt(-c) : c;
  const std::size_t n = A.rows();
  for (int k = 0; k < 8; ++k) {
    const Complex w = std::polar(1.0, 0.3 + 2.0 * std::numbers::pi * k / 8.0);
    const auto a = lmat_eval(A, w);
    const auto b = lmat_eval(B, w);
    Matrix<Complex> h(n, n, Complex(0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) h(i, j) += a(i, l) * std::conj(b(j, l));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        rep.hermitian_residual = std::max(rep.hermitian_residual, std::abs(h(i, j) - std::conj(h(j, i))));
  }
  rep.pass = rep.max_coeff == 0 && rep.hermitian_residual < 1e-9;
  return rep;
}

CoverMatrices circulant_assemble(const TwistedGluingData& d, int n) {
  if (n < 1) throw InputError("cover degree must be at least 1");
  const std::size_t rows = d.Gt.rows(), cols = d.Gt.cols();
  auto assemble = [&](const ZLMatrix& x) {
    IntMatrix out(n * rows, n * cols, 0);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        for (const auto& [e, c] : x(i, j).terms())
          for (int r = 0; r < n; ++r) {
            const int s = ((r + e) % n + n) % n;
            out(r * rows + i, s * cols + j) += c.convert_to<long long>();
          }
    return out;
  };
  CoverMatrices m{assemble(d.Gt), assemble(d.Gpt), assemble(d.Gppt), {}, {}};
  m.A = m.G - m.Gp;
  m.B = m.Gpp - m.Gp;
  return m;
}

CoverMatrices explicit_cover_matrices(const Triangulation& t, const std::vector<long long>& cocycle, int n) {
  const Triangulation cov = cyclic_cover(t, cocycle, n);
  const GluingMatrices g = gluing_matrices(cov);
  const auto rows = cover_edge_rows(t, cov, n);
  auto reorder = [&](const IntMatrix& x) {
    IntMatrix out(x.rows(), x.cols(), 0);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t j = 0; j < x.cols(); ++j) out(r, j) = x(rows[r], j);
    return out;
  };
  CoverMatrices m{reorder(g.G), reorder(g.Gp), reorder(g.Gpp), {}, {}};
  m.A = m.G - m.Gp;
  m.B = m.Gpp - m.Gp;
  return m;
}

CoverComparison compare_cover_circulant(const Triangulation& t, const std::vector<long long>& cocycle, int n) {
  const CoverMatrices a = circulant_assemble(twisted_gluing_matrices(t, cocycle), n);
  const CoverMatrices b = explicit_cover_matrices(t, cocycle, n);
  CoverComparison c;
  const IntMatrix* xs[5] = {&a.G, &a.Gp, &a.Gpp, &a.A, &a.B};
  const IntMatrix* ys[5] = {&b.G, &b.Gp, &b.Gpp, &b.A, &b.B};
  for (int k = 0; k < 5; ++k) {
    if (xs[k]->rows() != ys[k]->rows() || xs[k]->cols() != ys[k]->cols()) return c;
    for (std::size_t i = 0; i < xs[k]->data().size(); ++i)
      c.max_abs_diff = std::max(c.max_abs_diff, std::abs(xs[k]->data()[i] - ys[k]->data()[i]));
  }
  c.pass = c.max_abs_diff == 0;
  return c;
}

PachnerNZReport check_pachner_nz(const Triangulation& t0, const std::vector<long long>& cocycle, int pairing) {
  check_cocycle(t0, cocycle);
  const PairingIndex idx0 = face_pairings(t0);
  if (pairing < 0 || pairing >= static_cast<int>(idx0.pairings.size()))
    throw InputError("face-pairing index out of range");
  const FacePairing fp0 = idx0.pairings[pairing];
  const int alpha = fp0.tet_a, beta = fp0.tet_b;
  if (alpha == beta) throw InputError("2-3 move needs two distinct tetrahedra across the face");

  // put beta on alpha's level so the bipyramid lifts as one piece
  std::vector<long long> c(static_cast<std::size_t>(t0.n_tets), 0);
  c[beta] = -cocycle[pairing];
  Triangulation t = t0;
  t.cocycle = apply_coboundary(t0, cocycle, c);

  // relabel beta so that its z-quad meets alpha's z-quad on the shared triangle
  const int nv = fp0.face_a;
  const std::array<int, 3> u{nv ^ 2, nv ^ 3, nv ^ 1};
  bool aligned = false;
  for (const Perm& pi : {Perm{0, 1, 2, 3}, Perm{0, 2, 3, 1}, Perm{0, 3, 1, 2}}) {
    const Triangulation cand = relabel_vertices(t, beta, pi);
    const Perm& g = cand.gluings[alpha][nv].perm;
    if (quad_of(g[u[0]], g[u[1]]) == kZ) {
      t = cand;
      aligned = true;
      break;
    }
  }
  if (!aligned) throw InternalError("no even relabeling aligns the quads of beta");
  PachnerNZReport rep;
  {
    const Perm& g = t.gluings[alpha][nv].perm;
    if (quad_of(u[1], u[2]) != kZp || quad_of(g[u[1]], g[u[2]]) != kZpp) {
      rep.detail = "quads across the shared face do not pair as (z', z'')";
      return rep;
    }
  }
  const int p = face_pairings(t).of_face[alpha][nv].first;
  const std::vector<long long>& phi = *t.cocycle;
  const TwistedNZ old_nz = twisted_nz(twisted_gluing_matrices(t, phi));

  const PachnerResult res = pachner_23(t, p);
  const Triangulation& tb = res.tri;
  const auto& mv = res.move;
  const auto classes = compute_edge_classes(tb);
  const auto lookup = edge_class_lookup(tb, classes);
  const int n_old = t.n_tets;
  std::vector<long long> lifts(classes.size(), 0);
  std::vector<int> row_order;
  const int e0 = lookup[mv.new_tets[0]][tet_edge_slot(0, 2)];
  row_order.push_back(e0);
  for (int i = 0; i < n_old; ++i) {
    const TetEdge& img = mv.edge_start_image[i];
    const int cls = lookup[img.tet][tet_edge_slot(img.v0, img.v1)];
    const auto offs = walk_offsets(classes[cls], *tb.cocycle);
    for (std::size_t k = 0; k < offs.size(); ++k) {
      const auto& v = classes[cls].walk[k];
      if (v.tet == img.tet && v.v0 == img.v0 && v.v1 == img.v1) lifts[cls] = -offs[k];
    }
    row_order.push_back(cls);
  }
  const TwistedNZ new_nz = twisted_nz(twisted_gluing_matrices(tb, *tb.cocycle, lifts));

  std::vector<int> col_order{mv.new_tets[0], mv.new_tets[1], mv.new_tets[2]};
  std::vector<int> rest;
  for (int j = 0; j < n_old; ++j)
    if (j != alpha && j != beta) {
      col_order.push_back(mv.old_to_new_tet[j]);
      rest.push_back(j);
    }
  const std::size_t m = static_cast<std::size_t>(n_old + 1);
  auto permute = [&](const ZLMatrix& x) {
    ZLMatrix out(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) out(i, j) = x(row_order[i], col_order[j]);
    return out;
  };
  const ZLMatrix Abar = permute(new_nz.A);
  const ZLMatrix Bbar = permute(new_nz.B);

  const ZLMatrix& A = old_nz.A;
  const ZLMatrix& B = old_nz.B;
  rep.target_A = ZLMatrix(m, m);
  rep.target_B = ZLMatrix(m, m);
  for (int k = 0; k < 3; ++k) {
    rep.target_A(0, k) = ZPoly(-1);
    rep.target_B(0, k) = ZPoly(-1);
  }
  for (int i = 0; i < n_old; ++i) {
    rep.target_A(i + 1, 0) = B(i, alpha) + B(i, beta);
    rep.target_A(i + 1, 1) = A(i, alpha);
    rep.target_A(i + 1, 2) = A(i, beta);
    rep.target_B(i + 1, 1) = A(i, beta) + B(i, alpha);
    rep.target_B(i + 1, 2) = A(i, alpha) + B(i, beta);
    for (std::size_t r = 0; r < rest.size(); ++r) {
      rep.target_A(i + 1, r + 3) = A(i, rest[r]);
      rep.target_B(i + 1, r + 3) = B(i, rest[r]);
    }
  }

  // forward substitution with P = I + v e_1^T; row 0 of Abar must already match
  for (std::size_t j = 0; j < m; ++j)
    if (!(Abar(0, j) == rep.target_A(0, j)) || !(Bbar(0, j) == rep.target_B(0, j))) {
      rep.detail = "row of the new edge differs from (-1, -1, -1, 0, ...)";
      return rep;
    }
  rep.P = ZLMatrix::identity(m);
  for (std::size_t i = 1; i < m; ++i) rep.P(i, 0) = Abar(i, 0) - rep.target_A(i, 0);
  rep.PA = rep.P * Abar;
  rep.PB = rep.P * Bbar;
  std::ostringstream os;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (!(rep.PA(i, j) == rep.target_A(i, j))) os << "PA(" << i << "," << j << ") ";
      if (!(rep.PB(i, j) == rep.target_B(i, j))) os << "PB(" << i << "," << j << ") ";
    }
  rep.detail = os.str();
  rep.pass = rep.detail.empty();
  rep.detail = rep.pass ? "P A = target A and P B = target B" : "mismatch at " + rep.detail;
  return rep;
}

}  // namespace tnz
