#include <cmath>

#include "tnz/errors.hpp"
#include "tnz/triangulation.hpp"

namespace tnz {

namespace {

// Vertex ids inside the bipyramid: u0, u1, u2 are 0..2, N is 3, S is 4.
constexpr int kN = 3;
constexpr int kS = 4;

struct NewTet {
  std::array<int, 5> label{-1, -1, -1, -1, -1};  // id -> label
  std::array<int, 4> id{};                       // label -> id
};

struct Bipyramid {
  int alpha = 0, beta = 0;
  Perm g{};                  // alpha labels -> beta labels
  std::array<int, 3> u{};    // alpha labels of u0, u1, u2
  std::array<int, 4> alpha_id{};
  std::array<int, 4> beta_id{};
  std::array<NewTet, 3> tets;
};

Bipyramid build_bipyramid(int alpha, int beta, int n_vertex, const Perm& g) {
  Bipyramid b;
  b.alpha = alpha;
  b.beta = beta;
  b.g = g;
  // u2 is joined to N by a z-edge, u0 by a z'-edge and u1 by a z''-edge, so
  // the tetrahedra around the new edge come out in the order a, b, c.
  b.u = {n_vertex ^ 2, n_vertex ^ 3, n_vertex ^ 1};
  b.alpha_id[n_vertex] = kN;
  b.beta_id[g[n_vertex]] = kS;
  for (int k = 0; k < 3; ++k) {
    b.alpha_id[b.u[k]] = k;
    b.beta_id[g[b.u[k]]] = k;
  }
  for (int i = 0; i < 3; ++i) {
    const int ui = i, uj = (i + 1) % 3, um = (i + 2) % 3;
    for (int lab : {1, 3}) {
      // label -> alpha vertex, with S standing in for u_{i+2}
      Perm sigma{};
      sigma[0] = n_vertex;
      sigma[2] = b.u[um];
      sigma[lab] = b.u[ui];
      sigma[4 - lab] = b.u[uj];
      if (perm_sign(sigma) > 0) {
        NewTet& t = b.tets[i];
        t.label[kN] = 0;
        t.label[kS] = 2;
        t.label[ui] = lab;
        t.label[uj] = 4 - lab;
        t.label[um] = -1;
        for (int id = 0; id < 5; ++id)
          if (t.label[id] >= 0) t.id[t.label[id]] = id;
        break;
      }
    }
  }
  return b;
}

// Where an external face of alpha or beta lands: new tetrahedron i and the
// map from old labels to its labels.
std::pair<int, Perm> new_location(const Bipyramid& b, bool is_alpha, int face) {
  const auto& ids = is_alpha ? b.alpha_id : b.beta_id;
  const int m = ids[face];
  const int i = (m + 1) % 3;
  Perm tau{};
  for (int v = 0; v < 4; ++v) tau[v] = v == face ? (is_alpha ? 2 : 0) : b.tets[i].label[ids[v]];
  return {i, tau};
}

template <class T>
std::array<T, 3> quad_values(const std::vector<T>& z, const std::vector<T>& zp, const std::vector<T>& zpp, int j) {
  return {z[j], zp[j], zpp[j]};
}

}  // namespace

PachnerResult pachner_23(const Triangulation& t, int pairing, const std::vector<std::complex<double>>* shapes,
                         const Flattening* flattening) {
  const PairingIndex idx = face_pairings(t);
  if (pairing < 0 || pairing >= static_cast<int>(idx.pairings.size()))
    throw InputError("face-pairing index out of range");
  const FacePairing& fp = idx.pairings[pairing];
  if (fp.tet_a == fp.tet_b) throw InputError("2-3 move needs two distinct tetrahedra across the face");
  const int n_old = t.n_tets;
  const Bipyramid bp = build_bipyramid(fp.tet_a, fp.tet_b, fp.face_a, t.gluings[fp.tet_a][fp.face_a].perm);
  const int alpha = bp.alpha, beta = bp.beta;

  PachnerResult res;
  PachnerMoveData& mv = res.move;
  mv.pairing = pairing;
  mv.alpha = alpha;
  mv.beta = beta;
  mv.old_to_new_tet.assign(static_cast<std::size_t>(n_old), -1);
  int next = 0;
  for (int j = 0; j < n_old; ++j)
    if (j != alpha && j != beta) mv.old_to_new_tet[j] = next++;
  mv.new_tets = {next, next + 1, next + 2};

  Triangulation& out = res.tri;
  out.n_tets = n_old + 1;
  out.gluings.assign(static_cast<std::size_t>(out.n_tets), {});
  // origin of each new (tet, face) as an old (tet, face); (-1,-1) for internal faces
  std::vector<std::array<std::pair<int, int>, 4>> origin(static_cast<std::size_t>(out.n_tets));

  auto locate = [&](int tet, int face) -> std::pair<int, Perm> {
    if (tet == alpha || tet == beta) {
      auto [i, tau] = new_location(bp, tet == alpha, face);
      return {mv.new_tets[i], tau};
    }
    return {mv.old_to_new_tet[tet], Perm{0, 1, 2, 3}};
  };

  for (int x = 0; x < n_old; ++x)
    for (int f = 0; f < 4; ++f) {
      if ((x == alpha && f == fp.face_a) || (x == beta && f == fp.face_b)) continue;
      const Gluing& h = t.gluings[x][f];
      auto [src, tau_x] = locate(x, f);
      auto [dst, tau_y] = locate(h.neighbor, h.perm[f]);
      const int nf = tau_x[f];
      out.gluings[src][nf] = {dst, perm_compose(tau_y, perm_compose(h.perm, perm_inverse(tau_x)))};
      origin[src][nf] = {x, f};
    }
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const NewTet& ti = bp.tets[i];
    const NewTet& tj = bp.tets[j];
    const int skip_i = i, skip_j = (i + 2) % 3;
    Perm fwd{}, back{};
    for (int l = 0; l < 4; ++l) {
      const int id = ti.id[l];
      fwd[l] = tj.label[id == skip_i ? skip_j : id];
      const int jd = tj.id[l];
      back[l] = ti.label[jd == skip_j ? skip_i : jd];
    }
    out.gluings[mv.new_tets[i]][ti.label[skip_i]] = {mv.new_tets[j], fwd};
    out.gluings[mv.new_tets[j]][tj.label[skip_j]] = {mv.new_tets[i], back};
    origin[mv.new_tets[i]][ti.label[skip_i]] = {-1, -1};
    origin[mv.new_tets[j]][tj.label[skip_j]] = {-1, -1};
  }

  // edge images of the old walks' first visits
  const auto old_classes = compute_edge_classes(t);
  for (const auto& ec : old_classes) {
    const EdgeVisit& v = ec.walk.front();
    TetEdge img;
    if (v.tet != alpha && v.tet != beta) {
      img = {mv.old_to_new_tet[v.tet], v.v0, v.v1};
    } else {
      const auto& ids = v.tet == alpha ? bp.alpha_id : bp.beta_id;
      int a = ids[v.v0], b = ids[v.v1];
      if (a > b) std::swap(a, b);
      int i;
      if (b >= kN)
        i = a;  // N u_a or S u_a lives in T_a
      else
        i = (a == 0 && b == 2) ? 2 : a;
      const NewTet& nt = bp.tets[i];
      img = {mv.new_tets[i], std::min(nt.label[a], nt.label[b]), std::max(nt.label[a], nt.label[b])};
    }
    mv.edge_start_image.push_back(img);
    mv.edge_start_in_beta.push_back(v.tet == beta);
  }

  // cocycle carried across: the three new tetrahedra sit at alpha's level
  if (t.cocycle) {
    const auto& phi = *t.cocycle;
    mv.delta = phi[pairing];
    auto offset = [&](int tet) -> long long { return tet == beta ? mv.delta : 0; };
    const PairingIndex ni = face_pairings(out);
    std::vector<long long> vals(ni.pairings.size(), 0);
    for (const auto& p : ni.pairings) {
      auto [x, f] = origin[p.tet_a][p.face_a];
      if (x < 0) continue;
      auto [k, s] = idx.of_face[x][f];
      const int y = t.gluings[x][f].neighbor;
      vals[p.index] = offset(x) + s * phi[k] - offset(y);
    }
    out.cocycle = vals;
  }

  // peripheral curves: a corner of alpha at N u_m splits between T_{m-1} and T_m
  for (const auto& c : t.peripheral_curves) {
    PeripheralCurve nc{c.name, std::vector<long long>(out.n_tets, 0), std::vector<long long>(out.n_tets, 0),
                       std::vector<long long>(out.n_tets, 0)};
    std::vector<long long>* dst[3] = {&nc.C, &nc.Cp, &nc.Cpp};
    for (int j = 0; j < n_old; ++j)
      if (mv.old_to_new_tet[j] >= 0)
        for (int q = 0; q < 3; ++q) (*dst[q])[mv.old_to_new_tet[j]] = quad_values(c.C, c.Cp, c.Cpp, j)[q];
    const auto ca = quad_values(c.C, c.Cp, c.Cpp, alpha);
    const auto cb = quad_values(c.C, c.Cp, c.Cpp, beta);
    const int n_lab = fp.face_a, s_lab = fp.face_b;
    for (int m = 0; m < 3; ++m) {
      const long long from_a = ca[quad_of(n_lab, bp.u[m])];
      const long long from_b = cb[quad_of(s_lab, bp.g[bp.u[m]])];
      for (int i : {(m + 2) % 3, m}) {
        const NewTet& nt = bp.tets[i];
        (*dst[quad_of(0, nt.label[m])])[mv.new_tets[i]] += from_a;
        (*dst[quad_of(2, nt.label[m])])[mv.new_tets[i]] += from_b;
      }
    }
    out.peripheral_curves.push_back(std::move(nc));
  }

  if (shapes) {
    if (static_cast<int>(shapes->size()) != n_old) throw InputError("shape vector has the wrong length");
    using cd = std::complex<double>;
    auto shape = [&](int tet, int a, int b) {
      const cd z = (*shapes)[tet];
      switch (quad_of(a, b)) {
        case kZ:
          return z;
        case kZp:
          return 1.0 / (1.0 - z);
        default:
          return 1.0 - 1.0 / z;
      }
    };
    res.shapes.assign(static_cast<std::size_t>(out.n_tets), cd{});
    for (int j = 0; j < n_old; ++j)
      if (mv.old_to_new_tet[j] >= 0) res.shapes[mv.old_to_new_tet[j]] = (*shapes)[j];
    for (int i = 0; i < 3; ++i) {
      const int ua = bp.u[i], ub = bp.u[(i + 1) % 3];
      const cd zp = shape(alpha, ua, ub) * shape(beta, bp.g[ua], bp.g[ub]);
      if (!std::isfinite(zp.real()) || !std::isfinite(zp.imag()) || std::abs(zp) < 1e-12 ||
          std::abs(zp - 1.0) < 1e-12)
        throw DegeneracyError("2-3 move is degenerate: a new tetrahedron has shape in {0, 1, inf}");
      res.shapes[mv.new_tets[i]] = 1.0 - 1.0 / zp;
    }
  }

  if (flattening) {
    const Flattening& fl = *flattening;
    if (static_cast<int>(fl.f.size()) != n_old) throw InputError("flattening has the wrong length");
    Flattening nf{std::vector<long long>(out.n_tets, 0), std::vector<long long>(out.n_tets, 0),
                  std::vector<long long>(out.n_tets, 0)};
    std::vector<long long>* dst[3] = {&nf.f, &nf.fp, &nf.fpp};
    for (int j = 0; j < n_old; ++j)
      if (mv.old_to_new_tet[j] >= 0)
        for (int q = 0; q < 3; ++q) (*dst[q])[mv.old_to_new_tet[j]] = quad_values(fl.f, fl.fp, fl.fpp, j)[q];
    const auto fa = quad_values(fl.f, fl.fp, fl.fpp, alpha);
    const auto fb = quad_values(fl.f, fl.fp, fl.fpp, beta);
    std::array<long long, 3> a{}, b{}, w{}, x{}, y{};
    for (int k = 0; k < 3; ++k) {
      a[k] = fa[quad_of(fp.face_a, bp.u[k])];
      b[k] = fb[quad_of(fp.face_b, bp.g[bp.u[k]])];
    }
    for (int i = 0; i < 3; ++i) w[i] = a[(i + 2) % 3] + b[(i + 2) % 3];
    x[0] = 0;
    for (int i = 1; i < 3; ++i) x[i] = x[i - 1] + a[i] - 1 + w[i - 1];
    for (int i = 0; i < 3; ++i) y[i] = 1 - w[i] - x[i];
    for (int i = 0; i < 3; ++i) {
      const NewTet& nt = bp.tets[i];
      const int tet = mv.new_tets[i];
      (*dst[quad_of(0, 2)])[tet] = w[i];
      (*dst[quad_of(0, nt.label[i])])[tet] = x[i];
      (*dst[quad_of(0, nt.label[(i + 1) % 3])])[tet] = y[i];
    }
    res.flattening = nf;
  }

  validate_triangulation(out);
  return res;
}

}  // namespace tnz
