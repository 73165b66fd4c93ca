#include "tnz/triangulation.hpp"

#include <algorithm>
#include <sstream>

#include "tnz/errors.hpp"

namespace tnz {

namespace {

constexpr std::array<std::pair<int, int>, 6> kEdgeSlots{
    {{2, 3}, {1, 3}, {1, 2}, {0, 3}, {0, 2}, {0, 1}}};

std::string where(int tet, int face) {
  std::ostringstream os;
  os << "tetrahedron " << tet << " face " << face;
  return os.str();
}

}  // namespace

const PeripheralCurve* Triangulation::curve(const std::string& name) const {
  for (const auto& c : peripheral_curves)
    if (c.name == name) return &c;
  return nullptr;
}

int quad_of(int a, int b) {
  switch (a + b) {
    case 1:
    case 5:
      return kZ;
    case 2:
    case 4:
      return kZp;
    default:
      return kZpp;
  }
}

const std::array<std::pair<int, int>, 6>& tet_edge_slots() { return kEdgeSlots; }

int tet_edge_slot(int v0, int v1) {
  if (v0 > v1) std::swap(v0, v1);
  for (int s = 0; s < 6; ++s)
    if (kEdgeSlots[s].first == v0 && kEdgeSlots[s].second == v1) return s;
  throw InputError("not a tetrahedron edge");
}

Perm perm_inverse(const Perm& p) {
  Perm q{};
  for (int i = 0; i < 4; ++i) q[p[i]] = i;
  return q;
}

Perm perm_compose(const Perm& outer, const Perm& inner) {
  Perm r{};
  for (int i = 0; i < 4; ++i) r[i] = outer[inner[i]];
  return r;
}

int perm_sign(const Perm& p) {
  int inv = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

void validate_gluings(const Triangulation& t) {
  if (t.n_tets <= 0) throw InputError("num_tetrahedra must be positive");
  if (static_cast<int>(t.gluings.size()) != t.n_tets)
    throw InputError("gluing table has " + std::to_string(t.gluings.size()) + " rows, expected " +
                     std::to_string(t.n_tets));
  for (int j = 0; j < t.n_tets; ++j)
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = t.gluings[j][f];
      if (g.neighbor < 0 || g.neighbor >= t.n_tets) throw InputError(where(j, f) + ": neighbor out of range");
      std::array<bool, 4> hit{};
      for (int v : g.perm) {
        if (v < 0 || v > 3 || hit[v]) throw InputError(where(j, f) + ": permutation is not a bijection of {0,1,2,3}");
        hit[v] = true;
      }
    }
  for (int j = 0; j < t.n_tets; ++j)
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = t.gluings[j][f];
      const int back_face = g.perm[f];
      if (g.neighbor == j && back_face == f) throw InputError(where(j, f) + ": face glued to itself");
      const Gluing& h = t.gluings[g.neighbor][back_face];
      if (h.neighbor != j || h.perm != perm_inverse(g.perm))
        throw InputError(where(j, f) + ": gluing is not an involution (partner " + where(g.neighbor, back_face) +
                         ")");
    }
}

void validate_triangulation(const Triangulation& t) {
  validate_gluings(t);
  const auto n = static_cast<std::size_t>(t.n_tets);
  for (const auto& c : t.peripheral_curves)
    if (c.C.size() != n || c.Cp.size() != n || c.Cpp.size() != n)
      throw InputError("peripheral curve '" + c.name + "' has vectors of the wrong length");
  if (t.cocycle && t.cocycle->size() != 2 * n)
    throw InputError("cocycle must have " + std::to_string(2 * n) + " entries");
  for (int k : t.meridian_dual_path)
    if (k == 0 || std::abs(k) > 2 * t.n_tets) throw InputError("meridian_dual_path entry out of range");
  const auto classes = compute_edge_classes(t);
  if (static_cast<int>(classes.size()) != t.n_tets) {
    std::ostringstream os;
    os << "found " << classes.size() << " edge classes for " << t.n_tets << " tetrahedra; valences";
    for (const auto& e : classes) os << " " << e.valence();
    throw InputError(os.str());
  }
}

PairingIndex face_pairings(const Triangulation& t) {
  PairingIndex idx;
  idx.of_face.assign(static_cast<std::size_t>(t.n_tets), {});
  std::vector<std::array<bool, 4>> done(static_cast<std::size_t>(t.n_tets), {false, false, false, false});
  for (int j = 0; j < t.n_tets; ++j)
    for (int f = 0; f < 4; ++f) {
      if (done[j][f]) continue;
      const Gluing& g = t.gluings[j][f];
      FacePairing p;
      p.index = static_cast<int>(idx.pairings.size());
      p.tet_a = j;
      p.face_a = f;
      p.tet_b = g.neighbor;
      p.face_b = g.perm[f];
      done[j][f] = done[p.tet_b][p.face_b] = true;
      idx.of_face[j][f] = {p.index, 1};
      idx.of_face[p.tet_b][p.face_b] = {p.index, -1};
      idx.pairings.push_back(p);
    }
  return idx;
}

std::vector<EdgeClass> compute_edge_classes(const Triangulation& t) {
  const PairingIndex idx = face_pairings(t);
  std::vector<std::array<bool, 6>> seen(static_cast<std::size_t>(t.n_tets), std::array<bool, 6>{});
  std::vector<EdgeClass> classes;
  for (int j = 0; j < t.n_tets; ++j)
    for (int s = 0; s < 6; ++s) {
      if (seen[j][s]) continue;
      auto [a, b] = kEdgeSlots[s];
      int c = -1, d = -1;
      for (int v = 0; v < 4; ++v)
        if (v != a && v != b) (c < 0 ? c : d) = v;
      EdgeClass ec;
      ec.index = static_cast<int>(classes.size());
      const std::array<int, 5> start{j, a, b, c, d};
      std::array<int, 5> st = start;
      while (true) {
        const auto [jj, aa, bb, cc, dd] = st;
        seen[jj][tet_edge_slot(aa, bb)] = true;
        const auto [pairing, sign] = idx.of_face[jj][dd];
        ec.walk.push_back({jj, std::min(aa, bb), std::max(aa, bb), quad_of(aa, bb), pairing, sign});
        const Gluing& g = t.gluings[jj][dd];
        st = {g.neighbor, g.perm[aa], g.perm[bb], g.perm[dd], g.perm[cc]};
        if (st == start) break;
        if (seen[st[0]][tet_edge_slot(st[1], st[2])])
          throw InputError("edge walk starting at tetrahedron " + std::to_string(j) + " does not close");
        if (ec.walk.size() > static_cast<std::size_t>(6 * t.n_tets))
          throw InputError("edge walk exceeds the number of tetrahedron edges");
      }
      classes.push_back(std::move(ec));
    }
  return classes;
}

std::vector<std::array<int, 6>> edge_class_lookup(const Triangulation& t, const std::vector<EdgeClass>& classes) {
  std::vector<std::array<int, 6>> out(static_cast<std::size_t>(t.n_tets));
  for (auto& row : out) row.fill(-1);
  for (const auto& ec : classes)
    for (const auto& v : ec.walk) out[v.tet][tet_edge_slot(v.v0, v.v1)] = ec.index;
  return out;
}

GluingMatrices gluing_matrices(const Triangulation& t) {
  const auto classes = compute_edge_classes(t);
  const auto n = static_cast<std::size_t>(t.n_tets);
  GluingMatrices m{IntMatrix(classes.size(), n, 0), IntMatrix(classes.size(), n, 0),
                   IntMatrix(classes.size(), n, 0)};
  IntMatrix* by_quad[3] = {&m.G, &m.Gp, &m.Gpp};
  for (const auto& ec : classes)
    for (const auto& v : ec.walk) (*by_quad[v.quad])(ec.index, v.tet) += 1;
  return m;
}

NZMatrices nz_matrices(const GluingMatrices& g) { return {g.G - g.Gp, g.Gpp - g.Gp}; }

std::vector<long long> transfer_pairing_values(const Triangulation& old_t, const Triangulation& new_t,
                                               const std::vector<std::array<std::pair<int, int>, 4>>& new_side,
                                               const std::vector<long long>& values) {
  const PairingIndex oi = face_pairings(old_t);
  const PairingIndex ni = face_pairings(new_t);
  std::vector<long long> out(ni.pairings.size(), 0);
  for (const auto& p : oi.pairings) {
    auto [nt, nf] = new_side[p.tet_a][p.face_a];
    auto [k, s] = ni.of_face[nt][nf];
    out[k] = s * values[p.index];
  }
  return out;
}

namespace {

std::vector<int> transfer_dual_path(const Triangulation& old_t, const Triangulation& new_t,
                                    const std::vector<std::array<std::pair<int, int>, 4>>& new_side,
                                    const std::vector<int>& path) {
  const PairingIndex oi = face_pairings(old_t);
  const PairingIndex ni = face_pairings(new_t);
  std::vector<int> out;
  for (int entry : path) {
    const FacePairing& p = oi.pairings[std::abs(entry) - 1];
    auto [nt, nf] = new_side[p.tet_a][p.face_a];
    auto [k, s] = ni.of_face[nt][nf];
    const int dir = (entry > 0 ? 1 : -1) * s;
    out.push_back(dir * (k + 1));
  }
  return out;
}

void carry_pairing_data(const Triangulation& old_t, Triangulation& new_t,
                        const std::vector<std::array<std::pair<int, int>, 4>>& new_side) {
  if (old_t.cocycle) new_t.cocycle = transfer_pairing_values(old_t, new_t, new_side, *old_t.cocycle);
  if (!old_t.meridian_dual_path.empty())
    new_t.meridian_dual_path = transfer_dual_path(old_t, new_t, new_side, old_t.meridian_dual_path);
}

}  // namespace

Triangulation relabel_vertices(const Triangulation& t, int tet, const Perm& pi) {
  if (tet < 0 || tet >= t.n_tets) throw InputError("relabel: tetrahedron out of range");
  if (perm_sign(pi) != 1) throw InputError("relabel: vertex permutation must be even");
  Triangulation out = t;
  const Perm pinv = perm_inverse(pi);
  for (int f = 0; f < 4; ++f) {
    const Gluing& g = t.gluings[tet][f];
    out.gluings[tet][pi[f]] = {g.neighbor, perm_compose(g.perm, pinv)};
  }
  for (int j = 0; j < t.n_tets; ++j)
    for (int f = 0; f < 4; ++f) {
      Gluing& g = out.gluings[j][f];
      if (g.neighbor == tet) g.perm = perm_compose(pi, g.perm);
    }
  for (auto& c : out.peripheral_curves) {
    const PeripheralCurve& oc = *t.curve(c.name);
    const long long* old_vals[3] = {&oc.C[tet], &oc.Cp[tet], &oc.Cpp[tet]};
    long long* new_vals[3] = {&c.C[tet], &c.Cp[tet], &c.Cpp[tet]};
    // representative edges 01, 02, 03 of quads z, z', z''
    for (int q = 0; q < 3; ++q) *new_vals[quad_of(pi[0], pi[q + 1])] = *old_vals[q];
  }
  std::vector<std::array<std::pair<int, int>, 4>> new_side(static_cast<std::size_t>(t.n_tets));
  for (int j = 0; j < t.n_tets; ++j)
    for (int f = 0; f < 4; ++f) new_side[j][f] = {j, j == tet ? pi[f] : f};
  carry_pairing_data(t, out, new_side);
  return out;
}

Triangulation relabel_tetrahedra(const Triangulation& t, const std::vector<int>& order) {
  const int n = t.n_tets;
  if (static_cast<int>(order.size()) != n) throw InputError("relabel: order has the wrong length");
  std::vector<int> inv(static_cast<std::size_t>(n), -1);
  for (int p = 0; p < n; ++p) {
    if (order[p] < 0 || order[p] >= n || inv[order[p]] >= 0) throw InputError("relabel: order is not a permutation");
    inv[order[p]] = p;
  }
  Triangulation out = t;
  for (int p = 0; p < n; ++p)
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = t.gluings[order[p]][f];
      out.gluings[p][f] = {inv[g.neighbor], g.perm};
    }
  for (auto& c : out.peripheral_curves) {
    const PeripheralCurve& oc = *t.curve(c.name);
    for (int p = 0; p < n; ++p) {
      c.C[p] = oc.C[order[p]];
      c.Cp[p] = oc.Cp[order[p]];
      c.Cpp[p] = oc.Cpp[order[p]];
    }
  }
  std::vector<std::array<std::pair<int, int>, 4>> new_side(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    for (int f = 0; f < 4; ++f) new_side[j][f] = {inv[j], f};
  carry_pairing_data(t, out, new_side);
  return out;
}

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace tnz
