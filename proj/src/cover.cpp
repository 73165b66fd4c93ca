#include "tnz/errors.hpp"
#include "tnz/triangulation.hpp"

namespace tnz {

namespace {

long long mod_n(long long a, long long n) {
  const long long r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

Triangulation cyclic_cover(const Triangulation& t, const std::vector<long long>& cocycle, int n) {
  if (n < 1) throw InputError("cover degree must be at least 1");
  const int N = t.n_tets;
  if (cocycle.size() != static_cast<std::size_t>(2 * N)) throw InputError("cocycle has the wrong length");
  const PairingIndex idx = face_pairings(t);
  Triangulation cov;
  cov.n_tets = n * N;
  cov.gluings.assign(static_cast<std::size_t>(cov.n_tets), {});
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < N; ++j)
      for (int f = 0; f < 4; ++f) {
        const Gluing& g = t.gluings[j][f];
        auto [p, s] = idx.of_face[j][f];
        const long long k2 = mod_n(k + s * cocycle[p], n);
        cov.gluings[k * N + j][f] = {static_cast<int>(k2) * N + g.neighbor, g.perm};
      }
  const PairingIndex cidx = face_pairings(cov);
  std::vector<long long> cphi(cidx.pairings.size(), 0);
  for (const auto& cp : cidx.pairings) {
    const int j = cp.tet_a % N, k = cp.tet_a / N;
    auto [p, s] = idx.of_face[j][cp.face_a];
    cphi[cp.index] = floor_div(k + s * cocycle[p], n);
  }
  cov.cocycle = cphi;
  validate_gluings(cov);
  return cov;
}

std::vector<int> cover_edge_rows(const Triangulation& base, const Triangulation& cover, int n) {
  const auto base_classes = compute_edge_classes(base);
  const auto cover_classes = compute_edge_classes(cover);
  const auto lookup = edge_class_lookup(cover, cover_classes);
  std::vector<int> rows;
  std::vector<bool> used(cover_classes.size(), false);
  for (int r = 0; r < n; ++r)
    for (const auto& ec : base_classes) {
      const EdgeVisit& v = ec.walk.front();
      const int c = lookup[r * base.n_tets + v.tet][tet_edge_slot(v.v0, v.v1)];
      if (used[c]) throw InternalError("two base edge lifts land in one cover edge");
      used[c] = true;
      rows.push_back(c);
    }
  if (rows.size() != cover_classes.size()) throw InternalError("cover edge count mismatch");
  return rows;
}

}  // namespace tnz
