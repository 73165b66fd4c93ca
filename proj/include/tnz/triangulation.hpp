#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "tnz/matrix.hpp"

namespace tnz {

using Perm = std::array<int, 4>;

// Face f of a tetrahedron is the face opposite vertex f. perm sends this
// tetrahedron's vertex labels to the neighbor's.
struct Gluing {
  int neighbor = 0;
  Perm perm{0, 1, 2, 3};
  friend bool operator==(const Gluing&, const Gluing&) = default;
};

struct PeripheralCurve {
  std::string name;
  std::vector<long long> C, Cp, Cpp;
  friend bool operator==(const PeripheralCurve&, const PeripheralCurve&) = default;
};

struct Triangulation {
  int n_tets = 0;
  std::vector<std::array<Gluing, 4>> gluings;
  std::vector<PeripheralCurve> peripheral_curves;
  // Signed 1-based face-pairing indices; empty when absent.
  std::vector<int> meridian_dual_path;
  std::optional<std::vector<long long>> cocycle;

  const PeripheralCurve* curve(const std::string& name) const;
  friend bool operator==(const Triangulation&, const Triangulation&) = default;
};

struct FacePairing {
  int index = 0;
  int tet_a = 0, face_a = 0;  // lexicographically smaller side, tail of the dual edge
  int tet_b = 0, face_b = 0;
};

// Quad symbols: 0 = z, 1 = z', 2 = z''.
enum Quad : int { kZ = 0, kZp = 1, kZpp = 2 };

// {01,23} -> z, {02,13} -> z', {03,12} -> z''
int quad_of(int a, int b);

struct EdgeVisit {
  int tet = 0;
  int v0 = 0, v1 = 0;  // tetrahedron-edge endpoints, v0 < v1
  int quad = 0;
  int pairing = 0;  // face-pairing crossed when leaving this visit
  int sign = 1;     // +1 when leaving through side_a
};

struct EdgeClass {
  int index = 0;
  std::vector<EdgeVisit> walk;
  int valence() const { return static_cast<int>(walk.size()); }
};

// Per (tet, face): (pairing index, +1 if side_a else -1).
struct PairingIndex {
  std::vector<FacePairing> pairings;
  std::vector<std::array<std::pair<int, int>, 4>> of_face;
};

Perm perm_inverse(const Perm& p);
Perm perm_compose(const Perm& outer, const Perm& inner);  // outer o inner
int perm_sign(const Perm& p);

// Throws InputError naming the offending tetrahedron/face.
void validate_triangulation(const Triangulation& t);
// Gluing consistency only; no edge-count requirement.
void validate_gluings(const Triangulation& t);

PairingIndex face_pairings(const Triangulation& t);
std::vector<EdgeClass> compute_edge_classes(const Triangulation& t);

// Class index of every tetrahedron-edge, indexed [tet][edge slot] where the
// edge slot is the position of (v0,v1) in tet_edge_slots().
std::vector<std::array<int, 6>> edge_class_lookup(const Triangulation& t, const std::vector<EdgeClass>& classes);
int tet_edge_slot(int v0, int v1);
const std::array<std::pair<int, int>, 6>& tet_edge_slots();

struct GluingMatrices {
  IntMatrix G, Gp, Gpp;
};

struct NZMatrices {
  IntMatrix A, B;
};

GluingMatrices gluing_matrices(const Triangulation& t);
NZMatrices nz_matrices(const GluingMatrices& g);

// Relabel vertex v of tetrahedron tet as pi[v]. Cocycle, dual path and
// peripheral quads are carried along.
Triangulation relabel_vertices(const Triangulation& t, int tet, const Perm& pi);
// New tetrahedron p is old tetrahedron order[p].
Triangulation relabel_tetrahedra(const Triangulation& t, const std::vector<int>& order);

// Transfer per-pairing data (cocycle values) after a relabeling given where
// each old (tet, face) went. new_side[tet][face] = (new tet, new face).
std::vector<long long> transfer_pairing_values(const Triangulation& old_t, const Triangulation& new_t,
                                               const std::vector<std::array<std::pair<int, int>, 4>>& new_side,
                                               const std::vector<long long>& values);

struct Flattening {
  std::vector<long long> f, fp, fpp;
  friend bool operator==(const Flattening&, const Flattening&) = default;
};

struct TetEdge {
  int tet = 0, v0 = 0, v1 = 0;
};

struct PachnerMoveData {
  int pairing = 0;
  int alpha = 0, beta = 0;
  long long delta = 0;  // cocycle value across the shared face, alpha -> beta
  std::vector<int> old_to_new_tet;  // -1 for alpha and beta
  std::array<int, 3> new_tets{};    // a, b, c
  // image in T' of the first visit of every old edge class
  std::vector<TetEdge> edge_start_image;
  // true when that first visit lies in beta
  std::vector<bool> edge_start_in_beta;
};

struct PachnerResult {
  Triangulation tri;
  std::vector<std::complex<double>> shapes;
  std::optional<Flattening> flattening;
  PachnerMoveData move;
};

// 2-3 move on the two distinct tetrahedra sharing face-pairing `pairing`
// (0-based). The cocycle stored in t, if any, is carried to the result.
PachnerResult pachner_23(const Triangulation& t, int pairing,
                         const std::vector<std::complex<double>>* shapes = nullptr,
                         const Flattening* flattening = nullptr);

long long floor_div(long long a, long long b);

// n-fold cyclic cover. Tetrahedron (j, k) has index k * n_tets + j. The
// cover carries its own induced cocycle and no peripheral curves.
Triangulation cyclic_cover(const Triangulation& t, const std::vector<long long>& cocycle, int n);

// For the explicit cover: cover edge class index of row (r, i), listed r-major.
std::vector<int> cover_edge_rows(const Triangulation& base, const Triangulation& cover, int n);

}  // namespace tnz
