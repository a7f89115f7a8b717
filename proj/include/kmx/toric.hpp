#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kmx/exact.hpp"

namespace kmx {

/// Face of a finitely generated cone, as the set of input generators it contains.
using GenMask = std::uint64_t;

/// Submonoid of Z^r generated by integer vectors, with its cone and saturation.
struct LatticeMonoid {
  int rank = 0;
  std::vector<IntVec> gens;
  std::vector<IntVec> ineqs;     // primitive facet normals, y.x >= 0 on the cone
  std::vector<IntVec> eqs;       // basis of the orthogonal complement of the span
  std::vector<IntVec> sat_gens;  // generates cone n Z^r; lineality part as +-basis, the rest irreducible
  bool saturated = false;        // gens already generate cone n Z^r
  std::vector<GenMask> faces;    // sorted by size, then mask

  /// Membership in the saturation cone n Z^r.
  bool contains(const IntVec& x) const;
  GenMask all() const;
};

LatticeMonoid saturate_and_faces(const std::vector<IntVec>& gens, int rank);

/// Cone facet normals and equations without the saturation step.
void cone_description(const std::vector<IntVec>& gens, int rank, std::vector<IntVec>& ineqs,
                      std::vector<IntVec>& eqs);

/// Exact membership in the monoid generated by gens (bounded search over the pointed part).
bool in_generated_monoid(const std::vector<IntVec>& gens, const std::vector<IntVec>& ineqs, const IntVec& p);
/// Membership in the group generated by gens.
bool in_lattice(const std::vector<IntVec>& gens, const IntVec& q, int rank);

/// Facet normals vanishing on the face.
std::vector<int> tight_set(const LatticeMonoid& m, GenMask f);
GenMask face_of(const LatticeMonoid& m, const IntVec& x);  // smallest face containing x; NotInMonoid
bool in_face(const LatticeMonoid& m, GenMask f, const IntVec& x);
bool relative_interior_contains(const LatticeMonoid& m, GenMask f, const IntVec& x);
/// Basis of F - F; F is recovered as M n span(F).
std::vector<IntVec> hull_basis(const LatticeMonoid& m, GenMask f);
/// M - F as a saturated monoid in its own right.
LatticeMonoid dual_face(const LatticeMonoid& m, GenMask f);
GenMask face_intersect(const LatticeMonoid& m, GenMask f, GenMask g);
void require_face(const LatticeMonoid& m, GenMask f);
std::vector<int> mask_members(GenMask f);  // 0-based
std::string mask_str(GenMask f);           // "{1,3}"

/// Element of Hom(M, Q) supported on a face: nonzero values on the hull basis of F.
struct MhatElt {
  GenMask face = 0;
  std::vector<IntVec> basis;
  RatVec values;
  bool operator==(const MhatElt& o) const { return face == o.face && values == o.values; }
};

MhatElt mhat_torus(const LatticeMonoid& m, const RatVec& values_on_hull_of_m);
MhatElt mhat_idempotent(const LatticeMonoid& m, GenMask f);
MhatElt mhat_mul(const LatticeMonoid& m, const MhatElt& x, const MhatElt& y);
std::vector<MhatElt> mhat_idempotents(const LatticeMonoid& m);
Rat mhat_eval(const LatticeMonoid& m, const MhatElt& x, const IntVec& p);
/// Subfaces of F.
std::vector<GenMask> closure_order(const LatticeMonoid& m, GenMask f);
/// Faces G with e(G)(p) != 0.
std::vector<GenMask> principal_open(const LatticeMonoid& m, const IntVec& p);

}  // namespace kmx
