#pragma once

#include <variant>

#include "kmx/weyl.hpp"

namespace kmx {

/// Face w R(theta) of the Tits cone; w is minimal in its coset modulo W_{theta u theta-perp}.
struct Face {
  Subset theta = 0;
  WeylElt w;

  bool operator==(const Face& o) const { return theta == o.theta && w == o.w; }
  bool operator!=(const Face& o) const { return !(*this == o); }
  bool operator<(const Face& o) const { return theta != o.theta ? theta < o.theta : w < o.w; }
};

Face normalize_face(const RootDatum& d, const WeylElt& w, Subset theta);
Face whole_cone(const RootDatum& d);
Face edge_face(const RootDatum& d);

/// S is contained in R.
bool includes(const RootDatum& d, const Face& r, const Face& s);
Face intersect(const RootDatum& d, const Face& r, const Face& s);
Face act_face(const RootDatum& d, const WeylElt& u, const Face& r);
/// Exposing coweight w c_theta of the face.
IntVec face_functional(const RootDatum& d, const Face& r);
/// Z_W(R) = w W_theta w^-1 and N_W(R) = w W_{theta u theta-perp} w^-1.
bool centralizes(const RootDatum& d, const Face& r, const WeylElt& u);
bool normalizes(const RootDatum& d, const Face& r, const WeylElt& u);

/// Smallest face containing a point, or the undecided/negative verdict of dominant_rep.
struct FaceOfPoint {
  DominantResult verdict;
  Face face;
  bool ok() const { return verdict.kind == DominantResult::Dominant; }
};
FaceOfPoint face_of_point(const RootDatum& d, const RatVec& lam);

/// Containment for points already known to lie in the Tits cone.
bool contains_point(const RootDatum& d, const Face& r, const RatVec& lam);
bool in_span(const RootDatum& d, const Face& r, const RatVec& lam);
bool in_relative_interior(const RootDatum& d, const Face& r, const RatVec& lam);

}  // namespace kmx
