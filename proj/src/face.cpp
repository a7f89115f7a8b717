#include "kmx/face.hpp"

namespace kmx {

Face normalize_face(const RootDatum& d, const WeylElt& w, Subset theta) {
  if (!d.special(theta)) throw Error(ErrorKind::NotSpecial, subset_str(theta) + " is not special");
  return Face{theta, right_coset(d, w, theta | d.perp(theta)).first};
}

Face whole_cone(const RootDatum& d) { return Face{0, weyl_identity(d)}; }

Face edge_face(const RootDatum& d) {
  return Face{d.classification(full_set(d.n())).inf, weyl_identity(d)};
}

bool includes(const RootDatum& d, const Face& r, const Face& s) {
  if ((s.theta & r.theta) != r.theta) return false;
  return in_parabolic_product(d, weyl_mul(d, weyl_inverse(d, r.w), s.w), d.perp(r.theta), s.theta);
}

IntVec face_functional(const RootDatum& d, const Face& r) {
  return act_coweight(r.w, d.exposing(r.theta));
}

Face intersect(const RootDatum& d, const Face& r, const Face& s) {
  IntVec sum = face_functional(d, r);
  IntVec other = face_functional(d, s);
  for (size_t k = 0; k < sum.size(); ++k) sum[k] += other[k];
  auto [dprime, v] = antidominant_coweight(d, sum);
  Subset supp = 0;
  for (int i = 0; i < d.n(); ++i)
    if (sgn(dprime[i]) != 0) supp |= bit(i);
  return normalize_face(d, weyl_inverse(d, v), supp);
}

Face act_face(const RootDatum& d, const WeylElt& u, const Face& r) {
  return normalize_face(d, weyl_mul(d, u, r.w), r.theta);
}

bool centralizes(const RootDatum& d, const Face& r, const WeylElt& u) {
  WeylElt c = weyl_mul(d, weyl_mul(d, weyl_inverse(d, r.w), u), r.w);
  return in_parabolic(d, c, r.theta);
}

bool normalizes(const RootDatum& d, const Face& r, const WeylElt& u) {
  WeylElt c = weyl_mul(d, weyl_mul(d, weyl_inverse(d, r.w), u), r.w);
  return in_parabolic(d, c, r.theta | d.perp(r.theta));
}

FaceOfPoint face_of_point(const RootDatum& d, const RatVec& lam) {
  FaceOfPoint f;
  f.verdict = dominant_rep(d, lam);
  if (!f.ok()) return f;
  Subset jinf = d.classification(f.verdict.facet).inf;
  f.face = normalize_face(d, f.verdict.w, jinf);
  return f;
}

bool contains_point(const RootDatum& d, const Face& r, const RatVec& lam) {
  return sgn(dot(lam, face_functional(d, r))) == 0;
}

bool in_span(const RootDatum& d, const Face& r, const RatVec& lam) {
  RatVec pre = act_weight(weyl_inverse(d, r.w), lam);
  for (int i : members(r.theta))
    if (sgn(pre[i]) != 0) return false;
  return true;
}

bool in_relative_interior(const RootDatum& d, const Face& r, const RatVec& lam) {
  auto f = face_of_point(d, lam);
  return f.ok() && f.face == r;
}

}  // namespace kmx
