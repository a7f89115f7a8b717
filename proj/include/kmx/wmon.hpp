#pragma once

#include <optional>

#include "kmx/face.hpp"

namespace kmx {

/// <R> sigma, with sigma the minimal element of Z_W(R) sigma.
struct WmonElt {
  Face r;
  WeylElt w;
  bool operator==(const WmonElt& o) const { return r == o.r && w == o.w; }
  bool operator!=(const WmonElt& o) const { return !(*this == o); }
  bool operator<(const WmonElt& o) const { return r != o.r ? r < o.r : w < o.w; }
};

WmonElt wm_normalize(const RootDatum& d, const WeylElt& w, const Face& r);
WmonElt wm_unit(const RootDatum& d, const WeylElt& w);
WmonElt wm_idempotent(const RootDatum& d, const Face& r);
WmonElt wm_mul(const RootDatum& d, const WmonElt& x, const WmonElt& y);
WmonElt wm_invert(const RootDatum& d, const WmonElt& x);
bool wm_is_idempotent(const WmonElt& x);
bool wm_is_unit(const WmonElt& x);
/// <R> sigma sends lambda to sigma lambda when sigma lambda lies in R; nullopt is the adjoined zero.
std::optional<RatVec> wm_apply(const RootDatum& d, const WmonElt& x, const RatVec& lam);

/// Torus element as its values on Lambda_1..Lambda_N.
using Torus = RatVec;
Torus torus_one(const RootDatum& d);
Torus torus_coweight(const RootDatum& d, const IntVec& h, const Rat& s);  // t_h(s)
Rat torus_value(const Torus& t, const IntVec& lam);                       // t^lambda
Torus torus_mul(const Torus& a, const Torus& b);
Torus torus_inv(const Torus& a);
Torus torus_act(const WeylElt& w, const Torus& t);  // n_w t n_w^-1

/// t e(R): the face plus the values of t on the canonical basis of span(R) n P.
struct ThatElt {
  Face r;
  std::vector<IntVec> basis;
  RatVec values;
  bool operator==(const ThatElt& o) const { return r == o.r && values == o.values; }
  bool operator!=(const ThatElt& o) const { return !(*this == o); }
};

std::vector<IntVec> face_lattice(const RootDatum& d, const Face& r);
ThatElt that_normalize(const RootDatum& d, const Torus& t, const Face& r);
ThatElt that_mul(const RootDatum& d, const ThatElt& x, const ThatElt& y);
ThatElt that_act(const RootDatum& d, const WeylElt& w, const ThatElt& x);
/// Value of t e(R) on a weight of span(R).
Rat that_eval(const ThatElt& x, const IntVec& lam);

/// t n_w with n_w the lift along the canonical reduced word.
struct TitsElt {
  Torus t;
  WeylElt w;
};
TitsElt tits_simple(const RootDatum& d, int i);
TitsElt tits_lift(const RootDatum& d, const WeylElt& w);
TitsElt tits_mul(const RootDatum& d, const TitsElt& a, const TitsElt& b);
TitsElt tits_inverse(const RootDatum& d, const TitsElt& a);

/// (t e(R)) n_sigma with sigma canonical modulo Z_W(R).
struct NhatElt {
  ThatElt part;
  WeylElt w;
  bool operator==(const NhatElt& o) const { return part == o.part && w == o.w; }
  bool operator!=(const NhatElt& o) const { return !(*this == o); }
};

NhatElt nhat_from_weyl(const RootDatum& d, const WeylElt& w);
NhatElt nhat_from_torus(const RootDatum& d, const Torus& t);
NhatElt nhat_idempotent(const RootDatum& d, const Face& r);
NhatElt nhat_mul(const RootDatum& d, const NhatElt& x, const NhatElt& y);
NhatElt nhat_inverse_unit(const RootDatum& d, const WeylElt& w);  // n_w^-1
WmonElt nhat_to_wmon(const NhatElt& x);
/// n_w e(R) n_w^-1 == e(wR)
bool nhat_conj_idem(const RootDatum& d, const WeylElt& w, const Face& r);

}  // namespace kmx
