#include "kmx/wmon.hpp"

namespace kmx {

WmonElt wm_normalize(const RootDatum& d, const WeylElt& w, const Face& r) {
  WeylElt x = weyl_mul(d, weyl_inverse(d, r.w), w);
  WeylElt rep = left_coset(d, x, r.theta).second;
  return WmonElt{r, weyl_mul(d, r.w, rep)};
}

WmonElt wm_unit(const RootDatum& d, const WeylElt& w) { return WmonElt{whole_cone(d), w}; }

WmonElt wm_idempotent(const RootDatum& d, const Face& r) { return WmonElt{r, weyl_identity(d)}; }

WmonElt wm_mul(const RootDatum& d, const WmonElt& x, const WmonElt& y) {
  Face f = intersect(d, x.r, act_face(d, x.w, y.r));
  return wm_normalize(d, weyl_mul(d, x.w, y.w), f);
}

WmonElt wm_invert(const RootDatum& d, const WmonElt& x) {
  WeylElt inv = weyl_inverse(d, x.w);
  return wm_normalize(d, inv, act_face(d, inv, x.r));
}

bool wm_is_idempotent(const WmonElt& x) { return x.w.is_identity(); }
bool wm_is_unit(const WmonElt& x) { return x.r.theta == 0; }

std::optional<RatVec> wm_apply(const RootDatum& d, const WmonElt& x, const RatVec& lam) {
  RatVec img = act_weight(x.w, lam);
  if (!contains_point(d, x.r, img)) return std::nullopt;
  return img;
}

// ---------------------------------------------------------------------------

namespace {

Rat rat_pow(const Rat& q, const Int& e) {
  if (!e.fits_slong_p()) throw Error(ErrorKind::ResourceGuard, "torus exponent too large");
  long k = e.get_si();
  if (k == 0) return 1;
  if (sgn(q) == 0) throw Error(ErrorKind::ZeroTorusValue, "zero torus value");
  Rat base = k < 0 ? Rat(1) / q : q;
  unsigned long u = static_cast<unsigned long>(k < 0 ? -k : k);
  Int num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), u);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), u);
  Rat r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

Torus torus_one(const RootDatum& d) { return Torus(d.dim(), Rat(1)); }

Torus torus_coweight(const RootDatum& d, const IntVec& h, const Rat& s) {
  if (sgn(s) == 0) throw Error(ErrorKind::ZeroTorusValue, "t_h(0) is not a torus element");
  Torus t(d.dim());
  for (int j = 0; j < d.dim(); ++j) t[j] = rat_pow(s, h[j]);
  return t;
}

Rat torus_value(const Torus& t, const IntVec& lam) {
  Rat v = 1;
  for (size_t j = 0; j < t.size(); ++j)
    if (sgn(lam[j]) != 0) v *= rat_pow(t[j], lam[j]);
  return v;
}

Torus torus_mul(const Torus& a, const Torus& b) {
  Torus c(a.size());
  for (size_t j = 0; j < a.size(); ++j) c[j] = a[j] * b[j];
  return c;
}

Torus torus_inv(const Torus& a) {
  Torus c(a.size());
  for (size_t j = 0; j < a.size(); ++j) c[j] = 1 / a[j];
  return c;
}

Torus torus_act(const WeylElt& w, const Torus& t) {
  // (w t)^lambda = t^(w^-1 lambda); column j of minv is w^-1 Lambda_j
  Torus r(t.size());
  for (size_t j = 0; j < t.size(); ++j) r[j] = torus_value(t, w.minv.col(static_cast<int>(j)));
  return r;
}

std::vector<IntVec> face_lattice(const RootDatum& d, const Face& r) {
  std::vector<IntVec> gens;
  for (int j = 0; j < d.dim(); ++j)
    if (!has(r.theta, j)) gens.push_back(r.w.m.col(j));
  IntMat b = saturate_rows(gens, d.dim());
  std::vector<IntVec> out;
  for (int i = 0; i < b.rows(); ++i) out.push_back(b.row(i));
  return out;
}

namespace {

IntVec int_coords(const std::vector<IntVec>& basis, const IntVec& v) {
  auto c = coords_in(basis, v);
  if (!c) throw Error(ErrorKind::InternalInfeasible, "weight outside the face lattice");
  IntVec out(c->size());
  for (size_t k = 0; k < c->size(); ++k) {
    if ((*c)[k].get_den() != 1) throw Error(ErrorKind::InternalInfeasible, "face lattice not saturated");
    out[k] = (*c)[k].get_num();
  }
  return out;
}

}  // namespace

Rat that_eval(const ThatElt& x, const IntVec& lam) {
  IntVec c = int_coords(x.basis, lam);
  Rat v = 1;
  for (size_t k = 0; k < c.size(); ++k)
    if (sgn(c[k]) != 0) v *= rat_pow(x.values[k], c[k]);
  return v;
}

ThatElt that_normalize(const RootDatum& d, const Torus& t, const Face& r) {
  for (auto& v : t)
    if (sgn(v) == 0) throw Error(ErrorKind::ZeroTorusValue, "torus values must be nonzero");
  ThatElt x;
  x.r = r;
  x.basis = face_lattice(d, r);
  for (auto& b : x.basis) x.values.push_back(torus_value(t, b));
  return x;
}

ThatElt that_mul(const RootDatum& d, const ThatElt& x, const ThatElt& y) {
  ThatElt z;
  z.r = intersect(d, x.r, y.r);
  z.basis = face_lattice(d, z.r);
  for (auto& b : z.basis) z.values.push_back(that_eval(x, b) * that_eval(y, b));
  return z;
}

ThatElt that_act(const RootDatum& d, const WeylElt& w, const ThatElt& x) {
  ThatElt z;
  z.r = act_face(d, w, x.r);
  z.basis = face_lattice(d, z.r);
  for (auto& b : z.basis) z.values.push_back(that_eval(x, mul(w.minv, b)));
  return z;
}

// ---------------------------------------------------------------------------

TitsElt tits_simple(const RootDatum& d, int i) { return TitsElt{torus_one(d), weyl_simple(d, i)}; }

TitsElt tits_lift(const RootDatum& d, const WeylElt& w) { return TitsElt{torus_one(d), w}; }

namespace {

// n_i (s n_x)
TitsElt left_by_simple(const RootDatum& d, int i, const TitsElt& a) {
  WeylElt si = weyl_simple(d, i);
  TitsElt r;
  r.t = torus_act(si, a.t);
  r.w = weyl_mul(d, si, a.w);
  if (r.w.length() < a.w.length()) {
    IntVec h(d.dim());
    h[i] = 1;
    r.t = torus_mul(r.t, torus_coweight(d, h, Rat(-1)));
  }
  return r;
}

}  // namespace

TitsElt tits_mul(const RootDatum& d, const TitsElt& a, const TitsElt& b) {
  // (t n_u)(t' n_v) = t u(t') n_u n_v
  TitsElt acc{torus_one(d), b.w};
  for (auto it = a.w.word.rbegin(); it != a.w.word.rend(); ++it) acc = left_by_simple(d, *it, acc);
  acc.t = torus_mul(torus_mul(a.t, torus_act(a.w, b.t)), acc.t);
  return acc;
}

TitsElt tits_inverse(const RootDatum& d, const TitsElt& a) {
  // n_i^-1 = n_i t_{h_i}(-1)
  TitsElt acc{torus_one(d), weyl_identity(d)};
  for (int i : a.w.word) {
    IntVec h(d.dim());
    h[i] = 1;
    TitsElt inv_i{torus_coweight(d, h, Rat(-1)), weyl_simple(d, i)};
    acc = tits_mul(d, inv_i, acc);
  }
  acc.t = torus_mul(acc.t, torus_act(acc.w, torus_inv(a.t)));
  return acc;
}

// ---------------------------------------------------------------------------

NhatElt nhat_from_weyl(const RootDatum& d, const WeylElt& w) {
  return NhatElt{that_normalize(d, torus_one(d), whole_cone(d)), w};
}

NhatElt nhat_from_torus(const RootDatum& d, const Torus& t) {
  return NhatElt{that_normalize(d, t, whole_cone(d)), weyl_identity(d)};
}

NhatElt nhat_idempotent(const RootDatum& d, const Face& r) {
  return NhatElt{that_normalize(d, torus_one(d), r), weyl_identity(d)};
}

NhatElt nhat_mul(const RootDatum& d, const NhatElt& x, const NhatElt& y) {
  // (tA e(R)) n_s (tB e(S)) n_u = tA e(R) s(tB e(S)) n_s n_u
  TitsElt prod = tits_mul(d, tits_lift(d, x.w), tits_lift(d, y.w));
  ThatElt part = that_mul(d, that_mul(d, x.part, that_act(d, x.w, y.part)),
                          that_normalize(d, prod.t, whole_cone(d)));
  // move the Weyl part to the canonical representative modulo Z_W(R')
  const Face& rf = part.r;
  WeylElt canon = wm_normalize(d, prod.w, rf).w;
  WeylElt z = weyl_mul(d, prod.w, weyl_inverse(d, canon));
  // n_z n_canon = t4 n_rho
  TitsElt t4 = tits_mul(d, tits_lift(d, z), tits_lift(d, canon));
  // n_wR n_u n_wR^-1 = t7 n_z with u in W_theta, and e(R') n_wR n_u n_wR^-1 = e(R')
  WeylElt u = weyl_mul(d, weyl_mul(d, weyl_inverse(d, rf.w), z), rf.w);
  if (!in_parabolic(d, u, rf.theta)) throw Error(ErrorKind::InternalInfeasible, "congruence element outside the centralizer");
  TitsElt conj = tits_mul(d, tits_mul(d, tits_lift(d, rf.w), tits_lift(d, u)), tits_inverse(d, tits_lift(d, rf.w)));
  if (conj.w != z) throw Error(ErrorKind::InternalInfeasible, "conjugate lift mismatch");
  Torus fix = torus_mul(torus_inv(t4.t), torus_inv(conj.t));
  return NhatElt{that_mul(d, part, that_normalize(d, fix, whole_cone(d))), canon};
}

NhatElt nhat_inverse_unit(const RootDatum& d, const WeylElt& w) {
  TitsElt inv = tits_inverse(d, tits_lift(d, w));
  return nhat_mul(d, nhat_from_torus(d, inv.t), nhat_from_weyl(d, inv.w));
}

WmonElt nhat_to_wmon(const NhatElt& x) { return WmonElt{x.part.r, x.w}; }

bool nhat_conj_idem(const RootDatum& d, const WeylElt& w, const Face& r) {
  NhatElt lhs = nhat_mul(d, nhat_mul(d, nhat_from_weyl(d, w), nhat_idempotent(d, r)), nhat_inverse_unit(d, w));
  return lhs == nhat_idempotent(d, act_face(d, w, r));
}

}  // namespace kmx
