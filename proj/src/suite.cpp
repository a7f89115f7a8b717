#include "kmx/suite.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>
#include <sstream>

#include "kmx/toric.hpp"
#include "kmx/wmon.hpp"

namespace kmx {

IntMat corpus_matrix(const std::string& name) {
  if (name == "A2") return IntMat{{2, -1}, {-1, 2}};
  if (name == "B2") return IntMat{{2, -2}, {-1, 2}};
  if (name == "G2") return IntMat{{2, -1}, {-3, 2}};
  if (name == "A3") return IntMat{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  if (name == "A1~") return IntMat{{2, -2}, {-2, 2}};
  if (name == "A2~") return IntMat{{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}};
  if (name == "hyp") return IntMat{{2, -2, 0}, {-2, 2, -1}, {0, -1, 2}};
  throw Error(ErrorKind::Parse, "unknown corpus matrix '" + name + "'");
}

Datum corpus_datum(const std::string& name) { return RootDatum::make(corpus_matrix(name)); }

IntMat random_gcm(Rng& rng, int n) {
  std::uniform_int_distribution<int> entry(0, 5);
  static const int kVals[] = {0, 0, -1, -1, -2, -3};
  for (;;) {
    IntMat a(n, n);
    for (int i = 0; i < n; ++i) a(i, i) = 2;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        int v = kVals[entry(rng)];
        a(i, j) = v;
        a(j, i) = v;
        // occasionally break symmetry along a single edge
        if (v == -1 && entry(rng) == 0) a(j, i) = -2;
      }
    try {
      validate_and_symmetrize(a);
      return a;
    } catch (const Error&) {
    }
  }
}

Datum random_indefinite(Rng& rng, int n) {
  for (;;) {
    Datum d = RootDatum::make(random_gcm(rng, n));
    const auto& c = d->classification(full_set(n));
    bool ind = c.comps.size() == 1 && c.comps[0].type == CompType::IND;
    if (ind && d->specials().size() >= 3) return d;
  }
}

WeylElt random_weyl(const RootDatum& d, Rng& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), letter(0, d.n() - 1);
  std::vector<int> w(len(rng));
  for (auto& x : w) x = letter(rng);
  return weyl_from_word(d, w);
}

Face random_face(const RootDatum& d, Rng& rng, int max_len) {
  const auto& sp = d.specials();
  std::uniform_int_distribution<size_t> pick(0, sp.size() - 1);
  Subset theta = sp[pick(rng)];
  return normalize_face(d, random_weyl(d, rng, max_len), theta);
}

std::string report_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << " " << r.id << " " << r.tag << ": " << r.detail;
  return os.str();
}

namespace {

using Clock = std::chrono::steady_clock;

struct Tally {
  long checks = 0;
  long failures = 0;
  std::string first;
  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++failures;
      if (first.empty()) first = what;
    }
  }
  std::string summary() const {
    std::string s = std::to_string(checks) + " checks, " + std::to_string(failures) + " failures";
    if (!first.empty()) s += "; first: " + first;
    return s;
  }
};

std::string face_str(const Face& f) { return "w=" + word_str(f.w.word) + ";theta=" + subset_str(f.theta); }

IntVec root_coeffs(const RootDatum& d, const IntVec& beta) {
  std::vector<IntVec> basis;
  for (int i = 0; i < d.n(); ++i) basis.push_back(d.alpha(i));
  auto c = coords_in(basis, beta);
  if (!c) throw Error(ErrorKind::InternalInfeasible, "root outside the root lattice span");
  IntVec out(d.n());
  for (int i = 0; i < d.n(); ++i) out[i] = (*c)[i].get_num();
  return out;
}

Subset support(const IntVec& c) {
  Subset s = 0;
  for (size_t i = 0; i < c.size(); ++i)
    if (sgn(c[i]) != 0) s |= bit(static_cast<int>(i));
  return s;
}

IntVec rho_weight(const RootDatum& d) {
  IntVec r(d.dim());
  for (int i = 0; i < d.n(); ++i) r[i] = 1;
  return r;
}

Letter letter(Letter::Kind k, int i, const Rat& t = 0) { return Letter{k, i, t, {}, {}}; }

Letter idem(const Face& f) {
  Letter l;
  l.kind = Letter::Idem;
  l.face = f;
  return l;
}

Letter torus_letter(const RootDatum& d, int i, const Rat& s) {
  Letter l;
  l.kind = Letter::Torus;
  l.h = IntVec(d.dim());
  l.h[i] = 1;
  l.t = s;
  return l;
}

GhatWord conjugated(const RootDatum& d, const WeylElt& w, const Letter& x) {
  return concat({weyl_lift_word(w), GhatWord{x}, weyl_lift_inverse_word(d, w)});
}

Rat random_rat(Rng& rng) {
  static const int kNum[] = {1, -1, 2, -2, 3, 1, -3};
  static const int kDen[] = {1, 1, 1, 2, 3};
  std::uniform_int_distribution<int> a(0, 6), b(0, 4);
  return Rat(kNum[a(rng)], kDen[b(rng)]);
}

// ---------------------------------------------------------------------------

CriterionResult special_sets_example() {
  CriterionResult r{1, "special-sets", false, "", 0, 1.0};
  Datum d = corpus_datum("hyp");
  std::vector<Subset> want{0, bit(0) | bit(1), full_set(3)};
  const auto& got = d->specials();
  const auto& c = d->classification(full_set(3));
  bool ind = c.comps.size() == 1 && c.comps[0].type == CompType::IND;
  std::string list;
  for (Subset s : got) list += subset_str(s);
  r.pass = got == want && ind;
  r.detail = "special sets " + list + ", type " + (c.comps.empty() ? "?" : type_name(c.comps[0].type));
  return r;
}

CriterionResult finite_affine_faces(Rng& rng) {
  CriterionResult r{2, "finite-affine-faces", false, "", 0, 5.0};
  Tally t;
  std::string counts;
  for (std::string name : {"A2", "B2", "G2", "A3", "A1~", "A2~"}) {
    Datum d = corpus_datum(name);
    bool affine = name.back() == '~';
    std::set<Face> forms;
    std::uniform_int_distribution<Subset> sub(0, full_set(d->n()));
    for (int k = 0; k < 1000; ++k) {
      WeylElt w = random_weyl(*d, rng, 8);
      Subset theta = sub(rng);
      bool special = d->special(theta);
      try {
        forms.insert(normalize_face(*d, w, theta));
        t.check(special, name + ": normalized a non-special set " + subset_str(theta));
      } catch (const Error& e) {
        t.check(!special && e.kind() == ErrorKind::NotSpecial, name + ": unexpected error " + e.what());
      }
    }
    std::set<Face> want{whole_cone(*d)};
    if (affine) want.insert(edge_face(*d));
    t.check(forms == want, name + ": " + std::to_string(forms.size()) + " distinct normal forms");
    counts += " " + name + "=" + std::to_string(forms.size());
  }
  r.pass = t.failures == 0;
  r.detail = "distinct faces" + counts + "; " + t.summary();
  return r;
}

std::vector<Datum> face_corpus(Rng& rng) {
  std::vector<Datum> ds{corpus_datum("A1~"), corpus_datum("A2~"), corpus_datum("hyp")};
  for (int k = 0; k < 3; ++k) ds.push_back(random_indefinite(rng, k == 2 ? 4 : 3));
  return ds;
}

CriterionResult face_galois(Rng& rng) {
  CriterionResult r{3, "face-galois", false, "", 0, 30.0};
  Tally t;
  int data = 0;
  for (const Datum& dp : face_corpus(rng)) {
    const RootDatum& d = *dp;
    ++data;
    for (int k = 0; k < 1000; ++k) {
      Face a = random_face(d, rng, 5), b = random_face(d, rng, 5);
      Face ab = intersect(d, a, b);
      t.check(includes(d, a, b) == (ab == b), "includes vs intersect for " + face_str(a) + " and " + face_str(b));
      t.check(ab == intersect(d, b, a), "commutativity");
      t.check(intersect(d, a, a) == a, "idempotence");
      t.check(includes(d, a, ab) && includes(d, b, ab), "intersection below both");
      WeylElt u = random_weyl(d, rng, 4);
      t.check(intersect(d, act_face(d, u, a), act_face(d, u, b)) == act_face(d, u, ab), "W-equivariance");
    }
    for (Subset s1 : d.specials())
      for (Subset s2 : d.specials()) {
        t.check(d.special(s1 | s2), "union of special sets not special");
        Face lhs = intersect(d, normalize_face(d, weyl_identity(d), s1), normalize_face(d, weyl_identity(d), s2));
        t.check(lhs == normalize_face(d, weyl_identity(d), s1 | s2), "standard faces intersect to the union");
      }
  }
  r.pass = t.failures == 0;
  r.detail = std::to_string(data) + " data; " + t.summary();
  return r;
}

WmonElt random_wmon(const RootDatum& d, Rng& rng) { return wm_normalize(d, random_weyl(d, rng, 5), random_face(d, rng, 4)); }

CriterionResult weyl_monoid_laws(Rng& rng) {
  CriterionResult r{4, "weyl-monoid", false, "", 0, 30.0};
  Tally t;
  std::vector<Datum> ds{corpus_datum("A2"), corpus_datum("A1~"), corpus_datum("hyp"), random_indefinite(rng, 3)};
  for (const Datum& dp : ds) {
    const RootDatum& d = *dp;
    for (int k = 0; k < 1000; ++k) {
      WmonElt x = random_wmon(d, rng), y = random_wmon(d, rng), z = random_wmon(d, rng);
      t.check(wm_mul(d, wm_mul(d, x, y), z) == wm_mul(d, x, wm_mul(d, y, z)), "associativity");
      WmonElt xi = wm_invert(d, x);
      t.check(wm_mul(d, wm_mul(d, x, xi), x) == x, "x x' x = x");
      t.check(wm_mul(d, wm_mul(d, xi, x), xi) == xi, "x' x x' = x'");
      WmonElt e = wm_mul(d, x, xi), f = wm_mul(d, y, wm_invert(d, y));
      t.check(e == wm_idempotent(d, x.r), "x x' = e(R)");
      t.check(wm_mul(d, e, f) == wm_mul(d, f, e), "idempotents commute");
      t.check(wm_mul(d, e, f) == wm_idempotent(d, intersect(d, x.r, y.r)), "e(R)e(S) = e(R n S)");
      t.check(wm_is_unit(x) == (x.r == whole_cone(d)), "units are the W-copy");
      t.check(wm_is_idempotent(x) == (wm_mul(d, x, x) == x), "idempotents are the face copy");
      t.check(wm_mul(d, wm_idempotent(d, x.r), wm_unit(d, x.w)) == x, "unit-regular factorization");
      WeylElt u = random_weyl(d, rng, 4), v = random_weyl(d, rng, 4);
      t.check(wm_mul(d, wm_unit(d, u), wm_unit(d, v)) == wm_unit(d, weyl_mul(d, u, v)), "units multiply as W");
    }
  }
  // affine rank two: units plus one zero
  Datum a = corpus_datum("A1~");
  WmonElt zero = wm_idempotent(*a, edge_face(*a));
  for (int k = 0; k < 1000; ++k) {
    WmonElt x = random_wmon(*a, rng);
    t.check(wm_is_unit(x) || x == zero, "A1~ element neither unit nor zero");
    t.check(wm_mul(*a, zero, x) == zero && wm_mul(*a, x, zero) == zero, "A1~ zero absorbs");
  }
  r.pass = t.failures == 0;
  r.detail = t.summary();
  return r;
}

NhatElt random_nhat(const RootDatum& d, Rng& rng) {
  Torus tor(d.dim());
  for (auto& v : tor) v = random_rat(rng);
  NhatElt x = nhat_mul(d, nhat_from_torus(d, tor), nhat_idempotent(d, random_face(d, rng, 3)));
  return nhat_mul(d, x, nhat_from_weyl(d, random_weyl(d, rng, 4)));
}

CriterionResult normalizer_quotient(Rng& rng) {
  CriterionResult r{5, "normalizer-quotient", false, "", 0, 0};
  Tally t;
  for (std::string name : {"A2", "A1~", "hyp"}) {
    Datum dp = corpus_datum(name);
    const RootDatum& d = *dp;
    for (int k = 0; k < 500; ++k) {
      NhatElt x = random_nhat(d, rng), y = random_nhat(d, rng);
      NhatElt xy = nhat_mul(d, x, y);
      t.check(nhat_to_wmon(xy) == wm_mul(d, nhat_to_wmon(x), nhat_to_wmon(y)), name + ": quotient map");
      if (k < 200) {
        NhatElt z = random_nhat(d, rng);
        t.check(nhat_mul(d, xy, z) == nhat_mul(d, x, nhat_mul(d, y, z)), name + ": associativity");
      }
    }
    std::vector<Probe> probes;
    for (int j = 0; j < d.n(); ++j) probes.push_back({d.fundamental(j), 2});
    probes.push_back({rho_weight(d), 2});
    std::vector<SlicePtr> slices;
    for (auto& p : probes) slices.push_back(build_basis(dp, p.top, p.depth));
    for (int i = 0; i < d.n(); ++i) {
      IntVec h(d.dim());
      h[i] = 1;
      NhatElt ni = nhat_from_weyl(d, weyl_simple(d, i));
      t.check(nhat_mul(d, ni, ni) == nhat_from_torus(d, torus_coweight(d, h, Rat(-1))), name + ": n_i^2 algebraic");
      GhatWord sq{letter(Letter::NSimple, i), letter(Letter::NSimple, i)};
      GhatWord tw{torus_letter(d, i, Rat(-1))};
      ProbeResult pr = probe_equal(slices, sq, tw);
      t.check(pr.equal && pr.compared > 0, name + ": n_i^2 on probes " + pr.witness);
    }
  }
  r.pass = t.failures == 0;
  r.detail = t.summary();
  return r;
}

// ---------------------------------------------------------------------------

struct RealRoot {
  WeylElt w;
  int i;
  int sign;
  IntVec coeffs;
};

std::vector<RealRoot> small_real_roots(const RootDatum& d, int max_len, int max_height) {
  std::vector<RealRoot> out;
  std::set<IntVec> seen;
  std::vector<int> word;
  std::function<void()> go = [&]() {
    WeylElt w = weyl_from_word(d, word);
    for (int i = 0; i < d.n(); ++i) {
      IntVec c = root_coeffs(d, act_weight(w, d.alpha(i)));
      long h = 0;
      for (auto& x : c) h += x.get_si();
      if (std::labs(h) > max_height) continue;
      for (int sign : {1, -1}) {
        IntVec cs = c;
        if (sign < 0)
          for (auto& x : cs) x = -x;
        if (seen.insert(cs).second) out.push_back({w, i, sign, cs});
      }
    }
    if (static_cast<int>(word.size()) == max_len) return;
    for (int j = 0; j < d.n(); ++j) {
      word.push_back(j);
      go();
      word.pop_back();
    }
  };
  go();
  return out;
}

std::vector<SlicePtr> probe_slices(const Datum& dp, int depth) {
  const RootDatum& d = *dp;
  std::vector<SlicePtr> s;
  for (int j = 0; j < d.n(); ++j) s.push_back(build_basis(dp, d.fundamental(j), depth));
  s.push_back(build_basis(dp, rho_weight(d), depth));
  return s;
}

bool in_face_weight(const RootDatum& d, const Face& f, const IntVec& lam) { return contains_point(d, f, to_rat(lam)); }

void check_conjugation(const Datum& dp, const std::vector<SlicePtr>& slices, Rng& rng, Tally& t) {
  const RootDatum& d = *dp;
  for (int k = 0; k < 12; ++k) {
    WeylElt s = random_weyl(d, rng, 2);
    Face f = random_face(d, rng, 1);
    GhatWord lhs = concat({weyl_lift_word(s), GhatWord{idem(f)}, weyl_lift_inverse_word(d, s)});
    GhatWord rhs{idem(act_face(d, s, f))};
    ProbeResult pr = probe_equal(slices, lhs, rhs);
    t.check(pr.equal && pr.compared > 0, "conjugation n e(R) n^-1 for " + face_str(f) + ": " + pr.witness);
  }
}

void check_absorption(const Datum& dp, const std::vector<SlicePtr>& slices, Rng& rng, Tally& t) {
  const RootDatum& d = *dp;
  for (Subset theta : d.specials()) {
    if (theta == 0) continue;
    Letter e = idem(normalize_face(d, weyl_identity(d), theta));
    Subset perp = d.perp(theta);
    for (int i = 0; i < d.n(); ++i) {
      Rat tv = random_rat(rng);
      Letter xp = letter(Letter::Xplus, i, tv), xm = letter(Letter::Xminus, i, tv);
      bool keep = has(perp, i);
      ProbeResult a = probe_equal(slices, GhatWord{xp, e}, keep ? GhatWord{e, xp} : GhatWord{e});
      t.check(a.equal && a.compared > 0, "absorption of X+(" + std::to_string(i + 1) + ") " + a.witness);
      ProbeResult b = probe_equal(slices, GhatWord{e, xm}, keep ? GhatWord{xm, e} : GhatWord{e});
      t.check(b.equal && b.compared > 0, "absorption of X-(" + std::to_string(i + 1) + ") " + b.witness);
    }
    // roots in W_theta theta
    for (int k = 0; k < 4; ++k) {
      std::vector<int> letters = members(theta);
      std::uniform_int_distribution<size_t> pick(0, letters.size() - 1);
      std::uniform_int_distribution<int> len(0, 2);
      std::vector<int> word(len(rng));
      for (auto& x : word) x = letters[pick(rng)];
      WeylElt u = weyl_from_word(d, word);
      int j = letters[pick(rng)];
      for (auto kind : {Letter::Xplus, Letter::Xminus}) {
        GhatWord x = conjugated(d, u, letter(kind, j, random_rat(rng)));
        GhatWord lhs = x;
        lhs.push_back(e);
        ProbeResult pr = probe_equal(slices, lhs, GhatWord{e});
        t.check(pr.equal && pr.compared > 0, "absorption of a conjugated root group " + pr.witness);
      }
    }
  }
}

struct Preservation {
  long present = 0, used = 0;
  bool norm = true, cent = true;
};

// Applies x to every basis vector of B(face) that fits the slices.
Preservation preservation(const RootDatum& d, const std::vector<SlicePtr>& slices, const Face& f, const GhatWord& x) {
  Preservation p;
  for (auto& s : slices)
    for (auto& wt : s->weights()) {
      if (!in_face_weight(d, f, wt.lam)) continue;
      for (int j = 0; j < wt.dim(); ++j) {
        ++p.present;
        RatVec in = s->unit(wt.offset + j), out;
        try {
          out = s->apply(x, in);
        } catch (const DepthError&) {
          continue;
        }
        ++p.used;
        if (out != in) p.cent = false;
        for (auto& w2 : s->weights()) {
          if (in_face_weight(d, f, w2.lam)) continue;
          for (int c = 0; c < w2.dim(); ++c)
            if (sgn(out[w2.offset + c]) != 0) p.norm = false;
        }
      }
    }
  return p;
}

struct RootStats {
  long evaluated = 0, vacuous = 0, reduced = 0;
};

void check_root_condition(const Datum& dp, const std::vector<SlicePtr>& slices, Tally& t, RootStats& st) {
  const RootDatum& d = *dp;
  std::set<Face> faces;
  for (Subset theta : d.specials()) {
    faces.insert(normalize_face(d, weyl_identity(d), theta));
    for (int k = 0; k < d.n(); ++k) faces.insert(normalize_face(d, weyl_simple(d, k), theta));
  }
  auto roots = small_real_roots(d, 3, 4);
  for (const Face& f : faces) {
    Subset perp = d.perp(f.theta);
    WeylElt tinv = weyl_inverse(d, f.w);
    for (auto& rt : roots) {
      IntVec alpha(d.dim());
      for (int i = 0; i < d.n(); ++i)
        for (int j = 0; j < d.dim(); ++j) alpha[j] += rt.coeffs[i] * d.alpha(i)[j];
      IntVec beta = root_coeffs(d, act_weight(tinv, alpha));
      bool pos = sgn(beta[support(beta) ? members(support(beta))[0] : 0]) > 0;
      bool in_theta = (support(beta) & ~f.theta) == 0;
      bool in_perp = (support(beta) & ~perp) == 0;
      bool pred_norm = pos || in_theta || in_perp;
      bool pred_cent = (pos && !in_perp) || in_theta;
      Letter x = letter(rt.sign > 0 ? Letter::Xplus : Letter::Xminus, rt.i, Rat(1));
      Preservation p = preservation(d, slices, f, conjugated(d, rt.w, x));
      if (p.present > 0 && p.used == 0) {
        // n_w moves B(w^-1 R) onto B(R), so the single letter on B(w^-1 R) decides the same question
        p = preservation(d, slices, act_face(d, weyl_inverse(d, rt.w), f), GhatWord{x});
        ++st.reduced;
      }
      st.evaluated += p.used;
      std::string what = "root " + std::string(rt.sign > 0 ? "+" : "-") + "w" + std::to_string(rt.i + 1) +
                         " (w=" + word_str(rt.w.word) + ") on face " + face_str(f);
      if (p.present == 0) {
        ++st.vacuous;
        continue;
      }
      t.check(p.used > 0, what + ": no vector fits the slices");
      t.check(p.norm == pred_norm,
              what + ": preservation " + std::to_string(p.norm) + " vs predicate " + std::to_string(pred_norm));
      t.check(p.cent == pred_cent,
              what + ": pointwise fixing " + std::to_string(p.cent) + " vs predicate " + std::to_string(pred_cent));
    }
  }
}

void check_tensor_law(const Datum& dp, const std::vector<SlicePtr>& slices, Rng& rng, Tally& t) {
  const RootDatum& d = *dp;
  for (int k = 0; k < 20; ++k) {
    Face f = random_face(d, rng, 3);
    for (size_t a = 0; a < slices.size(); ++a)
      for (size_t b = a; b < slices.size(); ++b)
        for (auto& wa : slices[a]->weights())
          for (auto& wb : slices[b]->weights()) {
            IntVec sum(d.dim());
            for (int j = 0; j < d.dim(); ++j) sum[j] = wa.lam[j] + wb.lam[j];
            bool lhs = in_face_weight(d, f, sum);
            bool rhs = in_face_weight(d, f, wa.lam) && in_face_weight(d, f, wb.lam);
            t.check(lhs == rhs, "indicator of " + face_str(f) + " not multiplicative");
          }
  }
}

void check_zero(const Datum& dp, const std::vector<SlicePtr>& slices, Rng& rng, Tally& t) {
  const RootDatum& d = *dp;
  for (Subset j : d.specials()) {
    if (j == 0) continue;
    Letter z = idem(normalize_face(d, weyl_identity(d), j));
    std::vector<int> letters = members(j);
    std::vector<Subset> sub_specials;
    for (Subset s : d.specials())
      if ((s & ~j) == 0) sub_specials.push_back(s);
    std::uniform_int_distribution<size_t> pick(0, letters.size() - 1), pick_s(0, sub_specials.size() - 1);
    std::uniform_int_distribution<int> kind(0, 4), len(1, 3);
    for (int k = 0; k < 8; ++k) {
      GhatWord x;
      int n = len(rng);
      for (int m = 0; m < n; ++m) {
        int i = letters[pick(rng)];
        switch (kind(rng)) {
          case 0: x.push_back(letter(Letter::Xplus, i, random_rat(rng))); break;
          case 1: x.push_back(letter(Letter::Xminus, i, random_rat(rng))); break;
          case 2: x.push_back(letter(Letter::NSimple, i)); break;
          case 3: x.push_back(torus_letter(d, i, random_rat(rng))); break;
          default: {
            std::vector<int> w(len(rng));
            for (auto& c : w) c = letters[pick(rng)];
            x.push_back(idem(normalize_face(d, weyl_from_word(d, w), sub_specials[pick_s(rng)])));
          }
        }
      }
      GhatWord zx{z}, xz = x;
      zx.insert(zx.end(), x.begin(), x.end());
      xz.push_back(z);
      ProbeResult a = probe_equal(slices, zx, GhatWord{z});
      ProbeResult b = probe_equal(slices, xz, GhatWord{z});
      t.check(a.equal && a.compared > 0, "e(R(J)) x = e(R(J)) for " + ghat_word_str(x) + ": " + a.witness);
      t.check(b.equal && b.compared > 0, "x e(R(J)) = e(R(J)) for " + ghat_word_str(x) + ": " + b.witness);
    }
  }
}

CriterionResult operator_suite(Rng& rng) {
  CriterionResult r{6, "operator-identities", false, "", 0, 300.0};
  Tally conj, absorb, roots, tensor, zero;
  RootStats st;
  for (std::string name : {"A2", "A1~", "hyp"}) {
    Datum dp = corpus_datum(name);
    auto slices = probe_slices(dp, 5);
    check_conjugation(dp, slices, rng, conj);
    check_absorption(dp, slices, rng, absorb);
    check_root_condition(dp, slices, roots, st);
    check_tensor_law(dp, slices, rng, tensor);
    check_zero(dp, slices, rng, zero);
  }
  r.pass = conj.failures + absorb.failures + roots.failures + tensor.failures + zero.failures == 0;
  r.detail = "conjugation " + conj.summary() + " | absorption " + absorb.summary() + " | root condition " +
             roots.summary() + " over " + std::to_string(st.evaluated) + " vectors (" + std::to_string(st.vacuous) +
             " pairs with no probe weight on the face, " + std::to_string(st.reduced) +
             " evaluated on the conjugate face) | tensor indicator " +
             tensor.summary() + " | zero " + zero.summary();
  return r;
}

CriterionResult module_cross_oracle() {
  CriterionResult r{7, "module-oracles", false, "", 0, 120.0};
  Tally t;
  struct Case {
    std::string name;
    IntVec top;
    int depth;
  };
  std::vector<Case> cases{{"A2", {1, 0}, 6},        {"A2", {1, 1}, 6},           {"A2", {2, 1}, 8},
                          {"B2", {1, 1}, 8},        {"G2", {0, 1}, 8},           {"A1~", {1, 0, 0}, 6},
                          {"A1~", {1, 1, 0}, 6},    {"A2~", {1, 0, 0, 0}, 5},    {"hyp", {1, 0, 0}, 5},
                          {"hyp", {1, 1, 1}, 5}};
  long weights = 0, pairs = 0;
  for (auto& c : cases) {
    Datum dp = corpus_datum(c.name);
    const RootDatum& d = *dp;
    auto fm = weights_and_mults(d, c.top, c.depth);
    auto s = build_basis(dp, c.top, c.depth);
    t.check(fm.size() == s->weights().size(), c.name + ": weight counts differ");
    for (auto& w : fm) {
      int k = s->find(w.k);
      t.check(k >= 0 && Int(s->weights()[k].dim()) == w.mult, c.name + ": multiplicity mismatch");
      ++weights;
    }
    t.check(s->weights()[0].gram(0, 0) == 1, "highest weight vector not normalized");
    for (auto& w : s->weights()) {
      t.check(w.gram == w.gram.transpose(), "Gram matrix not symmetric");
      t.check(rank(w.gram) == w.dim(), "Gram matrix singular");
      for (int i = 0; i < d.n(); ++i) {
        if (sgn(w.k[i]) == 0) continue;
        IntVec k2 = w.k;
        k2[i] -= 1;
        int tgt = s->find(k2);
        if (tgt < 0) continue;
        const auto& wb = s->weights()[tgt];
        for (int x = 0; x < w.dim(); ++x)
          for (int y = 0; y < wb.dim(); ++y) {
            RatVec vx = s->unit(w.offset + x), vy = s->unit(wb.offset + y);
            t.check(s->pairing(s->apply_e(i, vx), vy) == s->pairing(vx, s->apply_f(i, vy)), "contravariance");
            ++pairs;
          }
      }
    }
  }
  r.pass = t.failures == 0;
  r.detail = std::to_string(weights) + " weights, " + std::to_string(pairs) + " basis pairs; " + t.summary();
  return r;
}

GhatWord random_factored_word(const RootDatum& d, Rng& rng) {
  std::uniform_int_distribution<int> idx(0, d.n() - 1), side(0, 2), mid(1, 2), kind(0, 2);
  GhatWord w;
  int a = side(rng);
  for (int k = 0; k < a; ++k) w.push_back(letter(Letter::Xminus, idx(rng), random_rat(rng)));
  int b = mid(rng);
  for (int k = 0; k < b; ++k) {
    switch (kind(rng)) {
      case 0: w.push_back(letter(Letter::NSimple, idx(rng))); break;
      case 1: w.push_back(torus_letter(d, idx(rng), random_rat(rng))); break;
      default: w.push_back(idem(random_face(d, rng, 2)));
    }
  }
  int c = side(rng);
  for (int k = 0; k < c; ++k) w.push_back(letter(Letter::Xplus, idx(rng), random_rat(rng)));
  return w;
}

CriterionResult theta_multiplicative(Rng& rng) {
  CriterionResult r{8, "theta-multiplicative", false, "", 0, 0};
  Tally t;
  struct Case {
    std::string name;
    IntVec a, b;
    int depth;
  };
  std::vector<Case> cases{{"A2", {1, 0}, {0, 1}, 5}, {"A1~", {1, 0, 0}, {0, 1, 0}, 5}, {"hyp", {1, 0, 0}, {0, 0, 1}, 4}};
  long words = 0, skipped = 0, nontrivial = 0;
  for (auto& c : cases) {
    Datum dp = corpus_datum(c.name);
    const RootDatum& d = *dp;
    IntVec ab(d.dim());
    for (int j = 0; j < d.dim(); ++j) ab[j] = c.a[j] + c.b[j];
    auto sa = build_basis(dp, c.a, c.depth), sb = build_basis(dp, c.b, c.depth), sab = build_basis(dp, ab, c.depth);
    int done = 0;
    for (int attempt = 0; done < 100 && attempt < 2000; ++attempt) {
      GhatWord w = random_factored_word(d, rng);
      Rat ta, tb, tab;
      try {
        ta = theta(*sa, w);
        tb = theta(*sb, w);
        tab = theta(*sab, w);
      } catch (const DepthError&) {
        ++skipped;
        continue;
      }
      ++done;
      ++words;
      if (tab != 0 && tab != 1) ++nontrivial;
      t.check(ta * tb == tab, c.name + ": theta product fails for " + ghat_word_str(w));
    }
    t.check(done == 100, c.name + ": fewer than 100 words fit the slices");
  }
  r.pass = t.failures == 0;
  r.detail = std::to_string(words) + " words (" + std::to_string(nontrivial) + " with theta outside {0,1}, " +
             std::to_string(skipped) + " skipped for depth); " + t.summary();
  return r;
}

// Membership in the real cone spanned by gens via independent subsets.
bool cone_oracle(const std::vector<IntVec>& gens, const IntVec& x) {
  if (std::all_of(x.begin(), x.end(), [](const Int& v) { return sgn(v) == 0; })) return true;
  const int k = static_cast<int>(gens.size()), r = static_cast<int>(x.size());
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    std::vector<int> s;
    for (int j = 0; j < k; ++j)
      if ((mask >> j) & 1) s.push_back(j);
    RatMat m(r, static_cast<int>(s.size()));
    for (size_t c = 0; c < s.size(); ++c)
      for (int i = 0; i < r; ++i) m(i, static_cast<int>(c)) = gens[s[c]][i];
    if (rank(m) != static_cast<int>(s.size())) continue;
    auto sol = rat_solve(m, to_rat(x));
    if (!sol) continue;
    if (std::all_of(sol->x.begin(), sol->x.end(), [](const Rat& v) { return sgn(v) >= 0; })) return true;
  }
  return false;
}

// Generator subsets cut out by a supporting hyperplane, by exact LP.
std::set<GenMask> face_oracle(const std::vector<IntVec>& gens, int rank) {
  std::set<GenMask> out;
  const int k = static_cast<int>(gens.size());
  for (GenMask t = 0; t < (GenMask(1) << k); ++t) {
    LPProblem p;
    p.m = RatMat(k, rank);
    for (int j = 0; j < k; ++j) {
      bool in = (t >> j) & 1;
      for (int i = 0; i < rank; ++i) p.m(j, i) = in ? Rat(gens[j][i]) : Rat(-gens[j][i]);
      p.rel.push_back(in ? Rel::Eq : Rel::Lt);
    }
    p.positive.assign(rank, false);
    if (lp_feasible(p)) out.insert(t);
  }
  return out;
}

void box_points(int rank, int b, std::vector<IntVec>& out) {
  IntVec cur(rank);
  std::function<void(int)> go = [&](int i) {
    if (i == rank) {
      out.push_back(cur);
      return;
    }
    for (int v = -b; v <= b; ++v) {
      cur[i] = v;
      go(i + 1);
    }
  };
  go(0);
}

CriterionResult toric_roundtrip(Rng& rng) {
  CriterionResult r{9, "toric-gordan", false, "", 0, 60.0};
  Tally t;
  std::uniform_int_distribution<int> rk(1, 4), cnt(1, 5), entry(-3, 3);
  long points = 0, faces = 0, unsat = 0;
  for (int c = 0; c < 100; ++c) {
    int rank = rk(rng), k = cnt(rng);
    std::vector<IntVec> gens(k, IntVec(rank));
    for (auto& g : gens)
      for (auto& x : g) x = entry(rng);
    LatticeMonoid m = saturate_and_faces(gens, rank);
    if (!m.saturated) ++unsat;
    std::vector<IntVec> box;
    box_points(rank, rank == 4 ? 2 : 3, box);
    for (auto& x : box) {
      t.check(m.contains(x) == cone_oracle(gens, x), "cone membership differs from the subset oracle");
      ++points;
    }
    for (auto& s : m.sat_gens) t.check(m.contains(s), "saturation generator outside the cone");
    LatticeMonoid back = saturate_and_faces(m.sat_gens, rank);
    t.check(back.saturated, "saturation generators do not generate the saturation");
    for (auto& x : box) t.check(back.contains(x) == m.contains(x), "round trip changes the monoid");
    std::set<GenMask> want = face_oracle(gens, rank);
    std::set<GenMask> got(m.faces.begin(), m.faces.end());
    t.check(want == got, "face lattice differs from the exposure oracle");
    faces += static_cast<long>(got.size());
    for (GenMask f : m.faces)
      for (GenMask g : m.faces) t.check(got.count(f & g) == 1, "faces not closed under intersection");
    std::vector<IntVec> inside;
    for (auto& x : box)
      if (m.contains(x)) inside.push_back(x);
    for (auto& x : inside) {
      int owners = 0;
      for (GenMask f : m.faces)
        if (relative_interior_contains(m, f, x)) ++owners;
      t.check(owners == 1, "relative interiors do not partition the monoid");
    }
    std::uniform_int_distribution<size_t> pick(0, inside.size() - 1);
    for (int s = 0; s < 100 && !inside.empty(); ++s) {
      const IntVec& x = inside[pick(rng)];
      const IntVec& y = inside[pick(rng)];
      IntVec z(rank);
      for (int i = 0; i < rank; ++i) z[i] = x[i] + y[i];
      for (GenMask f : m.faces)
        if (in_face(m, f, z)) t.check(in_face(m, f, x) && in_face(m, f, y), "face axiom fails");
    }
  }
  r.pass = t.failures == 0;
  r.detail = "100 cones, " + std::to_string(points) + " box points, " + std::to_string(faces) + " faces, " +
             std::to_string(unsat) + " inputs not saturated; " + t.summary();
  return r;
}

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  Rng rng(seed + static_cast<std::uint64_t>(id));
  auto start = Clock::now();
  CriterionResult r;
  try {
    switch (id) {
      case 1: r = special_sets_example(); break;
      case 2: r = finite_affine_faces(rng); break;
      case 3: r = face_galois(rng); break;
      case 4: r = weyl_monoid_laws(rng); break;
      case 5: r = normalizer_quotient(rng); break;
      case 6: r = operator_suite(rng); break;
      case 7: r = module_cross_oracle(); break;
      case 8: r = theta_multiplicative(rng); break;
      case 9: r = toric_roundtrip(rng); break;
      default: throw Error(ErrorKind::PreconditionViolated, "no criterion " + std::to_string(id));
    }
  } catch (const Error& e) {
    r.id = id;
    r.tag = "criterion-" + std::to_string(id);
    r.pass = false;
    r.detail = std::string("error ") + kind_name(e.kind()) + ": " + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (r.limit > 0 && r.seconds > r.limit) {
    r.pass = false;
    r.detail += "; over the time limit";
  }
  return r;
}

}  // namespace kmx
