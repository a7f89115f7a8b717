#include "doctest.h"
#include "kmx/suite.hpp"
#include "oracles.hpp"

using namespace kmx;

namespace {

Rng rng(0x5eed07);

// Contravariant form on lowering words computed in the free setting from [e_i, f_j] = delta_ij h_i.
// A vector is a map word -> coefficient, the word f_{w0} f_{w1} ... acting on v.
class FreeForm {
 public:
  FreeForm(const IntMat& a, const IntVec& top) : a_(a), top_(top) {}

  using Vec = std::map<std::vector<int>, Rat>;

  // e_i applied to the word vector
  Vec raise(int i, const std::vector<int>& w) {
    Vec out;
    for (size_t p = 0; p < w.size(); ++p) {
      if (w[p] != i) continue;
      // weight of f_{w(p+1)} ... v on h_i
      Int val = top_[i];
      for (size_t q = p + 1; q < w.size(); ++q) val -= a_(i, w[q]);
      if (sgn(val) == 0) continue;
      std::vector<int> rest(w.begin(), w.begin() + p);
      rest.insert(rest.end(), w.begin() + p + 1, w.end());
      out[rest] += Rat(val);
    }
    return out;
  }

  Rat pair(const std::vector<int>& x, const std::vector<int>& y) {
    if (x.size() != y.size()) return 0;
    if (x.empty()) return 1;
    auto key = std::make_pair(x, y);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<int> tail(x.begin() + 1, x.end());
    Rat total = 0;
    for (auto& [w, c] : raise(x[0], y)) total += c * pair(tail, w);
    memo_[key] = total;
    return total;
  }

  // dimension of L(top) at top - sum k_i alpha_i as the rank of the Gram matrix on all words
  int dim(const IntVec& k) {
    std::vector<int> letters;
    for (size_t i = 0; i < k.size(); ++i)
      for (int c = 0; c < k[i]; ++c) letters.push_back(static_cast<int>(i));
    std::vector<std::vector<int>> words;
    do words.push_back(letters);
    while (std::next_permutation(letters.begin(), letters.end()));
    RatMat g(static_cast<int>(words.size()), static_cast<int>(words.size()));
    for (size_t r = 0; r < words.size(); ++r)
      for (size_t c = 0; c < words.size(); ++c) g(static_cast<int>(r), static_cast<int>(c)) = pair(words[r], words[c]);
    return rank(g);
  }

 private:
  IntMat a_;
  IntVec top_;
  std::map<std::pair<std::vector<int>, std::vector<int>>, Rat> memo_;
};

IntVec weight(const RootDatum& d, std::initializer_list<int> coords) {
  IntVec lam(d.dim());
  int i = 0;
  for (int c : coords) lam[i++] = c;
  return lam;
}

GhatWord word(const RootDatum& d, const std::string& s) { return parse_ghat_word(d, s); }

int total_dim(const ModuleSlice& s) { return s.size(); }

bool is_unit(const RatVec& v, int pos) {
  for (size_t k = 0; k < v.size(); ++k)
    if (v[k] != (static_cast<int>(k) == pos ? 1 : 0)) return false;
  return true;
}

// random word of root group, torus and simple lift letters
GhatWord random_group_word(const RootDatum& d, int len) {
  GhatWord w;
  for (int k = 0; k < len; ++k) {
    Letter l;
    int kind = std::uniform_int_distribution<int>(0, 3)(rng);
    l.i = std::uniform_int_distribution<int>(0, d.n() - 1)(rng);
    if (kind == 0) l.kind = Letter::Xplus;
    if (kind == 1) l.kind = Letter::Xminus;
    if (kind == 2) {
      l.kind = Letter::Torus;
      l.h = IntVec(d.dim());
      l.h[l.i] = 1;
    }
    if (kind == 3) l.kind = Letter::NSimple;
    int num = 0;
    while (num == 0) num = std::uniform_int_distribution<int>(-2, 2)(rng);
    l.t = Rat(num, std::uniform_int_distribution<int>(1, 2)(rng));
    l.t.canonicalize();
    w.push_back(l);
  }
  return w;
}

}  // namespace

TEST_SUITE("ghat") {
  TEST_CASE("weight and multiplicity examples") {
    Datum a2 = corpus_datum("A2");
    auto w1 = weights_and_mults(*a2, weight(*a2, {1, 0}), 8);
    REQUIRE(w1.size() == 3);
    CHECK(w1[0].k == IntVec{0, 0});
    CHECK(w1[1].k == IntVec{1, 0});
    CHECK(w1[2].k == IntVec{1, 1});
    for (auto& w : w1) CHECK(w.mult == 1);
    auto ad = weights_and_mults(*a2, weight(*a2, {1, 1}), 2);
    for (auto& w : ad)
      if (w.k == IntVec{1, 1}) CHECK(w.mult == 2);
    try {
      weights_and_mults(*a2, weight(*a2, {-1, 0}), 2);
      FAIL("expected NotDominant");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotDominant);
    }
  }

  TEST_CASE("slice examples") {
    Datum a2 = corpus_datum("A2");
    auto s = build_basis(a2, weight(*a2, {1, 0}), 2);
    CHECK(s->size() == 3);
    RatVec v = s->unit(0);
    RatVec f1 = s->apply_f(0, v);
    CHECK(std::any_of(f1.begin(), f1.end(), [](const Rat& q) { return sgn(q) != 0; }));
    RatVec f2 = s->apply_f(1, v);
    CHECK(std::all_of(f2.begin(), f2.end(), [](const Rat& q) { return sgn(q) == 0; }));
    Datum aff = corpus_datum("A1~");
    auto t = build_basis(aff, weight(*aff, {1, 0}), 1);
    REQUIRE(t->weights().size() == 2);
    CHECK(t->weights()[0].dim() == 1);
    CHECK(t->weights()[1].dim() == 1);
    auto z = build_basis(corpus_datum("hyp"), IntVec{1, 2, 0}, 0);
    CHECK(z->size() == 1);
    CHECK(z->pairing(z->unit(0), z->unit(0)) == 1);
  }

  TEST_CASE("multiplicities agree with the rank of the free contravariant form") {
    std::vector<std::pair<std::string, std::pair<std::vector<int>, int>>> cases{
        {"A2", {{1, 1}, 4}}, {"A2", {{2, 0}, 4}}, {"B2", {{1, 1}, 4}}, {"G2", {{1, 0}, 4}},
        {"G2", {{0, 1}, 4}}, {"A1~", {{1, 0}, 4}}, {"A1~", {{1, 1}, 4}}, {"A2~", {{1, 0, 0}, 3}},
        {"hyp", {{1, 0, 0}, 3}}, {"hyp", {{0, 1, 1}, 3}}};
    for (auto& [name, params] : cases) {
      Datum d = corpus_datum(name);
      IntVec top(d->dim());
      for (size_t i = 0; i < params.first.size(); ++i) top[i] = params.first[i];
      FreeForm form(d->gcm().a, top);
      auto wm = weights_and_mults(*d, top, params.second);
      auto slice = build_basis(d, top, params.second);
      int seen = 0;
      for (auto& w : wm) {
        CHECK(w.mult == form.dim(w.k));
        int idx = slice->find(w.k);
        REQUIRE(idx >= 0);
        CHECK(slice->weights()[idx].dim() == w.mult);
        ++seen;
      }
      // every weight with nonzero rank appears in the table
      int positive = 0;
      std::function<void(IntVec, int)> walk = [&](IntVec k, int h) {
        if (h > params.second) return;
        if (form.dim(k) > 0) ++positive;
        for (int i = 0; i < d->n(); ++i) {
          // enumerate each k once: only increase coordinates at or after the last increased one
          bool later_zero = true;
          for (int j = i + 1; j < d->n(); ++j) later_zero = later_zero && sgn(k[j]) == 0;
          if (!later_zero) continue;
          IntVec next = k;
          next[i] += 1;
          walk(next, h + 1);
        }
      };
      walk(IntVec(d->n()), 0);
      CHECK(positive == seen);
    }
  }

  TEST_CASE("finite modules have the classical dimensions") {
    std::map<std::string, std::multiset<int>> dims{
        {"A2", {3, 3}}, {"B2", {4, 5}}, {"A3", {4, 6, 4}}};
    for (auto& [name, want] : dims) {
      Datum d = corpus_datum(name);
      std::multiset<int> got;
      for (int i = 0; i < d->n(); ++i) {
        IntVec top(d->dim());
        top[i] = 1;
        got.insert(total_dim(*build_basis(d, top, 8)));
      }
      CHECK(got == want);
    }
    // the 14-dimensional G2 module reaches height 10, past the depth guard
    Datum g2 = corpus_datum("G2");
    int seven = 0;
    for (int i = 0; i < 2; ++i) {
      IntVec top(g2->dim());
      top[i] = 1;
      seven += build_basis(g2, top, 8)->size() == 7;
    }
    CHECK(seven == 1);
    Datum a2 = corpus_datum("A2");
    CHECK(build_basis(a2, weight(*a2, {1, 1}), 8)->size() == 8);
    Datum b2 = corpus_datum("B2");
    CHECK(build_basis(b2, weight(*b2, {1, 1}), 8)->size() == 16);
  }

  TEST_CASE("slices are contravariant with symmetric nonsingular Gram matrices") {
    std::vector<std::pair<std::string, std::vector<int>>> cases{
        {"A2", {1, 1}}, {"B2", {1, 0}}, {"A1~", {1, 1}}, {"A2~", {1, 0, 1}}, {"hyp", {1, 0, 1}}};
    for (auto& [name, topv] : cases) {
      Datum d = corpus_datum(name);
      IntVec top(d->dim());
      for (size_t i = 0; i < topv.size(); ++i) top[i] = topv[i];
      const int depth = 4;
      auto s = build_basis(d, top, depth);
      for (auto& w : s->weights()) {
        CHECK(w.gram == w.gram.transpose());
        CHECK(rank(w.gram) == w.dim());
        // weights lie in the Tits cone
        CHECK(dominant_rep(*d, to_rat(w.lam)).kind == DominantResult::Dominant);
      }
      for (int p = 0; p < s->size(); ++p) {
        auto [wi, li] = s->locate(p);
        if (s->weights()[wi].height >= depth) continue;
        for (int q = 0; q < s->size(); ++q)
          for (int i = 0; i < d->n(); ++i) {
            RatVec u = s->unit(p), v = s->unit(q);
            CHECK(s->pairing(s->apply_f(i, u), v) == s->pairing(u, s->apply_e(i, v)));
          }
      }
    }
  }

  TEST_CASE("generator action examples") {
    Datum a2 = corpus_datum("A2");
    auto s = build_basis(a2, weight(*a2, {1, 0}), 2);
    RatVec v = s->unit(0);
    RatVec x = s->apply(word(*a2, "X-(1;3/2)"), v);
    RatVec want = v;
    RatVec f1 = s->apply_f(0, v);
    for (size_t k = 0; k < want.size(); ++k) want[k] += Rat(3, 2) * f1[k];
    CHECK(x == want);
    Datum aff = corpus_datum("A1~");
    auto t = build_basis(aff, weight(*aff, {1, 0}), 4);
    GhatWord ec = word(*aff, "E(w=;theta=1,2)");
    for (int p = 0; p < t->size(); ++p) {
      RatVec img = t->apply(ec, t->unit(p));
      CHECK(std::all_of(img.begin(), img.end(), [](const Rat& q) { return sgn(q) == 0; }));
    }
    GhatWord ex = word(*aff, "E(w=;theta=)");
    for (int p = 0; p < t->size(); ++p) CHECK(is_unit(t->apply(ex, t->unit(p)), p));
    CHECK(theta(*t, ec) == 0);
    CHECK(theta(*t, word(*aff, "T(h1;5)")) == 5);
    CHECK(theta(*t, GhatWord{}) == 1);
    try {
      auto small = build_basis(aff, weight(*aff, {1, 0}), 1);
      small->apply(word(*aff, "X-(2;1) X-(1;1)"), small->unit(0));
      FAIL("expected DepthExceeded");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DepthExceeded);
    }
  }

  TEST_CASE("root group and torus relations hold as operators") {
    for (std::string name : {"A2", "A1~", "hyp"}) {
      Datum d = corpus_datum(name);
      IntVec top(d->dim());
      for (int i = 0; i < d->n(); ++i) top[i] = std::uniform_int_distribution<int>(0, 1)(rng);
      top[0] = 1;
      auto s = build_basis(d, top, 4);
      const int in_depth = 1;
      for (int i = 0; i < d->n(); ++i) {
        std::string a = std::to_string(i + 1);
        auto e1 = evaluate_word(*s, word(*d, "X-(" + a + ";2) X-(" + a + ";-1/2)"), in_depth);
        auto e2 = evaluate_word(*s, word(*d, "X-(" + a + ";3/2)"), in_depth);
        CHECK(e1.m == e2.m);
        auto p1 = evaluate_word(*s, word(*d, "X+(" + a + ";2) X+(" + a + ";-2)"), in_depth);
        auto id = evaluate_word(*s, GhatWord{}, in_depth);
        CHECK(p1.m == id.m);
        // n_i t_h(s) n_i^-1 = t_{s_i h}(s)
        auto tn = evaluate_word(*s, word(*d, "N(" + a + ") T(h1;3) N(" + a + ") T(h" + a + ";-1)"), in_depth);
        IntVec h(d->dim());
        h[0] = 1;
        IntVec sh = reflect_coweight(*d, i, h);
        Letter l;
        l.kind = Letter::Torus;
        l.h = sh;
        l.t = 3;
        auto want = evaluate_word(*s, GhatWord{l}, in_depth);
        CHECK(tn.m == want.m);
      }
    }
  }

  TEST_CASE("simple lifts move weight spaces by the reflection") {
    Datum d = corpus_datum("A2");
    auto s = build_basis(d, weight(*d, {1, 1}), 8);
    for (int i = 0; i < 2; ++i) {
      GhatWord n{};
      Letter l;
      l.kind = Letter::NSimple;
      l.i = i;
      n.push_back(l);
      for (int p = 0; p < s->size(); ++p) {
        auto [wi, li] = s->locate(p);
        IntVec target = reflect_weight(*d, i, s->weights()[wi].lam);
        RatVec img = s->apply(n, s->unit(p));
        for (int q = 0; q < s->size(); ++q)
          if (sgn(img[q]) != 0) CHECK(s->weights()[s->locate(q).first].lam == target);
      }
    }
  }

  TEST_CASE("idempotents act as face indicators") {
    for (std::string name : {"A1~", "A2~", "hyp"}) {
      Datum d = corpus_datum(name);
      IntVec top(d->dim());
      top[0] = 1;
      top[1] = 1;
      auto s = build_basis(d, top, 4);
      for (int t = 0; t < 20; ++t) {
        Face f = random_face(*d, rng, 4);
        Letter l;
        l.kind = Letter::Idem;
        l.face = f;
        for (int p = 0; p < s->size(); ++p) {
          IntVec lam = s->weights()[s->locate(p).first].lam;
          // (w^-1 lam)(c_theta) = 0 exactly on the face
          bool in = sgn(dot(act_weight(weyl_inverse(*d, f.w), lam), d->exposing(f.theta))) == 0;
          RatVec img = s->apply(GhatWord{l}, s->unit(p));
          CHECK(is_unit(img, p) == in);
          if (!in) CHECK(std::all_of(img.begin(), img.end(), [](const Rat& q) { return sgn(q) == 0; }));
        }
      }
    }
  }

  TEST_CASE("matrix coefficients of the highest weight are multiplicative") {
    for (std::string name : {"A2", "A1~", "hyp"}) {
      Datum d = corpus_datum(name);
      IntVec a(d->dim()), b(d->dim());
      a[0] = 1;
      b[1] = 1;
      IntVec ab = a;
      ab[1] = 1;
      auto sa = build_basis(d, a, 6), sb = build_basis(d, b, 6), sab = build_basis(d, ab, 6);
      int checked = 0;
      for (int t = 0; t < 80; ++t) {
        GhatWord w = random_group_word(*d, std::uniform_int_distribution<int>(1, 4)(rng));
        try {
          Rat x = theta(*sa, w), y = theta(*sb, w), z = theta(*sab, w);
          CHECK(x * y == z);
          ++checked;
        } catch (const DepthError&) {
        }
      }
      CHECK(checked > 40);
      CHECK(matrix_coefficient(*sa, sa->unit(0), sa->unit(0), GhatWord{}) == 1);
    }
  }

  TEST_CASE("probe equality examples") {
    Datum a2 = corpus_datum("A2");
    std::vector<Probe> probes{{weight(*a2, {1, 0}), 2}, {weight(*a2, {0, 1}), 2}, {weight(*a2, {1, 1}), 3}};
    CHECK(probe_equal(a2, word(*a2, "N(1) N(1)"), word(*a2, "T(h1;-1)"), probes).equal);
    auto r = probe_equal(a2, word(*a2, "X+(1;1)"), GhatWord{}, probes);
    CHECK_FALSE(r.equal);
    CHECK_FALSE(r.witness.empty());
    CHECK(nsimple_letters(0).size() == 3);
    Datum hyp = corpus_datum("hyp");
    std::vector<Probe> hp{{IntVec{1, 0, 0}, 3}, {IntVec{0, 1, 0}, 3}, {IntVec{0, 0, 1}, 3}};
    for (int t = 0; t < 10; ++t) {
      WeylElt w = random_weyl(*hyp, rng, 2);
      Face f = random_face(*hyp, rng, 2);
      Letter e;
      e.kind = Letter::Idem;
      e.face = f;
      Letter g;
      g.kind = Letter::Idem;
      g.face = act_face(*hyp, w, f);
      GhatWord lhs = concat({weyl_lift_word(w), GhatWord{e}, weyl_lift_inverse_word(*hyp, w)});
      CHECK(probe_equal(hyp, lhs, GhatWord{g}, hp).equal);
    }
  }

  TEST_CASE("bruhat cell examples") {
    Datum a2 = corpus_datum("A2");
    WmonElt u = bruhat_cell(*a2, word(*a2, "X+(1;2) X+(2;-1)"));
    CHECK(wm_is_unit(u));
    CHECK(u.w.is_identity());
    CHECK(bruhat_cell(*a2, word(*a2, "N(1)")) == wm_unit(*a2, weyl_simple(*a2, 0)));
    CHECK(bruhat_cell(*a2, word(*a2, "X-(1;1) N(2) N(1) T(h1;3) X+(2;5)")) ==
          wm_unit(*a2, weyl_from_word(*a2, {1, 0})));
    Datum aff = corpus_datum("A1~");
    CHECK(bruhat_cell(*aff, word(*aff, "E(w=;theta=1,2)")) == wm_idempotent(*aff, edge_face(*aff)));
    try {
      bruhat_cell(*a2, word(*a2, "X+(1;1) X-(1;1)"));
      FAIL("expected NotFactored");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotFactored);
    }
  }

  TEST_CASE("word syntax round trips") {
    Datum hyp = corpus_datum("hyp");
    for (std::string s : {"X+(1;3/2) X-(2;-1) T(h1;2) N(1) E(w=3 1;theta=1,2)", "N(3) E(w=;theta=1,2,3)", ""}) {
      GhatWord w = parse_ghat_word(*hyp, s);
      CHECK(ghat_word_str(parse_ghat_word(*hyp, ghat_word_str(w))) == ghat_word_str(w));
    }
    CHECK_THROWS_AS(parse_ghat_word(*hyp, "Q(1)"), Error);
    CHECK_THROWS_AS(parse_ghat_word(*hyp, "T(h1;0)"), Error);
  }
}
