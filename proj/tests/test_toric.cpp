#include "doctest.h"
#include "kmx/error.hpp"
#include "kmx/toric.hpp"
#include "oracles.hpp"

using namespace kmx;

namespace {

std::mt19937_64 rng(0x5eed06);

// Caratheodory: x in cone(gens) iff x is a nonnegative combination of an independent subset
bool in_cone(const std::vector<IntVec>& gens, const IntVec& x) {
  const int r = static_cast<int>(x.size());
  if (std::all_of(x.begin(), x.end(), [](const Int& v) { return sgn(v) == 0; })) return true;
  bool found = false;
  for (int k = 1; k <= std::min<int>(r, static_cast<int>(gens.size())) && !found; ++k)
    oracle::subsets_of_size(static_cast<int>(gens.size()), k, [&](const std::vector<int>& pick) {
      if (found) return;
      RatMat a(r, k);
      for (int c = 0; c < k; ++c)
        for (int row = 0; row < r; ++row) a(row, c) = gens[pick[c]][row];
      auto s = rat_solve(a, to_rat(x));
      if (!s || !s->kernel.empty()) return;
      found = std::all_of(s->x.begin(), s->x.end(), [](const Rat& q) { return sgn(q) >= 0; });
    });
  return found;
}

std::vector<IntVec> pick(const std::vector<IntVec>& gens, GenMask f) {
  std::vector<IntVec> out;
  for (size_t i = 0; i < gens.size(); ++i)
    if ((f >> i) & 1) out.push_back(gens[i]);
  return out;
}

// F is a face iff some y has y.g = 0 on F and y.g > 0 off F
bool exposed(const std::vector<IntVec>& gens, GenMask f, int r) {
  LPProblem p;
  p.m = RatMat(static_cast<int>(gens.size()), r);
  for (size_t i = 0; i < gens.size(); ++i) {
    bool in = (f >> i) & 1;
    for (int k = 0; k < r; ++k) p.m(static_cast<int>(i), k) = in ? Rat(gens[i][k]) : Rat(-gens[i][k]);
    p.rel.push_back(in ? Rel::Eq : Rel::Lt);
  }
  p.positive.assign(r, false);
  return static_cast<bool>(lp_feasible(p));
}

std::vector<IntVec> box(int r, int radius) {
  std::vector<IntVec> out;
  IntVec x(r, Int(-radius));
  while (true) {
    out.push_back(x);
    int k = 0;
    while (k < r && x[k] == radius) x[k++] = -radius;
    if (k == r) break;
    x[k] += 1;
  }
  return out;
}

IntMat rows_mat(const std::vector<IntVec>& rows) {
  IntMat m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  return m;
}

bool is_zero(const IntVec& x) {
  return std::all_of(x.begin(), x.end(), [](const Int& v) { return sgn(v) == 0; });
}

IntVec add(const IntVec& a, const IntVec& b) {
  IntVec c = a;
  for (size_t k = 0; k < c.size(); ++k) c[k] += b[k];
  return c;
}

std::vector<IntVec> random_gens(int r, int count, int lo, int hi) {
  std::vector<IntVec> gens;
  while (static_cast<int>(gens.size()) < count) {
    IntVec g(r);
    for (auto& v : g) v = std::uniform_int_distribution<int>(lo, hi)(rng);
    if (!is_zero(g)) gens.push_back(g);
  }
  return gens;
}

// sums of generators with coordinate sum <= bound, for generators in the nonnegative orthant
std::set<IntVec> reachable(const std::vector<IntVec>& gens, int bound) {
  auto weight = [](const IntVec& x) {
    Int s = 0;
    for (auto& v : x) s += v;
    return s;
  };
  std::set<IntVec> seen{IntVec(gens[0].size())};
  std::vector<IntVec> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<IntVec> next;
    for (auto& x : frontier)
      for (auto& g : gens) {
        IntVec y = add(x, g);
        if (weight(y) <= bound && seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return seen;
}

// values on a lattice basis of a character given by its values on unit vectors
RatVec restrict_character(const std::vector<IntVec>& basis, const RatVec& chi) {
  RatVec out;
  for (auto& b : basis) {
    Rat v = 1;
    for (size_t k = 0; k < b.size(); ++k) {
      long e = b[k].get_si();
      Rat p = 1;
      for (long j = 0; j < std::abs(e); ++j) p *= chi[k];
      v *= e >= 0 ? p : Rat(1 / p);
    }
    out.push_back(v);
  }
  return out;
}

Rat character(const RatVec& chi, const IntVec& x) { return restrict_character({x}, chi)[0]; }

RatVec random_character(int r) {
  RatVec chi(r);
  for (auto& v : chi) {
    int num = 0;
    while (num == 0) num = std::uniform_int_distribution<int>(-3, 3)(rng);
    v = Rat(num, std::uniform_int_distribution<int>(1, 2)(rng));
    v.canonicalize();
  }
  return chi;
}

std::vector<std::vector<IntVec>> random_cones() {
  std::vector<std::vector<IntVec>> out;
  for (int t = 0; t < 12; ++t) out.push_back(random_gens(2, std::uniform_int_distribution<int>(1, 4)(rng), -2, 2));
  for (int t = 0; t < 8; ++t) out.push_back(random_gens(3, std::uniform_int_distribution<int>(2, 5)(rng), -1, 2));
  out.push_back({{1, 0}, {-1, 0}, {0, 1}});
  out.push_back({{1, 0, 0}, {0, 1, 0}, {1, 1, 2}, {0, 0, 1}});
  return out;
}

}  // namespace

TEST_SUITE("toric") {
  TEST_CASE("saturation examples") {
    LatticeMonoid n2 = saturate_and_faces({{1, 0}, {0, 1}}, 2);
    CHECK(n2.saturated);
    CHECK(n2.faces == std::vector<GenMask>{0, 1, 2, 3});

    LatticeMonoid m = saturate_and_faces({{1, 0}, {1, 2}}, 2);
    CHECK_FALSE(m.saturated);
    CHECK(m.contains(IntVec{1, 1}));
    CHECK_FALSE(in_generated_monoid(m.gens, m.ineqs, IntVec{1, 1}));
    CHECK(std::find(m.sat_gens.begin(), m.sat_gens.end(), IntVec{1, 1}) != m.sat_gens.end());

    LatticeMonoid g = saturate_and_faces({{1}, {-1}}, 1);
    CHECK(g.saturated);
    CHECK(g.faces.size() == 1);
    CHECK(g.faces[0] == g.all());

    try {
      saturate_and_faces({{1, 0, 0}}, 2);
      FAIL("expected RankMismatch");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::RankMismatch);
    }
  }

  TEST_CASE("face operation examples") {
    LatticeMonoid n2 = saturate_and_faces({{1, 0}, {0, 1}}, 2);
    CHECK(relative_interior_contains(n2, 3, IntVec{1, 1}));
    CHECK_FALSE(relative_interior_contains(n2, 3, IntVec{1, 0}));
    CHECK(hull_basis(n2, 0).empty());
    LatticeMonoid whole = dual_face(n2, 0);
    for (auto& x : box(2, 2)) CHECK(whole.contains(x) == n2.contains(x));
    LatticeMonoid half = dual_face(n2, 1);
    CHECK(half.contains(IntVec{-3, 2}));
    CHECK(half.contains(IntVec{-3, 0}));
    CHECK_FALSE(half.contains(IntVec{0, -1}));
    CHECK(half.faces.size() == 2);
    try {
      hull_basis(saturate_and_faces({{1, 0}, {1, 1}, {0, 1}}, 2), 5);
      FAIL("expected NotAFace");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotAFace);
    }
  }

  TEST_CASE("idempotent and torus examples") {
    LatticeMonoid n2 = saturate_and_faces({{1, 0}, {0, 1}}, 2);
    CHECK(mhat_mul(n2, mhat_idempotent(n2, 1), mhat_idempotent(n2, 2)) == mhat_idempotent(n2, 0));
    CHECK(mhat_idempotents(n2).size() == 4);
    MhatElt t = mhat_torus(n2, restrict_character(hull_basis(n2, 3), RatVec{2, 3}));
    MhatElt p = mhat_mul(n2, t, mhat_idempotent(n2, 1));
    CHECK(p.face == 1);
    CHECK(mhat_eval(n2, p, IntVec{1, 0}) == 2);
    CHECK(mhat_eval(n2, p, IntVec{3, 0}) == 8);
    CHECK(mhat_eval(n2, p, IntVec{0, 1}) == 0);
    CHECK(mhat_eval(n2, t, IntVec{1, 1}) == 6);
    CHECK(closure_order(n2, 3).size() == 4);
    CHECK(principal_open(n2, IntVec{1, 1}) == std::vector<GenMask>{3});
    CHECK(principal_open(n2, IntVec{0, 0}).size() == 4);
  }

  TEST_CASE("cone membership and saturation agree with the oracle") {
    for (auto& gens : random_cones()) {
      const int r = static_cast<int>(gens[0].size());
      LatticeMonoid m = saturate_and_faces(gens, r);
      for (auto& x : box(r, r == 2 ? 3 : 2)) CHECK(m.contains(x) == in_cone(gens, x));
      for (auto& g : m.sat_gens) CHECK(in_cone(gens, g));
      for (auto& y : m.ineqs)
        for (auto& g : gens) CHECK(sgn(dot(y, g)) >= 0);
      for (auto& y : m.eqs)
        for (auto& g : gens) CHECK(sgn(dot(y, g)) == 0);
    }
  }

  TEST_CASE("saturation generators reach every lattice point of a pointed cone") {
    for (int t = 0; t < 15; ++t) {
      const int r = std::uniform_int_distribution<int>(2, 3)(rng);
      auto gens = random_gens(r, std::uniform_int_distribution<int>(2, 4)(rng), 0, 3);
      LatticeMonoid m = saturate_and_faces(gens, r);
      const int bound = 6;
      auto sat = reachable(m.sat_gens, bound);
      auto gen = reachable(gens, bound);
      bool all_generated = true;
      for (auto& x : box(r, bound)) {
        Int s = 0;
        bool nonneg = true;
        for (auto& v : x) {
          s += v;
          nonneg = nonneg && sgn(v) >= 0;
        }
        if (!nonneg || s > bound) continue;
        bool cone = in_cone(gens, x);
        CHECK(sat.count(x) == (cone ? 1u : 0u));
        if (cone && !gen.count(x)) all_generated = false;
      }
      // the flag is checked only one way: missing points beyond the bound would also clear it
      if (m.saturated) CHECK(all_generated);
      if (!all_generated) CHECK_FALSE(m.saturated);
    }
  }

  TEST_CASE("faces agree with LP exposure") {
    for (auto& gens : random_cones()) {
      const int r = static_cast<int>(gens[0].size());
      LatticeMonoid m = saturate_and_faces(gens, r);
      std::vector<GenMask> want;
      for (GenMask f = 0; f <= m.all(); ++f)
        if (exposed(gens, f, r)) want.push_back(f);
      std::vector<GenMask> got = m.faces;
      std::sort(got.begin(), got.end());
      CHECK(got == want);
      for (GenMask f : m.faces)
        for (GenMask g : m.faces) CHECK(face_intersect(m, f, g) == (f & g));
      CHECK(mhat_idempotents(m).size() == m.faces.size());
    }
  }

  TEST_CASE("relative interiors partition the monoid") {
    for (auto& gens : random_cones()) {
      const int r = static_cast<int>(gens[0].size());
      LatticeMonoid m = saturate_and_faces(gens, r);
      for (auto& x : box(r, 2)) {
        if (!m.contains(x)) {
          CHECK_THROWS_AS(face_of(m, x), Error);
          continue;
        }
        int count = 0;
        GenMask smallest = m.all();
        for (GenMask f : m.faces) {
          bool in = in_cone(pick(gens, f), x);
          CHECK(in_face(m, f, x) == in);
          if (in && __builtin_popcountll(f) < __builtin_popcountll(smallest)) smallest = f;
          count += relative_interior_contains(m, f, x);
        }
        CHECK(count == 1);
        CHECK(face_of(m, x) == smallest);
        std::vector<GenMask> opens;
        for (GenMask g : m.faces)
          if ((smallest & g) == smallest) opens.push_back(g);
        std::sort(opens.begin(), opens.end());
        auto got = principal_open(m, x);
        std::sort(got.begin(), got.end());
        CHECK(got == opens);
      }
    }
  }

  TEST_CASE("hulls and dual faces") {
    for (auto& gens : random_cones()) {
      const int r = static_cast<int>(gens[0].size());
      LatticeMonoid m = saturate_and_faces(gens, r);
      for (GenMask f : m.faces) {
        auto hb = hull_basis(m, f);
        auto fg = pick(gens, f);
        CHECK(static_cast<int>(hb.size()) == (fg.empty() ? 0 : rank(rows_mat(fg))));
        if (!hb.empty())
          for (auto& d : oracle::smith_invariants(rows_mat(hb))) CHECK(d == 1);
        // F = M n span(F)
        for (auto& x : box(r, 2)) {
          auto with_x = hb;
          with_x.push_back(x);
          bool span = rank(rows_mat(with_x)) == static_cast<int>(hb.size());
          CHECK(in_face(m, f, x) == (m.contains(x) && span));
        }
        // M - F is the cone over gens and -F
        auto ext = gens;
        for (auto& g : fg) {
          IntVec neg = g;
          for (auto& v : neg) v = -v;
          ext.push_back(neg);
        }
        LatticeMonoid df = dual_face(m, f);
        for (auto& x : box(r, 2)) CHECK(df.contains(x) == in_cone(ext, x));
        // faces of M - F correspond to faces of M containing F
        size_t above = 0;
        for (GenMask g : m.faces) above += (f & g) == f;
        CHECK(df.faces.size() == above);
        std::vector<GenMask> below;
        for (GenMask g : m.faces)
          if ((g & f) == g) below.push_back(g);
        auto cl = closure_order(m, f);
        std::sort(cl.begin(), cl.end());
        std::sort(below.begin(), below.end());
        CHECK(cl == below);
      }
    }
  }

  TEST_CASE("characters of the monoid multiply pointwise") {
    for (auto& gens : random_cones()) {
      const int r = static_cast<int>(gens[0].size());
      LatticeMonoid m = saturate_and_faces(gens, r);
      RatVec chi = random_character(r), psi = random_character(r);
      MhatElt a = mhat_torus(m, restrict_character(hull_basis(m, m.all()), chi));
      MhatElt b = mhat_torus(m, restrict_character(hull_basis(m, m.all()), psi));
      auto pts = box(r, 2);
      for (GenMask f : m.faces)
        for (GenMask g : m.faces) {
          MhatElt x = mhat_mul(m, a, mhat_idempotent(m, f));
          MhatElt y = mhat_mul(m, b, mhat_idempotent(m, g));
          MhatElt xy = mhat_mul(m, x, y);
          CHECK(xy.face == (f & g));
          CHECK(xy == mhat_mul(m, y, x));
          CHECK(mhat_mul(m, mhat_idempotent(m, f), mhat_idempotent(m, g)) == mhat_idempotent(m, f & g));
          for (auto& p : pts) {
            if (!m.contains(p)) continue;
            Rat want = in_face(m, f, p) && in_face(m, g, p) ? character(chi, p) * character(psi, p) : Rat(0);
            CHECK(mhat_eval(m, xy, p) == want);
          }
        }
    }
  }

  TEST_CASE("saturation round trip") {
    for (auto& gens : random_cones()) {
      const int r = static_cast<int>(gens[0].size());
      LatticeMonoid m = saturate_and_faces(gens, r);
      LatticeMonoid back = saturate_and_faces(m.sat_gens, r);
      CHECK(back.saturated);
      CHECK(back.faces.size() == m.faces.size());
      for (auto& x : box(r, 3)) CHECK(back.contains(x) == m.contains(x));
    }
  }
}
