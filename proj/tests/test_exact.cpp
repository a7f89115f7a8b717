#include "doctest.h"
#include "kmx/exact.hpp"
#include "oracles.hpp"

using namespace kmx;

namespace {

std::mt19937_64 rng(0x5eed01);

IntMat random_int_mat(int r, int c, int lo, int hi) {
  std::uniform_int_distribution<int> e(lo, hi);
  IntMat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = e(rng);
  return m;
}

bool unimodular(const IntMat& m) {
  std::vector<int> all(m.rows());
  std::iota(all.begin(), all.end(), 0);
  Rat d = oracle::minor(m, all, all);
  return d == 1 || d == -1;
}

}  // namespace

TEST_SUITE("exact") {
  TEST_CASE("solve identity system") {
    auto s = rat_solve(to_rat(IntMat{{1, 0}, {0, 1}}), RatVec{3, 5});
    REQUIRE(s);
    CHECK(s->x == RatVec{3, 5});
    CHECK(s->kernel.empty());
  }

  TEST_CASE("kernel of the affine rank two matrix") {
    auto k = kernel(to_rat(IntMat{{2, -2}, {-2, 2}}));
    REQUIRE(k.size() == 1);
    CHECK(k[0][0] == k[0][1]);
    CHECK(sgn(k[0][0]) != 0);
  }

  TEST_CASE("contradictory rows have no solution") {
    CHECK_FALSE(rat_solve(to_rat(IntMat{{1, 1}, {1, 1}}), RatVec{1, 2}));
  }

  TEST_CASE("smith form examples") {
    CHECK(smith_normal_form(IntMat{{1, 0}, {0, 1}}).diag() == std::vector<Int>{1, 1});
    CHECK(smith_normal_form(IntMat{{2, 0}, {0, 3}}).diag() == std::vector<Int>{1, 6});
    CHECK(smith_normal_form(IntMat{{2, -2}, {-2, 2}}).diag() == std::vector<Int>{2, 0});
  }

  TEST_CASE("smith form matches determinantal divisors on random matrices") {
    for (int t = 0; t < 200; ++t) {
      std::uniform_int_distribution<int> dim(1, 4);
      IntMat m = random_int_mat(dim(rng), dim(rng), -6, 6);
      Smith s = smith_normal_form(m);
      CHECK(mul(mul(s.u, m), s.v) == s.d);
      CHECK(unimodular(s.u));
      CHECK(unimodular(s.v));
      auto want = oracle::smith_invariants(m);
      auto got = s.diag();
      REQUIRE(got.size() == want.size());
      for (size_t k = 0; k < got.size(); ++k) CHECK(abs(got[k]) == want[k]);
    }
  }

  TEST_CASE("rat_solve solutions satisfy the system") {
    for (int t = 0; t < 300; ++t) {
      std::uniform_int_distribution<int> dim(1, 5);
      IntMat m = random_int_mat(dim(rng), dim(rng), -4, 4);
      IntVec x0(m.cols());
      for (auto& v : x0) v = std::uniform_int_distribution<int>(-3, 3)(rng);
      RatVec b = to_rat(mul(m, x0));
      auto s = rat_solve(to_rat(m), b);
      REQUIRE(s);
      CHECK(mul(to_rat(m), s->x) == b);
      for (auto& k : s->kernel) CHECK(mul(to_rat(m), k) == RatVec(m.rows(), Rat(0)));
      CHECK(static_cast<int>(s->kernel.size()) + rank(m) == m.cols());
    }
  }

  TEST_CASE("integer kernel is a saturated lattice basis") {
    for (int t = 0; t < 150; ++t) {
      std::uniform_int_distribution<int> dim(1, 4);
      IntMat m = random_int_mat(dim(rng), dim(rng) + 1, -3, 3);
      IntMat k = integer_kernel(m);
      CHECK(k.cols() + rank(m) == m.cols());
      if (k.cols() == 0) continue;
      CHECK(mul(m, k) == IntMat(m.rows(), k.cols()));
      // saturated: the nonzero Smith invariants of the basis are all 1
      for (auto& d : oracle::smith_invariants(k)) CHECK(d == 1);
    }
  }

  TEST_CASE("lp feasibility on small cartan systems") {
    // u > 0 with A u > 0 for A2
    LPProblem fin{to_rat(IntMat{{2, -1}, {-1, 2}, {-1, 0}, {0, -1}}), {Rel::Lt, Rel::Lt, Rel::Lt, Rel::Lt}, {true, true}};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) fin.m(i, j) = -fin.m(i, j);
    auto u = lp_feasible(fin);
    REQUIRE(u);
    CHECK(satisfies(fin, *u));

    // u > 0 with A u = 0 for the affine rank two matrix
    LPProblem aff{to_rat(IntMat{{2, -2}, {-2, 2}, {-1, 0}, {0, -1}}), {Rel::Eq, Rel::Eq, Rel::Lt, Rel::Lt}, {true, true}};
    auto v = lp_feasible(aff);
    REQUIRE(v);
    CHECK((*v)[0] == (*v)[1]);

    // u > 0 with A u < 0 is infeasible for A2
    LPProblem none{to_rat(IntMat{{2, -1}, {-1, 2}, {-1, 0}, {0, -1}}), {Rel::Lt, Rel::Lt, Rel::Lt, Rel::Lt}, {true, true}};
    CHECK_FALSE(lp_feasible(none));
  }

  TEST_CASE("lp feasibility agrees with a grid search") {
    // the homogeneous system is feasible iff some small integer point satisfies it,
    // for 2 variables and entries bounded by 3 a grid of radius 12 suffices
    int agree = 0;
    for (int t = 0; t < 300; ++t) {
      std::uniform_int_distribution<int> rows(1, 3), rel(0, 2);
      LPProblem p;
      p.m = to_rat(random_int_mat(rows(rng), 2, -3, 3));
      for (int r = 0; r < p.m.rows(); ++r) p.rel.push_back(static_cast<Rel>(rel(rng)));
      p.positive = {std::uniform_int_distribution<int>(0, 1)(rng) == 1, false};
      bool grid = false;
      for (int a = -12; a <= 12 && !grid; ++a)
        for (int b = -12; b <= 12 && !grid; ++b) {
          IntVec u{a, b};
          grid = satisfies(p, u);
        }
      auto got = lp_feasible(p);
      CHECK(static_cast<bool>(got) == grid);
      if (got) CHECK(satisfies(p, *got));
      agree += static_cast<bool>(got) == grid;
    }
    CHECK(agree == 300);
  }

  TEST_CASE("rational strings round trip") {
    for (int t = 0; t < 200; ++t) {
      Rat q(std::uniform_int_distribution<int>(-50, 50)(rng), std::uniform_int_distribution<int>(1, 30)(rng));
      q.canonicalize();
      CHECK(parse_rat(to_string(q)) == q);
    }
    CHECK(to_string(Rat(3)) == "3/1");
    CHECK(parse_rat("-4/6") == Rat(-2, 3));
  }
}
