#include "kmx/toric.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>

namespace kmx {

namespace {

constexpr int kMaxRank = 8;
constexpr int kMaxGens = 64;
constexpr long kMaxSubsets = 200000;
constexpr long kMaxPoints = 100000;
constexpr long kMaxSearch = 2000000;

std::vector<IntVec> rows_of(const IntMat& m) {
  std::vector<IntVec> out;
  for (int i = 0; i < m.rows(); ++i) out.push_back(m.row(i));
  return out;
}

IntMat mat_of_rows(const std::vector<IntVec>& rows, int cols) {
  IntMat m(static_cast<int>(rows.size()), cols);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

IntVec int_coords(const std::vector<IntVec>& basis, const IntVec& v) {
  auto c = coords_in(basis, v);
  if (!c) throw Error(ErrorKind::InternalInfeasible, "vector outside the lattice span");
  IntVec out(c->size());
  for (size_t k = 0; k < c->size(); ++k) {
    if ((*c)[k].get_den() != 1) throw Error(ErrorKind::InternalInfeasible, "lattice basis not saturated");
    out[k] = (*c)[k].get_num();
  }
  return out;
}

RatMat rat_inverse(const RatMat& m) {
  const int n = m.rows();
  RatMat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] >= n) throw Error(ErrorKind::InternalInfeasible, "singular matrix");
  RatMat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

void check_input(const std::vector<IntVec>& gens, int rank, long max_gens = kMaxGens) {
  if (rank < 0) throw Error(ErrorKind::RankMismatch, "negative rank");
  if (rank > kMaxRank) throw Error(ErrorKind::ResourceGuard, "rank above 8");
  if (static_cast<long>(gens.size()) > max_gens)
    throw Error(ErrorKind::ResourceGuard, "more than " + std::to_string(max_gens) + " generators");
  for (auto& g : gens)
    if (static_cast<int>(g.size()) != rank) throw Error(ErrorKind::RankMismatch, "generator length differs from the rank");
}

// Extreme rays of the pointed cone { z : a z >= 0 } (a has full column rank) by double description.
std::vector<IntVec> extreme_rays(const IntMat& a) {
  const int m = a.rows(), d = a.cols();
  if (d == 0) return {};
  auto eval = [&](int row, const IntVec& z) {
    Int s = 0;
    for (int j = 0; j < d; ++j) s += a(row, j) * z[j];
    return s;
  };
  // initial simplicial cone from d independent rows
  std::vector<int> init;
  {
    RatMat acc(0, d);
    for (int i = 0; i < m && static_cast<int>(init.size()) < d; ++i) {
      RatMat t(acc.rows() + 1, d);
      for (int r = 0; r < acc.rows(); ++r)
        for (int j = 0; j < d; ++j) t(r, j) = acc(r, j);
      for (int j = 0; j < d; ++j) t(acc.rows(), j) = a(i, j);
      if (rank(t) == t.rows()) {
        acc = t;
        init.push_back(i);
      }
    }
    if (static_cast<int>(init.size()) < d) throw Error(ErrorKind::InternalInfeasible, "constraint matrix not of full column rank");
    RatMat inv = rat_inverse(acc);
    std::vector<IntVec> rays;
    for (int j = 0; j < d; ++j) rays.push_back(primitive(inv.col(j)));
    std::vector<int> processed = init;
    std::vector<bool> done(m, false);
    for (int i : init) done[i] = true;
    for (int k = 0; k < m; ++k) {
      if (done[k]) continue;
      std::vector<IntVec> pos, neg, zero;
      for (auto& r : rays) {
        int s = sgn(eval(k, r));
        (s > 0 ? pos : s < 0 ? neg : zero).push_back(r);
      }
      std::vector<IntVec> next = pos;
      next.insert(next.end(), zero.begin(), zero.end());
      for (auto& p : pos) {
        for (auto& n : neg) {
          std::vector<int> common;
          for (int j : processed)
            if (sgn(eval(j, p)) == 0 && sgn(eval(j, n)) == 0) common.push_back(j);
          if (static_cast<int>(common.size()) < d - 2) continue;
          RatMat sub(static_cast<int>(common.size()), d);
          for (size_t r = 0; r < common.size(); ++r)
            for (int j = 0; j < d; ++j) sub(static_cast<int>(r), j) = a(common[r], j);
          if (rank(sub) != d - 2) continue;
          Int ap = eval(k, p), an = eval(k, n);
          IntVec z(d);
          for (int j = 0; j < d; ++j) z[j] = ap * n[j] - an * p[j];
          next.push_back(primitive(z));
        }
      }
      rays = std::move(next);
      processed.push_back(k);
      done[k] = true;
    }
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    return rays;
  }
}

// Lattice points of the half-open parallelepiped spanned by independent rows s, in ambient coordinates.
void parallelepiped_points(const std::vector<IntVec>& s, const std::vector<IntVec>& basis, std::set<IntVec>& out) {
  const int d = static_cast<int>(s.size());
  const int r = static_cast<int>(basis.empty() ? 0 : basis[0].size());
  IntMat m(d, d);
  for (int i = 0; i < d; ++i) {
    IntVec c = int_coords(basis, s[i]);
    for (int j = 0; j < d; ++j) m(i, j) = c[j];
  }
  Smith sm = smith_normal_form(m);
  RatMat vinv = rat_inverse(to_rat(sm.v));
  RatMat minv = rat_inverse(to_rat(m));
  auto diag = sm.diag();
  long count = 1;
  std::vector<long> dl;
  for (auto& x : diag) {
    Int ax = abs(x);
    if (!ax.fits_slong_p() || ax.get_si() > kMaxPoints) throw Error(ErrorKind::ResourceGuard, "parallelepiped too large");
    dl.push_back(ax.get_si());
    count *= dl.back();
    if (count > kMaxPoints) throw Error(ErrorKind::ResourceGuard, "parallelepiped too large");
  }
  std::vector<long> y(d, 0);
  for (long idx = 0; idx < count; ++idx) {
    long rem = idx;
    for (int i = 0; i < d; ++i) {
      long di = dl[i];
      y[i] = rem % di;
      rem /= di;
    }
    RatVec x(d);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) x[j] += Rat(y[i]) * vinv(i, j);
    RatVec lam(d);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) lam[j] += x[i] * minv(i, j);
    for (auto& l : lam) {
      Int fl;
      mpz_fdiv_q(fl.get_mpz_t(), l.get_num_mpz_t(), l.get_den_mpz_t());
      l -= fl;
    }
    IntVec pt(r);
    bool nonzero = false;
    for (int k = 0; k < r; ++k) {
      Rat v = 0;
      for (int i = 0; i < d; ++i) v += lam[i] * Rat(s[i][k]);
      if (v.get_den() != 1) throw Error(ErrorKind::InternalInfeasible, "parallelepiped point not integral");
      pt[k] = v.get_num();
      if (sgn(pt[k]) != 0) nonzero = true;
    }
    if (nonzero) out.insert(pt);
  }
}

int rank_of_rows(const std::vector<IntVec>& rows, int cols) { return rank(mat_of_rows(rows, cols)); }

GenMask closure_of(const LatticeMonoid& m, const std::vector<int>& tight) {
  GenMask f = 0;
  for (size_t g = 0; g < m.gens.size(); ++g) {
    bool in = true;
    for (int k : tight)
      if (sgn(dot(m.ineqs[k], m.gens[g])) != 0) in = false;
    if (in) f |= GenMask(1) << g;
  }
  return f;
}

}  // namespace

GenMask LatticeMonoid::all() const {
  return gens.size() >= 64 ? ~GenMask(0) : (GenMask(1) << gens.size()) - 1;
}

bool LatticeMonoid::contains(const IntVec& x) const {
  if (static_cast<int>(x.size()) != rank) throw Error(ErrorKind::RankMismatch, "point length differs from the rank");
  for (auto& e : eqs)
    if (sgn(dot(e, x)) != 0) return false;
  for (auto& y : ineqs)
    if (sgn(dot(y, x)) < 0) return false;
  return true;
}

void cone_description(const std::vector<IntVec>& gens, int rank, std::vector<IntVec>& ineqs, std::vector<IntVec>& eqs) {
  check_input(gens, rank, kMaxPoints);
  ineqs.clear();
  eqs.clear();
  IntMat g = mat_of_rows(gens, rank);
  if (gens.empty()) {
    eqs = rows_of(IntMat::identity(rank));
    return;
  }
  eqs = rows_of(integer_kernel(g).transpose());
  std::vector<IntVec> basis = rows_of(saturate_rows(gens, rank));
  const int d = static_cast<int>(basis.size());
  if (d == 0) return;
  // gens in span coordinates; facets of the cone are extreme rays of the dual inside the span
  IntMat a(static_cast<int>(gens.size()), d);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < d; ++j) a(i, j) = dot(gens[i], basis[j]);
  for (auto& z : extreme_rays(a)) {
    IntVec y(rank);
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < rank; ++k) y[k] += z[j] * basis[j][k];
    ineqs.push_back(primitive(y));
  }
  std::sort(ineqs.begin(), ineqs.end());
  ineqs.erase(std::unique(ineqs.begin(), ineqs.end()), ineqs.end());
}

bool in_lattice(const std::vector<IntVec>& gens, const IntVec& q, int rank) {
  if (gens.empty()) return std::all_of(q.begin(), q.end(), [](const Int& x) { return sgn(x) == 0; });
  IntMat cols(rank, static_cast<int>(gens.size()));
  for (size_t j = 0; j < gens.size(); ++j)
    for (int i = 0; i < rank; ++i) cols(i, static_cast<int>(j)) = gens[j][i];
  Smith s = smith_normal_form(cols);
  IntVec uq = mul(s.u, q);
  auto diag = s.diag();
  for (int i = 0; i < rank; ++i) {
    Int di = i < static_cast<int>(diag.size()) ? diag[i] : Int(0);
    if (sgn(di) == 0) {
      if (sgn(uq[i]) != 0) return false;
    } else if (!mpz_divisible_p(uq[i].get_mpz_t(), di.get_mpz_t())) {
      return false;
    }
  }
  return true;
}

bool in_generated_monoid(const std::vector<IntVec>& gens, const std::vector<IntVec>& ineqs, const IntVec& p) {
  const int rank = static_cast<int>(p.size());
  IntVec c(rank);
  for (auto& y : ineqs)
    for (int k = 0; k < rank; ++k) c[k] += y[k];
  std::vector<IntVec> lineal, pointed;
  std::vector<Int> weight;
  for (auto& g : gens) {
    Int w = dot(c, g);
    if (sgn(w) == 0) {
      lineal.push_back(g);
    } else {
      pointed.push_back(g);
      weight.push_back(w);
    }
  }
  Int budget = dot(c, p);
  if (sgn(budget) < 0) return false;
  long nodes = 0;
  IntVec rest = p;
  std::function<bool(size_t, const Int&)> go = [&](size_t k, const Int& left) -> bool {
    if (++nodes > kMaxSearch) throw Error(ErrorKind::ResourceGuard, "monoid membership search too large");
    if (k == pointed.size()) return sgn(left) == 0 && in_lattice(lineal, rest, rank);
    Int steps = left / weight[k];
    for (Int t = 0; t <= steps; ++t) {
      if (go(k + 1, left - t * weight[k])) return true;
      for (int i = 0; i < rank; ++i) rest[i] -= pointed[k][i];
    }
    for (int i = 0; i < rank; ++i) rest[i] += (steps + 1) * pointed[k][i];
    return false;
  };
  return go(0, budget);
}

// Drops x = y + z with y a kept generator and z a nonzero point of the saturation, both of
// smaller grading than x. Generators of zero grading give way to a basis of the lineality lattice.
void prune_redundant(std::vector<IntVec>& gens, const std::vector<IntVec>& ineqs, const std::vector<IntVec>& eqs) {
  if (gens.empty()) return;
  const int rank = static_cast<int>(gens[0].size());
  IntVec c(rank);
  for (auto& y : ineqs)
    for (int k = 0; k < rank; ++k) c[k] += y[k];
  auto in_saturation = [&](const IntVec& v) {
    for (auto& y : ineqs)
      if (sgn(dot(y, v)) < 0) return false;
    for (auto& e : eqs)
      if (sgn(dot(e, v)) != 0) return false;
    return true;
  };
  std::stable_sort(gens.begin(), gens.end(), [&](const IntVec& a, const IntVec& b) { return dot(c, a) < dot(c, b); });
  // zero grading means the lineality lattice, which is spanned as a group by a lattice basis
  std::vector<IntVec> kept;
  std::vector<IntVec> cut = ineqs;
  cut.insert(cut.end(), eqs.begin(), eqs.end());
  IntMat lin = cut.empty() ? IntMat::identity(rank) : integer_kernel(mat_of_rows(cut, rank));
  for (int j = 0; j < lin.cols(); ++j) {
    IntVec b(rank), nb(rank);
    for (int k = 0; k < rank; ++k) {
      b[k] = lin(k, j);
      nb[k] = -lin(k, j);
    }
    kept.push_back(b);
    kept.push_back(nb);
  }
  for (auto& x : gens) {
    Int wx = dot(c, x);
    if (sgn(wx) == 0) continue;
    bool redundant = false;
    for (auto& y : kept) {
      Int wy = dot(c, y);
      if (sgn(wy) <= 0 || wy >= wx) continue;
      IntVec z(rank);
      for (int k = 0; k < rank; ++k) z[k] = x[k] - y[k];
      if (in_saturation(z)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) kept.push_back(x);
  }
  std::sort(kept.begin(), kept.end());
  gens = std::move(kept);
}

// Greedily drops generators lying in the real cone of the others.
std::vector<IntVec> conic_basis(std::vector<IntVec> gens) {
  for (size_t k = 0; k < gens.size();) {
    const int rank = static_cast<int>(gens[k].size());
    const int v = static_cast<int>(gens.size());
    LPProblem p;
    p.m = RatMat(rank + 1, v);
    for (int i = 0; i < rank; ++i) {
      for (int j = 0; j < v; ++j)
        if (j != static_cast<int>(k)) p.m(i, j) = gens[j][i];
      p.m(i, static_cast<int>(k)) = -gens[k][i];
      p.rel.push_back(Rel::Eq);
    }
    p.m(rank, static_cast<int>(k)) = -1;
    p.rel.push_back(Rel::Lt);
    p.positive.assign(v, true);
    if (lp_feasible(p))
      gens.erase(gens.begin() + static_cast<long>(k));
    else
      ++k;
  }
  return gens;
}

LatticeMonoid saturate_and_faces(const std::vector<IntVec>& gens, int rank) {
  LatticeMonoid m;
  m.rank = rank;
  m.gens = gens;
  check_input(gens, rank);
  cone_description(gens, rank, m.ineqs, m.eqs);

  std::set<IntVec> sat;
  for (auto& g : gens)
    if (std::any_of(g.begin(), g.end(), [](const Int& x) { return sgn(x) != 0; })) sat.insert(g);
  std::vector<IntVec> basis = rows_of(saturate_rows(gens, rank));
  const int d = static_cast<int>(basis.size());
  if (d > 0) {
    // every lattice point of the cone is an integer combination of a basis S of cone generators
    // plus a lattice point of the half-open parallelepiped of S
    const std::vector<IntVec> cb = conic_basis(gens);
    const int k = static_cast<int>(cb.size());
    std::vector<int> pick;
    long visited = 0;
    std::function<void(int)> choose = [&](int start) {
      if (static_cast<int>(pick.size()) == d) {
        if (++visited > kMaxSubsets) throw Error(ErrorKind::ResourceGuard, "too many generator bases");
        std::vector<IntVec> s;
        for (int i : pick) s.push_back(cb[i]);
        if (rank_of_rows(s, rank) == d) parallelepiped_points(s, basis, sat);
        return;
      }
      for (int i = start; i < k; ++i) {
        pick.push_back(i);
        choose(i + 1);
        pick.pop_back();
      }
    };
    choose(0);
  }
  m.sat_gens.assign(sat.begin(), sat.end());
  prune_redundant(m.sat_gens, m.ineqs, m.eqs);
  m.saturated = true;
  for (auto& s : m.sat_gens)
    if (!in_generated_monoid(gens, m.ineqs, s)) {
      m.saturated = false;
      break;
    }

  // faces are the whole cone and all intersections of facets
  std::vector<GenMask> facet;
  for (size_t k = 0; k < m.ineqs.size(); ++k) facet.push_back(closure_of(m, {static_cast<int>(k)}));
  std::set<GenMask> faces{m.all()};
  std::vector<GenMask> frontier{m.all()};
  while (!frontier.empty()) {
    std::vector<GenMask> next;
    for (GenMask f : frontier)
      for (GenMask h : facet)
        if (faces.insert(f & h).second) next.push_back(f & h);
    frontier = std::move(next);
  }
  m.faces.assign(faces.begin(), faces.end());
  std::sort(m.faces.begin(), m.faces.end(), [](GenMask a, GenMask b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  return m;
}

std::vector<int> tight_set(const LatticeMonoid& m, GenMask f) {
  std::vector<int> t;
  for (size_t k = 0; k < m.ineqs.size(); ++k) {
    bool zero = true;
    for (size_t g = 0; g < m.gens.size(); ++g)
      if (((f >> g) & 1) && sgn(dot(m.ineqs[k], m.gens[g])) != 0) zero = false;
    if (zero) t.push_back(static_cast<int>(k));
  }
  return t;
}

void require_face(const LatticeMonoid& m, GenMask f) {
  if (!std::binary_search(m.faces.begin(), m.faces.end(), f, [](GenMask a, GenMask b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
      }))
    throw Error(ErrorKind::NotAFace, mask_str(f) + " is not a face");
}

bool in_face(const LatticeMonoid& m, GenMask f, const IntVec& x) {
  if (!m.contains(x)) return false;
  for (int k : tight_set(m, f))
    if (sgn(dot(m.ineqs[k], x)) != 0) return false;
  return true;
}

GenMask face_of(const LatticeMonoid& m, const IntVec& x) {
  if (!m.contains(x)) throw Error(ErrorKind::NotInMonoid, "point is not in the saturated monoid");
  std::vector<int> t;
  for (size_t k = 0; k < m.ineqs.size(); ++k)
    if (sgn(dot(m.ineqs[k], x)) == 0) t.push_back(static_cast<int>(k));
  return closure_of(m, t);
}

bool relative_interior_contains(const LatticeMonoid& m, GenMask f, const IntVec& x) {
  require_face(m, f);
  return m.contains(x) && face_of(m, x) == f;
}

std::vector<IntVec> hull_basis(const LatticeMonoid& m, GenMask f) {
  require_face(m, f);
  std::vector<IntVec> g;
  for (size_t k = 0; k < m.gens.size(); ++k)
    if ((f >> k) & 1) g.push_back(m.gens[k]);
  return rows_of(saturate_rows(g, m.rank));
}

LatticeMonoid dual_face(const LatticeMonoid& m, GenMask f) {
  require_face(m, f);
  std::vector<IntVec> g = m.gens;
  for (size_t k = 0; k < m.gens.size(); ++k)
    if ((f >> k) & 1) {
      IntVec neg = m.gens[k];
      for (auto& x : neg) x = -x;
      g.push_back(neg);
    }
  return saturate_and_faces(g, m.rank);
}

GenMask face_intersect(const LatticeMonoid& m, GenMask f, GenMask g) {
  require_face(m, f);
  require_face(m, g);
  return f & g;
}

std::vector<int> mask_members(GenMask f) {
  std::vector<int> out;
  for (int k = 0; k < 64; ++k)
    if ((f >> k) & 1) out.push_back(k);
  return out;
}

std::string mask_str(GenMask f) {
  std::string s = "{";
  bool first = true;
  for (int k : mask_members(f)) {
    if (!first) s += ",";
    s += std::to_string(k + 1);
    first = false;
  }
  return s + "}";
}

MhatElt mhat_torus(const LatticeMonoid& m, const RatVec& values) {
  MhatElt x;
  x.face = m.all();
  x.basis = hull_basis(m, x.face);
  if (values.size() != x.basis.size()) throw Error(ErrorKind::RankMismatch, "one value per hull basis vector expected");
  for (auto& v : values)
    if (sgn(v) == 0) throw Error(ErrorKind::ZeroTorusValue, "torus values must be nonzero");
  x.values = values;
  return x;
}

MhatElt mhat_idempotent(const LatticeMonoid& m, GenMask f) {
  MhatElt x;
  x.face = f;
  x.basis = hull_basis(m, f);
  x.values.assign(x.basis.size(), Rat(1));
  return x;
}

namespace {

Rat value_on_hull(const MhatElt& x, const IntVec& v) {
  if (x.basis.empty()) return 1;
  IntVec c = int_coords(x.basis, v);
  Rat r = 1;
  for (size_t k = 0; k < c.size(); ++k) {
    if (sgn(c[k]) == 0) continue;
    if (!c[k].fits_slong_p()) throw Error(ErrorKind::ResourceGuard, "exponent too large");
    long e = c[k].get_si();
    Rat b = e < 0 ? Rat(1) / x.values[k] : x.values[k];
    for (long i = 0; i < (e < 0 ? -e : e); ++i) r *= b;
  }
  return r;
}

}  // namespace

MhatElt mhat_mul(const LatticeMonoid& m, const MhatElt& x, const MhatElt& y) {
  MhatElt z;
  z.face = face_intersect(m, x.face, y.face);
  z.basis = hull_basis(m, z.face);
  for (auto& b : z.basis) z.values.push_back(value_on_hull(x, b) * value_on_hull(y, b));
  return z;
}

std::vector<MhatElt> mhat_idempotents(const LatticeMonoid& m) {
  std::vector<MhatElt> out;
  for (GenMask f : m.faces) out.push_back(mhat_idempotent(m, f));
  return out;
}

Rat mhat_eval(const LatticeMonoid& m, const MhatElt& x, const IntVec& p) {
  if (!m.contains(p)) throw Error(ErrorKind::NotInMonoid, "point is not in the saturated monoid");
  if (!in_face(m, x.face, p)) return 0;
  return value_on_hull(x, p);
}

std::vector<GenMask> closure_order(const LatticeMonoid& m, GenMask f) {
  require_face(m, f);
  std::vector<GenMask> out;
  for (GenMask g : m.faces)
    if ((g & f) == g) out.push_back(g);
  return out;
}

std::vector<GenMask> principal_open(const LatticeMonoid& m, const IntVec& p) {
  GenMask f = face_of(m, p);
  std::vector<GenMask> out;
  for (GenMask g : m.faces)
    if ((g & f) == f) out.push_back(g);
  return out;
}

}  // namespace kmx
