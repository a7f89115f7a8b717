#include "kmx/exact.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace kmx {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotGCM: return "NotGCM";
    case ErrorKind::NotSymmetrizable: return "NotSymmetrizable";
    case ErrorKind::NotSpecial: return "NotSpecial";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::InternalInfeasible: return "InternalInfeasible";
    case ErrorKind::ZeroTorusValue: return "ZeroTorusValue";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::NotAFace: return "NotAFace";
    case ErrorKind::NotInMonoid: return "NotInMonoid";
    case ErrorKind::NotDominant: return "NotDominant";
    case ErrorKind::NotFactored: return "NotFactored";
    case ErrorKind::DepthTooLarge: return "DepthTooLarge";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::ResourceGuard: return "ResourceGuard";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

template <class T>
Mat<T>::Mat(std::initializer_list<std::initializer_list<long>> rows) {
  r_ = static_cast<int>(rows.size());
  c_ = r_ ? static_cast<int>(rows.begin()->size()) : 0;
  a_.reserve(static_cast<size_t>(r_) * c_);
  for (auto& row : rows) {
    if (static_cast<int>(row.size()) != c_) throw std::invalid_argument("ragged matrix literal");
    for (long x : row) a_.push_back(T(x));
  }
}

template <class T>
Mat<T> Mat<T>::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

template <class T>
Mat<T> Mat<T>::transpose() const {
  Mat t(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

template <class T>
std::vector<T> Mat<T>::row(int i) const {
  return std::vector<T>(a_.begin() + static_cast<long>(i) * c_, a_.begin() + static_cast<long>(i + 1) * c_);
}

template <class T>
std::vector<T> Mat<T>::col(int j) const {
  std::vector<T> v(r_);
  for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

template <class T>
bool Mat<T>::operator<(const Mat& o) const {
  if (r_ != o.r_) return r_ < o.r_;
  if (c_ != o.c_) return c_ < o.c_;
  return a_ < o.a_;
}

template class Mat<Int>;
template class Mat<Rat>;

template <class T>
static Mat<T> mul_impl(const Mat<T>& a, const Mat<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: dimension mismatch");
  Mat<T> c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <class T>
static std::vector<T> mulv_impl(const Mat<T>& a, const std::vector<T>& x) {
  if (a.cols() != static_cast<int>(x.size())) throw std::invalid_argument("matrix-vector: dimension mismatch");
  std::vector<T> y(a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

IntMat mul(const IntMat& a, const IntMat& b) { return mul_impl(a, b); }
RatMat mul(const RatMat& a, const RatMat& b) { return mul_impl(a, b); }
IntVec mul(const IntMat& a, const IntVec& x) { return mulv_impl(a, x); }
RatVec mul(const RatMat& a, const RatVec& x) { return mulv_impl(a, x); }

RatMat to_rat(const IntMat& m) {
  RatMat r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

RatVec to_rat(const IntVec& v) { return RatVec(v.begin(), v.end()); }

Int dot(const IntVec& a, const IntVec& b) {
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const RatVec& a, const RatVec& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const RatVec& a, const IntVec& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVec primitive(const RatVec& v) {
  Int l = 1;
  for (auto& q : v) l = lcm(l, Int(q.get_den()));
  IntVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = Int(v[i] * l);
  return primitive(r);
}

IntVec primitive(const IntVec& v) {
  Int g = 0;
  for (auto& x : v) g = gcd(g, x);
  if (g == 0) return v;
  IntVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
  return r;
}

std::string to_string(const Rat& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat parse_rat(const std::string& s) {
  Rat q;
  if (s.empty() || q.set_str(s, 10) != 0) throw Error(ErrorKind::Parse, "bad rational: '" + s + "'");
  if (q.get_den() == 0) throw Error(ErrorKind::Parse, "zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

std::vector<int> rref(RatMat& m) {
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (sgn(m(i, c)) != 0) { p = i; break; }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rat inv = 1 / m(r, c);
    for (int j = 0; j < m.cols(); ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      Rat f = m(i, c);
      for (int j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

int rank(const RatMat& m) {
  RatMat t = m;
  return static_cast<int>(rref(t).size());
}

int rank(const IntMat& m) { return rank(to_rat(m)); }

std::vector<RatVec> kernel(const RatMat& m) {
  RatMat t = m;
  auto piv = rref(t);
  std::vector<bool> is_piv(m.cols(), false);
  for (int c : piv) is_piv[c] = true;
  std::vector<RatVec> ker;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    RatVec v(m.cols());
    v[f] = 1;
    for (size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -t(static_cast<int>(k), f);
    ker.push_back(std::move(v));
  }
  return ker;
}

std::optional<Solution> rat_solve(const RatMat& m, const RatVec& b) {
  if (static_cast<int>(b.size()) != m.rows()) throw std::invalid_argument("rat_solve: dimension mismatch");
  RatMat aug(m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
  Solution s;
  s.x.assign(m.cols(), Rat(0));
  for (size_t k = 0; k < piv.size(); ++k) s.x[piv[k]] = aug(static_cast<int>(k), m.cols());
  s.kernel = kernel(m);
  assert(mul(m, s.x) == b);
  return s;
}

std::vector<Int> Smith::diag() const {
  std::vector<Int> r;
  for (int i = 0; i < std::min(d.rows(), d.cols()); ++i) r.push_back(d(i, i));
  return r;
}

namespace {

void swap_rows(IntMat& m, int a, int b) {
  if (a == b) return;
  for (int j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
void swap_cols(IntMat& m, int a, int b) {
  if (a == b) return;
  for (int i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row a += f * row b
void add_row(IntMat& m, int a, int b, const Int& f) {
  for (int j = 0; j < m.cols(); ++j) m(a, j) += f * m(b, j);
}
void add_col(IntMat& m, int a, int b, const Int& f) {
  for (int i = 0; i < m.rows(); ++i) m(i, a) += f * m(i, b);
}

}  // namespace

Smith smith_normal_form(const IntMat& m) {
  const int r = m.rows(), c = m.cols();
  Smith s{IntMat::identity(r), m, IntMat::identity(c)};
  IntMat& d = s.d;
  for (int t = 0; t < std::min(r, c); ++t) {
    // smallest nonzero entry of the remaining block becomes the pivot
    int pi = -1, pj = -1;
    for (int i = t; i < r; ++i)
      for (int j = t; j < c; ++j)
        if (sgn(d(i, j)) != 0 && (pi < 0 || abs(d(i, j)) < abs(d(pi, pj)))) pi = i, pj = j;
    if (pi < 0) break;
    swap_rows(d, t, pi), swap_rows(s.u, t, pi);
    swap_cols(d, t, pj), swap_cols(s.v, t, pj);
    for (;;) {
      bool clean = true;
      for (int i = t + 1; i < r; ++i) {
        if (sgn(d(i, t)) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        add_row(d, i, t, -q), add_row(s.u, i, t, -q);
        if (sgn(d(i, t)) != 0) clean = false;
      }
      for (int j = t + 1; j < c; ++j) {
        if (sgn(d(t, j)) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        add_col(d, j, t, -q), add_col(s.v, j, t, -q);
        if (sgn(d(t, j)) != 0) clean = false;
      }
      if (!clean) {
        int bi = t, bj = t;
        for (int i = t + 1; i < r; ++i)
          if (sgn(d(i, t)) != 0 && abs(d(i, t)) < abs(d(bi, bj))) bi = i, bj = t;
        for (int j = t + 1; j < c; ++j)
          if (sgn(d(t, j)) != 0 && abs(d(t, j)) < abs(d(bi, bj))) bi = t, bj = j;
        swap_rows(d, t, bi), swap_rows(s.u, t, bi);
        swap_cols(d, t, bj), swap_cols(s.v, t, bj);
        continue;
      }
      int bad = -1;
      for (int i = t + 1; i < r && bad < 0; ++i)
        for (int j = t + 1; j < c; ++j)
          if (d(i, j) % d(t, t) != 0) { bad = i; break; }
      if (bad < 0) break;
      add_row(d, t, bad, 1), add_row(s.u, t, bad, 1);
    }
    if (sgn(d(t, t)) < 0) {
      for (int j = 0; j < c; ++j) d(t, j) = -d(t, j);
      for (int j = 0; j < r; ++j) s.u(t, j) = -s.u(t, j);
    }
  }
  assert(mul(mul(s.u, m), s.v) == s.d);
  return s;
}

IntMat integer_kernel(const IntMat& m) {
  Smith s = smith_normal_form(m);
  int rk = 0;
  for (auto& x : s.diag())
    if (sgn(x) != 0) ++rk;
  IntMat k(m.cols(), m.cols() - rk);
  for (int j = rk; j < m.cols(); ++j)
    for (int i = 0; i < m.cols(); ++i) k(i, j - rk) = s.v(i, j);
  return k;
}

namespace {

// Row Hermite normal form: echelon, positive pivots, entries above pivots reduced mod the pivot.
IntMat hnf_rows(IntMat m) {
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    for (;;) {
      int p = -1;
      for (int i = r; i < m.rows(); ++i)
        if (sgn(m(i, c)) != 0 && (p < 0 || abs(m(i, c)) < abs(m(p, c)))) p = i;
      if (p < 0) break;
      swap_rows(m, r, p);
      bool done = true;
      for (int i = r + 1; i < m.rows(); ++i) {
        if (sgn(m(i, c)) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), m(i, c).get_mpz_t(), m(r, c).get_mpz_t());
        add_row(m, i, r, -q);
        if (sgn(m(i, c)) != 0) done = false;
      }
      if (done) break;
    }
    if (sgn(m(r, c)) == 0) continue;
    if (sgn(m(r, c)) < 0)
      for (int j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
    for (int i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), m(i, c).get_mpz_t(), m(r, c).get_mpz_t());
      add_row(m, i, r, -q);
    }
    ++r;
  }
  IntMat out(r, m.cols());
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

}  // namespace

IntMat saturate_rows(const std::vector<IntVec>& gens, int n) {
  IntMat g(static_cast<int>(gens.size()), n);
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < n; ++j) g(i, j) = gens[i][j];
  if (g.rows() == 0) return IntMat(0, n);
  // orthogonal complement, then its orthogonal complement inside Z^n
  IntMat orth = integer_kernel(g).transpose();
  IntMat basis;
  if (orth.rows() == 0) {
    basis = IntMat::identity(n);
  } else {
    basis = integer_kernel(orth).transpose();
  }
  return hnf_rows(basis);
}

std::optional<RatVec> coords_in(const std::vector<IntVec>& basis, const IntVec& v) {
  const int k = static_cast<int>(basis.size());
  const int n = static_cast<int>(v.size());
  RatMat m(n, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = basis[j][i];
  auto s = rat_solve(m, to_rat(v));
  if (!s) return std::nullopt;
  return s->x;
}

// ---------------------------------------------------------------------------
// Exact simplex (phase I only, Bland's rule).

namespace {

// Feasibility of { x >= 0 : A x (<= or =) b }. Returns a feasible x or nullopt.
std::optional<RatVec> phase_one(const RatMat& a, const std::vector<bool>& is_eq, const RatVec& b) {
  const int m = a.rows(), n = a.cols();
  int nslack = 0;
  for (int i = 0; i < m; ++i)
    if (!is_eq[i]) ++nslack;
  const int ncols = n + nslack + m;  // structural, slack, artificial
  RatMat t(m + 1, ncols + 1);        // last row: objective, last column: rhs
  std::vector<int> basis(m);
  int s = n;
  for (int i = 0; i < m; ++i) {
    Rat sign = sgn(b[i]) < 0 ? -1 : 1;
    for (int j = 0; j < n; ++j) t(i, j) = sign * a(i, j);
    if (!is_eq[i]) t(i, s++) = sign;
    t(i, n + nslack + i) = 1;
    t(i, ncols) = sign * b[i];
    basis[i] = n + nslack + i;
  }
  // objective: minimize sum of artificials; reduced costs row = -sum of rows
  for (int j = 0; j <= ncols; ++j) {
    Rat acc = 0;
    for (int i = 0; i < m; ++i) acc += t(i, j);
    t(m, j) = -acc;
  }
  for (int j = n + nslack; j < ncols; ++j) t(m, j) = 0;
  for (;;) {
    int enter = -1;
    for (int j = 0; j < ncols; ++j)
      if (sgn(t(m, j)) < 0) { enter = j; break; }
    if (enter < 0) break;
    int leave = -1;
    Rat best;
    for (int i = 0; i < m; ++i) {
      if (sgn(t(i, enter)) <= 0) continue;
      Rat ratio = t(i, ncols) / t(i, enter);
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) break;  // unbounded direction cannot occur for a bounded-below phase I objective
    Rat inv = 1 / t(leave, enter);
    for (int j = 0; j <= ncols; ++j) t(leave, j) *= inv;
    for (int i = 0; i <= m; ++i) {
      if (i == leave || sgn(t(i, enter)) == 0) continue;
      Rat f = t(i, enter);
      for (int j = 0; j <= ncols; ++j) t(i, j) -= f * t(leave, j);
    }
    basis[leave] = enter;
  }
  if (sgn(t(m, ncols)) != 0) return std::nullopt;
  RatVec x(n);
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = t(i, ncols);
  return x;
}

}  // namespace

bool satisfies(const LPProblem& p, const IntVec& u) {
  for (int j = 0; j < p.m.cols(); ++j)
    if (p.positive[j] && sgn(u[j]) <= 0) return false;
  for (int i = 0; i < p.m.rows(); ++i) {
    Rat v = dot(p.m.row(i), u);
    switch (p.rel[i]) {
      case Rel::Le: if (sgn(v) > 0) return false; break;
      case Rel::Eq: if (sgn(v) != 0) return false; break;
      case Rel::Lt: if (sgn(v) >= 0) return false; break;
    }
  }
  return true;
}

std::optional<IntVec> lp_feasible(const LPProblem& p) {
  const int k = p.m.cols();
  if (k == 0) throw std::invalid_argument("lp_feasible: no variables");
  if (static_cast<int>(p.rel.size()) != p.m.rows() || static_cast<int>(p.positive.size()) != k)
    throw std::invalid_argument("lp_feasible: malformed problem");
  // The system is homogeneous, so strict relations may be scaled to a unit margin:
  // positive u_j becomes 1 + x_j, free u_j becomes x_j+ - x_j-, and "< 0" becomes "<= -1".
  std::vector<int> col_of(k), neg_col(k, -1);
  int n = 0;
  for (int j = 0; j < k; ++j) {
    col_of[j] = n++;
    if (!p.positive[j]) neg_col[j] = n++;
  }
  RatMat a(p.m.rows(), n);
  RatVec b(p.m.rows());
  std::vector<bool> is_eq(p.m.rows());
  for (int i = 0; i < p.m.rows(); ++i) {
    Rat offset = 0;
    for (int j = 0; j < k; ++j) {
      a(i, col_of[j]) = p.m(i, j);
      if (neg_col[j] >= 0) a(i, neg_col[j]) = -p.m(i, j);
      if (p.positive[j]) offset += p.m(i, j);
    }
    b[i] = (p.rel[i] == Rel::Lt ? Rat(-1) : Rat(0)) - offset;
    is_eq[i] = p.rel[i] == Rel::Eq;
  }
  auto x = phase_one(a, is_eq, b);
  if (!x) return std::nullopt;
  RatVec u(k);
  for (int j = 0; j < k; ++j) {
    u[j] = (*x)[col_of[j]] + (p.positive[j] ? Rat(1) : Rat(0));
    if (neg_col[j] >= 0) u[j] -= (*x)[neg_col[j]];
  }
  IntVec cert = primitive(u);
  if (!satisfies(p, cert)) throw Error(ErrorKind::InternalInfeasible, "simplex certificate failed re-substitution");
  return cert;
}

}  // namespace kmx
