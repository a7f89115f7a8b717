#include "kmx/cartan.hpp"

#include <algorithm>
#include <cmath>

namespace kmx {

std::vector<int> members(Subset s) {
  std::vector<int> r;
  for (int i = 0; i < 32; ++i)
    if (has(s, i)) r.push_back(i);
  return r;
}

Subset make_subset(const std::vector<int>& zero_based) {
  Subset s = 0;
  for (int i : zero_based) {
    if (i < 0 || i >= 32) throw Error(ErrorKind::Parse, "index out of range");
    s |= bit(i);
  }
  return s;
}

std::string subset_str(Subset s) {
  std::string r = "{";
  bool first = true;
  for (int i : members(s)) {
    if (!first) r += ",";
    r += std::to_string(i + 1);
    first = false;
  }
  return r + "}";
}

const char* type_name(CompType t) {
  switch (t) {
    case CompType::FIN: return "FIN";
    case CompType::AFF: return "AFF";
    case CompType::IND: return "IND";
  }
  return "?";
}

Gcm validate_and_symmetrize(const IntMat& a) {
  const int n = a.rows();
  if (n == 0 || a.cols() != n) throw Error(ErrorKind::NotGCM, "matrix must be square and nonempty");
  if (n > 16) throw Error(ErrorKind::ResourceGuard, "size " + std::to_string(n) + " exceeds the guard n <= 16");
  for (int i = 0; i < n; ++i) {
    if (a(i, i) != 2) throw Error(ErrorKind::NotGCM, "diagonal entry a_" + std::to_string(i + 1) + std::to_string(i + 1) + " != 2");
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (sgn(a(i, j)) > 0)
        throw Error(ErrorKind::NotGCM, "positive off-diagonal entry at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      if ((sgn(a(i, j)) == 0) != (sgn(a(j, i)) == 0))
        throw Error(ErrorKind::NotGCM, "zero pattern not symmetric at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
  }
  Gcm g;
  g.n = n;
  g.a = a;
  g.eps.assign(n, Rat(0));
  // a_ij / eps_i = a_ji / eps_j along edges; each component rooted at its least index
  for (int root = 0; root < n; ++root) {
    if (sgn(g.eps[root]) != 0) continue;
    g.eps[root] = 1;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j) {
        if (j == i || sgn(a(i, j)) == 0 || sgn(g.eps[j]) != 0) continue;
        g.eps[j] = g.eps[i] * Rat(a(j, i)) / Rat(a(i, j));
        stack.push_back(j);
      }
    }
  }
  g.b = RatMat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.b(i, j) = Rat(a(i, j)) / g.eps[i];
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (g.b(i, j) != g.b(j, i)) throw Error(ErrorKind::NotSymmetrizable, "cycle condition fails; no positive symmetrizer");
  return g;
}

std::vector<Subset> components(const Gcm& g, Subset s) {
  std::vector<Subset> out;
  Subset seen = 0;
  for (int r : members(s)) {
    if (has(seen, r)) continue;
    Subset comp = bit(r);
    std::vector<int> stack{r};
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (int j : members(s)) {
        if (has(comp, j) || sgn(g.a(i, j)) == 0) continue;
        comp |= bit(j);
        stack.push_back(j);
      }
    }
    seen |= comp;
    out.push_back(comp);
  }
  return out;
}

namespace {

LPProblem component_lp(const Gcm& g, Subset comp, Rel rel, bool negate) {
  auto idx = members(comp);
  const int k = static_cast<int>(idx.size());
  LPProblem p;
  p.m = RatMat(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) p.m(r, c) = negate ? Rat(-g.a(idx[r], idx[c])) : Rat(g.a(idx[r], idx[c]));
  p.rel.assign(k, rel);
  p.positive.assign(k, true);
  return p;
}

}  // namespace

CompType component_type(const Gcm& g, Subset comp, IntVec* cert) {
  // FIN: A u > 0; AFF: A u = 0; IND: A u < 0; all with u > 0
  struct Case { CompType t; Rel rel; bool neg; };
  const Case cases[] = {{CompType::FIN, Rel::Lt, true}, {CompType::AFF, Rel::Eq, false}, {CompType::IND, Rel::Lt, false}};
  int hits = 0;
  CompType found = CompType::FIN;
  for (auto& c : cases) {
    auto u = lp_feasible(component_lp(g, comp, c.rel, c.neg));
    if (!u) continue;
    if (hits == 0) {
      found = c.t;
      if (cert) *cert = *u;
    }
    ++hits;
  }
  if (hits != 1)
    throw Error(ErrorKind::InternalInfeasible, "type trichotomy violated on component " + subset_str(comp));
  return found;
}

Classification classify(const Gcm& g, Subset s) {
  Classification c;
  for (Subset comp : components(g, s)) {
    Component k;
    k.set = comp;
    k.type = component_type(g, comp, &k.cert);
    (k.type == CompType::FIN ? c.fin : c.inf) |= comp;
    c.comps.push_back(std::move(k));
  }
  return c;
}

bool is_special(const Gcm& g, Subset s) { return classify(g, s).fin == 0; }

std::vector<Subset> special_sets(const Gcm& g) {
  if (g.n > 16) throw Error(ErrorKind::ResourceGuard, "special-set enumeration guarded to n <= 16");
  std::map<Subset, CompType> memo;
  std::vector<Subset> out;
  for (Subset s = 0; s <= full_set(g.n); ++s) {
    bool ok = true;
    for (Subset comp : components(g, s)) {
      auto it = memo.find(comp);
      if (it == memo.end()) it = memo.emplace(comp, component_type(g, comp)).first;
      if (it->second == CompType::FIN) { ok = false; break; }
    }
    if (ok) out.push_back(s);
    if (s == full_set(g.n)) break;
  }
  std::sort(out.begin(), out.end(), [](Subset x, Subset y) {
    int px = __builtin_popcount(x), py = __builtin_popcount(y);
    return px != py ? px < py : x < y;
  });
  return out;
}

namespace {

// alpha_j(c) <= 0 for all j in the component, with c = sum m_i h_i
bool exposes(const Gcm& g, const std::vector<int>& idx, const std::vector<long>& m) {
  for (int j : idx) {
    long s = 0;
    for (size_t r = 0; r < idx.size(); ++r) s += m[r] * g.a(idx[r], j).get_si();
    if (s > 0) return false;
  }
  return true;
}

IntVec component_exposing(const Gcm& g, Subset comp, CompType t) {
  auto idx = members(comp);
  const int k = static_cast<int>(idx.size());
  RatMat at(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) at(r, c) = g.a(idx[c], idx[r]);
  if (t == CompType::AFF) {
    auto ker = kernel(at);
    if (ker.size() != 1) throw Error(ErrorKind::InternalInfeasible, "affine component without a one-dimensional null space");
    IntVec v = primitive(ker[0]);
    if (sgn(v[0]) < 0)
      for (auto& x : v) x = -x;
    for (auto& x : v)
      if (sgn(x) <= 0) throw Error(ErrorKind::InternalInfeasible, "affine null vector not positive");
    return v;
  }
  // indefinite: exact certificate first, then the lexicographically least vector in a doubling box
  LPProblem p;
  p.m = at;
  p.rel.assign(k, Rel::Le);
  p.positive.assign(k, true);
  auto cert = lp_feasible(p);
  if (!cert) throw Error(ErrorKind::InternalInfeasible, "no exposing certificate on " + subset_str(comp));
  Int top = 0;
  for (auto& x : *cert) top = std::max(top, x);
  const double budget = 1 << 20;
  for (long bound = 1;; bound *= 2) {
    if (std::pow(double(bound), k) > budget) break;
    std::vector<long> m(k, 1);
    for (;;) {
      if (exposes(g, idx, m)) {
        IntVec out(k);
        for (int r = 0; r < k; ++r) out[r] = m[r];
        return out;
      }
      int pos = k - 1;
      while (pos >= 0 && m[pos] == bound) m[pos--] = 1;
      if (pos < 0) break;
      ++m[pos];
    }
    if (Int(bound) >= top) break;
  }
  return *cert;
}

}  // namespace

IntVec exposing_functional(const Gcm& g, Subset theta) {
  IntVec c(g.n);
  for (auto& comp : classify(g, theta).comps) {
    if (comp.type == CompType::FIN)
      throw Error(ErrorKind::NotSpecial, subset_str(theta) + " is not special");
    IntVec v = component_exposing(g, comp.set, comp.type);
    auto idx = members(comp.set);
    for (size_t r = 0; r < idx.size(); ++r) c[idx[r]] = v[r];
  }
  return c;
}

// ---------------------------------------------------------------------------

RootDatum::RootDatum(const Gcm& g) : g_(g) {
  const int n = g.n;
  l_ = rank(g.a);
  dim_ = 2 * n - l_;
  // columns h_1..h_n carry a_ji; the added columns are unit vectors chosen greedily
  RatMat r(n, dim_);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = g.a(j, i);
  int col = n;
  for (int k = 0; k < n && col < dim_; ++k) {
    RatMat trial = r;
    trial(k, col) = 1;
    RatMat probe(n, col + 1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= col; ++j) probe(i, j) = trial(i, j);
    RatMat cur(n, col);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < col; ++j) cur(i, j) = r(i, j);
    if (rank(probe) > rank(cur)) {
      r = trial;
      ++col;
    }
  }
  if (rank(r) != n) throw Error(ErrorKind::InternalInfeasible, "simple roots not independent");
  alpha_.assign(n, IntVec(dim_));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < dim_; ++j) alpha_[i][j] = Int(r(i, j));
  auto s = rat_solve(r, RatVec(n, Rat(1)));
  hpos_ = primitive(s->x);
  for (int i = 0; i < n; ++i)
    if (sgn(dot(alpha_[i], hpos_)) <= 0) throw Error(ErrorKind::InternalInfeasible, "positive coweight failed");
  specials_ = special_sets(g_);
}

std::shared_ptr<const RootDatum> RootDatum::make(const IntMat& a) {
  return std::make_shared<const RootDatum>(validate_and_symmetrize(a));
}

IntVec RootDatum::coroot(int i) const {
  IntVec h(dim_);
  h[i] = 1;
  return h;
}

IntVec RootDatum::fundamental(int i) const {
  IntVec l(dim_);
  l[i] = 1;
  return l;
}

Rat RootDatum::form_coweights(const RatVec& x, const RatVec& y) const {
  const int n = g_.n;
  Rat s = 0;
  for (int i = 0; i < n; ++i) s += x[i] * g_.eps[i] * alpha_on(i, y);
  for (int k = n; k < dim_; ++k)
    for (int i = 0; i < n; ++i) s += x[k] * y[i] * g_.eps[i] * Rat(alpha_[i][k]);
  return s;
}

Subset RootDatum::perp(Subset theta) const {
  Subset p = 0;
  for (int i = 0; i < g_.n; ++i) {
    bool ok = true;
    for (int j : members(theta))
      if (sgn(g_.a(i, j)) != 0) { ok = false; break; }
    if (ok) p |= bit(i);
  }
  return p;
}

bool RootDatum::special(Subset s) const {
  return std::binary_search(specials_.begin(), specials_.end(), s, [](Subset x, Subset y) {
    int px = __builtin_popcount(x), py = __builtin_popcount(y);
    return px != py ? px < py : x < y;
  });
}

const IntVec& RootDatum::exposing(Subset theta) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = expose_cache_.find(theta);
  if (it != expose_cache_.end()) return it->second;
  if (!special(theta)) throw Error(ErrorKind::NotSpecial, subset_str(theta) + " is not special");
  IntVec c = exposing_functional(g_, theta);
  c.resize(dim_);
  return expose_cache_.emplace(theta, std::move(c)).first->second;
}

const Classification& RootDatum::classification(Subset s) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = class_cache_.find(s);
  if (it != class_cache_.end()) return it->second;
  return class_cache_.emplace(s, classify(g_, s)).first->second;
}

bool RootDatum::coroots_saturated() const {
  IntMat c(g_.n, dim_);
  for (int i = 0; i < g_.n; ++i) c(i, i) = 1;
  for (auto& d : smith_normal_form(c).diag())
    if (d != 1) return false;
  return true;
}

}  // namespace kmx
