#include "kmx/weyl.hpp"

#include <algorithm>
#include <sstream>

namespace kmx {

std::vector<int> parse_word(const std::string& s, int n) {
  std::istringstream in(s);
  std::vector<int> w;
  std::string tok;
  while (in >> tok) {
    int k = 0;
    try {
      size_t used = 0;
      k = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "bad word letter '" + tok + "'");
    }
    if (k < 1 || k > n) throw Error(ErrorKind::Parse, "word letter " + tok + " outside 1.." + std::to_string(n));
    w.push_back(k - 1);
  }
  return w;
}

std::string word_str(const std::vector<int>& w) {
  std::string s;
  for (size_t k = 0; k < w.size(); ++k) {
    if (k) s += " ";
    s += std::to_string(w[k] + 1);
  }
  return s;
}

namespace {

// m <- S_i m, where S_i lambda = lambda - lambda_i alpha_i
void left_reflect(const RootDatum& d, IntMat& m, int i) {
  const IntVec& a = d.alpha(i);
  for (int c = 0; c < m.cols(); ++c) {
    Int li = m(i, c);
    if (sgn(li) == 0) continue;
    for (int r = 0; r < m.rows(); ++r) m(r, c) -= li * a[r];
  }
}

// m <- m S_i; column i of S_i is e_i - alpha_i, other columns are unit vectors
void right_reflect(const RootDatum& d, IntMat& m, int i) {
  const IntVec& a = d.alpha(i);
  for (int r = 0; r < m.rows(); ++r) {
    Int s = 0;
    for (int k = 0; k < m.cols(); ++k) s += m(r, k) * a[k];
    m(r, i) -= s;
  }
}

// sign of (x alpha_i)(hpos)
int root_sign(const RootDatum& d, const IntMat& x, int i) {
  const IntVec& a = d.alpha(i);
  const IntVec& h = d.positive_coweight();
  Int s = 0;
  for (int r = 0; r < x.rows(); ++r) {
    Int v = 0;
    for (int k = 0; k < x.cols(); ++k) v += x(r, k) * a[k];
    s += v * h[r];
  }
  return sgn(s);
}

}  // namespace

WeylElt weyl_finish(const RootDatum& d, IntMat m, IntMat minv) {
  WeylElt w;
  IntMat x = m, xinv = minv;
  for (;;) {
    int pick = -1;
    for (int i = 0; i < d.n(); ++i)
      if (root_sign(d, xinv, i) < 0) { pick = i; break; }
    if (pick < 0) break;
    w.word.push_back(pick);
    left_reflect(d, x, pick);
    right_reflect(d, xinv, pick);
  }
  if (x != IntMat::identity(d.dim())) throw Error(ErrorKind::InternalInfeasible, "descent stripping did not reach identity");
  w.m = std::move(m);
  w.minv = std::move(minv);
  return w;
}

WeylElt weyl_identity(const RootDatum& d) {
  WeylElt w;
  w.m = w.minv = IntMat::identity(d.dim());
  return w;
}

WeylElt weyl_simple(const RootDatum& d, int i) {
  WeylElt w = weyl_identity(d);
  left_reflect(d, w.m, i);
  w.minv = w.m;
  w.word = {i};
  return w;
}

WeylElt weyl_from_word(const RootDatum& d, const std::vector<int>& word) {
  IntMat m = IntMat::identity(d.dim()), minv = m;
  for (int i : word) {
    if (i < 0 || i >= d.n()) throw Error(ErrorKind::Parse, "simple index out of range");
    right_reflect(d, m, i);
    left_reflect(d, minv, i);
  }
  return weyl_finish(d, std::move(m), std::move(minv));
}

WeylElt weyl_mul(const RootDatum& d, const WeylElt& a, const WeylElt& b) {
  if (a.is_identity()) return b;
  if (b.is_identity()) return a;
  return weyl_finish(d, mul(a.m, b.m), mul(b.minv, a.minv));
}

WeylElt weyl_inverse(const RootDatum& d, const WeylElt& a) {
  WeylElt w;
  w.m = a.minv;
  w.minv = a.m;
  w.word.assign(a.word.rbegin(), a.word.rend());
  // the reversed word is reduced, but may not be lexicographically least
  return weyl_finish(d, w.m, w.minv);
}

RatVec act_weight(const WeylElt& w, const RatVec& lam) { return mul(to_rat(w.m), lam); }
IntVec act_weight(const WeylElt& w, const IntVec& lam) { return mul(w.m, lam); }
RatVec act_coweight(const WeylElt& w, const RatVec& h) { return mul(to_rat(w.minv.transpose()), h); }
IntVec act_coweight(const WeylElt& w, const IntVec& h) { return mul(w.minv.transpose(), h); }

IntVec reflect_weight(const RootDatum& d, int i, const IntVec& lam) {
  IntVec r = lam;
  for (size_t k = 0; k < r.size(); ++k) r[k] -= lam[i] * d.alpha(i)[k];
  return r;
}

RatVec reflect_weight(const RootDatum& d, int i, const RatVec& lam) {
  RatVec r = lam;
  for (size_t k = 0; k < r.size(); ++k) r[k] -= lam[i] * d.alpha(i)[k];
  return r;
}

IntVec reflect_coweight(const RootDatum& d, int i, const IntVec& h) {
  IntVec r = h;
  r[i] -= d.alpha_on(i, h);
  return r;
}

bool right_descent(const RootDatum& d, const WeylElt& w, int i) { return root_sign(d, w.m, i) < 0; }
bool left_descent(const RootDatum& d, const WeylElt& w, int i) { return root_sign(d, w.minv, i) < 0; }

Subset right_descents(const RootDatum& d, const WeylElt& w) {
  Subset s = 0;
  for (int i = 0; i < d.n(); ++i)
    if (right_descent(d, w, i)) s |= bit(i);
  return s;
}

Subset left_descents(const RootDatum& d, const WeylElt& w) {
  Subset s = 0;
  for (int i = 0; i < d.n(); ++i)
    if (left_descent(d, w, i)) s |= bit(i);
  return s;
}

bool positive_root(const RootDatum& d, const IntVec& beta) { return sgn(dot(beta, d.positive_coweight())) > 0; }

std::pair<WeylElt, WeylElt> right_coset(const RootDatum& d, const WeylElt& w, Subset j) {
  IntMat m = w.m, minv = w.minv;
  std::vector<int> stripped;
  for (;;) {
    int pick = -1;
    for (int i : members(j))
      if (root_sign(d, m, i) < 0) { pick = i; break; }
    if (pick < 0) break;
    stripped.push_back(pick);
    right_reflect(d, m, pick);
    left_reflect(d, minv, pick);
  }
  std::reverse(stripped.begin(), stripped.end());
  return {weyl_finish(d, std::move(m), std::move(minv)), weyl_from_word(d, stripped)};
}

std::pair<WeylElt, WeylElt> left_coset(const RootDatum& d, const WeylElt& w, Subset k) {
  IntMat m = w.m, minv = w.minv;
  std::vector<int> stripped;
  for (;;) {
    int pick = -1;
    for (int i : members(k))
      if (root_sign(d, minv, i) < 0) { pick = i; break; }
    if (pick < 0) break;
    stripped.push_back(pick);
    left_reflect(d, m, pick);
    right_reflect(d, minv, pick);
  }
  return {weyl_from_word(d, stripped), weyl_finish(d, std::move(m), std::move(minv))};
}

WeylElt double_coset(const RootDatum& d, const WeylElt& w, Subset k, Subset j) {
  IntMat m = w.m, minv = w.minv;
  for (;;) {
    int side = 0, pick = -1;
    for (int i : members(k))
      if (root_sign(d, minv, i) < 0) { side = 1, pick = i; break; }
    if (pick < 0)
      for (int i : members(j))
        if (root_sign(d, m, i) < 0) { side = 2, pick = i; break; }
    if (pick < 0) break;
    if (side == 1) {
      left_reflect(d, m, pick);
      right_reflect(d, minv, pick);
    } else {
      right_reflect(d, m, pick);
      left_reflect(d, minv, pick);
    }
  }
  return weyl_finish(d, std::move(m), std::move(minv));
}

bool in_parabolic_product(const RootDatum& d, const WeylElt& w, Subset k, Subset j) {
  return double_coset(d, w, k, j).is_identity();
}

bool in_parabolic(const RootDatum&, const WeylElt& w, Subset j) {
  for (int i : w.word)
    if (!has(j, i)) return false;
  return true;
}

DominantResult dominant_rep(const RootDatum& d, const RatVec& lam, int cap) {
  DominantResult r;
  RatVec mu = lam;
  std::vector<int> word;
  std::vector<std::pair<Subset, const IntVec*>> fns;
  for (Subset s : d.specials())
    if (s) fns.emplace_back(s, &d.exposing(s));
  for (int step = 0; step <= cap; ++step) {
    for (auto& [theta, c] : fns) {
      Rat v = dot(mu, *c);
      bool bad = sgn(v) < 0;
      int witness = -1;
      if (!bad && sgn(v) == 0)
        for (int i : members(theta))
          if (sgn(mu[i]) != 0) { bad = true, witness = i; break; }
      if (!bad) continue;
      r.kind = DominantResult::NotInTitsCone;
      std::string u = word.empty() ? "e" : "w=" + word_str(word);
      if (witness < 0)
        r.certificate = "lambda(u c) < 0 for the exposing coweight c of " + subset_str(theta) + ", u: " + u;
      else
        r.certificate = "lambda(u c) = 0 for the exposing coweight c of " + subset_str(theta) + ", u: " + u +
                        ", but (u^-1 lambda)(h_" + std::to_string(witness + 1) + ") != 0";
      return r;
    }
    int pick = -1;
    for (int i = 0; i < d.n(); ++i)
      if (sgn(mu[i]) < 0) { pick = i; break; }
    if (pick < 0) {
      r.kind = DominantResult::Dominant;
      r.dominant = mu;
      r.w = weyl_from_word(d, word);
      for (int i = 0; i < d.n(); ++i)
        if (sgn(mu[i]) == 0) r.facet |= bit(i);
      return r;
    }
    mu = reflect_weight(d, pick, mu);
    word.push_back(pick);
  }
  r.kind = DominantResult::Undecided;
  r.bound = cap;
  return r;
}

AntidominantResult antidominant_coweight(const RootDatum& d, const IntVec& h) {
  Int rho = 0;
  for (auto& x : h) rho += x;
  if (sgn(rho) < 0) throw Error(ErrorKind::PreconditionViolated, "rho(d) < 0");
  IntVec cur = h;
  std::vector<int> word;
  Int steps = 0;
  for (;;) {
    int pick = -1;
    for (int i = 0; i < d.n(); ++i)
      if (sgn(d.alpha_on(i, cur)) > 0) { pick = i; break; }
    if (pick < 0) break;
    if (++steps > rho) throw Error(ErrorKind::PreconditionViolated, "step count exceeded rho(d)");
    cur = reflect_coweight(d, pick, cur);
    word.push_back(pick);
  }
  for (size_t k = static_cast<size_t>(d.n()); k < cur.size(); ++k)
    if (sgn(cur[k]) != 0) throw Error(ErrorKind::PreconditionViolated, "antidominant result leaves the coroot lattice");
  for (int i = 0; i < d.n(); ++i)
    if (sgn(cur[i]) < 0) throw Error(ErrorKind::PreconditionViolated, "antidominant result has a negative coefficient");
  std::reverse(word.begin(), word.end());
  return {cur, weyl_from_word(d, word)};
}

}  // namespace kmx
