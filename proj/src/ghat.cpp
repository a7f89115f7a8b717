#include "kmx/ghat.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>

namespace kmx {

Guards& guards() {
  static Guards g;
  return g;
}

int default_depth() {
  if (const char* env = std::getenv("KMX_DEPTH")) {
    try {
      int v = std::stoi(env);
      if (v >= 0) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::Parse, std::string("KMX_DEPTH is not a nonnegative integer: ") + env);
  }
  return 4;
}

namespace {

// All k in N^n with sum k = h, lexicographically increasing.
std::vector<IntVec> compositions(int n, int h) {
  std::vector<IntVec> out;
  IntVec cur(n);
  std::function<void(int, int)> go = [&](int i, int left) {
    if (i == n - 1) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[i] = v;
      go(i + 1, left - v);
    }
  };
  if (n > 0) go(0, h);
  return out;
}

int height_of(const IntVec& k) {
  long h = 0;
  for (auto& x : k) h += x.get_si();
  return static_cast<int>(h);
}

Rat form_q(const RootDatum& d, const IntVec& a, const IntVec& b) {
  Rat s = 0;
  for (int i = 0; i < d.n(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (int j = 0; j < d.n(); ++j)
      if (sgn(b[j]) != 0) s += Rat(a[i] * b[j]) * d.form_roots(i, j);
  }
  return s;
}

// (Lambda|beta) for beta in Q+ given by coefficients.
Rat form_top(const RootDatum& d, const IntVec& top, const IntVec& k) {
  Rat s = 0;
  for (int i = 0; i < d.n(); ++i)
    if (sgn(k[i]) != 0) s += Rat(k[i]) * Rat(top[i]) / d.gcm().eps[i];
  return s;
}

IntVec sub(const IntVec& a, const IntVec& b) {
  IntVec c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

bool nonneg(const IntVec& a) {
  return std::all_of(a.begin(), a.end(), [](const Int& x) { return sgn(x) >= 0; });
}

bool is_zero(const IntVec& a) {
  return std::all_of(a.begin(), a.end(), [](const Int& x) { return sgn(x) == 0; });
}

void check_guards(const RootDatum& d, int depth) {
  if (d.n() > guards().max_rank) throw Error(ErrorKind::ResourceGuard, "rank above the module guard");
  if (depth < 0) throw Error(ErrorKind::PreconditionViolated, "depth must be nonnegative");
  if (depth > guards().max_depth)
    throw Error(ErrorKind::DepthTooLarge, "depth " + std::to_string(depth) + " above the guard " +
                                              std::to_string(guards().max_depth));
}

void check_dominant(const RootDatum& d, const IntVec& top) {
  if (static_cast<int>(top.size()) != d.dim()) throw Error(ErrorKind::RankMismatch, "highest weight has the wrong length");
  for (int i = 0; i < d.n(); ++i)
    if (sgn(top[i]) < 0) throw Error(ErrorKind::NotDominant, "highest weight is not dominant");
}

}  // namespace

std::map<IntVec, Int> root_multiplicities(const RootDatum& d, int height) {
  const int n = d.n();
  std::map<IntVec, Rat> c;
  std::map<IntVec, Int> mult;
  // sum over m >= 2 with beta/m in Q+ of mult(beta/m)/m
  auto divisor_part = [&](const IntVec& k) {
    Rat s = 0;
    int h = height_of(k);
    for (int m = 2; m <= h; ++m) {
      IntVec q(n);
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) {
        if (!mpz_divisible_ui_p(k[i].get_mpz_t(), m)) ok = false;
        else q[i] = k[i] / m;
      }
      if (!ok) continue;
      auto it = mult.find(q);
      if (it != mult.end()) s += Rat(it->second) / m;
    }
    return s;
  };
  for (int h = 1; h <= height; ++h) {
    for (auto& k : compositions(n, h)) {
      if (h == 1) {
        c[k] = 1;
        mult[k] = 1;
        continue;
      }
      Rat coef = form_q(d, k, k);
      for (int i = 0; i < n; ++i) coef -= Rat(k[i]) * d.form_roots(i, i);
      Rat rhs = 0;
      for (auto& [k1, c1] : c) {
        if (height_of(k1) >= h) continue;
        IntVec k2 = sub(k, k1);
        if (!nonneg(k2) || is_zero(k2)) continue;
        auto it = c.find(k2);
        if (it == c.end()) continue;
        rhs += form_q(d, k1, k2) * c1 * it->second;
      }
      Rat part = divisor_part(k);
      Rat ck;
      Int m = 0;
      if (sgn(coef) == 0) {
        // only non-simple non-roots have a vanishing coefficient
        ck = part;
      } else {
        ck = rhs / coef;
        Rat mr = ck - part;
        if (mr.get_den() != 1 || sgn(mr) < 0) throw Error(ErrorKind::InternalInfeasible, "non-integral root multiplicity");
        m = mr.get_num();
      }
      if (sgn(ck) != 0) c[k] = ck;
      if (sgn(m) != 0) mult[k] = m;
    }
  }
  return mult;
}

std::vector<WeightMult> weights_and_mults(const RootDatum& d, const IntVec& top, int depth) {
  check_dominant(d, top);
  check_guards(d, depth);
  const int n = d.n();
  auto roots = root_multiplicities(d, depth);
  std::map<IntVec, Int> mult;
  std::vector<WeightMult> out;
  auto lam_of = [&](const IntVec& k) {
    IntVec lam = top;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < d.dim(); ++j) lam[j] -= k[i] * d.alpha(i)[j];
    return lam;
  };
  IntVec zero(n);
  mult[zero] = 1;
  out.push_back({zero, top, 1});
  for (int h = 1; h <= depth; ++h) {
    for (auto& k : compositions(n, h)) {
      Rat coef = 2 * form_top(d, top, k) - form_q(d, k, k);
      for (int i = 0; i < n; ++i) coef += Rat(k[i]) * d.form_roots(i, i);  // 2(rho|beta)
      Rat rhs = 0;
      for (auto& [a, ma] : roots) {
        IntVec rest = sub(k, a);
        for (int j = 1; nonneg(rest); ++j) {
          // lambda + j alpha has coefficients rest
          auto it = mult.find(rest);
          if (it != mult.end()) {
            Rat pair = form_top(d, top, a) - form_q(d, rest, a);
            rhs += Rat(ma) * pair * Rat(it->second);
          }
          rest = sub(rest, a);
        }
      }
      rhs *= 2;
      if (sgn(coef) == 0) {
        if (sgn(rhs) != 0) throw Error(ErrorKind::InternalInfeasible, "Freudenthal recursion is inconsistent");
        continue;
      }
      Rat m = rhs / coef;
      if (m.get_den() != 1 || sgn(m) < 0) throw Error(ErrorKind::InternalInfeasible, "non-integral weight multiplicity");
      if (sgn(m) == 0) continue;
      mult[k] = m.get_num();
      out.push_back({k, lam_of(k), m.get_num()});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

GhatWord nsimple_letters(int i) {
  Letter p{Letter::Xplus, i, Rat(1), {}, {}};
  Letter m{Letter::Xminus, i, Rat(-1), {}, {}};
  return {p, m, p};
}

GhatWord weyl_lift_word(const WeylElt& w) {
  GhatWord out;
  for (int i : w.word) out.push_back(Letter{Letter::NSimple, i, 0, {}, {}});
  return out;
}

GhatWord weyl_lift_inverse_word(const RootDatum& d, const WeylElt& w) {
  // n_w^-1 = n_ik^-1 ... n_i1^-1 with n_i^-1 = n_i t_{h_i}(-1)
  GhatWord out;
  for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) {
    IntVec h(d.dim());
    h[*it] = 1;
    out.push_back(Letter{Letter::NSimple, *it, 0, {}, {}});
    out.push_back(Letter{Letter::Torus, *it, Rat(-1), h, {}});
  }
  return out;
}

GhatWord concat(std::initializer_list<GhatWord> parts) {
  GhatWord out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Rows of g (already integral after scaling) chosen greedily in order, by fraction-free elimination.
std::vector<int> independent_rows(const RatMat& g) {
  const int r = g.rows(), c = g.cols();
  std::vector<IntVec> echelon;
  std::vector<int> pivots, chosen;
  for (int i = 0; i < r; ++i) {
    IntVec row = primitive(g.row(i));
    for (size_t s = 0; s < echelon.size(); ++s) {
      int p = pivots[s];
      if (sgn(row[p]) == 0) continue;
      Int a = echelon[s][p], b = row[p];
      for (int j = 0; j < c; ++j) row[j] = a * row[j] - b * echelon[s][j];
      row = primitive(row);
    }
    int p = -1;
    for (int j = 0; j < c; ++j)
      if (sgn(row[j]) != 0) {
        p = j;
        break;
      }
    if (p < 0) continue;
    echelon.push_back(row);
    pivots.push_back(p);
    chosen.push_back(i);
  }
  return chosen;
}

RatMat inverse(const RatMat& m) {
  const int n = m.rows();
  RatMat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (static_cast<int>(piv.size()) < n || (n > 0 && piv[n - 1] >= n))
    throw Error(ErrorKind::InternalInfeasible, "singular Gram matrix");
  RatMat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

RatVec column(const RatMat& m, int j) { return m.col(j); }

Rat quad(const RatVec& x, const RatMat& g, const RatVec& y) {
  Rat s = 0;
  for (int i = 0; i < g.rows(); ++i) {
    if (sgn(x[i]) == 0) continue;
    Rat t = 0;
    for (int j = 0; j < g.cols(); ++j) t += g(i, j) * y[j];
    s += x[i] * t;
  }
  return s;
}

IntVec unit_k(int n, int i) {
  IntVec e(n);
  e[i] = 1;
  return e;
}

}  // namespace

ModuleSlice::ModuleSlice(Datum d, IntVec top, int depth) : d_(std::move(d)), top_(std::move(top)), depth_(depth) {
  check_dominant(*d_, top_);
  check_guards(*d_, depth_);
  const int n = d_->n();
  Weight w0;
  w0.k = IntVec(n);
  w0.lam = top_;
  w0.height = 0;
  w0.words = {{}};
  w0.gram = RatMat(1, 1);
  w0.gram(0, 0) = 1;
  w0.gram_inv = w0.gram;
  w0.e.resize(n);
  w0.f.resize(n);
  index_[w0.k] = 0;
  ws_.push_back(std::move(w0));
  for (int h = 1; h <= depth_; ++h) build_level(h);
  int off = 0;
  for (auto& w : ws_) {
    w.offset = off;
    off += w.dim();
  }
  size_ = off;
}

void ModuleSlice::build_level(int h) {
  const RootDatum& d = *d_;
  const int n = d.n();
  for (auto& k : compositions(n, h)) {
    struct Cand {
      int i, src, b;
    };
    std::vector<Cand> cands;
    for (int i = 0; i < n; ++i) {
      if (sgn(k[i]) == 0) continue;
      int src = find(sub(k, unit_k(n, i)));
      if (src < 0) continue;
      for (int b = 0; b < ws_[src].dim(); ++b) cands.push_back({i, src, b});
    }
    if (cands.empty()) continue;
    const int nc = static_cast<int>(cands.size());
    // <f_i b | f_j b'> = <e_j b | e_i b'> + delta_ij wt(b')(h_i) <b|b'>
    RatMat g(nc, nc);
    for (int x = 0; x < nc; ++x) {
      for (int y = x; y < nc; ++y) {
        const Cand& c1 = cands[x];
        const Cand& c2 = cands[y];
        Rat v = 0;
        IntVec kk = sub(sub(k, unit_k(n, c1.i)), unit_k(n, c2.i));
        if (nonneg(kk)) {
          int mid = find(kk);
          if (mid >= 0) {
            const RatMat& ej = ws_[c1.src].e[c2.i];
            const RatMat& ei = ws_[c2.src].e[c1.i];
            v += quad(column(ej, c1.b), ws_[mid].gram, column(ei, c2.b));
          }
        }
        if (c1.i == c2.i) v += Rat(ws_[c2.src].lam[c1.i]) * ws_[c1.src].gram(c1.b, c2.b);
        g(x, y) = v;
        g(y, x) = v;
      }
    }
    std::vector<int> sel = independent_rows(g);
    if (sel.empty()) continue;
    const int dim = static_cast<int>(sel.size());
    Weight w;
    w.k = k;
    w.lam = top_;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < d.dim(); ++j) w.lam[j] -= k[i] * d.alpha(i)[j];
    w.height = h;
    w.gram = RatMat(dim, dim);
    for (int a = 0; a < dim; ++a) {
      const Cand& c = cands[sel[a]];
      std::vector<int> word{c.i};
      auto& rest = ws_[c.src].words[c.b];
      word.insert(word.end(), rest.begin(), rest.end());
      w.words.push_back(std::move(word));
      for (int b = 0; b < dim; ++b) w.gram(a, b) = g(sel[a], sel[b]);
    }
    w.gram_inv = inverse(w.gram);
    w.e.resize(n);
    w.f.resize(n);
    const int self = static_cast<int>(ws_.size());
    // f_i on the sources: coordinates of each candidate in the selected basis
    for (int i = 0; i < n; ++i) {
      if (sgn(k[i]) == 0) continue;
      int src = find(sub(k, unit_k(n, i)));
      if (src < 0) continue;
      RatMat fm(dim, ws_[src].dim());
      for (int x = 0; x < nc; ++x) {
        if (cands[x].i != i || cands[x].src != src) continue;
        for (int a = 0; a < dim; ++a) {
          Rat s = 0;
          for (int b = 0; b < dim; ++b) s += w.gram_inv(a, b) * g(sel[b], x);
          fm(a, cands[x].b) = s;
        }
      }
      ws_[src].f[i] = std::move(fm);
    }
    // e_i on the new basis: e_i f_j b = f_j e_i b + delta_ij wt(b)(h_i) b
    for (int i = 0; i < n; ++i) {
      if (sgn(k[i]) == 0) continue;
      int tgt = find(sub(k, unit_k(n, i)));
      if (tgt < 0) continue;
      RatMat em(ws_[tgt].dim(), dim);
      for (int a = 0; a < dim; ++a) {
        const Cand& c = cands[sel[a]];
        IntVec kk = sub(sub(k, unit_k(n, c.i)), unit_k(n, i));
        if (nonneg(kk)) {
          int mid = find(kk);
          if (mid >= 0) {
            RatVec eb = column(ws_[c.src].e[i], c.b);
            const RatMat& fj = ws_[mid].f[c.i];
            for (int r = 0; r < em.rows(); ++r)
              for (int t = 0; t < fj.cols(); ++t) em(r, a) += fj(r, t) * eb[t];
          }
        }
        if (c.i == i) em(c.b, a) += Rat(ws_[c.src].lam[i]);
      }
      w.e[i] = std::move(em);
    }
    index_[k] = self;
    ws_.push_back(std::move(w));
  }
}

int ModuleSlice::find(const IntVec& k) const {
  auto it = index_.find(k);
  return it == index_.end() ? -1 : it->second;
}

std::pair<int, int> ModuleSlice::locate(int pos) const {
  for (int w = 0; w < static_cast<int>(ws_.size()); ++w)
    if (pos < ws_[w].offset + ws_[w].dim()) return {w, pos - ws_[w].offset};
  throw Error(ErrorKind::PreconditionViolated, "basis position out of range");
}

std::string ModuleSlice::basis_label(int pos) const {
  auto [w, j] = locate(pos);
  std::string s;
  for (int i : ws_[w].words[j]) s += "f" + std::to_string(i + 1) + " ";
  return s + "v";
}

RatVec ModuleSlice::unit(int pos) const {
  RatVec v(size_);
  v[pos] = 1;
  return v;
}

namespace {

bool block_zero(const RatVec& v, int off, int dim) {
  for (int j = 0; j < dim; ++j)
    if (sgn(v[off + j]) != 0) return false;
  return true;
}

}  // namespace

RatVec ModuleSlice::apply_e(int i, const RatVec& v) const {
  RatVec out(size_);
  const int n = d_->n();
  for (auto& w : ws_) {
    if (sgn(w.k[i]) == 0 || block_zero(v, w.offset, w.dim())) continue;
    int t = find(sub(w.k, unit_k(n, i)));
    if (t < 0) continue;
    const Weight& tw = ws_[t];
    for (int r = 0; r < tw.dim(); ++r)
      for (int c = 0; c < w.dim(); ++c) out[tw.offset + r] += w.e[i](r, c) * v[w.offset + c];
  }
  return out;
}

RatVec ModuleSlice::apply_f(int i, const RatVec& v) const {
  RatVec out(size_);
  for (int wi = 0; wi < static_cast<int>(ws_.size()); ++wi) {
    const Weight& w = ws_[wi];
    if (block_zero(v, w.offset, w.dim())) continue;
    if (w.height + 1 > depth_) {
      int need = lowering_need(wi, i);
      if (need == w.height) continue;  // bottom of the alpha_i string
      throw DepthError(need, "lowering leaves the slice; depth " + std::to_string(need) + " needed");
    }
    IntVec k2 = w.k;
    k2[i] += 1;
    int t = find(k2);
    if (t < 0) continue;
    const Weight& tw = ws_[t];
    for (int r = 0; r < tw.dim(); ++r)
      for (int c = 0; c < w.dim(); ++c) out[tw.offset + r] += w.f[i](r, c) * v[w.offset + c];
  }
  return out;
}

int ModuleSlice::lowering_need(int wi, int i) const {
  const Weight& w = ws_[wi];
  const int n = d_->n();
  int q = 0;
  IntVec k = w.k;
  while (sgn(k[i]) > 0) {
    k = sub(k, unit_k(n, i));
    if (find(k) < 0) break;
    ++q;
  }
  long p = w.lam[i].get_si() + q;
  return w.height + static_cast<int>(p);
}

RatVec ModuleSlice::apply(const Letter& g, const RatVec& v) const {
  switch (g.kind) {
    case Letter::Xplus: {
      RatVec acc = v, term = v;
      for (int m = 1;; ++m) {
        term = apply_e(g.i, term);
        if (std::all_of(term.begin(), term.end(), [](const Rat& x) { return sgn(x) == 0; })) break;
        for (auto& x : term) x *= g.t / m;
        for (int j = 0; j < size_; ++j) acc[j] += term[j];
      }
      return acc;
    }
    case Letter::Xminus: {
      int need = 0;
      for (int wi = 0; wi < static_cast<int>(ws_.size()); ++wi)
        if (!block_zero(v, ws_[wi].offset, ws_[wi].dim())) need = std::max(need, lowering_need(wi, g.i));
      if (need > depth_)
        throw DepthError(need, "lowering string needs depth " + std::to_string(need) + " but the slice has " +
                                   std::to_string(depth_));
      RatVec acc = v, term = v;
      for (int m = 1;; ++m) {
        term = apply_f(g.i, term);
        if (std::all_of(term.begin(), term.end(), [](const Rat& x) { return sgn(x) == 0; })) break;
        for (auto& x : term) x *= g.t / m;
        for (int j = 0; j < size_; ++j) acc[j] += term[j];
      }
      return acc;
    }
    case Letter::Torus: {
      if (sgn(g.t) == 0) throw Error(ErrorKind::ZeroTorusValue, "t_h(0) is not a torus element");
      RatVec out = v;
      for (auto& w : ws_) {
        if (block_zero(v, w.offset, w.dim())) continue;
        Int e = dot(w.lam, g.h);
        Rat s = 1;
        Rat base = sgn(e) < 0 ? Rat(1) / g.t : g.t;
        for (Int c = 0; c < abs(e); ++c) s *= base;
        for (int j = 0; j < w.dim(); ++j) out[w.offset + j] *= s;
      }
      return out;
    }
    case Letter::NSimple: {
      return apply(nsimple_letters(g.i), v);
    }
    case Letter::Idem: {
      RatVec out = v;
      for (auto& w : ws_)
        if (!contains_point(*d_, g.face, to_rat(w.lam)))
          for (int j = 0; j < w.dim(); ++j) out[w.offset + j] = 0;
      return out;
    }
  }
  return v;
}

RatVec ModuleSlice::apply(const GhatWord& w, const RatVec& v) const {
  RatVec out = v;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out = apply(*it, out);
  return out;
}

Rat ModuleSlice::pairing(const RatVec& a, const RatVec& b) const {
  Rat s = 0;
  for (auto& w : ws_) {
    if (block_zero(a, w.offset, w.dim()) || block_zero(b, w.offset, w.dim())) continue;
    for (int i = 0; i < w.dim(); ++i)
      for (int j = 0; j < w.dim(); ++j) s += a[w.offset + i] * w.gram(i, j) * b[w.offset + j];
  }
  return s;
}

SlicePtr build_basis(const Datum& d, const IntVec& top, int depth) {
  return std::make_shared<const ModuleSlice>(d, top, depth);
}

// ---------------------------------------------------------------------------

OperatorMatrix evaluate_word(const ModuleSlice& s, const GhatWord& w, int input_depth) {
  std::vector<RatVec> cols;
  int reached = -1;
  const int top_h = input_depth >= 0 ? std::min(input_depth, s.depth()) : s.depth();
  for (int h = 0; h <= top_h; ++h) {
    std::vector<RatVec> level;
    try {
      for (auto& wt : s.weights())
        if (wt.height == h)
          for (int j = 0; j < wt.dim(); ++j) level.push_back(s.apply(w, s.unit(wt.offset + j)));
    } catch (const DepthError&) {
      if (input_depth >= 0 || h == 0) throw;
      break;
    }
    cols.insert(cols.end(), level.begin(), level.end());
    reached = h;
  }
  OperatorMatrix om;
  om.input_depth = reached;
  om.inputs = static_cast<int>(cols.size());
  om.m = RatMat(s.size(), om.inputs);
  for (int j = 0; j < om.inputs; ++j)
    for (int i = 0; i < s.size(); ++i) om.m(i, j) = cols[j][i];
  return om;
}

Rat matrix_coefficient(const ModuleSlice& s, const RatVec& v, const RatVec& u, const GhatWord& w) {
  return s.pairing(v, s.apply(w, u));
}

Rat theta(const ModuleSlice& s, const GhatWord& w) {
  RatVec top = s.unit(0);
  return matrix_coefficient(s, top, top, w) / s.pairing(top, top);
}

ProbeResult probe_equal(const std::vector<SlicePtr>& slices, const GhatWord& a, const GhatWord& b) {
  ProbeResult r;
  for (auto& s : slices) {
    OperatorMatrix ma = evaluate_word(*s, a);
    OperatorMatrix mb = evaluate_word(*s, b);
    int cols = std::min(ma.inputs, mb.inputs);
    for (int j = 0; j < cols; ++j) {
      ++r.compared;
      for (int i = 0; i < s->size(); ++i) {
        if (ma.m(i, j) == mb.m(i, j)) continue;
        std::ostringstream os;
        os << "Lambda=[";
        for (size_t k = 0; k < s->top().size(); ++k) os << (k ? "," : "") << s->top()[k].get_str();
        os << "] depth=" << s->depth() << " coefficient of " << s->basis_label(i) << " in w(" << s->basis_label(j)
           << "): " << to_string(ma.m(i, j)) << " vs " << to_string(mb.m(i, j));
        r.equal = false;
        r.witness = os.str();
        return r;
      }
    }
  }
  return r;
}

ProbeResult probe_equal(const Datum& d, const GhatWord& a, const GhatWord& b, const std::vector<Probe>& probes) {
  std::vector<SlicePtr> slices;
  for (auto& p : probes) slices.push_back(build_basis(d, p.top, p.depth));
  return probe_equal(slices, a, b);
}

// ---------------------------------------------------------------------------

namespace {

bool is_standard_face(const Letter& l) { return l.kind == Letter::Idem && l.face.w.is_identity(); }

// Absorption next to standard face idempotents: x e(R) = p(x) e(R) and e(R) y = e(R) p*(y).
GhatWord absorb(const RootDatum& d, GhatWord w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t k = 0; k + 1 < w.size(); ++k) {
      const Letter& a = w[k];
      const Letter& b = w[k + 1];
      if (a.kind == Letter::Xplus && is_standard_face(b)) {
        if (has(d.perp(b.face.theta), a.i)) std::swap(w[k], w[k + 1]);
        else w.erase(w.begin() + static_cast<long>(k));
        changed = true;
        break;
      }
      if (is_standard_face(a) && b.kind == Letter::Xminus) {
        if (has(d.perp(a.face.theta), b.i)) std::swap(w[k], w[k + 1]);
        else w.erase(w.begin() + static_cast<long>(k + 1));
        changed = true;
        break;
      }
    }
  }
  return w;
}

}  // namespace

NhatElt nhat_of_letters(const RootDatum& d, const GhatWord& w) {
  NhatElt acc = nhat_from_weyl(d, weyl_identity(d));
  for (auto& l : w) {
    NhatElt x;
    switch (l.kind) {
      case Letter::NSimple: x = nhat_from_weyl(d, weyl_simple(d, l.i)); break;
      case Letter::Torus: x = nhat_from_torus(d, torus_coweight(d, l.h, l.t)); break;
      case Letter::Idem: x = nhat_idempotent(d, l.face); break;
      default: throw Error(ErrorKind::NotFactored, "root-group letter inside the normalizer part");
    }
    acc = nhat_mul(d, acc, x);
  }
  return acc;
}

WmonElt bruhat_cell(const RootDatum& d, const GhatWord& word) {
  GhatWord w = absorb(d, word);
  size_t k = 0;
  while (k < w.size() && w[k].kind == Letter::Xminus) ++k;
  size_t mid = k;
  while (k < w.size() && (w[k].kind == Letter::NSimple || w[k].kind == Letter::Torus || w[k].kind == Letter::Idem)) ++k;
  GhatWord middle(w.begin() + static_cast<long>(mid), w.begin() + static_cast<long>(k));
  while (k < w.size() && w[k].kind == Letter::Xplus) ++k;
  if (k != w.size())
    throw Error(ErrorKind::NotFactored, "word is not of the form (lowering)(normalizer)(raising): " + ghat_word_str(word));
  return nhat_to_wmon(nhat_of_letters(d, middle));
}

}  // namespace kmx
