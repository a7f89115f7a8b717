#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "kmx/exact.hpp"

namespace kmx {

/// Index subsets of {0..n-1} as bitmasks; user-facing text is 1-based.
using Subset = std::uint32_t;

inline bool has(Subset s, int i) { return (s >> i) & 1u; }
inline Subset bit(int i) { return Subset(1) << i; }
inline Subset full_set(int n) { return n >= 32 ? ~Subset(0) : (Subset(1) << n) - 1; }
std::vector<int> members(Subset s);
Subset make_subset(const std::vector<int>& zero_based);
std::string subset_str(Subset s);  // "{1,2}"

/// Validated generalized Cartan matrix with A = D B, D = diag(eps), B symmetric.
struct Gcm {
  int n = 0;
  IntMat a;
  std::vector<Rat> eps;
  RatMat b;
};

Gcm validate_and_symmetrize(const IntMat& a);

enum class CompType { FIN, AFF, IND };
const char* type_name(CompType t);

struct Component {
  Subset set = 0;
  CompType type = CompType::FIN;
  IntVec cert;  // u > 0 on the component witnessing the type
};

struct Classification {
  std::vector<Component> comps;
  Subset fin = 0;  // union of finite components
  Subset inf = 0;  // union of affine and indefinite components
};

/// Connected components of the zero pattern of A restricted to s, ordered by least element.
std::vector<Subset> components(const Gcm& g, Subset s);
CompType component_type(const Gcm& g, Subset comp, IntVec* cert = nullptr);
Classification classify(const Gcm& g, Subset s);
bool is_special(const Gcm& g, Subset s);
std::vector<Subset> special_sets(const Gcm& g);

/// Optimal realization: H = Z^N with h_i the standard basis, P the dual lattice with
/// Lambda_i the dual basis. Weights are vectors of values on h_1..h_N; coweights are
/// coordinate vectors in h_1..h_N.
class RootDatum {
 public:
  explicit RootDatum(const Gcm& g);
  static std::shared_ptr<const RootDatum> make(const IntMat& a);

  const Gcm& gcm() const { return g_; }
  int n() const { return g_.n; }
  int rank_a() const { return l_; }
  int dim() const { return dim_; }  // 2n - l
  const IntVec& alpha(int i) const { return alpha_[i]; }
  IntVec coroot(int i) const;
  IntVec fundamental(int i) const;
  /// alpha_i(h) for a coweight h.
  Int alpha_on(int i, const IntVec& h) const { return dot(alpha_[i], h); }
  Rat alpha_on(int i, const RatVec& h) const { return dot(h, alpha_[i]); }
  /// Integral coweight strictly positive on every simple root; used for root signs.
  const IntVec& positive_coweight() const { return hpos_; }
  /// Normalized invariant form on the root lattice, (alpha_i|alpha_j) = b_ij.
  Rat form_roots(int i, int j) const { return g_.b(i, j); }
  /// (lambda|alpha_i) = lambda(h_i) / eps_i.
  Rat form_weight_root(const RatVec& lam, int i) const { return lam[i] / g_.eps[i]; }
  /// Form on h: (h_i|h) = alpha_i(h) eps_i, zero on the complement.
  Rat form_coweights(const RatVec& x, const RatVec& y) const;

  Subset perp(Subset theta) const;
  const std::vector<Subset>& specials() const { return specials_; }
  bool special(Subset s) const;
  /// Exposing coweight for a special set; coefficients on h_i, cached.
  const IntVec& exposing(Subset theta) const;
  const Classification& classification(Subset s) const;

  /// Saturation of the coroot lattice certified by the Smith form of the coroot matrix.
  bool coroots_saturated() const;

 private:
  Gcm g_;
  int l_ = 0, dim_ = 0;
  std::vector<IntVec> alpha_;
  IntVec hpos_;
  std::vector<Subset> specials_;
  mutable std::mutex mu_;
  mutable std::map<Subset, IntVec> expose_cache_;
  mutable std::map<Subset, Classification> class_cache_;
};

using Datum = std::shared_ptr<const RootDatum>;

/// Canonical exposing coefficients computed from scratch (no cache).
IntVec exposing_functional(const Gcm& g, Subset theta);

}  // namespace kmx
