#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kmx/cartan.hpp"

namespace kmx {

/// Weyl group element: integer matrix on weights (Lambda-coordinates), its inverse,
/// and the lexicographically least reduced word (0-based letters).
struct WeylElt {
  IntMat m, minv;
  std::vector<int> word;

  int length() const { return static_cast<int>(word.size()); }
  bool is_identity() const { return word.empty(); }
  bool operator==(const WeylElt& o) const { return m == o.m; }
  bool operator!=(const WeylElt& o) const { return m != o.m; }
  bool operator<(const WeylElt& o) const { return m < o.m; }
};

std::vector<int> parse_word(const std::string& s, int n);
std::string word_str(const std::vector<int>& w);  // "3 1", 1-based

WeylElt weyl_identity(const RootDatum& d);
WeylElt weyl_simple(const RootDatum& d, int i);
WeylElt weyl_from_word(const RootDatum& d, const std::vector<int>& word);
WeylElt weyl_mul(const RootDatum& d, const WeylElt& a, const WeylElt& b);
WeylElt weyl_inverse(const RootDatum& d, const WeylElt& a);
/// Rebuilds the canonical word from the matrices.
WeylElt weyl_finish(const RootDatum& d, IntMat m, IntMat minv);

RatVec act_weight(const WeylElt& w, const RatVec& lam);
IntVec act_weight(const WeylElt& w, const IntVec& lam);
RatVec act_coweight(const WeylElt& w, const RatVec& h);
IntVec act_coweight(const WeylElt& w, const IntVec& h);
IntVec reflect_weight(const RootDatum& d, int i, const IntVec& lam);
RatVec reflect_weight(const RootDatum& d, int i, const RatVec& lam);
IntVec reflect_coweight(const RootDatum& d, int i, const IntVec& h);

bool right_descent(const RootDatum& d, const WeylElt& w, int i);
bool left_descent(const RootDatum& d, const WeylElt& w, int i);
Subset right_descents(const RootDatum& d, const WeylElt& w);
Subset left_descents(const RootDatum& d, const WeylElt& w);
/// Sign of a real root given in Lambda-coordinates.
bool positive_root(const RootDatum& d, const IntVec& beta);

/// w = rep * u with u in W_J and rep without right descents in J.
std::pair<WeylElt, WeylElt> right_coset(const RootDatum& d, const WeylElt& w, Subset j);
/// w = u * rep with u in W_K and rep without left descents in K.
std::pair<WeylElt, WeylElt> left_coset(const RootDatum& d, const WeylElt& w, Subset k);
/// Minimal element of W_K w W_J.
WeylElt double_coset(const RootDatum& d, const WeylElt& w, Subset k, Subset j);
bool in_parabolic_product(const RootDatum& d, const WeylElt& w, Subset k, Subset j);
bool in_parabolic(const RootDatum& d, const WeylElt& w, Subset j);

struct DominantResult {
  enum Kind { Dominant, NotInTitsCone, Undecided } kind = Dominant;
  RatVec dominant;      // lambda+ when Dominant
  WeylElt w;            // lambda = w lambda+
  Subset facet = 0;     // {i : lambda+(h_i) = 0}
  std::string certificate;
  int bound = 0;
};

DominantResult dominant_rep(const RootDatum& d, const RatVec& lam, int cap = 20000);

struct AntidominantResult {
  IntVec coweight;  // v . d
  WeylElt v;
};

/// Requires d to be a nonnegative combination of W-images of exposing coweights.
AntidominantResult antidominant_coweight(const RootDatum& d, const IntVec& h);

}  // namespace kmx
