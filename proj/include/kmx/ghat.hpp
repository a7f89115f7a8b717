#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>

#include "kmx/wmon.hpp"

namespace kmx {

struct Guards {
  int max_rank = 3;
  int max_depth = 8;
};
Guards& guards();
/// Default truncation depth; KMX_DEPTH overrides it.
int default_depth();

/// Root multiplicities on Q+ up to a height, keyed by coefficient vectors.
std::map<IntVec, Int> root_multiplicities(const RootDatum& d, int height);

struct WeightMult {
  IntVec k;    // lambda = Lambda - sum k_i alpha_i
  IntVec lam;  // Lambda-coordinates
  Int mult;
};
/// Freudenthal recursion; weights ordered by height then k.
std::vector<WeightMult> weights_and_mults(const RootDatum& d, const IntVec& top, int depth);

/// Letters of words in the completed group.
struct Letter {
  enum Kind { Xplus, Xminus, Torus, NSimple, Idem } kind = Xplus;
  int i = 0;
  Rat t = 0;
  IntVec h;
  Face face;
};
using GhatWord = std::vector<Letter>;

GhatWord parse_ghat_word(const RootDatum& d, const std::string& s);
std::string ghat_word_str(const GhatWord& w);
Face parse_face_spec(const RootDatum& d, const std::string& s);  // "w=3 1;theta=1,2"
std::string face_spec_str(const Face& f);
/// N(i) written out in root-group letters.
GhatWord nsimple_letters(int i);
/// n_w as N-letters along the canonical word, and its inverse.
GhatWord weyl_lift_word(const WeylElt& w);
GhatWord weyl_lift_inverse_word(const RootDatum& d, const WeylElt& w);
GhatWord concat(std::initializer_list<GhatWord> parts);

/// Depth-truncated slice of the irreducible module L(Lambda) with a basis of lowering monomials.
class ModuleSlice {
 public:
  ModuleSlice(Datum d, IntVec top, int depth);

  struct Weight {
    IntVec k, lam;
    int height = 0;
    int offset = 0;
    std::vector<std::vector<int>> words;  // f_{w0} f_{w1} ... v
    RatMat gram, gram_inv;
    std::vector<RatMat> e;  // e_i: this -> k - e_i (empty if no target)
    std::vector<RatMat> f;  // f_i: this -> k + e_i (empty if no target or beyond depth)
    int dim() const { return static_cast<int>(words.size()); }
  };

  const RootDatum& datum() const { return *d_; }
  const Datum& datum_ptr() const { return d_; }
  const IntVec& top() const { return top_; }
  int depth() const { return depth_; }
  int size() const { return size_; }
  const std::vector<Weight>& weights() const { return ws_; }
  int find(const IntVec& k) const;
  /// Weight index and local index of a global basis position.
  std::pair<int, int> locate(int pos) const;
  std::string basis_label(int pos) const;

  RatVec unit(int pos) const;
  RatVec apply_e(int i, const RatVec& v) const;
  RatVec apply_f(int i, const RatVec& v) const;
  RatVec apply(const Letter& g, const RatVec& v) const;
  /// Right-to-left application; DepthError if any step leaves the slice.
  RatVec apply(const GhatWord& w, const RatVec& v) const;
  Rat pairing(const RatVec& a, const RatVec& b) const;
  /// Whether the alpha_i string through the weight fits in the slice when lowering.
  int lowering_need(int wi, int i) const;

 private:
  void build_level(int h);
  Datum d_;
  IntVec top_;
  int depth_;
  int size_ = 0;
  std::vector<Weight> ws_;
  std::map<IntVec, int> index_;
};

using SlicePtr = std::shared_ptr<const ModuleSlice>;
SlicePtr build_basis(const Datum& d, const IntVec& top, int depth);

/// Operator matrix on basis vectors of height <= input_depth (chosen maximal if negative).
struct OperatorMatrix {
  int input_depth = 0;
  int inputs = 0;
  RatMat m;  // size x inputs
};
OperatorMatrix evaluate_word(const ModuleSlice& s, const GhatWord& w, int input_depth = -1);
Rat matrix_coefficient(const ModuleSlice& s, const RatVec& v, const RatVec& u, const GhatWord& w);
Rat theta(const ModuleSlice& s, const GhatWord& w);

struct Probe {
  IntVec top;
  int depth = 0;
};
struct ProbeResult {
  bool equal = true;
  std::string witness;  // empty when equal on probes
  int compared = 0;     // number of matrix columns compared
};
/// Agreement on every probe is evidence, not a proof of equality in the monoid.
ProbeResult probe_equal(const Datum& d, const GhatWord& a, const GhatWord& b, const std::vector<Probe>& probes);
ProbeResult probe_equal(const std::vector<SlicePtr>& slices, const GhatWord& a, const GhatWord& b);

/// Factored word u- n u+ mapped to its Weyl-monoid cell.
WmonElt bruhat_cell(const RootDatum& d, const GhatWord& w);
/// Product of the middle letters as an element of N-hat.
NhatElt nhat_of_letters(const RootDatum& d, const GhatWord& w);

}  // namespace kmx
