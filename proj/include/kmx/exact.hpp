#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kmx/error.hpp"

namespace kmx {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

/// Dense row-major matrix.
template <class T>
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}
  Mat(std::initializer_list<std::initializer_list<long>> rows);

  int rows() const { return r_; }
  int cols() const { return c_; }
  T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

  static Mat identity(int n);
  Mat transpose() const;
  std::vector<T> row(int i) const;
  std::vector<T> col(int j) const;

  bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }
  bool operator<(const Mat& o) const;

 private:
  int r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using IntMat = Mat<Int>;
using RatMat = Mat<Rat>;

IntMat mul(const IntMat& a, const IntMat& b);
RatMat mul(const RatMat& a, const RatMat& b);
IntVec mul(const IntMat& a, const IntVec& x);
RatVec mul(const RatMat& a, const RatVec& x);
RatMat to_rat(const IntMat& m);
RatVec to_rat(const IntVec& v);
Int dot(const IntVec& a, const IntVec& b);
Rat dot(const RatVec& a, const RatVec& b);
Rat dot(const RatVec& a, const IntVec& b);

/// Denominator-cleared, content-free integer multiple of v (sign kept).
IntVec primitive(const RatVec& v);
IntVec primitive(const IntVec& v);

std::string to_string(const Rat& q);
Rat parse_rat(const std::string& s);

/// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(RatMat& m);
int rank(const RatMat& m);
int rank(const IntMat& m);

struct Solution {
  RatVec x;
  std::vector<RatVec> kernel;
};

/// Particular solution plus null-space basis, or nullopt if inconsistent.
std::optional<Solution> rat_solve(const RatMat& m, const RatVec& b);
std::vector<RatVec> kernel(const RatMat& m);

/// U*M*V = D with D diagonal, d1 | d2 | ..., U and V unimodular.
struct Smith {
  IntMat u, d, v;
  std::vector<Int> diag() const;
};
Smith smith_normal_form(const IntMat& m);

/// Basis (as columns of the result) of the integer kernel of m.
IntMat integer_kernel(const IntMat& m);

/// Smallest saturated sublattice of Z^n containing the given rows (rows of result form a basis).
IntMat saturate_rows(const std::vector<IntVec>& gens, int n);

/// Coordinates of v in a lattice basis (rows), or nullopt if v is not in the rational span.
std::optional<RatVec> coords_in(const std::vector<IntVec>& basis, const IntVec& v);

enum class Rel { Le, Eq, Lt };

struct LPProblem {
  RatMat m;
  std::vector<Rel> rel;
  std::vector<bool> positive;
};

/// Exact feasibility of a homogeneous system M u (rel) 0 with sign flags.
/// Returns an integer certificate or nullopt when infeasible.
std::optional<IntVec> lp_feasible(const LPProblem& p);

bool satisfies(const LPProblem& p, const IntVec& u);

}  // namespace kmx
