#pragma once

// Brute-force reference computations used only by the tests. None of these share code
// paths with the library beyond the number types.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "kmx/exact.hpp"

namespace oracle {

using kmx::Int;
using kmx::IntMat;
using kmx::IntVec;
using kmx::Rat;
using kmx::RatMat;
using kmx::RatVec;

/// Cofactor expansion along the first row.
inline Rat det(const std::vector<std::vector<Rat>>& m) {
  const size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Rat total = 0;
  for (size_t c = 0; c < n; ++c) {
    if (sgn(m[0][c]) == 0) continue;
    std::vector<std::vector<Rat>> minor;
    for (size_t r = 1; r < n; ++r) {
      std::vector<Rat> row;
      for (size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    Rat term = m[0][c] * det(minor);
    total += (c % 2 == 0) ? term : Rat(-term);
  }
  return total;
}

/// Minor on the given rows and columns.
template <class M>
Rat minor(const M& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  std::vector<std::vector<Rat>> sub;
  for (int r : rows) {
    std::vector<Rat> row;
    for (int c : cols) row.push_back(Rat(m(r, c)));
    sub.push_back(row);
  }
  return det(sub);
}

inline void subsets_of_size(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> pick;
  std::function<void(int)> go = [&](int start) {
    if (static_cast<int>(pick.size()) == k) {
      f(pick);
      return;
    }
    for (int i = start; i < n; ++i) {
      pick.push_back(i);
      go(i + 1);
      pick.pop_back();
    }
  };
  go(0);
}

/// Smith invariants from determinantal divisors: d_k = D_k / D_{k-1}, D_k = gcd of k x k minors.
inline std::vector<Int> smith_invariants(const IntMat& m) {
  std::vector<Int> big{Int(1)};
  const int r = std::min(m.rows(), m.cols());
  for (int k = 1; k <= r; ++k) {
    Int g = 0;
    subsets_of_size(m.rows(), k, [&](const std::vector<int>& rows) {
      subsets_of_size(m.cols(), k, [&](const std::vector<int>& cols) {
        Rat v = minor(m, rows, cols);
        Int a = abs(v.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
      });
    });
    big.push_back(g);
  }
  std::vector<Int> inv;
  for (int k = 1; k <= r; ++k) inv.push_back(sgn(big[k - 1]) == 0 ? Int(0) : Int(big[k] / big[k - 1]));
  return inv;
}

enum class Type { FIN, AFF, IND };

/// Type of an indecomposable symmetrizable block from the principal minors of its symmetrization.
inline Type block_type(const RatMat& b, const std::vector<int>& idx) {
  const int n = static_cast<int>(idx.size());
  bool psd = true, pd = true;
  for (int k = 1; k <= n && psd; ++k)
    subsets_of_size(n, k, [&](const std::vector<int>& pick) {
      std::vector<int> rows;
      for (int p : pick) rows.push_back(idx[p]);
      Rat v = minor(b, rows, rows);
      if (sgn(v) < 0) psd = false;
      if (sgn(v) <= 0) pd = false;
    });
  if (pd) return Type::FIN;
  if (psd) return Type::AFF;
  return Type::IND;
}

/// Symmetrization D A with D chosen by walking the Dynkin graph; A must be symmetrizable.
inline RatMat symmetrize(const IntMat& a) {
  const int n = a.rows();
  std::vector<Rat> eps(n, Rat(0));
  for (int s = 0; s < n; ++s) {
    if (sgn(eps[s]) != 0) continue;
    eps[s] = 1;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j)
        if (j != i && sgn(a(i, j)) != 0 && sgn(eps[j]) == 0) {
          // eps_i a_ij = eps_j a_ji
          eps[j] = eps[i] * Rat(a(i, j)) / Rat(a(j, i));
          stack.push_back(j);
        }
    }
  }
  RatMat b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = eps[i] * Rat(a(i, j));
  return b;
}

/// Connected blocks of the zero pattern restricted to a subset (bitmask).
inline std::vector<std::vector<int>> blocks(const IntMat& a, unsigned s) {
  std::vector<std::vector<int>> out;
  std::set<int> seen;
  for (int i = 0; i < a.rows(); ++i) {
    if (!((s >> i) & 1) || seen.count(i)) continue;
    std::vector<int> comp, stack{i};
    seen.insert(i);
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      comp.push_back(x);
      for (int y = 0; y < a.rows(); ++y)
        if (((s >> y) & 1) && !seen.count(y) && sgn(a(x, y)) != 0) {
          seen.insert(y);
          stack.push_back(y);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(comp);
  }
  return out;
}

/// Special subsets: no block of finite type.
inline std::set<unsigned> special_sets(const IntMat& a) {
  RatMat b = symmetrize(a);
  std::set<unsigned> out;
  for (unsigned s = 0; s < (1u << a.rows()); ++s) {
    bool ok = true;
    for (auto& c : blocks(a, s))
      if (block_type(b, c) == Type::FIN) ok = false;
    if (ok) out.insert(s);
  }
  return out;
}

/// Simple reflection on weights given by values on h_1..h_N: lam - lam(h_i) alpha_i.
inline IntVec reflect(const std::vector<IntVec>& alpha, int i, const IntVec& lam) {
  IntVec out = lam;
  Int c = lam[i];
  for (size_t k = 0; k < out.size(); ++k) out[k] -= c * alpha[i][k];
  return out;
}

/// Length of w from the number of positive roots it makes negative, for finite types:
/// enumerates the orbit of a regular dominant weight and returns the BFS distance.
inline std::map<IntVec, int> orbit_lengths(const std::vector<IntVec>& alpha, const IntVec& regular, int cap) {
  std::map<IntVec, int> dist{{regular, 0}};
  std::vector<IntVec> frontier{regular};
  for (int step = 1; !frontier.empty() && step <= cap; ++step) {
    std::vector<IntVec> next;
    for (auto& v : frontier)
      for (size_t i = 0; i < alpha.size(); ++i) {
        IntVec u = reflect(alpha, static_cast<int>(i), v);
        if (dist.emplace(u, step).second) next.push_back(u);
      }
    frontier = std::move(next);
  }
  return dist;
}

}  // namespace oracle
