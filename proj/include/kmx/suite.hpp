#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "kmx/ghat.hpp"

namespace kmx {

/// Named test matrices: A2, B2, G2, A3, A1~, A2~, hyp.
Datum corpus_datum(const std::string& name);
IntMat corpus_matrix(const std::string& name);

using Rng = std::mt19937_64;
/// Random symmetrizable GCM of the given size (off-diagonal entries in [-3, 0]).
IntMat random_gcm(Rng& rng, int n);
/// Random indefinite GCM with at least one special set besides the empty one and the whole set; n >= 3.
Datum random_indefinite(Rng& rng, int n);
WeylElt random_weyl(const RootDatum& d, Rng& rng, int max_len);
Face random_face(const RootDatum& d, Rng& rng, int max_len);

struct CriterionResult {
  int id = 0;
  std::string tag;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double limit = 0;  // seconds; 0 means no limit
};

constexpr int kCriteria = 9;
constexpr std::uint64_t kSuiteSeed = 0x6b6d78u;

CriterionResult run_criterion(int id, std::uint64_t seed = kSuiteSeed);
/// One line per criterion; timings are left out so the report is reproducible.
std::string report_line(const CriterionResult& r);

}  // namespace kmx
