#pragma once

#include <string>

#include "json.hpp"
#include "kmx/ghat.hpp"
#include "kmx/toric.hpp"

namespace kmx {

using Json = nlohmann::ordered_json;

/// {"A": [[...], ...]}
IntMat gcm_from_json(const Json& j);
Json gcm_to_json(const IntMat& a);

Json rat_json(const Rat& q);
Json ratvec_json(const RatVec& v);
Json ratmat_json(const RatMat& m);
Json int_json(const Int& x);
Json intvec_json(const IntVec& v);
Json subset_json(Subset s);
Json face_json(const Face& f);
Json wmon_json(const WmonElt& x);
Json that_json(const ThatElt& x);
Json nhat_json(const NhatElt& x);
Json mask_json(GenMask f);

/// Accepts {"w": "3 1", "theta": [1,2]} or the string form "w=3 1;theta=1,2".
Face face_from_json(const RootDatum& d, const Json& j);
Subset subset_from_json(const RootDatum& d, const Json& j);
/// Comma or whitespace separated integers.
IntVec parse_int_list(const std::string& s);
RatVec parse_rat_list(const std::string& s);
/// Weight given on h_1..h_N; shorter inputs are padded with zeros.
IntVec weight_arg(const RootDatum& d, const std::string& s);
/// "h1+2h3"
IntVec parse_coweight(const RootDatum& d, const std::string& s);

LatticeMonoid monoid_from_json(const Json& j);

}  // namespace kmx
