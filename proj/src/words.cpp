#include "kmx/words.hpp"

#include <cctype>
#include <sstream>

namespace kmx {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

int parse_index(const std::string& tok, int n, const char* what) {
  std::string t = trim(tok);
  size_t used = 0;
  int k = 0;
  try {
    k = std::stoi(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size()) throw Error(ErrorKind::Parse, std::string("bad ") + what + " '" + tok + "'");
  if (k < 1 || k > n) throw Error(ErrorKind::Parse, std::string(what) + " " + t + " outside 1.." + std::to_string(n));
  return k - 1;
}

Int parse_int(const std::string& tok) {
  Int x;
  std::string t = trim(tok);
  if (!t.empty() && t[0] == '+') t = t.substr(1);
  if (t.empty() || x.set_str(t, 10) != 0) throw Error(ErrorKind::Parse, "bad integer '" + tok + "'");
  return x;
}

Int json_int(const Json& j) {
  if (j.is_number_integer()) return Int(std::to_string(j.get<long long>()));
  if (j.is_string()) return parse_int(j.get<std::string>());
  throw Error(ErrorKind::Parse, "expected an integer, got " + j.dump());
}

}  // namespace

IntMat gcm_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("A") || !j["A"].is_array())
    throw Error(ErrorKind::Parse, "expected {\"A\": [[...], ...]}");
  const Json& rows = j["A"];
  const int n = static_cast<int>(rows.size());
  IntMat a(n, n);
  for (int i = 0; i < n; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n)
      throw Error(ErrorKind::NotGCM, "matrix is not square");
    for (int k = 0; k < n; ++k) a(i, k) = json_int(rows[i][k]);
  }
  return a;
}

Json gcm_to_json(const IntMat& a) {
  Json rows = Json::array();
  for (int i = 0; i < a.rows(); ++i) rows.push_back(intvec_json(a.row(i)));
  return Json{{"A", rows}};
}

Json rat_json(const Rat& q) { return to_string(q); }

Json ratvec_json(const RatVec& v) {
  Json a = Json::array();
  for (auto& x : v) a.push_back(rat_json(x));
  return a;
}

Json ratmat_json(const RatMat& m) {
  Json a = Json::array();
  for (int i = 0; i < m.rows(); ++i) a.push_back(ratvec_json(m.row(i)));
  return a;
}

Json int_json(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

Json intvec_json(const IntVec& v) {
  Json a = Json::array();
  for (auto& x : v) a.push_back(int_json(x));
  return a;
}

Json subset_json(Subset s) {
  Json a = Json::array();
  for (int i : members(s)) a.push_back(i + 1);
  return a;
}

Json face_json(const Face& f) { return Json{{"w", word_str(f.w.word)}, {"theta", subset_json(f.theta)}}; }

Json wmon_json(const WmonElt& x) { return Json{{"face", face_json(x.r)}, {"sigma", word_str(x.w.word)}}; }

Json that_json(const ThatElt& x) {
  Json basis = Json::array();
  for (auto& b : x.basis) basis.push_back(intvec_json(b));
  return Json{{"face", face_json(x.r)}, {"basis", basis}, {"values", ratvec_json(x.values)}};
}

Json nhat_json(const NhatElt& x) { return Json{{"torus_part", that_json(x.part)}, {"sigma", word_str(x.w.word)}}; }

Json mask_json(GenMask f) {
  Json a = Json::array();
  for (int k : mask_members(f)) a.push_back(k + 1);
  return a;
}

Subset subset_from_json(const RootDatum& d, const Json& j) {
  std::vector<int> idx;
  if (j.is_array()) {
    for (auto& x : j) {
      if (!x.is_number_integer()) throw Error(ErrorKind::Parse, "subset entries must be integers");
      int k = x.get<int>();
      if (k < 1 || k > d.n()) throw Error(ErrorKind::Parse, "subset index " + std::to_string(k) + " out of range");
      idx.push_back(k - 1);
    }
  } else if (j.is_string()) {
    std::string s = j.get<std::string>();
    for (char& c : s)
      if (c == ',' || c == '{' || c == '}' || c == '[' || c == ']') c = ' ';
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) idx.push_back(parse_index(tok, d.n(), "subset index"));
  } else {
    throw Error(ErrorKind::Parse, "subset must be an array or a string");
  }
  return make_subset(idx);
}

Face parse_face_spec(const RootDatum& d, const std::string& s) {
  std::string w, theta;
  bool have_theta = false;
  std::istringstream in(s);
  std::string part;
  while (std::getline(in, part, ';')) {
    part = trim(part);
    if (part.empty()) continue;
    auto eq = part.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::Parse, "face field without '=': '" + part + "'");
    std::string key = trim(part.substr(0, eq)), val = part.substr(eq + 1);
    if (key == "w") w = val;
    else if (key == "theta") theta = val, have_theta = true;
    else throw Error(ErrorKind::Parse, "unknown face field '" + key + "'");
  }
  if (!have_theta) throw Error(ErrorKind::Parse, "face needs a theta field");
  return normalize_face(d, weyl_from_word(d, parse_word(w, d.n())), subset_from_json(d, Json(theta)));
}

std::string face_spec_str(const Face& f) {
  std::string t;
  for (int i : members(f.theta)) t += (t.empty() ? "" : ",") + std::to_string(i + 1);
  return "w=" + word_str(f.w.word) + ";theta=" + t;
}

Face face_from_json(const RootDatum& d, const Json& j) {
  if (j.is_string()) return parse_face_spec(d, j.get<std::string>());
  if (!j.is_object() || !j.contains("theta")) throw Error(ErrorKind::Parse, "face must be {\"w\":..., \"theta\":[...]}");
  std::string w = j.contains("w") ? j["w"].get<std::string>() : "";
  return normalize_face(d, weyl_from_word(d, parse_word(w, d.n())), subset_from_json(d, j["theta"]));
}

IntVec parse_int_list(const std::string& s) {
  std::string t = s;
  for (char& c : t)
    if (c == ',' || c == '[' || c == ']') c = ' ';
  std::istringstream in(t);
  std::string tok;
  IntVec out;
  while (in >> tok) out.push_back(parse_int(tok));
  return out;
}

RatVec parse_rat_list(const std::string& s) {
  std::string t = s;
  for (char& c : t)
    if (c == ',' || c == '[' || c == ']' || c == '"') c = ' ';
  std::istringstream in(t);
  std::string tok;
  RatVec out;
  while (in >> tok) out.push_back(parse_rat(tok));
  return out;
}

IntVec weight_arg(const RootDatum& d, const std::string& s) {
  IntVec v = parse_int_list(s);
  if (static_cast<int>(v.size()) > d.dim())
    throw Error(ErrorKind::RankMismatch, "weight has more than " + std::to_string(d.dim()) + " entries");
  v.resize(d.dim());
  return v;
}

IntVec parse_coweight(const RootDatum& d, const std::string& s) {
  IntVec h(d.dim());
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw Error(ErrorKind::Parse, "empty coweight");
  size_t k = 0;
  while (k < t.size()) {
    int sign = 1;
    if (t[k] == '+' || t[k] == '-') sign = t[k++] == '-' ? -1 : 1;
    size_t start = k;
    while (k < t.size() && std::isdigit(static_cast<unsigned char>(t[k]))) ++k;
    Int coef = start == k ? Int(1) : parse_int(t.substr(start, k - start));
    if (k >= t.size() || t[k] != 'h') throw Error(ErrorKind::Parse, "bad coweight '" + s + "'");
    ++k;
    start = k;
    while (k < t.size() && std::isdigit(static_cast<unsigned char>(t[k]))) ++k;
    int idx = parse_index(t.substr(start, k - start), d.dim(), "coweight index");
    h[idx] += sign * coef;
  }
  return h;
}

GhatWord parse_ghat_word(const RootDatum& d, const std::string& s) {
  GhatWord w;
  size_t k = 0;
  while (k < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[k]))) {
      ++k;
      continue;
    }
    size_t open = s.find('(', k);
    if (open == std::string::npos) throw Error(ErrorKind::Parse, "letter without '(' at '" + s.substr(k) + "'");
    size_t close = s.find(')', open);
    if (close == std::string::npos) throw Error(ErrorKind::Parse, "unclosed letter at '" + s.substr(k) + "'");
    std::string name = trim(s.substr(k, open - k));
    std::string body = s.substr(open + 1, close - open - 1);
    k = close + 1;
    Letter l;
    auto split2 = [&](std::string& a, std::string& b) {
      auto semi = body.find(';');
      if (semi == std::string::npos) throw Error(ErrorKind::Parse, name + "(...) needs two arguments separated by ';'");
      a = trim(body.substr(0, semi));
      b = trim(body.substr(semi + 1));
    };
    if (name == "X+" || name == "X-") {
      std::string a, b;
      split2(a, b);
      l.kind = name == "X+" ? Letter::Xplus : Letter::Xminus;
      l.i = parse_index(a, d.n(), "root index");
      l.t = parse_rat(b);
    } else if (name == "T") {
      std::string a, b;
      split2(a, b);
      l.kind = Letter::Torus;
      l.h = parse_coweight(d, a);
      l.t = parse_rat(b);
      if (sgn(l.t) == 0) throw Error(ErrorKind::ZeroTorusValue, "t_h(0) is not a torus element");
    } else if (name == "N") {
      l.kind = Letter::NSimple;
      l.i = parse_index(body, d.n(), "root index");
    } else if (name == "E") {
      l.kind = Letter::Idem;
      l.face = parse_face_spec(d, body);
    } else {
      throw Error(ErrorKind::Parse, "unknown letter '" + name + "'");
    }
    w.push_back(std::move(l));
  }
  return w;
}

namespace {

std::string short_rat(const Rat& q) { return q.get_den() == 1 ? q.get_num().get_str() : to_string(q); }

std::string coweight_str(const IntVec& h) {
  std::string s;
  for (size_t j = 0; j < h.size(); ++j) {
    if (sgn(h[j]) == 0) continue;
    Int c = h[j];
    if (sgn(c) < 0) s += "-", c = -c;
    else if (!s.empty()) s += "+";
    if (c != 1) s += c.get_str();
    s += "h" + std::to_string(j + 1);
  }
  return s.empty() ? "0h1" : s;
}

}  // namespace

std::string ghat_word_str(const GhatWord& w) {
  std::string s;
  for (auto& l : w) {
    if (!s.empty()) s += " ";
    switch (l.kind) {
      case Letter::Xplus: s += "X+(" + std::to_string(l.i + 1) + ";" + short_rat(l.t) + ")"; break;
      case Letter::Xminus: s += "X-(" + std::to_string(l.i + 1) + ";" + short_rat(l.t) + ")"; break;
      case Letter::Torus: s += "T(" + coweight_str(l.h) + ";" + short_rat(l.t) + ")"; break;
      case Letter::NSimple: s += "N(" + std::to_string(l.i + 1) + ")"; break;
      case Letter::Idem: s += "E(" + face_spec_str(l.face) + ")"; break;
    }
  }
  return s;
}

LatticeMonoid monoid_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rank") || !j.contains("generators"))
    throw Error(ErrorKind::Parse, "expected {\"rank\": r, \"generators\": [[...], ...]}");
  int r = j["rank"].get<int>();
  std::vector<IntVec> gens;
  for (auto& g : j["generators"]) {
    IntVec v;
    for (auto& x : g) v.push_back(json_int(x));
    gens.push_back(std::move(v));
  }
  return saturate_and_faces(gens, r);
}

}  // namespace kmx
