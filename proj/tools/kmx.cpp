#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kmx/suite.hpp"
#include "kmx/words.hpp"

using namespace kmx;

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;
constexpr int kExitGuard = 3;

// -i takes a path or inline JSON.
Json load_input(const std::string& arg) {
  if (arg.empty()) throw Error(ErrorKind::Parse, "missing -i input");
  std::string text;
  auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    text = arg;
  } else {
    std::ifstream in(arg);
    if (!in) throw Error(ErrorKind::Parse, "cannot read '" + arg + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed JSON: ") + e.what());
  }
}

// Element arguments are JSON objects or, for faces, the "w=..;theta=.." form.
Json element_arg(const std::string& s) {
  auto first = s.find_first_not_of(" \t");
  if (first != std::string::npos && (s[first] == '{' || s[first] == '"')) {
    try {
      return Json::parse(s);
    } catch (const Json::exception& e) {
      throw Error(ErrorKind::Parse, std::string("malformed JSON argument: ") + e.what());
    }
  }
  return Json(s);
}

Face face_arg(const RootDatum& d, const std::string& s) { return face_from_json(d, element_arg(s)); }

WeylElt sigma_of(const RootDatum& d, const Json& j) {
  return weyl_from_word(d, parse_word(j.contains("sigma") ? j["sigma"].get<std::string>() : "", d.n()));
}

Face face_field(const RootDatum& d, const Json& j) { return j.contains("face") ? face_from_json(d, j["face"]) : whole_cone(d); }

Torus torus_field(const RootDatum& d, const Json& j) {
  if (!j.contains("torus")) return torus_one(d);
  RatVec t;
  for (auto& x : j["torus"]) t.push_back(parse_rat(x.is_string() ? x.get<std::string>() : x.dump()));
  if (static_cast<int>(t.size()) != d.dim())
    throw Error(ErrorKind::RankMismatch, "torus needs " + std::to_string(d.dim()) + " values");
  for (auto& v : t)
    if (sgn(v) == 0) throw Error(ErrorKind::ZeroTorusValue, "torus values must be nonzero");
  return t;
}

void need_object(const Json& j, const char* what) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, std::string(what) + " must be a JSON object");
}

WmonElt wmon_arg(const RootDatum& d, const std::string& s) {
  Json j = element_arg(s);
  need_object(j, "Weyl monoid element");
  return wm_normalize(d, sigma_of(d, j), face_field(d, j));
}

ThatElt that_arg(const RootDatum& d, const std::string& s) {
  Json j = element_arg(s);
  need_object(j, "torus monoid element");
  return that_normalize(d, torus_field(d, j), face_field(d, j));
}

// t e(R) n_sigma
NhatElt nhat_arg(const RootDatum& d, const std::string& s) {
  Json j = element_arg(s);
  need_object(j, "normalizer element");
  NhatElt x = nhat_mul(d, nhat_from_torus(d, torus_field(d, j)), nhat_idempotent(d, face_field(d, j)));
  return nhat_mul(d, x, nhat_from_weyl(d, sigma_of(d, j)));
}

Json classification_json(const Classification& c) {
  Json comps = Json::array();
  for (auto& k : c.comps) comps.push_back(Json{{"set", subset_json(k.set)}, {"type", type_name(k.type)}});
  return Json{{"components", comps}};
}

Json dominant_json(const DominantResult& r) {
  static const char* kKinds[] = {"Dominant", "NotInTitsCone", "Undecided"};
  Json j{{"verdict", kKinds[r.kind]}};
  if (r.kind == DominantResult::Dominant) {
    j["dominant"] = ratvec_json(r.dominant);
    j["w"] = word_str(r.w.word);
    j["facet"] = subset_json(r.facet);
  } else {
    j["certificate"] = r.certificate;
    j["bound"] = r.bound;
  }
  return j;
}

Json monoid_json(const LatticeMonoid& m) {
  Json ineqs = Json::array(), eqs = Json::array(), sat = Json::array();
  for (auto& y : m.ineqs) ineqs.push_back(intvec_json(y));
  for (auto& y : m.eqs) eqs.push_back(intvec_json(y));
  for (auto& y : m.sat_gens) sat.push_back(intvec_json(y));
  return Json{{"rank", m.rank},
              {"inequalities", ineqs},
              {"equations", eqs},
              {"saturation_generators", sat},
              {"saturated", m.saturated}};
}

Json faces_json(const LatticeMonoid& m) {
  Json faces = Json::array();
  for (GenMask f : m.faces) {
    Json below = Json::array();
    for (GenMask g : closure_order(m, f))
      if (g != f) below.push_back(mask_json(g));
    faces.push_back(Json{{"generators", mask_json(f)},
                         {"dim", static_cast<int>(hull_basis(m, f).size())},
                         {"subfaces", below}});
  }
  return Json{{"faces", faces}};
}

IntVec top_arg(const RootDatum& d, const std::string& s) {
  if (s.empty()) throw Error(ErrorKind::Parse, "missing --top weight");
  return weight_arg(d, s);
}

int depth_arg(int depth) { return depth >= 0 ? depth : default_depth(); }

// --- text rendering -------------------------------------------------------

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::string s = "[";
    for (size_t k = 0; k < j.size(); ++k) s += (k ? " " : "") + scalar_text(j[k]);
    return s + "]";
  }
  if (j.is_object()) {
    std::string s;
    for (auto it = j.begin(); it != j.end(); ++it) s += (s.empty() ? "" : " ") + it.key() + "=" + scalar_text(it.value());
    return s;
  }
  return j.dump();
}

void table_text(std::ostream& os, const Json& rows) {
  std::vector<std::string> cols;
  for (auto it = rows[0].begin(); it != rows[0].end(); ++it) cols.push_back(it.key());
  std::vector<size_t> width;
  for (auto& c : cols) width.push_back(c.size());
  std::vector<std::vector<std::string>> cells;
  for (auto& r : rows) {
    std::vector<std::string> line;
    for (size_t k = 0; k < cols.size(); ++k) {
      line.push_back(r.contains(cols[k]) ? scalar_text(r[cols[k]]) : "");
      width[k] = std::max(width[k], line.back().size());
    }
    cells.push_back(line);
  }
  auto emit = [&](const std::vector<std::string>& line) {
    for (size_t k = 0; k < line.size(); ++k)
      os << std::left << std::setw(static_cast<int>(width[k]) + (k + 1 < line.size() ? 2 : 0)) << line[k];
    os << "\n";
  };
  emit(cols);
  for (auto& l : cells) emit(l);
}

void render_text(std::ostream& os, const Json& j) {
  auto is_table = [](const Json& a) { return a.is_array() && !a.empty() && a[0].is_object(); };
  if (is_table(j)) {
    table_text(os, j);
    return;
  }
  if (!j.is_object()) {
    os << scalar_text(j) << "\n";
    return;
  }
  size_t w = 0;
  for (auto it = j.begin(); it != j.end(); ++it) w = std::max(w, it.key().size());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (is_table(it.value())) {
      os << it.key() << ":\n";
      table_text(os, it.value());
    } else {
      os << std::left << std::setw(static_cast<int>(w) + 2) << it.key() << scalar_text(it.value()) << "\n";
    }
  }
}

// Accepts the two-word spelling "face intersect" for "face-intersect".
std::vector<std::string> join_verb(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  static const char* kGroups[] = {"face", "wmon", "that", "nhat", "toric", "module", "ghat", "weyl"};
  if (args.size() >= 3 && args[2][0] != '-')
    for (const char* g : kGroups)
      if (args[1] == g) {
        args[1] += "-" + args[2];
        args.erase(args.begin() + 2);
        break;
      }
  return args;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::ResourceGuard:
    case ErrorKind::DepthTooLarge: return kExitGuard;
    case ErrorKind::Parse: return kExitUsage;
    default: return kExitDomain;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with Kac-Moody face monoids and their normalizers", "kmx"};
  app.require_subcommand(1);
  std::string input, left, right, word, theta, weight, top, elt;
  int depth = -1, input_depth = -1;
  bool text = false;
  app.add_flag("--text", text, "render an aligned text report instead of JSON");

  auto verb = [&](const std::string& name, const std::string& help, bool needs_input = true) {
    CLI::App* c = app.add_subcommand(name, help);
    c->add_flag("--text", text, "render an aligned text report instead of JSON");
    if (needs_input) c->add_option("-i,--input", input, "GCM JSON file or inline JSON")->required();
    return c;
  };
  auto pair = [&](CLI::App* c) {
    c->add_option("--left", left, "left operand")->required();
    c->add_option("--right", right, "right operand")->required();
    return c;
  };

  auto* c_validate = verb("validate", "check a generalized Cartan matrix and report its symmetrization");
  auto* c_classify = verb("classify", "split into components and classify each");
  c_classify->add_option("--set", theta, "restrict to a subset, e.g. 1,2");
  auto* c_special = verb("special", "list the special sets");
  auto* c_expose = verb("expose", "exposing coweight of a special set");
  c_expose->add_option("--theta", theta, "special set, e.g. 1,2")->required();
  auto* c_realize = verb("realize", "integral realization: simple roots, coroots and fundamental weights");
  auto* c_reduce = verb("weyl-reduce", "canonical reduced word of a Weyl group element");
  c_reduce->add_option("--word", word, "word in simple reflections, e.g. \"1 2 1\"")->required();
  auto* c_dominant = verb("dominant", "dominant representative of a weight and the element reaching it");
  c_dominant->add_option("--weight", weight, "rational values on h_1..h_N")->required();
  auto* c_fnorm = verb("face-normalize", "normal form of the face w R(theta)");
  c_fnorm->add_option("--word", word, "Weyl word");
  c_fnorm->add_option("--theta", theta, "special set")->required();
  auto* c_finc = pair(verb("face-include", "whether the right face lies in the left one"));
  auto* c_fint = pair(verb("face-intersect", "intersection of two faces"));
  auto* c_fpoint = verb("face-of-point", "face containing a point of the Tits cone in its relative interior");
  c_fpoint->add_option("--weight", weight, "rational values on h_1..h_N")->required();
  auto* c_wmul = pair(verb("wmon-mul", "product in the Weyl monoid"));
  auto* c_winv = verb("wmon-inv", "inverse in the Weyl monoid");
  c_winv->add_option("--elt", elt, "{\"face\": ..., \"sigma\": ...}")->required();
  auto* c_tmul = pair(verb("that-mul", "product in the torus monoid"));
  auto* c_nmul = pair(verb("nhat-mul", "product in the monoid normalizer"));
  auto* c_tsat = verb("toric-saturate", "cone, saturation and saturation generators of a lattice monoid");
  auto* c_tfaces = verb("toric-faces", "face lattice of a lattice monoid");
  auto* c_mweights = verb("module-weights", "weights and multiplicities of an irreducible highest weight module");
  c_mweights->add_option("--top", top, "dominant highest weight on h_1..h_N")->required();
  c_mweights->add_option("--depth", depth, "truncation depth");
  auto* c_mbasis = verb("module-basis", "monomial basis and Gram matrices of a truncated module");
  c_mbasis->add_option("--top", top, "dominant highest weight on h_1..h_N")->required();
  c_mbasis->add_option("--depth", depth, "truncation depth");
  auto* c_geval = verb("ghat-eval", "matrix of a word on a truncated module");
  c_geval->add_option("--word", word, "word such as \"X+(1;3/2) N(1) E(w=;theta=1,2)\"")->required();
  c_geval->add_option("--top", top, "highest weight")->required();
  c_geval->add_option("--depth", depth, "truncation depth");
  c_geval->add_option("--input-depth", input_depth, "evaluate on basis vectors up to this height");
  auto* c_gtheta = verb("ghat-theta", "highest weight matrix coefficient of a word");
  c_gtheta->add_option("--word", word, "word")->required();
  c_gtheta->add_option("--top", top, "highest weight")->required();
  c_gtheta->add_option("--depth", depth, "truncation depth");
  auto* c_gequal = pair(verb("ghat-equal", "compare two words on probe modules"));
  c_gequal->add_option("--depth", depth, "truncation depth of the probes");
  auto* c_gcell = verb("ghat-cell", "Weyl monoid cell of a factored word");
  c_gcell->add_option("--word", word, "word")->required();
  auto* c_verify = verb("verify", "run the property suite and print one line per check", false);

  std::vector<std::string> args = join_verb(argc, argv);
  std::vector<char*> cargs;
  for (auto& a : args) cargs.push_back(a.data());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return e.get_exit_code() == 0 ? rc : kExitUsage;
  }

  Json out;
  try {
    if (c_verify->parsed()) {
      bool all = true;
      for (int id = 1; id <= kCriteria; ++id) {
        CriterionResult r = run_criterion(id);
        std::cout << report_line(r) << std::endl;
        all = all && r.pass;
      }
      return all ? 0 : kExitDomain;
    }
    Json in = load_input(input);
    if (c_tsat->parsed() || c_tfaces->parsed()) {
      LatticeMonoid m = monoid_from_json(in);
      out = c_tsat->parsed() ? monoid_json(m) : faces_json(m);
    } else {
      IntMat a = gcm_from_json(in);
      if (c_validate->parsed()) {
        Gcm g = validate_and_symmetrize(a);
        out = Json{{"n", g.n}, {"eps", ratvec_json(g.eps)}, {"B", ratmat_json(g.b)}};
      } else {
        Datum dp = RootDatum::make(a);
        const RootDatum& d = *dp;
        if (c_classify->parsed()) {
          Subset s = theta.empty() ? full_set(d.n()) : subset_from_json(d, Json(theta));
          out = classification_json(d.classification(s));
        } else if (c_special->parsed()) {
          out = Json::array();
          for (Subset s : d.specials()) out.push_back(subset_json(s));
        } else if (c_expose->parsed()) {
          Subset s = subset_from_json(d, Json(theta));
          if (!d.special(s)) throw Error(ErrorKind::NotSpecial, subset_str(s) + " is not special");
          out = Json{{"theta", subset_json(s)}, {"coweight", intvec_json(d.exposing(s))}};
        } else if (c_realize->parsed()) {
          Json alpha = Json::array(), coroots = Json::array(), fund = Json::array();
          for (int i = 0; i < d.n(); ++i) {
            alpha.push_back(intvec_json(d.alpha(i)));
            coroots.push_back(intvec_json(d.coroot(i)));
            fund.push_back(intvec_json(d.fundamental(i)));
          }
          out = Json{{"dim", d.dim()}, {"rank", d.rank_a()}, {"alpha", alpha}, {"coroots", coroots},
                     {"fundamental", fund}, {"coroots_saturated", d.coroots_saturated()}};
        } else if (c_reduce->parsed()) {
          WeylElt w = weyl_from_word(d, parse_word(word, d.n()));
          out = Json{{"word", word_str(w.word)}, {"length", w.length()}};
        } else if (c_dominant->parsed()) {
          RatVec lam = parse_rat_list(weight);
          if (static_cast<int>(lam.size()) > d.dim()) throw Error(ErrorKind::RankMismatch, "weight too long");
          lam.resize(d.dim());
          out = dominant_json(dominant_rep(d, lam));
        } else if (c_fnorm->parsed()) {
          out = face_json(normalize_face(d, weyl_from_word(d, parse_word(word, d.n())), subset_from_json(d, Json(theta))));
        } else if (c_finc->parsed()) {
          out = Json{{"includes", includes(d, face_arg(d, left), face_arg(d, right))}};
        } else if (c_fint->parsed()) {
          out = face_json(intersect(d, face_arg(d, left), face_arg(d, right)));
        } else if (c_fpoint->parsed()) {
          RatVec lam = parse_rat_list(weight);
          if (static_cast<int>(lam.size()) > d.dim()) throw Error(ErrorKind::RankMismatch, "weight too long");
          lam.resize(d.dim());
          FaceOfPoint f = face_of_point(d, lam);
          if (!f.ok()) throw Error(ErrorKind::PreconditionViolated, "point is not in the Tits cone: " + f.verdict.certificate);
          out = face_json(f.face);
        } else if (c_wmul->parsed()) {
          out = wmon_json(wm_mul(d, wmon_arg(d, left), wmon_arg(d, right)));
        } else if (c_winv->parsed()) {
          out = wmon_json(wm_invert(d, wmon_arg(d, elt)));
        } else if (c_tmul->parsed()) {
          out = that_json(that_mul(d, that_arg(d, left), that_arg(d, right)));
        } else if (c_nmul->parsed()) {
          out = nhat_json(nhat_mul(d, nhat_arg(d, left), nhat_arg(d, right)));
        } else if (c_mweights->parsed()) {
          out = Json::array();
          for (auto& w : weights_and_mults(d, top_arg(d, top), depth_arg(depth)))
            out.push_back(Json{{"k", intvec_json(w.k)}, {"weight", intvec_json(w.lam)}, {"mult", int_json(w.mult)}});
        } else if (c_mbasis->parsed()) {
          SlicePtr s = build_basis(dp, top_arg(d, top), depth_arg(depth));
          out = Json::array();
          for (auto& w : s->weights()) {
            Json labels = Json::array();
            for (int k = 0; k < w.dim(); ++k) labels.push_back(s->basis_label(w.offset + k));
            out.push_back(Json{{"k", intvec_json(w.k)}, {"weight", intvec_json(w.lam)}, {"basis", labels},
                               {"gram", ratmat_json(w.gram)}});
          }
        } else if (c_geval->parsed()) {
          SlicePtr s = build_basis(dp, top_arg(d, top), depth_arg(depth));
          OperatorMatrix m = evaluate_word(*s, parse_ghat_word(d, word), input_depth);
          Json rows = Json::array();
          for (int k = 0; k < s->size(); ++k) rows.push_back(s->basis_label(k));
          out = Json{{"input_depth", m.input_depth}, {"inputs", m.inputs}, {"basis", rows}, {"matrix", ratmat_json(m.m)}};
        } else if (c_gtheta->parsed()) {
          SlicePtr s = build_basis(dp, top_arg(d, top), depth_arg(depth));
          out = Json{{"theta", rat_json(kmx::theta(*s, parse_ghat_word(d, word)))}};
        } else if (c_gequal->parsed()) {
          std::vector<Probe> probes;
          int dep = depth >= 0 ? depth : std::min(default_depth(), 3);
          IntVec rho(d.dim());
          for (int j = 0; j < d.n(); ++j) {
            probes.push_back({d.fundamental(j), dep});
            rho[j] = 1;
          }
          probes.push_back({rho, dep});
          ProbeResult r = probe_equal(dp, parse_ghat_word(d, left), parse_ghat_word(d, right), probes);
          out = Json{{"verdict", r.equal ? "EqualOnProbes" : "Distinct"}, {"compared", r.compared}};
          if (!r.equal) out["witness"] = r.witness;
        } else if (c_gcell->parsed()) {
          out = wmon_json(bruhat_cell(d, parse_ghat_word(d, word)));
        }
      }
    }
  } catch (const Error& e) {
    Json err{{"error", kind_name(e.kind())}, {"message", e.what()}};
    if (e.kind() == ErrorKind::Parse) std::cerr << app.help();
    std::cout << err.dump() << std::endl;
    return exit_code(e.kind());
  } catch (const Json::exception& e) {
    std::cout << Json{{"error", "Parse"}, {"message", e.what()}}.dump() << std::endl;
    return kExitUsage;
  }
  if (text)
    render_text(std::cout, out);
  else
    std::cout << out.dump() << std::endl;
  return 0;
}
