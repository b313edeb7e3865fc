#include "knx/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "knx/error.hpp"

namespace knx {
namespace {

using nlohmann::json;

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorKind::Schema, what); }

const json& object_at(const json& j, const std::string& where) {
  if (!j.is_object()) schema(where + " must be an object");
  return j;
}

void reject_unknown(const json& j, std::initializer_list<std::string_view> allowed, const std::string& where) {
  for (const auto& item : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      schema("unknown key \"" + item.key() + "\" in " + where);
    }
  }
}

const json& required(const json& j, const std::string& key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) schema(where + " is missing \"" + key + "\"");
  return *it;
}

Rational rational_from(const json& j, const std::string& where) {
  if (!j.is_string()) schema(where + ": rationals are written as strings such as \"3/2\"");
  return parse_rational(j.get<std::string>());
}

RationalVector vector_from(const json& j, const std::string& where) {
  if (!j.is_array()) schema(where + " must be an array of rational strings");
  RationalVector out;
  for (const auto& x : j) out.push_back(rational_from(x, where));
  return out;
}

RationalMatrix matrix_from(const json& j, const std::string& where) {
  if (!j.is_array()) schema(where + " must be an array of vectors");
  RationalMatrix out;
  for (const auto& row : j) out.push_back(vector_from(row, where));
  return out;
}

// Sizes are plain JSON integers; an integer string is accepted too.
std::size_t size_from(const json& j, const std::string& where) {
  if (j.is_number_integer() && j.get<long long>() >= 0) return static_cast<std::size_t>(j.get<long long>());
  if (j.is_string()) {
    const Rational r = parse_rational(j.get<std::string>());
    if (r.get_den() == 1 && sgn(r) >= 0 && r.get_num().fits_ulong_p()) return r.get_num().get_ui();
  }
  schema(where + " must be a nonnegative integer");
}

GroupSpec group_from(const json& j, const std::string& where) {
  object_at(j, where);
  const json& type = required(j, "type", where);
  if (!type.is_string()) schema(where + ".type must be a string");
  GroupSpec g;
  g.type = type.get<std::string>();
  if (g.type == "torus") {
    reject_unknown(j, {"type", "rank"}, where);
    g.size = size_from(required(j, "rank", where), where + ".rank");
  } else if (g.type == "gl" || g.type == "sl") {
    reject_unknown(j, {"type", "n"}, where);
    g.size = size_from(required(j, "n", where), where + ".n");
  } else if (g.type == "product") {
    reject_unknown(j, {"type", "factors"}, where);
    const json& factors = required(j, "factors", where);
    if (!factors.is_array() || factors.empty()) schema(where + ".factors must be a nonempty array");
    for (std::size_t i = 0; i < factors.size(); ++i) {
      g.factors.push_back(group_from(factors[i], where + ".factors[" + std::to_string(i) + "]"));
    }
  } else if (g.type == "custom") {
    reject_unknown(j, {"type", "rank", "roots", "simple_roots", "form", "central_directions"}, where);
    g.size = size_from(required(j, "rank", where), where + ".rank");
    g.roots = matrix_from(required(j, "roots", where), where + ".roots");
    g.simple_roots = matrix_from(required(j, "simple_roots", where), where + ".simple_roots");
    g.form = matrix_from(required(j, "form", where), where + ".form");
    if (j.contains("central_directions")) {
      g.central_directions = matrix_from(j["central_directions"], where + ".central_directions");
    }
  } else {
    schema(where + ".type \"" + g.type + "\" is not one of gl, sl, torus, product, custom");
  }
  return g;
}

json group_to_json(const GroupSpec& g) {
  json j;
  j["type"] = g.type;
  if (g.type == "torus") {
    j["rank"] = g.size;
  } else if (g.type == "gl" || g.type == "sl") {
    j["n"] = g.size;
  } else if (g.type == "product") {
    j["factors"] = json::array();
    for (const auto& f : g.factors) j["factors"].push_back(group_to_json(f));
  } else {
    j["rank"] = g.size;
    auto matrix = [](const RationalMatrix& m) {
      json out = json::array();
      for (const auto& row : m) out.push_back(to_json(row));
      return out;
    };
    j["roots"] = matrix(g.roots);
    j["simple_roots"] = matrix(g.simple_roots);
    j["form"] = matrix(g.form);
    if (!g.central_directions.empty()) j["central_directions"] = matrix(g.central_directions);
  }
  return j;
}

std::string enum_string(const json& j, const std::string& where) {
  if (!j.is_string()) schema(where + " must be a string");
  return j.get<std::string>();
}

json index_list(const std::vector<std::size_t>& xs) {
  json out = json::array();
  for (auto x : xs) out.push_back(x);
  return out;
}

std::string join_indices(const std::vector<std::size_t>& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + std::to_string(xs[i]);
  return out + "}";
}

std::string semigroup_text(const NumericalSemigroup& s) {
  return s.is_trivial() ? "{0}" : forbidden_set_description(s, 0).render();
}

json stratum_json(const StratumVerdict& v) {
  const KNStratum& st = v.stratum;
  json j;
  j["beta"] = to_json(st.beta);
  j["beta_dominant"] = to_json(st.beta_dominant);
  j["direction"] = to_json(st.direction);
  j["q_norm"] = to_json(st.q_norm);
  j["defining_subset"] = index_list(st.defining_subset);
  j["v_plus"] = index_list(st.split.plus);
  j["v_zero"] = index_list(st.split.zero);
  j["v_minus"] = index_list(st.split.minus);
  j["half_abs_sum"] = to_json(v.shift.half_abs_sum);
  j["n_minus_sum"] = to_json(v.shift.n_minus_sum);
  j["shift"] = to_json(v.shift.shift);
  j["slice_weights"] = to_json(v.shift.slice_weights);
  j["semigroup"] = {{"generators", to_json(v.shift.semigroup_generators)},
                    {"set", to_json(forbidden_set_description(v.semigroup, 0))}};
  return j;
}

std::string witness_text(const Witness& w) {
  std::ostringstream os;
  os << to_string(w.value) << " = " << to_string(w.shift);
  for (std::size_t i = 0; i < w.counts.size(); ++i) {
    if (w.counts[i] == 0) continue;
    os << " + " << w.counts[i].get_str() << "*" << to_string(w.generators[i]);
  }
  return os.str();
}

std::string_view command_name(Command c) {
  switch (c) {
    case Command::Strata: return "strata";
    case Command::Check: return "check";
    case Command::Forbidden: return "forbidden";
  }
  return "?";
}

}  // namespace

std::string_view to_string(WeightMode mode) noexcept { return mode == WeightMode::Raw ? "raw" : "cotangent"; }

std::string_view to_string(Orientation orientation) noexcept {
  switch (orientation) {
    case Orientation::Negative: return "negative";
    case Orientation::Positive: return "positive";
    case Orientation::Both: return "both";
  }
  return "?";
}

std::string_view to_string(Strictness strictness) noexcept {
  return strictness == Strictness::FullV ? "full_V" : "slice";
}

Orientation parse_orientation(std::string_view text) {
  if (text == "negative") return Orientation::Negative;
  if (text == "positive") return Orientation::Positive;
  if (text == "both") return Orientation::Both;
  schema("orientation must be negative, positive or both");
}

json to_json(const Rational& x) { return to_string(x); }

json to_json(const RationalVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

json to_json(const SetDescription& d) {
  return {{"offset", to_string(d.offset)}, {"modulus", to_string(d.modulus)}, {"gaps", d.gaps},
          {"conductor", d.conductor},      {"empty", d.empty},                {"all", d.all}};
}

SetDescription set_description_from_json(const json& j) {
  object_at(j, "set description");
  reject_unknown(j, {"offset", "modulus", "gaps", "conductor", "empty", "all"}, "set description");
  SetDescription d;
  d.offset = rational_from(required(j, "offset", "set description"), "offset");
  d.modulus = rational_from(required(j, "modulus", "set description"), "modulus");
  const json& gaps = required(j, "gaps", "set description");
  if (!gaps.is_array()) schema("gaps must be an array");
  for (const auto& g : gaps) d.gaps.push_back(size_from(g, "gap"));
  d.conductor = size_from(required(j, "conductor", "set description"), "conductor");
  const json& empty = required(j, "empty", "set description");
  if (!empty.is_boolean()) schema("empty must be a boolean");
  d.empty = empty.get<bool>();
  if (j.contains("all")) {
    if (!j["all"].is_boolean()) schema("all must be a boolean");
    d.all = j["all"].get<bool>();
  }
  return d;
}

ProblemFile parse_problem(const json& j) {
  const std::string where = "problem";
  object_at(j, where);
  reject_unknown(j, {"knx_version", "group", "weights", "mode", "chi", "c", "orientation", "drop_strata", "strictness",
                     "translation", "notes"},
                 where);
  ProblemFile f;
  const json& version = required(j, "knx_version", where);
  if (!version.is_number_integer() || version.get<int>() != 1) schema("knx_version must be 1");
  f.knx_version = 1;
  f.group = group_from(required(j, "group", where), "group");
  f.weights = matrix_from(required(j, "weights", where), "weights");
  if (f.weights.empty()) schema("weights must list at least one weight");
  if (j.contains("mode")) {
    const std::string mode = enum_string(j["mode"], "mode");
    if (mode == "cotangent") {
      f.mode = WeightMode::Cotangent;
    } else if (mode == "raw") {
      f.mode = WeightMode::Raw;
    } else {
      schema("mode must be cotangent or raw");
    }
  }
  f.chi = vector_from(required(j, "chi", where), "chi");
  if (j.contains("c")) {
    const json& c = object_at(j["c"], "c");
    reject_unknown(c, {"base", "direction"}, "c");
    f.c_base = vector_from(required(c, "base", "c"), "c.base");
    if (c.contains("direction")) f.c_direction = vector_from(c["direction"], "c.direction");
  }
  if (j.contains("orientation")) f.orientation = parse_orientation(enum_string(j["orientation"], "orientation"));
  if (j.contains("drop_strata")) f.drop_strata = matrix_from(j["drop_strata"], "drop_strata");
  if (j.contains("strictness")) {
    const std::string s = enum_string(j["strictness"], "strictness");
    if (s == "slice") {
      f.strictness = Strictness::Slice;
    } else if (s == "full_V") {
      f.strictness = Strictness::FullV;
    } else {
      schema("strictness must be slice or full_V");
    }
  }
  if (j.contains("translation")) f.translation = rational_from(j["translation"], "translation");
  if (j.contains("notes")) {
    if (!j["notes"].is_array()) schema("notes must be an array of strings");
    for (const auto& n : j["notes"]) f.notes.push_back(enum_string(n, "notes"));
  }
  return f;
}

ProblemFile parse_problem_text(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    schema(std::string("invalid JSON: ") + e.what());
  }
  return parse_problem(j);
}

ProblemFile load_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) schema("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_text(buf.str());
}

json render_problem(const ProblemFile& f) {
  json j;
  j["knx_version"] = f.knx_version;
  j["group"] = group_to_json(f.group);
  j["weights"] = json::array();
  for (const auto& w : f.weights) j["weights"].push_back(to_json(w));
  j["mode"] = std::string(to_string(f.mode));
  j["chi"] = to_json(f.chi);
  if (!f.c_base.empty() || f.c_direction) {
    j["c"] = {{"base", to_json(f.c_base)}};
    if (f.c_direction) j["c"]["direction"] = to_json(*f.c_direction);
  }
  j["orientation"] = std::string(to_string(f.orientation));
  if (!f.drop_strata.empty()) {
    j["drop_strata"] = json::array();
    for (const auto& d : f.drop_strata) j["drop_strata"].push_back(to_json(d));
  }
  j["strictness"] = std::string(to_string(f.strictness));
  if (f.translation) j["translation"] = to_json(*f.translation);
  if (!f.notes.empty()) j["notes"] = f.notes;
  return j;
}

GroupData build_group(const GroupSpec& spec) {
  if (spec.type == "torus") return preset_torus(spec.size);
  if (spec.type == "gl") return preset_gl(spec.size);
  if (spec.type == "sl") return preset_sl(spec.size);
  if (spec.type == "product") {
    std::vector<GroupData> factors;
    for (const auto& f : spec.factors) factors.push_back(build_group(f));
    return preset_product(factors);
  }
  if (spec.type == "custom") {
    return GroupData(spec.size, spec.roots, spec.simple_roots, GramForm(spec.form), "custom", spec.central_directions);
  }
  throw Error(ErrorKind::Schema, "unknown group type " + spec.type);
}

ExactnessProblem to_problem(const ProblemFile& f) {
  GroupData g = build_group(f.group);
  const std::size_t r = g.rank();
  WeightSystem ws{f.weights, f.mode};
  LieCharacter c{f.c_base.empty() ? zero_vector(r) : f.c_base, f.c_direction};
  ExactnessProblem p{std::move(g), std::move(ws), TorusCharacter{f.chi, true}, std::move(c)};
  p.orientation = f.orientation;
  p.dropped_strata = f.drop_strata;
  p.strictness = f.strictness;
  p.translation = f.translation;
  p.notes = f.notes;
  return p;
}

ExactnessVerdict survey(const ExactnessProblem& problem) {
  ExactnessVerdict out;
  out.notes = problem.notes;
  for (const auto& st : kept_strata(problem, &out.semistable_nonempty)) {
    StratumVerdict v = evaluate_stratum(st, problem);
    v.witness.reset();
    out.per_stratum.push_back(std::move(v));
  }
  return out;
}

ExactnessVerdict run(Command command, const ExactnessProblem& problem) {
  switch (command) {
    case Command::Strata: return survey(problem);
    case Command::Check: return check(problem);
    case Command::Forbidden: return forbidden(problem);
  }
  throw Error(ErrorKind::InvalidParameter, "unknown command");
}

std::string text_report(Command command, const ExactnessProblem& problem, const ExactnessVerdict& verdict) {
  std::ostringstream os;
  os << "knx " << command_name(command) << "\n";
  os << "group " << problem.group.label() << ", mode " << to_string(problem.weights.mode) << ", orientation "
     << to_string(problem.orientation) << ", strictness " << to_string(problem.strictness) << "\n";
  os << "dropped strata:";
  if (problem.dropped_strata.empty()) os << " none";
  for (const auto& d : problem.dropped_strata) os << " " << to_string(d);
  os << "\n";
  os << "semistable locus: " << (verdict.semistable_nonempty ? "nonempty" : "empty") << "\n";
  os << "strata: " << verdict.per_stratum.size() << "\n";
  for (std::size_t i = 0; i < verdict.per_stratum.size(); ++i) {
    const StratumVerdict& v = verdict.per_stratum[i];
    const KNStratum& st = v.stratum;
    os << "  [" << i + 1 << "] beta " << to_string(st.beta_dominant) << "  q " << to_string(st.q_norm) << "  subset "
       << join_indices(st.defining_subset) << "  V+/V0/V- " << st.split.plus.size() << "/" << st.split.zero.size()
       << "/" << st.split.minus.size() << "  shift " << to_string(v.shift.shift) << "  I " << semigroup_text(v.semigroup)
       << "\n";
    if (command == Command::Check) {
      os << "      c(beta) " << to_string(v.c_of_beta) << (v.pass ? "  pass" : "  FAIL");
      if (v.witness) os << "  witness " << witness_text(*v.witness);
      os << "\n";
    } else if (command == Command::Forbidden) {
      os << "      forbidden t: " << v.locus.render() << (v.constant_condition ? "  (constant in t)" : "") << "\n";
    }
  }
  if (command == Command::Check) os << "verdict: " << to_string(verdict.status) << "\n";
  if (command == Command::Forbidden) {
    os << "forbidden locus: " << verdict.union_rendering << "\n";
    if (problem.translation) {
      os << "translated by " << to_string(*problem.translation) << ": " << verdict.translated_union_rendering << "\n";
    }
  }
  for (const auto& n : verdict.notes) os << "note: " << n << "\n";
  return os.str();
}

json json_report(Command command, const ExactnessProblem& problem, const ExactnessVerdict& verdict) {
  json j;
  j["command"] = std::string(command_name(command));
  json dropped = json::array();
  for (const auto& d : problem.dropped_strata) dropped.push_back(to_json(d));
  j["provenance"] = {{"group", problem.group.label()},
                     {"mode", std::string(to_string(problem.weights.mode))},
                     {"orientation", std::string(to_string(problem.orientation))},
                     {"strictness", std::string(to_string(problem.strictness))},
                     {"dropped_strata", dropped}};
  j["semistable_nonempty"] = verdict.semistable_nonempty;
  j["strata"] = json::array();
  for (const auto& v : verdict.per_stratum) {
    json s = stratum_json(v);
    if (command == Command::Check) {
      s["c_of_beta"] = to_json(v.c_of_beta);
      s["pass"] = v.pass;
      if (v.witness) {
        json counts = json::array();
        for (const auto& c : v.witness->counts) counts.push_back(c.get_str());
        s["witness"] = {{"value", to_json(v.witness->value)},
                        {"shift", to_json(v.witness->shift)},
                        {"generators", to_json(v.witness->generators)},
                        {"counts", counts}};
      }
    } else if (command == Command::Forbidden) {
      s["locus"] = to_json(v.locus);
      s["constant_condition"] = v.constant_condition;
    }
    j["strata"].push_back(std::move(s));
  }
  if (command == Command::Check) j["verdict"] = {{"status", std::string(to_string(verdict.status))}};
  if (command == Command::Forbidden) {
    json loci = json::array();
    for (const auto& d : verdict.forbidden_locus) loci.push_back(to_json(d));
    j["verdict"] = {{"status", std::string(to_string(verdict.status))},
                    {"forbidden_locus", loci},
                    {"union", verdict.union_rendering}};
    if (problem.translation) {
      json translated = json::array();
      for (const auto& d : verdict.translated_locus) translated.push_back(to_json(d));
      j["verdict"]["translation"] = to_json(*problem.translation);
      j["verdict"]["translated_locus"] = translated;
      j["verdict"]["translated_union"] = verdict.translated_union_rendering;
    }
  }
  j["notes"] = verdict.notes;
  return j;
}

std::string text_report(const std::vector<LabeledOracleReport>& reports) {
  std::ostringstream os;
  std::size_t failures = 0;
  for (const auto& [label, r] : reports) {
    os << label << ": " << r.summary() << "\n";
    for (const auto& m : r.mismatches) os << "  mismatch: " << m << "\n";
    if (!r.agree) ++failures;
  }
  if (failures == 0) {
    const std::size_t n = reports.empty() ? 0 : reports.front().second.epsilon_values.size();
    os << "all subsets agree at " << n << " epsilon values\n";
  } else {
    os << failures << " of " << reports.size() << " problems disagree\n";
  }
  return os.str();
}

json json_report(const std::vector<LabeledOracleReport>& reports) {
  json j;
  j["command"] = "oracle";
  j["problems"] = json::array();
  bool agree = true;
  for (const auto& [label, r] : reports) {
    json strata_main = json::array();
    json strata_oracle = json::array();
    for (const auto& b : r.main_strata) strata_main.push_back(to_json(b));
    for (const auto& b : r.oracle_strata) strata_oracle.push_back(to_json(b));
    j["problems"].push_back({{"label", label},
                             {"agree", r.agree},
                             {"subsets_enumerated", r.subsets_enumerated},
                             {"candidates_checked", r.candidates_checked},
                             {"epsilon_values", to_json(r.epsilon_values)},
                             {"main_strata", strata_main},
                             {"oracle_strata", strata_oracle},
                             {"main_semistable", r.main_semistable},
                             {"oracle_semistable", r.oracle_semistable},
                             {"mismatches", r.mismatches}});
    agree = agree && r.agree;
  }
  j["agree"] = agree;
  return j;
}

}  // namespace knx
