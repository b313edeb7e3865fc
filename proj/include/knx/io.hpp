#pragma once

// Problem files (JSON, rationals as strings) and the text/JSON reports.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "knx/exactness.hpp"
#include "knx/oracle.hpp"

namespace knx {

/// Group descriptor as written in a problem file.
///   {"type": "torus", "rank": r} | {"type": "gl"|"sl", "n": n}
///   {"type": "product", "factors": [...]}
///   {"type": "custom", "rank": r, "roots": [...], "simple_roots": [...],
///    "form": [[...]], "central_directions": [...] (optional)}
struct GroupSpec {
  std::string type;
  std::size_t size = 0;  // rank or n
  std::vector<GroupSpec> factors;
  RationalMatrix roots;
  RationalMatrix simple_roots;
  RationalMatrix form;
  RationalMatrix central_directions;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

struct ProblemFile {
  int knx_version = 1;
  GroupSpec group;
  RationalMatrix weights;
  WeightMode mode = WeightMode::Cotangent;
  RationalVector chi;
  RationalVector c_base;  // empty: zero
  std::optional<RationalVector> c_direction;
  Orientation orientation = Orientation::Negative;
  RationalMatrix drop_strata;
  Strictness strictness = Strictness::Slice;
  std::optional<Rational> translation;
  std::vector<std::string> notes;

  friend bool operator==(const ProblemFile&, const ProblemFile&) = default;
};

/// Schema errors (unknown keys, non-string rationals, missing keys, bad
/// enum values) throw Error(Schema).
ProblemFile parse_problem(const nlohmann::json& j);
ProblemFile parse_problem_text(std::string_view text);
ProblemFile load_problem_file(const std::filesystem::path& path);
nlohmann::json render_problem(const ProblemFile& file);

GroupData build_group(const GroupSpec& spec);
/// Semantic validation happens here (InvalidParameter and friends).
ExactnessProblem to_problem(const ProblemFile& file);

std::string_view to_string(WeightMode mode) noexcept;
std::string_view to_string(Orientation orientation) noexcept;
std::string_view to_string(Strictness strictness) noexcept;
Orientation parse_orientation(std::string_view text);

nlohmann::json to_json(const Rational& x);
nlohmann::json to_json(const RationalVector& v);
nlohmann::json to_json(const SetDescription& d);
SetDescription set_description_from_json(const nlohmann::json& j);

enum class Command { Strata, Check, Forbidden };

/// Per-stratum data for every kept stratum, with no verdict applied.
ExactnessVerdict survey(const ExactnessProblem& problem);

/// Runs the command on the problem and returns its verdict.
ExactnessVerdict run(Command command, const ExactnessProblem& problem);

std::string text_report(Command command, const ExactnessProblem& problem, const ExactnessVerdict& verdict);
nlohmann::json json_report(Command command, const ExactnessProblem& problem, const ExactnessVerdict& verdict);

using LabeledOracleReport = std::pair<std::string, OracleReport>;
std::string text_report(const std::vector<LabeledOracleReport>& reports);
nlohmann::json json_report(const std::vector<LabeledOracleReport>& reports);

}  // namespace knx
