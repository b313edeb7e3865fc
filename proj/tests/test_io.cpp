#include <filesystem>

#include "doctest.h"
#include "knx/error.hpp"
#include "knx/io.hpp"

using namespace knx;
using nlohmann::json;

namespace {

const char* kValidProblem = R"({
  "knx_version": 1,
  "group": {"type": "torus", "rank": 1},
  "weights": [["1"], ["1"]],
  "chi": ["1"]
})";

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::InvalidParameter;
}

std::vector<std::filesystem::path> golden_problems() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(KNX_GOLDEN_DIR)) {
    const std::string name = e.path().filename().string();
    if (e.path().extension() == ".json" && name.rfind("malformed", 0) != 0 && name.rfind("empty", 0) != 0) {
      out.push_back(e.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("minimal problem parses with defaults") {
  const ProblemFile f = parse_problem_text(kValidProblem);
  CHECK(f.mode == WeightMode::Cotangent);
  CHECK(f.orientation == Orientation::Negative);
  CHECK(f.strictness == Strictness::Slice);
  const ExactnessProblem p = to_problem(f);
  CHECK(p.c.base == zero_vector(1));
  CHECK(p.group.rank() == 1);
}

TEST_CASE("schema violations") {
  auto with = [](const std::function<void(json&)>& edit) {
    json j = json::parse(kValidProblem);
    edit(j);
    return j;
  };
  const std::vector<std::pair<const char*, json>> bad{
      {"unknown key", with([](json& j) { j["extra"] = 1; })},
      {"float weight", with([](json& j) { j["weights"] = json::array({json::array({1.5})}); })},
      {"integer weight", with([](json& j) { j["weights"] = json::array({json::array({1})}); })},
      {"decimal string", with([](json& j) { j["chi"] = json::array({"1.5"}); })},
      {"missing version", with([](json& j) { j.erase("knx_version"); })},
      {"wrong version", with([](json& j) { j["knx_version"] = 2; })},
      {"empty weights", with([](json& j) { j["weights"] = json::array(); })},
      {"bad mode", with([](json& j) { j["mode"] = "symplectic"; })},
      {"bad orientation", with([](json& j) { j["orientation"] = "up"; })},
      {"bad strictness", with([](json& j) { j["strictness"] = "full"; })},
      {"bad group", with([](json& j) { j["group"] = {{"type", "e8"}}; })},
      {"group extra key", with([](json& j) { j["group"]["n"] = 2; })},
      {"negative rank", with([](json& j) { j["group"]["rank"] = -1; })},
      {"c extra key", with([](json& j) { j["c"] = {{"base", {"1"}}, {"slope", {"1"}}}; })},
      {"missing chi", with([](json& j) { j.erase("chi"); })},
  };
  for (const auto& [what, j] : bad) {
    CAPTURE(what);
    CHECK(kind_of([&] { (void)parse_problem(j); }) == ErrorKind::Schema);
  }
  CHECK(kind_of([] { (void)parse_problem_text("{not json"); }) == ErrorKind::Schema);
  CHECK(kind_of([] { (void)load_problem_file("/nonexistent/problem.json"); }) == ErrorKind::Schema);
}

TEST_CASE("semantic errors surface after parsing") {
  json j = json::parse(kValidProblem);
  j["chi"] = {"1", "2"};
  const ProblemFile f = parse_problem(j);
  CHECK(kind_of([&] { (void)check(to_problem(f)); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("golden problem files round-trip") {
  const auto files = golden_problems();
  CHECK(files.size() >= 11);
  for (const auto& path : files) {
    CAPTURE(path.string());
    const ProblemFile f = load_problem_file(path);
    CHECK(parse_problem(render_problem(f)) == f);
    CHECK(parse_problem_text(render_problem(f).dump()) == f);
  }
}

TEST_CASE("group descriptors") {
  json j = json::parse(kValidProblem);
  j["group"] = json::parse(R"({"type": "product", "factors": [{"type": "gl", "n": 2}, {"type": "torus", "rank": "1"}]})");
  j["weights"] = json::parse(R"([["1", "0", "1"], ["0", "1", "1"]])");
  j["chi"] = {"1", "1", "0"};
  ProblemFile f = parse_problem(j);
  CHECK(parse_problem(render_problem(f)) == f);
  const GroupData g = build_group(f.group);
  CHECK(g.rank() == 3);
  CHECK(g.roots().size() == 2);

  j["group"] = json::parse(R"({"type": "custom", "rank": 2, "roots": [["1", "-1"], ["-1", "1"]],
                                 "simple_roots": [["1", "-1"]], "form": [["1", "0"], ["0", "1"]]})");
  j["weights"] = json::parse(R"([["1", "0"]])");
  j["chi"] = {"1", "1"};
  f = parse_problem(j);
  CHECK(parse_problem(render_problem(f)) == f);
  CHECK(build_group(f.group).roots().size() == 2);
  // reflection in (1,0) sends (1,1) outside the root set
  j["group"]["roots"] = json::parse(R"([["1", "0"], ["-1", "0"], ["1", "1"], ["-1", "-1"]])");
  j["group"]["simple_roots"] = json::parse(R"([["1", "0"]])");
  f = parse_problem(j);
  CHECK_THROWS_AS(build_group(f.group), Error);
}

TEST_CASE("set descriptions round-trip through JSON") {
  SetDescription d;
  d.offset = make_rational(1, 2);
  d.modulus = make_rational(-1, 3);
  d.gaps = {1, 4};
  d.conductor = 5;
  CHECK(set_description_from_json(to_json(d)) == d);
  CHECK(to_json(d)["offset"] == "1/2");
  SetDescription all;
  all.all = true;
  CHECK(set_description_from_json(to_json(all)) == all);
  CHECK_THROWS_AS(set_description_from_json(json{{"offset", 1}}), Error);
}

TEST_CASE("reports") {
  const ExactnessProblem p = to_problem(load_problem_file(KNX_GOLDEN_DIR "/cherednik_n3.json"));
  const ExactnessVerdict strata = run(Command::Strata, p);
  const std::string text = text_report(Command::Strata, p, strata);
  const auto first = text.find("[1] beta (1, 0, 0)");
  const auto second = text.find("[2] beta (1, 1, 0)");
  const auto third = text.find("[3] beta (1, 1, 1)");
  CHECK(first != std::string::npos);
  CHECK(first < second);
  CHECK(second < third);
  CHECK(third != std::string::npos);

  for (Command c : {Command::Strata, Command::Forbidden}) {
    const json j = json_report(c, p, run(c, p));
    CHECK(json::parse(j.dump()) == j);
    CHECK(j["provenance"]["orientation"] == "positive");
    CHECK(j["strata"].size() == 3);
  }
  const json forb = json_report(Command::Forbidden, p, run(Command::Forbidden, p));
  CHECK(forb["verdict"]["union"] == "1/2 + (1/2)ℤ≥0 ∪ 1/2 + (1/3)ℤ≥0");
  CHECK(forb["verdict"]["translated_union"] == "(1/2)ℤ≥0 ∪ (1/3)ℤ≥0");
  CHECK(set_description_from_json(forb["verdict"]["forbidden_locus"][2]).modulus == make_rational(1, 3));

  const ExactnessProblem bad = to_problem(load_problem_file(KNX_GOLDEN_DIR "/cherednik_n2_check_t_3_2.json"));
  const json cj = json_report(Command::Check, bad, run(Command::Check, bad));
  CHECK(cj["verdict"]["status"] == "Violated");
  CHECK(cj["strata"][0]["witness"]["counts"] == json::array({"1"}));
  CHECK(cj["strata"][1]["witness"]["counts"] == json::array({"2"}));
}
