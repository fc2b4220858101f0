#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oscact/actions.hpp"
#include "oscact/cli.hpp"

using namespace oscact;
using namespace oscact::cli;
using nlohmann::json;

namespace {

struct Captured {
  int exit_code = -1;
  std::string out;
  std::string err;
};

Captured run(const RunConfig& config) {
  std::ostringstream out, err;
  Captured c;
  c.exit_code = run_command(config, out, err);
  c.out = out.str();
  c.err = err.str();
  return c;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string f;
  while (std::getline(is, f, ',')) out.push_back(f);
  return out;
}

double to_double(const std::string& s) {
  double v = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

// Minimal structural validator for the subset of JSON Schema the shipped
// schema file uses: type, const, enum, required, properties,
// additionalProperties (boolean), items, oneOf and #/$defs/ refs.
bool validates(const json& schema, const json& value, const json& root);

bool type_matches(const std::string& type, const json& value) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "number") return value.is_number();
  if (type == "boolean") return value.is_boolean();
  if (type == "null") return value.is_null();
  return false;
}

bool validates(const json& schema, const json& value, const json& root) {
  if (schema.contains("$ref")) {
    const std::string ref = schema["$ref"].get<std::string>();
    const std::string prefix = "#/$defs/";
    REQUIRE(ref.rfind(prefix, 0) == 0);
    return validates(root["$defs"][ref.substr(prefix.size())], value, root);
  }
  if (schema.contains("oneOf")) {
    int hits = 0;
    for (const json& alt : schema["oneOf"])
      if (validates(alt, value, root)) ++hits;
    return hits == 1;
  }
  if (schema.contains("const") && value != schema["const"]) return false;
  if (schema.contains("enum")) {
    bool found = false;
    for (const json& e : schema["enum"])
      if (value == e) found = true;
    if (!found) return false;
  }
  if (schema.contains("type")) {
    const json& t = schema["type"];
    if (t.is_string()) {
      if (!type_matches(t.get<std::string>(), value)) return false;
    } else {
      bool any = false;
      for (const json& alt : t)
        if (type_matches(alt.get<std::string>(), value)) any = true;
      if (!any) return false;
    }
  }
  if (value.is_object()) {
    if (schema.contains("required"))
      for (const json& key : schema["required"])
        if (!value.contains(key.get<std::string>())) return false;
    if (schema.contains("properties")) {
      for (const auto& [key, sub] : value.items()) {
        if (schema["properties"].contains(key)) {
          if (!validates(schema["properties"][key], sub, root)) return false;
        } else if (schema.value("additionalProperties", json(true)) == json(false)) {
          return false;
        }
      }
    }
  }
  if (value.is_array() && schema.contains("items"))
    for (const json& item : value)
      if (!validates(schema["items"], item, root)) return false;
  return true;
}

json load_schema() {
  std::ifstream in(std::string(OSCACT_SOURCE_DIR) + "/schemas/oscact-output.schema.json");
  REQUIRE(in.good());
  return json::parse(in);
}

}  // namespace

TEST_CASE("parse_grid and make_grid") {
  const GridSpec spec = parse_grid("0.5:5:10");
  CHECK(spec.start == 0.5);
  CHECK(spec.stop == 5.0);
  CHECK(spec.count == 10);
  CHECK(make_grid(spec).size() == 10);

  GridSpec logspec = parse_grid("0.1:10:64");
  logspec.log = true;
  const auto grid = make_grid(logspec);
  CHECK(grid.front() == 0.1);
  CHECK(grid.back() == 10.0);

  CHECK_THROWS_AS(parse_grid("1:2"), ArgumentError);
  CHECK_THROWS_AS(parse_grid("1:2:1"), ArgumentError);
  CHECK_THROWS_AS(parse_grid("a:2:5"), ArgumentError);
  CHECK_THROWS_AS(make_grid(parse_points("3,1,2")), ArgumentError);
  CHECK(make_grid(parse_points("-2,-1,0.5")).size() == 3);
}

TEST_CASE("parse_lambda_list") {
  const auto ls = parse_lambda_list("1,2.5,inf");
  REQUIRE(ls.size() == 3);
  CHECK(ls[0].value() == 1.0);
  CHECK(ls[1].value() == 2.5);
  CHECK(ls[2].is_infinite());
  CHECK_THROWS_AS(parse_lambda_list("1,,2"), ArgumentError);
}

TEST_CASE("parse_resistance") {
  CHECK(parse_resistance("50").kind() == ResistanceModel::Kind::constant);
  CHECK(parse_resistance("50").r() == 50.0);
  CHECK(parse_resistance("constant:R=75").r() == 75.0);
  const ResistanceModel rlc = parse_resistance("rlc:R=100,L=1,C=0.01");
  CHECK(rlc.kind() == ResistanceModel::Kind::parallel_rlc);
  CHECK(rlc.quality_factor() == doctest::Approx(10.0));
  CHECK_THROWS_AS(parse_resistance("rlc:R=100,L=1"), ArgumentError);
  CHECK_THROWS_AS(parse_resistance("bogus"), ArgumentError);
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.5, 1.0 / 3.0, 1e300, 1e-300, -0.1, 1.0819767068693265}) {
    const std::string s = format_double(v);
    CHECK(to_double(s) == v);
  }
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("action command: csv schema and values") {
  RunConfig c;
  c.command = Command::action;
  c.seed = Family::planck;
  c.grid = parse_grid("0.5:5:10");
  const Captured r = run(c);
  CHECK(r.exit_code == kExitOk);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 11);
  CHECK(ls[0] == "x,f,f_prime");
  CHECK(to_double(fields(ls[1])[1]) == doctest::Approx(planck_action(0.5, 1.0)));
}

TEST_CASE("action command: general family has the odd middle row") {
  RunConfig c;
  c.command = Command::action;
  c.seed = Family::general_zero_mode;
  c.A = 0.5;
  c.B = 0.5;
  c.grid = parse_grid("-2:2:5");
  const Captured r = run(c);
  CHECK(r.exit_code == kExitOk);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 6);
  const auto mid = fields(ls[3]);
  CHECK(to_double(mid[0]) == 0.0);
  CHECK(to_double(mid[1]) == 0.0);
}

TEST_CASE("action command: singular grid point, strict vs permissive") {
  RunConfig c;
  c.command = Command::action;
  c.seed = Family::planck;
  c.grid = parse_grid("-1:1:3");

  const Captured strict = run(c);
  CHECK(strict.exit_code == kExitValidation);
  CHECK(strict.err.find("x = 0") != std::string::npos);

  c.strict = false;
  const Captured permissive = run(c);
  CHECK(permissive.exit_code == kExitOk);
  const auto ls = lines(permissive.out);
  REQUIRE(ls.size() == 4);
  CHECK(ls[2] == "0,nan,nan");
  CHECK(permissive.err.find("singular") != std::string::npos);
}

TEST_CASE("action command: omega adds the U column") {
  RunConfig c;
  c.command = Command::action;
  c.seed = Family::vacuum;
  c.omega = 2.0;
  c.grid = parse_grid("0:1:3");
  const Captured r = run(c);
  const auto ls = lines(r.out);
  CHECK(ls[0] == "x,f,f_prime,U");
  CHECK(to_double(fields(ls[1])[3]) == 1.0);
}

TEST_CASE("family command: constant fermionic branch and seed reference") {
  RunConfig c;
  c.command = Command::family;
  c.seed = Family::vacuum;
  c.lambdas = parse_lambda_list("1");
  c.include_seed = true;
  c.grid = parse_grid("0:2:5");
  const Captured r = run(c);
  CHECK(r.exit_code == kExitOk);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 11);  // header + 5 x * 2 lambda
  CHECK(ls[0] == "x,lambda,f_g,V_1g,w_lambda,I0,v");
  for (size_t i = 1; i < ls.size(); i += 2) {
    const auto row = fields(ls[i]);
    CHECK(row[1] == "1");
    CHECK(to_double(row[2]) == -0.5);
  }
  for (size_t i = 2; i < ls.size(); i += 2) {
    const auto row = fields(ls[i]);
    CHECK(row[1] == "inf");
    CHECK(to_double(row[2]) == 0.5);
    CHECK(row[6] == "inf");  // v diverges on the seed member
  }
}

TEST_CASE("family command: planck seed with lambda = inf equals the action table") {
  RunConfig c;
  c.command = Command::family;
  c.seed = Family::planck;
  c.lambdas = {Lambda::infinity()};
  c.grid = parse_grid("0.5:5:10");
  const Captured r = run(c);
  CHECK(r.exit_code == kExitOk);
  const auto ls = lines(r.out);
  for (size_t i = 1; i < ls.size(); ++i) {
    const auto row = fields(ls[i]);
    CHECK(to_double(row[2]) == planck_action(to_double(row[0]), 1.0));
  }
}

TEST_CASE("family command: forbidden lambda exits 2 with a serialized bracket") {
  RunConfig c;
  c.command = Command::family;
  c.seed = Family::vacuum;
  c.lambdas = parse_lambda_list("0.5");
  c.grid = parse_grid("-2:2:41");
  const Captured r = run(c);
  CHECK(r.exit_code == kExitValidation);
  CHECK(r.out.empty());
  const json report = json::parse(r.err);
  CHECK(report["error"] == "validation");
  REQUIRE(report["violations"].size() == 1);
  const double lo = report["violations"][0]["lo"].get<double>();
  const double hi = report["violations"][0]["hi"].get<double>();
  CHECK(lo <= std::log(0.5));
  CHECK(hi >= std::log(0.5));
}

TEST_CASE("verify command: csv and json, exit codes") {
  RunConfig c;
  c.command = Command::verify;
  c.suite = Suite::riccati;
  const Captured csv = run(c);
  CHECK(csv.exit_code == kExitOk);
  CHECK(lines(csv.out)[0] == "suite,check,max_residual,tolerance,pass");

  c.output_format = OutputFormat::json;
  c.suite = Suite::all;
  const Captured js = run(c);
  CHECK(js.exit_code == kExitOk);
  const json doc = json::parse(js.out);
  CHECK(doc["overall"] == true);
  CHECK(doc["checks"].size() >= 30);
}

TEST_CASE("spectrum command: table shape and signs") {
  RunConfig c;
  c.command = Command::spectrum;
  c.seed = Family::vacuum;
  c.lambdas = parse_lambda_list("2,inf");
  c.grid = parse_grid("0.5:2:3");
  c.beta = 1.0;
  c.resistance = parse_resistance("1");
  const Captured r = run(c);
  CHECK(r.exit_code == kExitOk);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 7);
  CHECK(ls[0] == "omega,beta,lambda,R,P,regime");
  for (size_t i = 1; i < ls.size(); ++i) {
    const auto row = fields(ls[i]);
    if (row[2] == "2") {
      CHECK(to_double(row[4]) < 0.0);
      CHECK(row[5] == "fermionic");
    } else {
      CHECK(row[2] == "inf");
      CHECK(to_double(row[4]) > 0.0);
      CHECK(row[5] == "bosonic");
    }
  }
}

TEST_CASE("output determinism: identical configs produce byte-identical output") {
  RunConfig c;
  c.command = Command::family;
  c.seed = Family::vacuum;
  c.lambdas = parse_lambda_list("1.5,2,10,inf");
  c.grid = parse_grid("-6:6:25");
  const Captured a = run(c);
  const Captured b = run(c);
  CHECK(a.out == b.out);
  CHECK(a.exit_code == b.exit_code);

  c.output_format = OutputFormat::json;
  CHECK(run(c).out == run(c).out);
}

TEST_CASE("json outputs validate against the shipped schema") {
  const json schema = load_schema();

  RunConfig action;
  action.command = Command::action;
  action.seed = Family::planck;
  action.grid = parse_grid("-1:5:13");
  action.strict = false;
  action.omega = 2.0;
  action.output_format = OutputFormat::json;

  RunConfig family;
  family.command = Command::family;
  family.seed = Family::vacuum;
  family.lambdas = parse_lambda_list("1,2,inf");
  family.grid = parse_grid("-3:3:7");
  family.output_format = OutputFormat::json;

  RunConfig verify;
  verify.command = Command::verify;
  verify.suite = Suite::fdt;
  verify.output_format = OutputFormat::json;

  RunConfig spectrum;
  spectrum.command = Command::spectrum;
  spectrum.seed = Family::planck;
  spectrum.lambdas = parse_lambda_list("2,inf");
  spectrum.grid = parse_grid("0.5:2:4");
  spectrum.resistance = parse_resistance("rlc:R=100,L=1,C=0.01");
  spectrum.output_format = OutputFormat::json;

  for (const RunConfig& c : {action, family, verify, spectrum}) {
    const Captured r = run(c);
    REQUIRE(r.exit_code == kExitOk);
    const json doc = json::parse(r.out);
    CHECK(validates(schema, doc, schema));
  }

  // a document that names an unknown command must not validate
  json bogus;
  bogus["command"] = "bogus";
  CHECK_FALSE(validates(schema, bogus, schema));
}

TEST_CASE("argument errors exit 1") {
  RunConfig c;
  c.command = Command::action;
  c.seed = Family::planck;  // no grid at all
  const Captured r = run(c);
  CHECK(r.exit_code == kExitUsage);
}

TEST_CASE("OSCACT_OUTPUT_DIR resolves relative output paths") {
  CHECK(resolve_output_path("/abs/path.csv") == "/abs/path.csv");
  setenv("OSCACT_OUTPUT_DIR", "/tmp", 1);
  CHECK(resolve_output_path("rel.csv") == "/tmp/rel.csv");
  unsetenv("OSCACT_OUTPUT_DIR");
  CHECK(resolve_output_path("rel.csv") == "rel.csv");
}

TEST_CASE("end-to-end binary: exit code contract") {
  const char* bin = std::getenv("OSCACT_BIN");
  if (bin == nullptr) {
    MESSAGE("OSCACT_BIN not set; skipping binary spawn checks");
    return;
  }
  const std::string b(bin);
  const auto code = [](int status) { return WEXITSTATUS(status); };

  CHECK(code(std::system((b + " verify --suite riccati > /dev/null 2>&1").c_str())) == 0);
  CHECK(code(std::system((b + " --help > /dev/null 2>&1").c_str())) == 0);
  CHECK(code(std::system((b + " action --family bogus --grid 1:2:3 > /dev/null 2>&1").c_str())) ==
        1);
  CHECK(code(std::system((b + " nonsense > /dev/null 2>&1").c_str())) == 1);
  CHECK(code(std::system(
            (b + " family --seed vacuum --lambda 0.5 --grid -2:2:41 > /dev/null 2>&1").c_str())) ==
        2);
  CHECK(code(std::system(
            (b + " action --family planck --grid -1:1:3 > /dev/null 2>&1").c_str())) == 2);
}
