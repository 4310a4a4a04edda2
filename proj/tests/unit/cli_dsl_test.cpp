#include "doctest.h"
#include "json.hpp"
#include "stonedual/catalog.hpp"
#include "stonedual/dsl.hpp"

using namespace stonedual;
using namespace stonedual::dsl;

namespace {

const char* kFcFiniteSupport = R"({"algebra":{"kind":"fc","universe":"nat"},"ideal":{"kind":"finite-support","block":0}})";
const char* kKOmega = R"({"kind":"space","blocks":[{"kind":"k-omega"}]})";

std::string validation_invariant(const std::string& text) {
  try {
    parse_object(text);
  } catch (const ValidationError& e) {
    return e.invariant();
  }
  return "";
}

RunResult run_cmd(std::string verb, std::string input, Format format = Format::Human) {
  Command c;
  c.verb = std::move(verb);
  c.input = std::move(input);
  c.format = format;
  return run(c);
}

}  // namespace

TEST_CASE("parsing worked examples") {
  const Object fc = parse_object(R"({"kind":"fc","universe":"nat"})");
  REQUIRE(std::holds_alternative<Algebra>(fc));
  CHECK(std::get<Algebra>(fc) == Algebra::finite_cofinite());

  CHECK(validation_invariant(R"({"kind":"finite","atoms":["p","p"]})") == "MalformedDescriptor");
  CHECK(validation_invariant(R"({"algebra":{"kind":"finite","atoms":["p"]},"ideal":{"kind":"finite-support","block":0}})") ==
        "FiniteSupportOnNonFcBlock");
  CHECK(validation_invariant(R"({"kind":"product","factors":[{"kind":"product","factors":[]}]})") == "MalformedDescriptor");
  CHECK(validation_invariant(R"({"kind":"finite"})") == "schema");
  CHECK(validation_invariant(R"({"algebra":{"kind":"finite","atoms":["p"]},"ideal":{"kind":"principal","gen":{"atoms":["z"]}}})") ==
        "ForeignElement");
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_object("{\n  \"kind\": \"fc\",\n  \"universe\" \"nat\"\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 1);
  }
}

TEST_CASE("objects of every kind parse") {
  CHECK(kind_name(parse_object(kFcFiniteSupport)) == "ideal");
  CHECK(kind_name(parse_object(kKOmega)) == "space");
  CHECK(kind_name(parse_object(R"({"kind":"set","size":3})")) == "set");
  CHECK(kind_name(parse_object(R"({"kind":"function","map":[0,0],"target":1})")) == "function");
  CHECK(kind_name(parse_object(
            R"({"algebra":{"kind":"finite","atoms":["p","q"]},"points":{"blocks":[{"set":["p"]}]}})")) == "pair");
  const Object h = parse_object(R"({"kind":"homomorphism","domain":{"kind":"finite","atoms":["p","q"]},
      "codomain":{"kind":"finite","atoms":["u"]},"dual":[{"table":[{"from":"u","to":{"kind":"atom","id":"p"}}]}]})");
  REQUIRE(std::holds_alternative<Homomorphism>(h));
  const auto& phi = std::get<Homomorphism>(h);
  CHECK(phi(phi.domain().from_labels({"p"})) == phi.codomain().top());
  const Object f = parse_object(R"({"kind":"space-map","source":{"blocks":[{"kind":"k-omega"}]},
      "target":{"blocks":[{"kind":"k-omega"}]},"rule":[{"table":[{"from":0,"to":{"kind":"free"}}],"default":{"kind":"identity","block":0}}]})");
  REQUIRE(std::holds_alternative<SpaceMap>(f));
  CHECK(std::get<SpaceMap>(f)(Point::at(0, 0)) == Point::limit(0));
  CHECK(validation_invariant(R"({"kind":"function","map":[2],"target":1})") == "MalformedMorphism");
}

TEST_CASE("render then parse is the identity on the catalog") {
  const Catalog& cat = builtin_catalog();
  std::vector<Object> objects;
  for (const auto& a : cat.algebras) objects.emplace_back(a.algebra);
  for (const auto& p : cat.pairs) objects.emplace_back(PairObject{p.algebra, p.points});
  for (const auto& l : cat.lba_pairs) objects.emplace_back(l.ideal);
  for (const auto& s : cat.spaces) objects.emplace_back(s.space);
  for (const auto& a : cat.algebras) {
    if (a.algebra.is_finite() && a.algebra.cardinality() <= 16) {
      for (const Homomorphism& h : all_homomorphisms(a.algebra, a.algebra)) objects.emplace_back(h);
    }
  }
  for (const auto& s : cat.spaces) {
    if (s.representable) objects.emplace_back(SpaceMap::identity(s.space));
  }
  objects.emplace_back(FiniteSet{4});
  objects.emplace_back(FiniteFunction{{2, 0, 2}, 3});
  for (const Object& o : objects) {
    const std::string text = render(o);
    CHECK_MESSAGE(parse_object(text) == o, text);
    CHECK_MESSAGE(render(parse_object(text)) == text, text);
  }
  CHECK(objects.size() > 40);
}

TEST_CASE("ideal rendering covers every representation") {
  const Algebra a = Algebra::product({Factor::finite_cofinite(), Factor::finite({"p", "q"}), Factor::finite_cofinite()});
  const std::vector<Ideal> ideals = {
      Ideal::full(a), Ideal::finite_support(a, 2), Ideal::principal(a, a.atom(1, 0)),
      Ideal::from_blocks(a, {BlockIdeal{BlockIdeal::Kind::FiniteSupport, {}}, BlockIdeal{BlockIdeal::Kind::Principal, Subset::single(1)},
                             BlockIdeal{BlockIdeal::Kind::FiniteSupport, {}}})};
  for (const Ideal& i : ideals) CHECK(std::get<Ideal>(parse_object(render(Object{i}))) == i);
}

TEST_CASE("command examples") {
  SUBCASE("zlba on the finite-support ideal fails with the evens witness") {
    Command c;
    c.verb = "check";
    c.law = "zlba";
    c.input = kFcFiniteSupport;
    const RunResult human = run(c);
    CHECK(human.exit_code == 1);
    CHECK(human.output.find("finite subsets of evens") != std::string::npos);
    c.format = Format::Json;
    const RunResult json = run(c);
    CHECK(json.exit_code == 1);
    const auto j = nlohmann::json::parse(json.output);
    CHECK(j.at("lba") == true);
    CHECK(j.at("zlba") == false);
    CHECK(j.at("witness").get<std::string>().find("finite subsets of evens") == 0);
  }
  SUBCASE("theta-t on the one-point compactification") {
    Command c;
    c.verb = "dual";
    c.functor = "theta-t";
    c.input = kKOmega;
    c.format = Format::Json;
    const RunResult r = run(c);
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    CHECK(j.at("algebra") == nlohmann::json::parse(R"({"kind":"fc","universe":"nat"})"));
    CHECK(j.at("ideal") == nlohmann::json::parse(R"({"kind":"full"})"));
  }
  SUBCASE("roundtrip over the catalog") {
    Command c;
    c.verb = "roundtrip";
    c.pair = "E";
    const RunResult r = run(c);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"pass\":false") == std::string::npos);
  }
  SUBCASE("input errors exit with 2") {
    CHECK(run_cmd("validate", R"({"kind":"finite","atoms":["p","p"]})").exit_code == 2);
    CHECK(run_cmd("validate", R"({"kind":"fc")").exit_code == 2);
    CHECK(run_cmd("validate", "/nonexistent/file.json").exit_code == 2);
    CHECK(run_cmd("validate", "").exit_code == 2);
    Command c;
    c.verb = "dual";
    c.functor = "E";
    c.input = R"({"algebra":{"kind":"fc","universe":"nat"},"points":{"blocks":[{"mode":"cofinite","set":[],"free":false}]}})";
    CHECK(run(c).exit_code == 2);  // not ldz
    c.functor = "theta-t";
    c.input = R"({"blocks":[{"kind":"discrete-omega"}]})";
    CHECK(run(c).exit_code == 2);
  }
  SUBCASE("catalog lists the worked examples") {
    const RunResult r = run_cmd("catalog", "", Format::Json);
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    CHECK(j.at("version") == kCatalogVersion);
    CHECK(j.at("algebras").size() == builtin_catalog().algebras.size());
    CHECK(j.at("ideals").size() == builtin_catalog().lba_pairs.size());
  }
}

TEST_CASE("exit codes do not depend on the output format") {
  const std::vector<std::pair<std::string, std::string>> checks = {
      {"zlba", kFcFiniteSupport},
      {"lba", kFcFiniteSupport},
      {"dense", kFcFiniteSupport},
      {"simple", kFcFiniteSupport},
      {"dz", R"({"algebra":{"kind":"fc","universe":"nat"},"points":{"blocks":[{"mode":"cofinite","set":[],"free":false}]}})"},
      {"z", R"({"algebra":{"kind":"finite","atoms":["p","q"]},"points":{"blocks":[{"set":["p"]}]}})"},
      {"ldz", R"({"algebra":{"kind":"finite","atoms":["p","q"]},"points":{"blocks":[{"set":["p","q"]}]}})"},
      {"stone", R"({"algebra":{"kind":"fc","universe":"nat"},"points":{"blocks":[{"mode":"cofinite","set":[],"free":true}]}})"},
      {"iota", R"({"kind":"finite","atoms":["p","q","r"]})"},
      {"coherence", kKOmega},
      {"zlba", "{broken"},
  };
  const std::vector<int> expected = {1, 0, 0, 1, 1, 1, 0, 0, 0, 0, 2};
  for (std::size_t i = 0; i < checks.size(); ++i) {
    Command c;
    c.verb = "check";
    c.law = checks[i].first;
    c.input = checks[i].second;
    const int human = run(c).exit_code;
    c.format = Format::Json;
    const RunResult json = run(c);
    CHECK_MESSAGE(human == expected[i], checks[i].first);
    CHECK_MESSAGE(json.exit_code == human, checks[i].first);
    CHECK_NOTHROW(nlohmann::json::parse(json.output));
  }
}

TEST_CASE("every functor is reachable") {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"F", kKOmega},
      {"G", R"({"algebra":{"kind":"fc","universe":"nat"},"points":{"blocks":[{"mode":"cofinite","set":[],"free":true}]}})"},
      {"E", R"({"algebra":{"kind":"finite","atoms":["p"]},"points":{"blocks":[{"set":["p"]}]}})"},
      {"Ep", R"({"algebra":{"kind":"fc","universe":"nat"},"ideal":{"kind":"full"}})"},
      {"Fp", R"({"algebra":{"kind":"finite","atoms":["p"]},"points":{"blocks":[{"set":["p"]}]}})"},
      {"Gp", R"({"algebra":{"kind":"finite","atoms":["p"]},"points":{"blocks":[{"set":["p"]}]}})"},
      {"theta-t", kKOmega},
      {"theta-a", R"({"algebra":{"kind":"fc","universe":"nat"},"ideal":{"kind":"full"}})"},
      {"P", R"({"kind":"set","size":3})"},
      {"At", R"({"kind":"finite","atoms":["p","q"]})"},
  };
  for (const auto& [functor, input] : cases) {
    Command c;
    c.verb = "dual";
    c.functor = functor;
    c.input = input;
    c.format = Format::Json;
    const RunResult r = run(c);
    CHECK_MESSAGE(r.exit_code == 0, functor << ": " << r.output);
  }
}
