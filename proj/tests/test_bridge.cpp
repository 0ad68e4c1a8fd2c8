#include <doctest.h>

#include <random>

#include "atlstit/bridge.hpp"
#include "fixtures.hpp"

using namespace atlstit;

namespace {

std::vector<Cgs> random_models(std::size_t n, std::uint64_t base, std::size_t states = 3) {
  std::vector<Cgs> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_cgs({states, 2, 2, 2, base + i}));
  return out;
}

ProofScript two_line(const char* second) {
  return parse_proof_script(std::string(R"([
    {"formula": "<<a>> X true", "by": {"kind": "axiom", "schema": "top", "A": ["a"]}},
    {"formula": ")") + second + R"(", "by": {"kind": "gnec", "line": 1}}])");
}

// Validity of Tr(f) at the root of every canonical lasso and of f under eval_atl.
bool valid_on(const std::vector<Cgs>& models, const AtlFormula& f) {
  const SxFormula tr = translate(f);
  for (const Cgs& g : models) {
    if (!eval_atl(g, f).is_full()) return false;
    SxEvaluator ev(g);
    for (std::size_t w = 0; w < g.num_states(); ++w)
      if (!ev.eval(tr, root_index(g, canonical_lasso(g, static_cast<StateId>(w))))) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("bridge") {

TEST_CASE("correspondence on TOY1") {
  const Cgs g = fixtures::toy1();
  const CorrespondenceReport yes = correspondence_check(g, parse_atl("<<a>> X p"), 0, 8, 1);
  CHECK(yes.agreement);
  CHECK(yes.atl);
  CHECK_FALSE(yes.sx.empty());
  const CorrespondenceReport no = correspondence_check(g, parse_atl("<<>> X p"), 0, 8, 1);
  CHECK(no.agreement);
  CHECK_FALSE(no.atl);
  for (const auto& v : no.sx) CHECK_FALSE(v.value);
}

TEST_CASE("correspondence holds for atoms everywhere") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Cgs g = random_cgs({4, 2, 2, 2, seed});
    for (std::size_t w = 0; w < g.num_states(); ++w)
      CHECK(correspondence_check(g, parse_atl("p"), static_cast<StateId>(w), 4, seed).agreement);
  }
}

TEST_CASE("default instantiations over two agents") {
  const auto insts = default_instantiations({"a", "b"});
  CHECK(insts.size() == 102);
  for (const auto& i : insts) CHECK_NOTHROW(instantiate_schema(i.schema, i.coalitions, i.sigma));
}

TEST_CASE("axiom sweep examples") {
  const auto bot = std::vector<Instantiation>{{SchemaName::Bot, {{"A", {"a"}}}, {}, "id"},
                                              {SchemaName::Bot, {{"A", {}}}, {}, "id"}};
  const SweepReport r = axiom_sweep(random_models(100, 0), bot);
  CHECK(r.clean());
  CHECK(r.checked == 100 * 2 * 3);

  const auto fpg = std::vector<Instantiation>{{SchemaName::FP_G, {{"A", {"a"}}}, {}, "id"}};
  const SweepReport t = axiom_sweep({fixtures::toy1()}, fpg);
  CHECK(t.clean());
  CHECK(t.checked == 2);

  const auto overlap = std::vector<Instantiation>{{SchemaName::S, {{"A", {"a"}}, {"B", {"a", "b"}}}, {}, "id"}};
  const SweepReport s = axiom_sweep(random_models(2, 0), overlap);
  CHECK(s.rejected.size() == 1);
  CHECK(s.checked == 0);
}

TEST_CASE("sweep is the same serially and in parallel") {
  const auto models = random_models(12, 40);
  SweepOptions opts;
  opts.lasso_samples = 2;
  opts.seed = 9;
  const auto insts = default_instantiations({"a", "b"});
  const SweepReport a = axiom_sweep(models, insts, opts);
  opts.exec = Exec::Parallel;
  const SweepReport b = axiom_sweep(models, insts, opts);
  CHECK(a.checked == b.checked);
  CHECK(a.counterexamples.size() == b.counterexamples.size());
  CHECK(a.clean());
}

TEST_CASE("proof checker examples") {
  CHECK(check_proof(two_line("<<>> G <<a>> X true")).accepted);

  const ProofVerdict bad = check_proof(two_line("<<a>> G <<a>> X true"));
  CHECK_FALSE(bad.accepted);
  CHECK(bad.line == 2);
  CHECK(bad.reason.find("necessitation requires the empty coalition") != std::string::npos);

  const ProofVerdict mp = check_proof(parse_proof_script(R"([
    {"formula": "<<a>> X true", "by": {"kind": "axiom", "schema": "top", "A": ["a"]}},
    {"formula": "!<<>> X !true -> <<a,b>> X true",
     "by": {"kind": "axiom", "schema": "GC", "Ags": ["a", "b"], "subst": {"p": "true"}}},
    {"formula": "<<a,b>> X true", "by": {"kind": "mp", "premise": 1, "implication": 2}}])"));
  CHECK_FALSE(mp.accepted);
  CHECK(mp.line == 3);
  CHECK(mp.reason == "antecedent mismatch");

  const ProofVerdict dangling = check_proof(parse_proof_script(R"([
    {"formula": "<<>> G <<a>> X true", "by": {"kind": "gnec", "line": 1}}])"));
  CHECK_FALSE(dangling.accepted);
  CHECK(dangling.reason.find("dangling reference") != std::string::npos);

  CHECK(check_proof(load_proof_file(fixtures::data("sample_proof.json"))).lines == 9);
  CHECK(check_proof(load_proof_file(fixtures::data("sample_proof.json"))).accepted);
}

TEST_CASE("malformed proof scripts") {
  CHECK_THROWS_AS(parse_proof_script("{"), ProofFormatError);
  CHECK_THROWS_AS(parse_proof_script(R"([{"formula": "p"}])"), ProofFormatError);
  CHECK_THROWS_AS(parse_proof_script(R"([{"formula": "p", "by": {"kind": "magic"}}])"), ProofFormatError);
  CHECK_THROWS_AS(parse_proof_script(R"([{"formula": "p &", "by": {"kind": "gnec", "line": 1}}])"),
                  ProofFormatError);
}

TEST_CASE("soundness spot-check") {
  const ProofScript sample = load_proof_file(fixtures::data("sample_proof.json"));
  SweepOptions opts;
  opts.lasso_samples = 2;
  const SweepReport ok = soundness_spotcheck(sample, random_models(50, 900), opts);
  CHECK(ok.clean());
  CHECK(ok.checked == 50 * 9 * 3);

  ProofScript injected = sample;
  injected.lines.push_back({parse_atl("<<>> X p"), {}});
  const SweepReport caught = soundness_spotcheck(injected, {fixtures::toy1()}, opts);
  REQUIRE_FALSE(caught.clean());
  CHECK(caught.counterexamples.front().state == "w0");
  CHECK(caught.counterexamples.front().formula == "<<>> X p");

  CHECK(soundness_spotcheck(ProofScript{}, random_models(3, 0)).clean());
  CHECK(soundness_spotcheck(ProofScript{}, random_models(3, 0)).checked == 0);
}

TEST_CASE("inference rules preserve validity on sampled models") {
  std::mt19937_64 rng(31);
  FormulaGenOptions fo;
  fo.max_depth = 2;
  std::size_t mp_live = 0, mp_vacuous = 0;
  for (int round = 0; round < 40; ++round) {
    const auto models = random_models(4, 2000 + 10 * static_cast<std::uint64_t>(round), 2);
    const AtlFormula phi = random_atl_formula(rng, fo);
    const AtlFormula psi = random_atl_formula(rng, fo);
    // Make some premises valid so that the implications are exercised.
    const AtlFormula valid_phi = make_or(phi, AtlFormula::negation(phi));
    const std::vector<std::pair<AtlFormula, AtlFormula>> pairs = {
        {phi, psi}, {valid_phi, psi}, {valid_phi, make_or(psi, phi)}, {phi, make_or(psi, phi)}};
    for (const auto& [a, b] : pairs) {
      const AtlFormula imp = make_implies(a, b);
      if (valid_on(models, a) && valid_on(models, imp)) {
        CHECK(valid_on(models, b));
        ++mp_live;
      } else {
        ++mp_vacuous;
      }
      if (valid_on(models, imp)) {
        for (const Coalition& c : {Coalition{}, Coalition{"a"}, Coalition{"a", "b"}})
          CHECK(valid_on(models, make_implies(AtlFormula::coal_next(c, a), AtlFormula::coal_next(c, b))));
      }
      if (valid_on(models, a)) {
        CHECK(valid_on(models, AtlFormula::coal_globally({}, a)));
        CHECK(valid_on(models, substitute(a, {{"p", b}, {"q", AtlFormula::coal_next({"b"}, phi)}})));
      }
    }
  }
  MESSAGE("modus ponens: " << mp_live << " exercised, " << mp_vacuous << " vacuous");
  CHECK(mp_live > 0);
}

}  // TEST_SUITE
