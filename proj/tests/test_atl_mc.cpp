#include <doctest.h>

#include <random>

#include "atlstit/atl_mc.hpp"
#include "fixtures.hpp"

using namespace atlstit;

TEST_SUITE("atl_mc") {

TEST_CASE("pre on TOY1") {
  const Cgs g = fixtures::toy1();
  const StateSet w1 = g.names_to_set({"w1"});
  CHECK(g.format_set(pre(g, {"a"}, w1)) == "{w0, w1}");
  CHECK(g.format_set(pre(g, {}, w1)) == "{w1}");
  for (const Coalition& c : {Coalition{}, Coalition{"a"}})
    CHECK(pre(g, c, StateSet::all(2)).is_full());
  CHECK_THROWS_AS(pre(g, {"zed"}, w1), EvalError);
}

TEST_CASE("eval_atl on TOY1") {
  const Cgs g = fixtures::toy1();
  CHECK(g.format_set(eval_atl(g, parse_atl("<<a>> X p"))) == "{w0, w1}");
  CHECK(g.format_set(eval_atl(g, parse_atl("<<a>> G p"))) == "{w1}");
  CHECK(g.format_set(eval_atl(g, parse_atl("<<a>> (true U p)"))) == "{w0, w1}");
  CHECK(g.format_set(eval_atl(g, parse_atl("<<>> (true U p)"))) == "{w1}");
  CHECK(g.format_set(eval_atl(g, parse_atl("<<>> G !p"))) == "{}");
  CHECK(g.format_set(eval_atl(g, parse_atl("nothing"))) == "{}");
}

TEST_CASE("oracle on TOY1") {
  const Cgs g = fixtures::toy1();
  CHECK(g.format_set(eval_atl_oracle(g, parse_atl("<<a>> X p"))) == "{w0, w1}");
  CHECK(g.format_set(eval_atl_oracle(g, parse_atl("<<>> X p"))) == "{w1}");
  CHECK(eval_atl_oracle(g, parse_atl("<<a>> X false")).empty());
}

TEST_CASE("oracle guard") {
  const Cgs g = random_cgs({6, 2, 3, 1, 4});
  OracleOptions opts;
  opts.max_strategies = 10;
  CHECK_THROWS_AS(eval_atl_oracle(g, parse_atl("<<a,b>> X p"), opts), InstanceTooLarge);
}

TEST_CASE("fixpoint equations hold") {
  std::mt19937_64 rng(3);
  FormulaGenOptions fo;
  fo.max_depth = 2;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Cgs g = random_cgs({4, 2, 3, 2, seed});
    const AtlFormula phi = random_atl_formula(rng, fo), psi = random_atl_formula(rng, fo);
    for (const Coalition& c : {Coalition{}, Coalition{"a"}, Coalition{"a", "b"}}) {
      const StateSet sg = eval_atl(g, AtlFormula::coal_globally(c, phi));
      CHECK(sg == (eval_atl(g, phi) & pre(g, c, sg)));
      const StateSet su = eval_atl(g, AtlFormula::coal_until(c, phi, psi));
      CHECK(su == (eval_atl(g, psi) | (eval_atl(g, phi) & pre(g, c, su))));
    }
  }
}

TEST_CASE("coalition monotonicity, superadditivity, Ags-maximality") {
  std::mt19937_64 rng(8);
  FormulaGenOptions fo;
  fo.max_depth = 2;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Cgs g = random_cgs({4, 2, 3, 2, 1000 + seed});
    const AtlFormula phi = random_atl_formula(rng, fo), psi = random_atl_formula(rng, fo);
    const StateSet t = eval_atl(g, phi);
    CHECK(pre(g, {}, t).subset_of(pre(g, {"a"}, t)));
    CHECK(pre(g, {"a"}, t).subset_of(pre(g, {"a", "b"}, t)));
    CHECK((eval_atl(g, AtlFormula::coal_next({"a"}, phi)) & eval_atl(g, AtlFormula::coal_next({"b"}, psi)))
              .subset_of(eval_atl(g, AtlFormula::coal_next({"a", "b"}, AtlFormula::conjunction(phi, psi)))));
    CHECK(eval_atl(g, AtlFormula::coal_next({}, AtlFormula::negation(phi)))
              .complement()
              .subset_of(eval_atl(g, AtlFormula::coal_next({"a", "b"}, phi))));
  }
}

TEST_CASE("fixpoint engine matches the oracle") {
  std::mt19937_64 rng(21);
  FormulaGenOptions fo;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Cgs g = random_cgs({3, 2, 2, 2, 500 + seed});
    for (int k = 0; k < 10; ++k) {
      const AtlFormula f = random_atl_formula(rng, fo);
      CHECK(eval_atl(g, f) == eval_atl_oracle(g, f));
    }
  }
}

TEST_CASE("serial and parallel kernels agree") {
  std::mt19937_64 rng(2);
  FormulaGenOptions fo;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Cgs g = random_cgs({40, 2, 3, 2, seed});
    const AtlFormula f = random_atl_formula(rng, fo);
    CHECK(eval_atl(g, f, Exec::Serial) == eval_atl(g, f, Exec::Parallel));
    const Cgs small = random_cgs({3, 2, 2, 2, seed});
    OracleOptions par;
    par.exec = Exec::Parallel;
    CHECK(eval_atl_oracle(small, f) == eval_atl_oracle(small, f, par));
  }
}

}  // TEST_SUITE
