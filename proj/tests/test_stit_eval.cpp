#include <doctest.h>

#include <random>

#include "atlstit/atl_mc.hpp"
#include "atlstit/stit_eval.hpp"
#include "fixtures.hpp"

using namespace atlstit;

namespace {

LassoHistory lasso(const Cgs& g, const char* text) { return parse_lasso(g, text); }

bool sx(const Cgs& g, const char* f, const char* h) {
  return eval_sx(g, parse_sx(f), root_index(g, lasso(g, h)));
}

// Supported SX formulas that are not translation images.
SxFormula random_supported(std::mt19937_64& rng, int depth) {
  const SxFormula p = SxFormula::atom("p"), q = SxFormula::atom("q");
  std::uniform_int_distribution<int> pick(0, depth == 0 ? 1 : 8);
  switch (pick(rng)) {
    case 0: return p;
    case 1: return q;
    case 2: return SxFormula::negation(random_supported(rng, depth - 1));
    case 3: return SxFormula::conjunction(random_supported(rng, depth - 1), random_supported(rng, depth - 1));
    case 4: return SxFormula::box(SxFormula::next(SxFormula::box(depth % 2 ? p : q)));
    case 5: return SxFormula::stit({"a"}, SxFormula::next(p));
    case 6: return SxFormula::next(random_supported(rng, depth - 1));
    case 7: return SxFormula::globally(random_supported(rng, depth - 1));
    default: return SxFormula::strat({"b"}, SxFormula::until(SxFormula::box(p), SxFormula::box(q)));
  }
}

}  // namespace

TEST_SUITE("stit_eval") {

TEST_CASE("lasso suffix") {
  const Cgs g = fixtures::toy1();
  const LassoHistory h = lasso(g, "w0 ; s1 | s1");
  CHECK(lasso_suffix(g, h, 0) == h);
  const LassoHistory one = lasso_suffix(g, h, 1);
  CHECK(format_lasso(g, one) == "w1 ; | s1");
  CHECK(lasso_suffix(g, h, h.period_end()) == lasso_suffix(g, h, h.stem.size()));
  const LassoHistory rot = lasso(g, "w0 ; | s2");
  CHECK(lasso_suffix(g, rot, 5) == rot);
}

TEST_CASE("lasso literals") {
  const Cgs g = fixtures::toy1();
  CHECK(format_lasso(g, lasso(g, "w0;s2 s1|s1")) == "w0 ; s2 s1 | s1");
  CHECK_THROWS_AS(lasso(g, "w0 ; s1 | s2"), InconsistentLasso);   // s2 not available at w1
  CHECK_THROWS_AS(lasso(g, "w0 ; | s1"), InconsistentLasso);      // does not close
  CHECK_THROWS_AS(lasso(g, "w0 ; s1 |"), InconsistentLasso);      // empty loop
  CHECK_THROWS_AS(lasso(g, "w5 ; | s1"), InconsistentLasso);
  CHECK_THROWS_AS(lasso(g, "w0 s1 s1"), InconsistentLasso);
  const Cgs two = load_cgs(fixtures::kTwoAgents);
  CHECK(format_lasso(two, lasso(two, "u ; s1,s1 | s1,s1")) == "u ; s1,s1 | s1,s1");
  CHECK_THROWS_AS(lasso(two, "u ; s1 | s1,s1"), InconsistentLasso);
}

TEST_CASE("TOY1 evaluation examples") {
  const Cgs g = fixtures::toy1();
  CHECK(sx(g, "[] p", "w1 ; | s1"));
  CHECK(sx(g, "X [] p", "w0 ; s1 | s1"));
  CHECK_FALSE(sx(g, "X [] p", "w0 ; | s2"));
  for (const char* h : {"w0 ; s1 | s1", "w0 ; | s2", "w0 ; s2 s1 | s1"})
    CHECK_FALSE(sx(g, "<<a>>^s G [] p", h));
  CHECK(sx(g, "[a] X p", "w0 ; s1 | s1"));
  CHECK_FALSE(sx(g, "[a] X p", "w0 ; | s2"));
  CHECK_FALSE(sx(g, "[] X p", "w0 ; s1 | s1"));
  CHECK(sx(g, "(!p U p)", "w0 ; s2 s1 | s1"));
  CHECK_FALSE(sx(g, "(!p U p)", "w0 ; | s2"));
  CHECK(sx(g, "G !p", "w0 ; | s2"));
}

TEST_CASE("strategic ability on TOY1") {
  const Cgs g = fixtures::toy1();
  const SxFormula xbp = parse_sx("X [] p");
  CHECK(holds_strategically(g, 0, {"a"}, xbp));
  CHECK_FALSE(holds_strategically(g, 0, {}, xbp));
  CHECK(holds_strategically(g, 1, {"a"}, parse_sx("G [] p")));
  CHECK_THROWS_AS(holds_strategically(g, 0, {"a"}, parse_sx("X X p")), UnsupportedFragment);
  CHECK_THROWS_AS(holds_strategically(g, 0, {"zed"}, xbp), UnsupportedFragment);
}

TEST_CASE("moment-determinedness") {
  CHECK(check_moment_determined(parse_sx("[] p")));
  CHECK_FALSE(check_moment_determined(parse_sx("X p")));
  CHECK(check_moment_determined(parse_sx("<<a>>^s X [] p")));
  CHECK(check_moment_determined(parse_sx("[] X p")));
  CHECK_FALSE(check_moment_determined(parse_sx("[a] X p")));
  CHECK(check_moment_determined(parse_sx("[a] [] X p")));
  CHECK_FALSE(check_moment_determined(parse_sx("<<a>>^s X X p")));
  CHECK(is_one_step(parse_sx("[a] X p & q")));
  CHECK_THROWS_AS(require_supported(parse_sx("[] G p")), UnsupportedFragment);
  CHECK_THROWS_AS(require_supported(parse_sx("[a] X X p")), UnsupportedFragment);
  CHECK_NOTHROW(require_supported(parse_sx("G [a] X p")));
}

TEST_CASE("distinguished lassos") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Cgs g = random_cgs({3, 1 + seed % 2, 2, 2, seed});
    for (std::size_t w = 0; w < g.num_states(); ++w) {
      const StateId s = static_cast<StateId>(w);
      CHECK_NOTHROW(check_lasso(g, canonical_lasso(g, s)));
      const LassoHistory shortest = shortest_lasso(g, s);
      CHECK_NOTHROW(check_lasso(g, shortest));
      const auto reps = first_step_representatives(g, s);
      CHECK(reps.size() == g.num_profiles(s));
      for (const auto& h : reps) CHECK_NOTHROW(check_lasso(g, h));
      const LassoPool pool = lasso_pool(g, s);
      REQUIRE(pool.complete);
      for (const auto& h : pool.lassos) {
        CHECK_NOTHROW(check_lasso(g, h));
        CHECK(shortest.period_end() <= h.period_end());
        CHECK(normalize_lasso(g, h) == h);
      }
      CHECK(std::find(pool.lassos.begin(), pool.lassos.end(), shortest) != pool.lassos.end());
    }
  }
}

TEST_CASE("sampling is deterministic in the seed") {
  const Cgs g = random_cgs({4, 2, 2, 2, 77});
  CHECK(sample_lassos(g, 0, 8, 3) == sample_lassos(g, 0, 8, 3));
  LassoPoolOptions tiny;
  tiny.cap = 2;
  const auto walks = sample_lassos(g, 0, 8, 3, tiny);
  CHECK(walks == sample_lassos(g, 0, 8, 3, tiny));
  for (const auto& h : walks) CHECK_NOTHROW(check_lasso(g, h));
}

TEST_CASE("last-state invariance") {
  std::mt19937_64 rng(4);
  FormulaGenOptions fo;
  fo.max_depth = 2;
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const Cgs g = random_cgs({3, 2, 2, 2, 300 + seed});
    const BdtFragment f = unravel(g, 0, 2);
    std::vector<SxFormula> formulas;
    for (int k = 0; k < 4; ++k) {
      formulas.push_back(translate(random_atl_formula(rng, fo)));
      formulas.push_back(random_supported(rng, 2));
    }
    SxEvaluator ev(g);
    for (const auto& a : f.nodes)
      for (const auto& b : f.nodes) {
        if (a.moment.last() != b.moment.last() || a.moment == b.moment) continue;
        for (const auto& h : sample_lassos(g, a.moment.last(), 3, seed))
          for (const auto& phi : formulas)
            CHECK(ev.eval(phi, make_index(g, a.moment, h)) == ev.eval(phi, make_index(g, b.moment, h)));
      }
  }
}

TEST_CASE("translations do not depend on the history") {
  std::mt19937_64 rng(6);
  FormulaGenOptions fo;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Cgs g = random_cgs({3, 2, 2, 2, 400 + seed});
    const AtlFormula phi = random_atl_formula(rng, fo);
    const SxFormula tr = translate(phi);
    const StateSet sat = eval_atl(g, phi);
    SxEvaluator ev(g);
    for (std::size_t w = 0; w < g.num_states(); ++w)
      for (const auto& h : lasso_pool(g, static_cast<StateId>(w)).lassos)
        CHECK(ev.eval(tr, root_index(g, h)) == sat.contains(static_cast<StateId>(w)));
  }
}

TEST_CASE("G and U agree with the unrolled path") {
  std::mt19937_64 rng(10);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Cgs g = random_cgs({4, 2, 2, 2, 600 + seed});
    const StateSet vp = g.valuation("p"), vq = g.valuation("q");
    for (const auto& h : sample_lassos(g, static_cast<StateId>(seed % 4), 5, seed)) {
      const std::size_t n = 2 * h.period_end();
      const auto st = lasso_states(g, h, n);
      bool all_p = true, until = false;
      for (std::size_t i = 0; i < n; ++i) all_p = all_p && vp.contains(st[i]);
      for (std::size_t j = 0; j < n; ++j) {
        if (vq.contains(st[j])) {
          until = true;
          break;
        }
        if (!vp.contains(st[j])) break;
      }
      const SxIndex ix = root_index(g, h);
      CHECK(eval_sx(g, parse_sx("G p"), ix) == all_p);
      CHECK(eval_sx(g, parse_sx("(p U q)"), ix) == until);
    }
  }
}

TEST_CASE("strategic ability is monotone in the coalition") {
  std::mt19937_64 rng(12);
  FormulaGenOptions fo;
  fo.max_depth = 1;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Cgs g = random_cgs({4, 2, 2, 2, 700 + seed});
    const SxFormula a = translate(random_atl_formula(rng, fo));
    const SxFormula b = translate(random_atl_formula(rng, fo));
    for (const SxFormula& body : {SxFormula::next(a), SxFormula::globally(a), SxFormula::until(a, b)}) {
      SxEvaluator ev(g);
      const StateSet none = ev.strategic_states(SxFormula::strat({}, body));
      const StateSet one = ev.strategic_states(SxFormula::strat({"a"}, body));
      const StateSet both = ev.strategic_states(SxFormula::strat({"a", "b"}, body));
      CHECK(none.subset_of(one));
      CHECK(one.subset_of(both));
    }
  }
}

}  // TEST_SUITE
