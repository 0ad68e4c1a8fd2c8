// Acceptance run: one PASS/FAIL line per criterion, tolerances printed inline.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "atlstit/atl_mc.hpp"
#include "atlstit/bridge.hpp"
#include "atlstit/stit_eval.hpp"
#include "atlstit/unravel.hpp"

using namespace atlstit;

namespace {

const std::string kData = ATLSTIT_DATA_DIR;
const std::string kCli = ATLSTIT_CLI;

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << (pass ? "PASS" : "FAIL") << "  [" << id << "] " << name << ": " << detail << std::endl;
}

std::string fmt_seconds(double s) {
  std::ostringstream o;
  o.precision(2);
  o << std::fixed << s << " s";
  return o.str();
}

// Models for the correspondence criteria: ≤ 4 states, 2 agents, ≤ 3 actions, 2 atoms.
Cgs corpus_model(std::uint64_t i) { return random_cgs({1 + i % 4, 2, 3, 2, 10'000 + i}); }

// --- 1 ----------------------------------------------------------------------

void oracle_equivalence() {
  constexpr std::size_t kModels = 200, kFormulas = 100;
  constexpr double kBudget = 120.0;
  Clock clock;
  std::mt19937_64 rng(1);
  FormulaGenOptions fo;
  fo.max_depth = 3;
  std::vector<AtlFormula> formulas;
  for (std::size_t i = 0; i < kFormulas; ++i) formulas.push_back(random_atl_formula(rng, fo));
  OracleOptions oo;
  oo.exec = Exec::Parallel;
  std::size_t bad = 0;
  for (std::size_t m = 0; m < kModels; ++m) {
    const Cgs g = corpus_model(m);
    for (const auto& f : formulas)
      if (eval_atl(g, f) != eval_atl_oracle(g, f, oo)) ++bad;
  }
  const double t = clock.seconds();
  report(1, "oracle equivalence", bad == 0 && t < kBudget,
         std::to_string(kModels) + " CGS x " + std::to_string(kFormulas) +
             " formulas (depth <= 3), discrepancies " + std::to_string(bad) + " (tolerance 0), " +
             fmt_seconds(t) + " (budget " + std::to_string(int(kBudget)) + " s)");
}

// --- 2, 3 -------------------------------------------------------------------

struct Triple {
  Cgs g;
  AtlFormula f;
  StateId w;
};

std::vector<Triple> correspondence_corpus() {
  constexpr std::size_t kTriples = 100;
  std::mt19937_64 rng(2);
  FormulaGenOptions fo;
  fo.max_depth = 3;
  std::vector<Triple> out;
  for (std::size_t i = 0; i < kTriples; ++i) {
    Cgs g = corpus_model(i);
    const StateId w = static_cast<StateId>(rng() % g.num_states());
    out.push_back({std::move(g), random_atl_formula(rng, fo), w});
  }
  return out;
}

void correspondence(const std::vector<Triple>& corpus) {
  constexpr std::size_t kLassos = 8;
  constexpr double kBudget = 120.0;
  Clock clock;
  std::size_t agree = 0, lassos = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto r = correspondence_check(corpus[i].g, corpus[i].f, corpus[i].w, kLassos, i);
    agree += r.agreement ? 1 : 0;
    lassos += r.sx.size();
  }
  const double t = clock.seconds();
  report(2, "correspondence", agree == corpus.size() && t < kBudget,
         std::to_string(agree) + "/" + std::to_string(corpus.size()) + " triples agree (required 100%), " +
             std::to_string(kLassos) + " sampled lassos each (" + std::to_string(lassos) +
             " indices incl. extremes), " + fmt_seconds(t) + " (budget " + std::to_string(int(kBudget)) +
             " s)");
}

void invariance(const std::vector<Triple>& corpus) {
  constexpr std::size_t kDepth = 2;
  std::size_t hist_checks = 0, hist_bad = 0, last_checks = 0, last_bad = 0, truncated = 0;
  for (const auto& t : corpus) {
    const SxFormula tr = translate(t.f);
    SxEvaluator ev(t.g);
    const LassoPool pool = lasso_pool(t.g, t.w);
    if (!pool.complete) ++truncated;
    // History independence: one verdict across the whole pool at λ_w.
    const bool first = ev.eval(tr, root_index(t.g, pool.lassos.front()));
    for (const auto& h : pool.lassos) {
      ++hist_checks;
      if (ev.eval(tr, root_index(t.g, h)) != first) ++hist_bad;
    }
    // Last-state invariance: every moment ending in w agrees with λ_w.
    for (std::size_t root = 0; root < t.g.num_states(); ++root) {
      const BdtFragment f = unravel(t.g, static_cast<StateId>(root), kDepth);
      for (const auto& node : f.nodes) {
        if (node.moment.last() != t.w) continue;
        for (const auto& h : pool.lassos) {
          ++last_checks;
          if (ev.eval(tr, make_index(t.g, node.moment, h)) != first) ++last_bad;
        }
      }
    }
  }
  report(3, "history independence and last-state invariance", hist_bad == 0 && last_bad == 0,
         "history: " + std::to_string(hist_bad) + " violations in " + std::to_string(hist_checks) +
             " pool indices; last state: " + std::to_string(last_bad) + " violations in " +
             std::to_string(last_checks) + " moment/lasso pairs (moments up to length " +
             std::to_string(kDepth + 1) + "); tolerance 0; truncated pools " + std::to_string(truncated));
}

// --- 4 ----------------------------------------------------------------------

void move_history(MomentNode& node, int agent, int from, int to, int h) {
  auto& src = node.cells[agent][from].histories;
  src.erase(std::find(src.begin(), src.end(), h));
  auto& dst = node.cells[agent][to].histories;
  dst.push_back(h);
  std::sort(dst.begin(), dst.end());
}

struct Fault {
  const char* name;
  FrameCondition expected;
  std::size_t depth;
  std::function<void(BdtFragment&)> inject;
};

std::vector<Fault> faults() {
  return {
      {"label renamed", FrameCondition::LE, 2, [](BdtFragment& f) { f.nodes[0].cells[0][0].label = "s9"; }},
      {"execution map redirected", FrameCondition::EL, 2, [](BdtFragment& f) { f.nodes[0].exe[1]["s1"] = 1; }},
      {"undivided histories split", FrameCondition::NC, 2,
       [](BdtFragment& f) {
         const int h = f.histories_through(f.nodes[0].children[1]).front();
         move_history(f.nodes[0], 0, 0, 1, h);
       }},
      {"empty choice intersection", FrameCondition::IA, 1,
       [](BdtFragment& f) { move_history(f.nodes[0], 0, 0, 1, f.nodes[0].children[0]); }},
      {"empty cell", FrameCondition::Partition, 1,
       [](BdtFragment& f) {
         for (int h : std::vector<int>(f.nodes[0].cells[1][0].histories)) move_history(f.nodes[0], 1, 0, 1, h);
       }},
      {"successor off delta", FrameCondition::TD, 1,
       [](BdtFragment& f) { f.nodes[f.nodes[0].children[0]].moment.states.back() = 0; }},
      {"missing branch", FrameCondition::TD, 1, [](BdtFragment& f) { f.nodes[0].children.pop_back(); }},
      {"prefix order broken", FrameCondition::Order, 2,
       [](BdtFragment& f) { f.nodes[f.histories_through(0).back()].moment.states[0] = 1; }},
      {"parent cycle", FrameCondition::Order, 1, [](BdtFragment& f) { f.nodes[1].parent = 1; }},
      {"full-coalition cell with two outcomes", FrameCondition::Determinism, 1,
       [](BdtFragment& f) {
         move_history(f.nodes[0], 1, 1, 0, f.nodes[0].children[1]);
         move_history(f.nodes[0], 1, 0, 1, f.nodes[0].children[2]);
       }},
  };
}

void frames() {
  constexpr std::size_t kModels = 50, kDepth = 3;
  std::size_t checked = 0, bad = 0;
  for (std::size_t i = 0; i < kModels; ++i) {
    const Cgs g = random_cgs({3, 2, 2, 2, 20'000 + i});
    for (std::size_t w = 0; w < g.num_states(); ++w) {
      ++checked;
      if (!verify_frame(unravel(g, static_cast<StateId>(w), kDepth)).ok()) ++bad;
    }
  }
  const Cgs two = load_cgs_file(kData + "/two_agents.json");
  std::size_t caught = 0;
  std::string missed;
  const auto fs = faults();
  for (const auto& fault : fs) {
    BdtFragment f = unravel(two, 0, fault.depth);
    fault.inject(f);
    if (verify_frame(f).has(fault.expected))
      ++caught;
    else
      missed += std::string(" ") + fault.name;
  }
  report(4, "frame verification", bad == 0 && caught == fs.size(),
         std::to_string(checked - bad) + "/" + std::to_string(checked) + " (model, state) fragments at depth " +
             std::to_string(kDepth) + " pass all conditions; " + std::to_string(caught) + "/" +
             std::to_string(fs.size()) + " injected faults named correctly" +
             (missed.empty() ? "" : " (missed:" + missed + ")"));
}

// --- 5 ----------------------------------------------------------------------

void axioms() {
  constexpr std::size_t kModels = 100;
  std::vector<Cgs> models;
  for (std::size_t i = 0; i < kModels; ++i) models.push_back(random_cgs({3, 2, 2, 2, 30'000 + i}));
  const auto insts = default_instantiations({"a", "b"});
  SweepOptions opts;
  opts.lasso_samples = 2;
  opts.seed = 5;
  opts.exec = Exec::Parallel;
  Clock clock;
  const SweepReport r = axiom_sweep(models, insts, opts);
  report(5, "axiom sweep", r.clean() && r.rejected.empty(),
         std::to_string(insts.size()) + " instantiations (8 schemata x coalitions x 3 substitutions) on " +
             std::to_string(kModels) + " models, " + std::to_string(r.checked) +
             " (model, formula, state) checks, counterexamples " + std::to_string(r.counterexamples.size()) +
             " (tolerance 0), " + fmt_seconds(clock.seconds()));
}

// --- 6 ----------------------------------------------------------------------

void periodicity() {
  constexpr std::size_t kLassos = 1000;
  std::mt19937_64 rng(6);
  const std::array<std::string, 4> formulas = {"G p", "(p U q)", "G !q", "(!p U (q & p))"};
  std::size_t bad = 0, lassos = 0;
  while (lassos < kLassos) {
    const Cgs g = random_cgs({2 + lassos % 4, 2, 2, 2, 40'000 + lassos});
    const StateId w = static_cast<StateId>(rng() % g.num_states());
    for (const auto& h : sample_lassos(g, w, 4, rng())) {
      if (lassos == kLassos) break;
      ++lassos;
      const std::size_t n = 2 * h.period_end();
      const auto st = lasso_states(g, h, n);
      auto at = [&](const std::string& a, std::size_t i) { return g.valuation(a).contains(st[i]); };
      const SxIndex ix = root_index(g, h);
      const std::array<bool, 4> want = [&] {
        bool gp = true, gnq = true, u1 = false, u2 = false;
        for (std::size_t i = 0; i < n; ++i) {
          gp = gp && at("p", i);
          gnq = gnq && !at("q", i);
        }
        for (std::size_t i = 0; i < n; ++i) {
          if (at("q", i)) {
            u1 = true;
            break;
          }
          if (!at("p", i)) break;
        }
        for (std::size_t i = 0; i < n; ++i) {
          if (at("q", i) && at("p", i)) {
            u2 = true;
            break;
          }
          if (at("p", i)) break;
        }
        return std::array<bool, 4>{gp, u1, gnq, u2};
      }();
      for (std::size_t k = 0; k < formulas.size(); ++k)
        if (eval_sx(g, parse_sx(formulas[k]), ix) != want[k]) ++bad;
    }
  }
  report(6, "lasso periodicity oracle", bad == 0,
         std::to_string(lassos) + " lassos x " + std::to_string(formulas.size()) +
             " G/U formulas against 2*(|stem|+|loop|) unrolled positions, discrepancies " + std::to_string(bad) +
             " (tolerance 0)");
}

// --- 7 ----------------------------------------------------------------------

void proofs() {
  const std::string path = kData + "/sample_proof.json";
  std::ifstream in(path);
  const nlohmann::json sample = nlohmann::json::parse(in);
  const ProofVerdict base = check_proof(parse_proof_script(sample.dump()));

  struct Variant {
    const char* name;
    std::size_t line;
    std::function<void(nlohmann::json&)> corrupt;
  };
  const std::vector<Variant> variants = {
      {"bad MP", 5, [](nlohmann::json& j) { j[4]["by"]["premise"] = 1; }},
      {"bad coalition in necessitation", 2, [](nlohmann::json& j) { j[1]["formula"] = "<<a>> G <<a>> X true"; }},
      {"dangling reference", 6, [](nlohmann::json& j) { j[5]["by"]["line"] = 7; }},
      {"schema side condition", 7, [](nlohmann::json& j) { j[6]["by"]["B"] = {"a", "b"}; }},
      {"wrong substitution", 8, [](nlohmann::json& j) { j[7]["by"]["subst"] = {{"p", "q"}}; }},
  };
  std::size_t right = 0;
  std::string misplaced;
  for (const auto& v : variants) {
    nlohmann::json j = sample;
    v.corrupt(j);
    const ProofVerdict r = check_proof(parse_proof_script(j.dump()));
    if (!r.accepted && r.line == v.line)
      ++right;
    else
      misplaced += std::string(" ") + v.name;
  }

  constexpr std::size_t kModels = 50;
  std::vector<Cgs> models;
  for (std::size_t i = 0; i < kModels; ++i) models.push_back(random_cgs({3, 2, 2, 2, 50'000 + i}));
  SweepOptions opts;
  opts.lasso_samples = 2;
  const SweepReport spot = soundness_spotcheck(parse_proof_script(sample.dump()), models, opts);

  report(7, "proof checker", base.accepted && right == variants.size() && spot.clean(),
         std::string("sample proof ") + (base.accepted ? "accepted" : "rejected") + " (" +
             std::to_string(base.lines) + " lines); " + std::to_string(right) + "/" +
             std::to_string(variants.size()) + " corrupted variants rejected at the expected line" +
             (misplaced.empty() ? "" : " (wrong:" + misplaced + ")") + "; spot check on " +
             std::to_string(kModels) + " models: " + std::to_string(spot.counterexamples.size()) +
             " violations (tolerance 0)");
}

// --- 8 ----------------------------------------------------------------------

std::string capture(const std::string& cmd) {
  std::string out;
  FILE* p = popen((cmd + " 2>&1").c_str(), "r");
  if (!p) return "<popen failed>";
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int status = pclose(p);
  return out + "\n<status " + std::to_string(status) + ">";
}

void determinism() {
  const std::string toy = "'" + kData + "/toy1.json'";
  const std::string proof = "'" + kData + "/sample_proof.json'";
  const std::vector<std::string> runs = {
      "check " + toy + " '<<a>> X p'",
      "check " + toy + " '<<a>> G p' --state w0",
      "oracle " + toy + " '<<a>> (!p U p)'",
      "translate '<<a,b>> (p U <<>> G q)'",
      "unravel " + toy + " w0 --depth 3",
      "verify-frame " + toy,
      "eval-sx " + toy + " 'X [] p' 'w0 ; s1 | s1'",
      "correspond " + toy + " '<<a>> X p' w0 --samples 8",
      "axioms --random 10",
      "prove " + proof + " --spotcheck --random 10",
      "random-model --states 4 --actions 3",
  };
  std::size_t same = 0, total = 0;
  std::string differing;
  for (const auto& fmt : {"text", "json"})
    for (const auto& r : runs) {
      const std::string cmd = "'" + kCli + "' --seed 7 --format " + fmt + " " + r;
      ++total;
      if (capture(cmd) == capture(cmd))
        ++same;
      else
        differing += " {" + r + "}";
    }
  report(8, "determinism", same == total,
         std::to_string(same) + "/" + std::to_string(total) +
             " CLI invocations byte-identical across two runs with --seed 7" +
             (differing.empty() ? "" : " (differ:" + differing + ")"));
}

}  // namespace

int main() {
  Clock clock;
  oracle_equivalence();
  const auto corpus = correspondence_corpus();
  correspondence(corpus);
  invariance(corpus);
  frames();
  axioms();
  periodicity();
  proofs();
  determinism();
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << " in "
            << fmt_seconds(clock.seconds()) << std::endl;
  return failures == 0 ? 0 : 1;
}
