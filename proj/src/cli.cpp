#include "atlstit/cli.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "atlstit/atl_mc.hpp"
#include "atlstit/bridge.hpp"
#include "atlstit/cgs.hpp"
#include "atlstit/formula.hpp"
#include "atlstit/stit_eval.hpp"
#include "atlstit/unravel.hpp"

namespace atlstit {

using json = nlohmann::json;

namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string format = "text";
  std::uint64_t seed = 0;
  std::size_t max_states = 64;
  bool json() const { return format == "json"; }
};

struct ModelParams {
  std::size_t count = 20;
  std::size_t states = 3;
  std::size_t agents = 2;
  std::size_t actions = 2;
  std::size_t atoms = 2;
};

Cgs load_model(const std::string& path, const Globals& gl) {
  Cgs g = load_cgs_file(path);
  if (g.num_states() > gl.max_states)
    throw InstanceTooLarge("instance size guard exceeded: " + path + " has " +
                           std::to_string(g.num_states()) + " states (--max-states " +
                           std::to_string(gl.max_states) + ")");
  return g;
}

StateId state_of(const Cgs& g, const std::string& name) {
  auto s = g.find_state(name);
  if (!s) throw InputError("unknown state '" + name + "'");
  return *s;
}

std::vector<Cgs> random_models(const ModelParams& p, std::uint64_t seed, const Globals& gl) {
  if (p.states > gl.max_states)
    throw InstanceTooLarge("instance size guard exceeded: --states above --max-states");
  std::vector<Cgs> out;
  for (std::size_t i = 0; i < p.count; ++i)
    out.push_back(random_cgs({p.states, p.agents, p.actions, p.atoms, seed + i}));
  return out;
}

json with_schema(json j) {
  j["schema"] = 1;
  return j;
}

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

json sweep_json(const SweepReport& r) {
  json ce = json::array();
  for (const auto& c : r.counterexamples)
    ce.push_back({{"model", c.model},
                  {"formula", c.formula},
                  {"state", c.state},
                  {"lasso", c.lasso},
                  {"detail", c.detail}});
  return {{"checked", r.checked},
          {"failed", r.counterexamples.size()},
          {"counterexamples", ce},
          {"rejected", r.rejected}};
}

void print_sweep_text(std::ostream& out, const SweepReport& r) {
  out << "checked " << r.checked << ", failed " << r.counterexamples.size() << '\n';
  for (const auto& c : r.counterexamples) {
    out << "counterexample: model " << c.model << ", state " << c.state << ": " << c.formula;
    if (!c.lasso.empty()) out << " at lasso " << c.lasso;
    out << " (" << c.detail << ")\n";
  }
  for (const auto& why : r.rejected) out << "rejected instantiation: " << why << '\n';
}

int denotation_command(const Cgs& g, const StateSet& sat, const std::optional<std::string>& state,
                       const Globals& gl, std::ostream& out) {
  if (state) {
    const bool v = sat.contains(state_of(g, *state));
    if (gl.json())
      print_json(out, with_schema({{"state", *state}, {"value", v}}));
    else
      out << (v ? "true" : "false") << '\n';
    return v ? kExitOk : kExitFalse;
  }
  if (gl.json()) {
    json states = json::array();
    for (StateId s : sat.members()) states.push_back(g.state_name(s));
    print_json(out, with_schema({{"denotation", states}}));
  } else {
    out << g.format_set(sat) << '\n';
  }
  return kExitOk;
}

json fragment_json(const BdtFragment& f) {
  const Cgs& g = f.source;
  json moments = json::array();
  for (const auto& node : f.nodes) {
    json via = json::array();
    for (std::size_t i = 0; i < node.moment.via.size(); ++i) {
      const StateId s = node.moment.states[i];
      via.push_back(g.format_profile(s, g.decode_profile(s, node.moment.via[i])));
    }
    json m = {{"moment", format_moment(g, node.moment)}, {"via", via}};
    if (!node.children.empty()) {
      json cells = json::object();
      for (std::size_t a = 0; a < node.cells.size(); ++a) {
        json per = json::object();
        for (const auto& cell : node.cells[a]) {
          json leaves = json::array();
          for (int h : cell.histories) leaves.push_back(format_moment(g, f.nodes[h].moment));
          per[cell.label] = leaves;
        }
        cells[g.agent_name(static_cast<AgentId>(a))] = per;
      }
      m["cells"] = cells;
    }
    moments.push_back(m);
  }
  return {{"root", g.state_name(f.root)}, {"depth", f.depth}, {"moments", moments}};
}

void add_model_params(CLI::App* sub, ModelParams& p) {
  sub->add_option("--random", p.count, "Number of random models")->check(CLI::PositiveNumber);
  sub->add_option("--states", p.states, "States per random model")->check(CLI::PositiveNumber);
  sub->add_option("--agents", p.agents, "Agents per random model")->check(CLI::PositiveNumber);
  sub->add_option("--actions", p.actions, "Maximum menu size")->check(CLI::PositiveNumber);
  sub->add_option("--atoms", p.atoms, "Atoms per random model")->check(CLI::PositiveNumber);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ATL model checking and its stit counterpart"};
  app.name("atlstit");
  app.require_subcommand(1);
  app.fallthrough();

  Globals gl;
  app.add_option("--format", gl.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--seed", gl.seed, "Random seed")->capture_default_str();
  app.add_option("--max-states", gl.max_states, "Largest accepted model")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string model, formula, state_arg, lasso_arg, script;
  std::optional<std::string> state;
  std::size_t unravel_depth = 2, frame_depth = 3, samples = 8;
  std::uint64_t max_strategies = std::uint64_t{1} << 20;
  std::vector<std::string> models;
  ModelParams mp;

  auto* check = app.add_subcommand("check", "Denotation of an ATL formula");
  check->add_option("model", model, "CGS file")->required();
  check->add_option("formula", formula, "ATL formula")->required();
  check->add_option("--state", state, "Report the verdict at one state");

  auto* oracle = app.add_subcommand("oracle", "Denotation by strategy enumeration");
  oracle->add_option("model", model, "CGS file")->required();
  oracle->add_option("formula", formula, "ATL formula")->required();
  oracle->add_option("--state", state, "Report the verdict at one state");
  oracle->add_option("--max-strategies", max_strategies, "Strategy guard")->capture_default_str();

  auto* translate_cmd = app.add_subcommand("translate", "Translate ATL into the stit language");
  translate_cmd->add_option("formula", formula, "ATL formula")->required();

  auto* unravel_cmd = app.add_subcommand("unravel", "Dump the unravelled tree up to a depth");
  unravel_cmd->add_option("model", model, "CGS file")->required();
  unravel_cmd->add_option("state", state_arg, "Root state")->required();
  unravel_cmd->add_option("--depth", unravel_depth, "Depth k")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify-frame", "Check the frame conditions of the unravelling");
  verify->add_option("model", model, "CGS file")->required();
  verify->add_option("--state", state, "Root state (default: every state)");
  verify->add_option("--depth", frame_depth, "Depth k")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* eval_cmd = app.add_subcommand("eval-sx", "Evaluate a stit formula at an index");
  eval_cmd->add_option("model", model, "CGS file")->required();
  eval_cmd->add_option("formula", formula, "Stit formula")->required();
  eval_cmd->add_option("lasso", lasso_arg, "History, e.g. 'w0 ; s1 | s1'")->required();

  auto* corr = app.add_subcommand("correspond", "Compare an ATL formula with its translation");
  corr->add_option("model", model, "CGS file")->required();
  corr->add_option("formula", formula, "ATL formula")->required();
  corr->add_option("state", state_arg, "State")->required();
  corr->add_option("--samples", samples, "Sampled lassos")->check(CLI::PositiveNumber)->capture_default_str();

  auto* axioms = app.add_subcommand("axioms", "Sweep the axiom schemata over models");
  axioms->add_option("models", models, "CGS files (default: random models)");
  add_model_params(axioms, mp);
  axioms->add_option("--samples", samples, "Extra lassos per state")->capture_default_str();

  auto* prove = app.add_subcommand("prove", "Check a proof script");
  prove->add_option("script", script, "Proof script (JSON)")->required();
  auto* spot = prove->add_flag("--spotcheck", "Also check the proved formulas semantically");
  prove->add_option("--model", models, "CGS files for the spot check (default: random models)");
  add_model_params(prove, mp);

  auto* random_model = app.add_subcommand("random-model", "Print a random CGS");
  random_model->add_option("--states", mp.states, "States")->check(CLI::PositiveNumber);
  random_model->add_option("--agents", mp.agents, "Agents")->check(CLI::PositiveNumber);
  random_model->add_option("--actions", mp.actions, "Maximum menu size")->check(CLI::PositiveNumber);
  random_model->add_option("--atoms", mp.atoms, "Atoms")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (check->parsed()) {
      const Cgs g = load_model(model, gl);
      return denotation_command(g, eval_atl(g, parse_atl(formula)), state, gl, out);
    }
    if (oracle->parsed()) {
      const Cgs g = load_model(model, gl);
      OracleOptions opts;
      opts.max_strategies = max_strategies;
      opts.exec = Exec::Parallel;
      return denotation_command(g, eval_atl_oracle(g, parse_atl(formula), opts), state, gl, out);
    }
    if (translate_cmd->parsed()) {
      const std::string tr = print_formula(translate(parse_atl(formula)));
      if (gl.json())
        print_json(out, with_schema({{"formula", formula}, {"translation", tr}}));
      else
        out << tr << '\n';
      return kExitOk;
    }
    if (unravel_cmd->parsed()) {
      const Cgs g = load_model(model, gl);
      const BdtFragment f = unravel(g, state_of(g, state_arg), unravel_depth);
      if (gl.json())
        print_json(out, with_schema(fragment_json(f)));
      else
        out << dump_fragment(f);
      return kExitOk;
    }
    if (verify->parsed()) {
      const Cgs g = load_model(model, gl);
      std::vector<StateId> roots;
      if (state)
        roots.push_back(state_of(g, *state));
      else
        for (std::size_t s = 0; s < g.num_states(); ++s) roots.push_back(static_cast<StateId>(s));
      bool all_ok = true;
      json report = json::array();
      for (StateId w : roots) {
        const FrameReport r = verify_frame(unravel(g, w, frame_depth));
        all_ok = all_ok && r.ok();
        json vs = json::array();
        for (const auto& v : r.violations) vs.push_back({{"condition", to_string(v.condition)}, {"detail", v.detail}});
        report.push_back({{"root", g.state_name(w)}, {"ok", r.ok()}, {"violations", vs}});
        if (gl.json()) continue;
        out << g.state_name(w) << ": " << (r.ok() ? "ok" : "violations") << '\n';
        for (const auto& v : r.violations) out << "  " << to_string(v.condition) << ' ' << v.detail << '\n';
      }
      if (gl.json()) print_json(out, with_schema({{"depth", frame_depth}, {"roots", report}}));
      return all_ok ? kExitOk : kExitFalse;
    }
    if (eval_cmd->parsed()) {
      const Cgs g = load_model(model, gl);
      const bool v = eval_sx(g, parse_sx(formula), root_index(g, parse_lasso(g, lasso_arg)));
      if (gl.json())
        print_json(out, with_schema({{"lasso", lasso_arg}, {"value", v}}));
      else
        out << (v ? "true" : "false") << '\n';
      return v ? kExitOk : kExitFalse;
    }
    if (corr->parsed()) {
      const Cgs g = load_model(model, gl);
      const CorrespondenceReport r =
          correspondence_check(g, parse_atl(formula), state_of(g, state_arg), samples, gl.seed);
      if (gl.json()) {
        json sx = json::array();
        for (const auto& v : r.sx) sx.push_back({{"lasso", format_lasso(g, v.lasso)}, {"value", v.value}});
        print_json(out, with_schema({{"state", state_arg}, {"atl", r.atl}, {"sx", sx}, {"agreement", r.agreement}}));
      } else {
        out << (r.agreement ? "agreement" : "disagreement") << '\n';
        if (!r.agreement) {
          out << "  atl: " << (r.atl ? "true" : "false") << '\n';
          for (const auto& v : r.sx)
            out << "  " << format_lasso(g, v.lasso) << ": " << (v.value ? "true" : "false") << '\n';
        }
      }
      return r.agreement ? kExitOk : kExitFalse;
    }
    if (axioms->parsed()) {
      std::vector<Cgs> gs;
      for (const auto& path : models) gs.push_back(load_model(path, gl));
      if (gs.empty()) gs = random_models(mp, gl.seed, gl);
      const auto& agents = gs.front().agent_names();
      for (const auto& g : gs)
        if (g.agent_names() != agents) throw InputError("all models must share the same agents");
      SweepOptions opts;
      opts.lasso_samples = samples;
      opts.seed = gl.seed;
      opts.exec = Exec::Parallel;
      const SweepReport r = axiom_sweep(gs, default_instantiations(agents), opts);
      if (gl.json())
        print_json(out, with_schema(sweep_json(r)));
      else
        print_sweep_text(out, r);
      return r.clean() ? kExitOk : kExitFalse;
    }
    if (prove->parsed()) {
      const ProofScript s = load_proof_file(script);
      const ProofVerdict v = check_proof(s);
      json j = {{"accepted", v.accepted}, {"lines", v.lines}};
      if (!v.accepted) {
        j["line"] = v.line;
        j["reason"] = v.reason;
      }
      if (!gl.json()) {
        if (v.accepted)
          out << "accepted (" << v.lines << " lines)\n";
        else
          out << "rejected at line " << v.line << ": " << v.reason << '\n';
      }
      bool clean = v.accepted;
      if (v.accepted && spot->count() > 0) {
        std::vector<Cgs> gs;
        for (const auto& path : models) gs.push_back(load_model(path, gl));
        if (gs.empty()) gs = random_models(mp, gl.seed, gl);
        SweepOptions opts;
        opts.seed = gl.seed;
        opts.exec = Exec::Parallel;
        const SweepReport r = soundness_spotcheck(s, gs, opts);
        clean = r.clean();
        j["spotcheck"] = sweep_json(r);
        if (!gl.json()) print_sweep_text(out, r);
      }
      if (gl.json()) print_json(out, with_schema(j));
      return clean ? kExitOk : kExitFalse;
    }
    if (random_model->parsed()) {
      if (mp.states > gl.max_states)
        throw InstanceTooLarge("instance size guard exceeded: --states above --max-states");
      const Cgs g = random_cgs({mp.states, mp.agents, mp.actions, mp.atoms, gl.seed});
      out << dump_cgs(g);
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  err << "error: no subcommand\n";
  return kExitInput;
}

}  // namespace atlstit
