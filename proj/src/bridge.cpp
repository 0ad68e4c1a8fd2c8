#include "atlstit/bridge.hpp"

#include <algorithm>
#include <exception>

namespace atlstit {

CorrespondenceReport correspondence_check(const Cgs& g, const AtlFormula& f, StateId w,
                                          std::size_t samples, std::uint64_t seed,
                                          const SxOptions& opts) {
  if (w < 0 || static_cast<std::size_t>(w) >= g.num_states())
    throw std::out_of_range("correspondence_check: unknown state");
  CorrespondenceReport r;
  r.state = w;
  r.atl = eval_atl(g, f).contains(w);
  const SxFormula tr = translate(f);
  SxEvaluator ev(g, opts);
  r.agreement = true;
  for (auto& h : sample_lassos(g, w, samples, seed)) {
    const bool v = ev.eval(tr, root_index(g, h));
    r.agreement = r.agreement && v == r.atl;
    r.sx.push_back({std::move(h), v});
  }
  return r;
}

std::vector<Instantiation> default_instantiations(const std::vector<std::string>& agents) {
  if (agents.empty()) throw std::invalid_argument("default_instantiations: no agents");
  std::vector<Coalition> subsets;
  for (std::size_t mask = 0; mask < (std::size_t{1} << agents.size()); ++mask) {
    Coalition c;
    for (std::size_t i = 0; i < agents.size(); ++i)
      if (mask >> i & 1) c.insert(agents[i]);
    subsets.push_back(c);
  }
  const Coalition everyone(agents.begin(), agents.end());

  const AtlFormula q = AtlFormula::atom("q");
  const std::vector<std::pair<std::string, AtlSubstitution>> sigmas = {
      {"id", {}},
      {"p->!q", {{"p", AtlFormula::negation(q)}}},
      {"p-><<" + agents[0] + ">>Xq", {{"p", AtlFormula::coal_next({agents[0]}, q)}}},
  };

  std::vector<Instantiation> out;
  for (SchemaName s : kAllSchemata) {
    std::vector<CoalitionBindings> bindings;
    if (s == SchemaName::GC) {
      bindings.push_back({{"Ags", everyone}});
    } else if (s == SchemaName::S) {
      for (const auto& a : subsets)
        for (const auto& b : subsets) {
          const bool disjoint = std::none_of(a.begin(), a.end(), [&](const std::string& x) {
            return b.count(x) > 0;
          });
          if (disjoint) bindings.push_back({{"A", a}, {"B", b}});
        }
    } else {
      for (const auto& a : subsets) bindings.push_back({{"A", a}});
    }
    for (const auto& b : bindings)
      for (const auto& [label, sigma] : sigmas) out.push_back({s, b, sigma, label});
  }
  return out;
}

namespace {

std::vector<Counterexample> sweep_one(const Cgs& g, std::size_t model_index,
                                      const std::vector<AtlFormula>& formulas,
                                      const std::vector<SxFormula>& translations,
                                      const SweepOptions& opts, std::size_t& checked,
                                      std::vector<std::string>& skipped) {
  std::vector<Counterexample> out;
  std::vector<std::vector<LassoHistory>> lassos;
  if (opts.check_sx)
    for (std::size_t w = 0; w < g.num_states(); ++w)
      lassos.push_back(sample_lassos(g, static_cast<StateId>(w), opts.lasso_samples,
                                     opts.seed + model_index));
  SxEvaluator ev(g, opts.sx);
  for (std::size_t k = 0; k < formulas.size(); ++k) {
    const auto named = agents_of(formulas[k]);
    const auto missing =
        std::find_if(named.begin(), named.end(), [&](const std::string& a) { return !g.find_agent(a); });
    if (missing != named.end()) {
      skipped.push_back("model " + std::to_string(model_index) + ": " + print_formula(formulas[k]) +
                        " names agent '" + *missing + "' outside the model");
      continue;
    }
    const StateSet sat = eval_atl(g, formulas[k]);
    for (std::size_t w = 0; w < g.num_states(); ++w) {
      ++checked;
      const StateId s = static_cast<StateId>(w);
      if (!sat.contains(s)) {
        out.push_back({model_index, print_formula(formulas[k]), g.state_name(s), "",
                       "false under eval_atl"});
        continue;
      }
      if (!opts.check_sx) continue;
      for (const auto& h : lassos[w]) {
        if (ev.eval(translations[k], root_index(g, h))) continue;
        out.push_back({model_index, print_formula(formulas[k]), g.state_name(s),
                       format_lasso(g, h), "translation false under eval_sx"});
        break;
      }
    }
  }
  return out;
}

}  // namespace

SweepReport validity_sweep(const std::vector<Cgs>& models, const std::vector<AtlFormula>& formulas,
                           const SweepOptions& opts) {
  std::vector<SxFormula> translations;
  for (const auto& f : formulas) translations.push_back(translate(f));

  std::vector<std::vector<Counterexample>> per_model(models.size());
  std::vector<std::size_t> checked(models.size(), 0);
  std::vector<std::vector<std::string>> skipped(models.size());
  std::vector<std::exception_ptr> errors(models.size());
  auto run = [&](long m) {
    try {
      per_model[m] = sweep_one(models[m], static_cast<std::size_t>(m), formulas, translations, opts,
                               checked[m], skipped[m]);
    } catch (...) {
      errors[m] = std::current_exception();
    }
  };
  const long n = static_cast<long>(models.size());
  if (opts.exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long m = 0; m < n; ++m) run(m);
  } else {
    for (long m = 0; m < n; ++m) run(m);
  }

  SweepReport r;
  for (long m = 0; m < n; ++m) {
    if (errors[m]) std::rethrow_exception(errors[m]);
    r.checked += checked[m];
    r.counterexamples.insert(r.counterexamples.end(), per_model[m].begin(), per_model[m].end());
    r.rejected.insert(r.rejected.end(), skipped[m].begin(), skipped[m].end());
  }
  return r;
}

SweepReport axiom_sweep(const std::vector<Cgs>& models, const std::vector<Instantiation>& insts,
                        const SweepOptions& opts) {
  std::vector<AtlFormula> formulas;
  std::vector<std::string> rejected;
  for (const auto& inst : insts) {
    try {
      formulas.push_back(instantiate_schema(inst.schema, inst.coalitions, inst.sigma));
    } catch (const SchemaError& e) {
      rejected.push_back(schema_to_string(inst.schema) + " [" + inst.sigma_label + "]: " + e.what());
    }
  }
  SweepReport r = validity_sweep(models, formulas, opts);
  r.rejected.insert(r.rejected.begin(), rejected.begin(), rejected.end());
  return r;
}

SweepReport soundness_spotcheck(const ProofScript& s, const std::vector<Cgs>& models,
                                const SweepOptions& opts) {
  std::vector<AtlFormula> formulas;
  for (const auto& line : s.lines) formulas.push_back(line.formula);
  return validity_sweep(models, formulas, opts);
}

}  // namespace atlstit
