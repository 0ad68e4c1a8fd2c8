#include <algorithm>

#include "atlstit/formula.hpp"

namespace atlstit {

std::string schema_to_string(SchemaName s) {
  switch (s) {
    case SchemaName::Bot: return "bot";
    case SchemaName::Top: return "top";
    case SchemaName::GC: return "GC";
    case SchemaName::S: return "S";
    case SchemaName::FP_G: return "FP_G";
    case SchemaName::GFP_G: return "GFP_G";
    case SchemaName::FP_U: return "FP_U";
    case SchemaName::LFP_U: return "LFP_U";
  }
  return "?";
}

SchemaName schema_from_string(std::string_view s) {
  if (s == "bot" || s == "⊥") return SchemaName::Bot;
  if (s == "top" || s == "⊤") return SchemaName::Top;
  for (SchemaName n : kAllSchemata)
    if (schema_to_string(n) == s) return n;
  throw SchemaError("unknown schema '" + std::string(s) + "'");
}

namespace {

const Coalition& binding(const CoalitionBindings& b, const std::string& key, SchemaName s) {
  auto it = b.find(key);
  if (it == b.end())
    throw SchemaError("missing coalition binding " + key + " for schema " + schema_to_string(s));
  return it->second;
}

}  // namespace

AtlFormula instantiate_schema(SchemaName name, const CoalitionBindings& coalitions,
                              const AtlSubstitution& sigma) {
  using F = AtlFormula;
  const F p = F::atom("p");
  const F q = F::atom("q");
  const F r = F::atom("r");
  const Coalition none;

  F tmpl = p;
  switch (name) {
    case SchemaName::Bot: {
      const auto& a = binding(coalitions, "A", name);
      tmpl = F::negation(F::coal_next(a, make_bottom<F>()));
      break;
    }
    case SchemaName::Top: {
      const auto& a = binding(coalitions, "A", name);
      tmpl = F::coal_next(a, make_top<F>());
      break;
    }
    case SchemaName::GC: {
      const auto& ags = binding(coalitions, "Ags", name);
      tmpl = make_implies(F::negation(F::coal_next(none, F::negation(p))), F::coal_next(ags, p));
      break;
    }
    case SchemaName::S: {
      const auto& a = binding(coalitions, "A", name);
      const auto& b = binding(coalitions, "B", name);
      Coalition both = a;
      for (const auto& x : b) {
        if (a.count(x))
          throw SchemaError("schema S requires disjoint coalitions; both contain '" + x + "'");
        both.insert(x);
      }
      tmpl = make_implies(F::conjunction(F::coal_next(a, p), F::coal_next(b, q)),
                          F::coal_next(both, F::conjunction(p, q)));
      break;
    }
    case SchemaName::FP_G: {
      const auto& a = binding(coalitions, "A", name);
      tmpl = make_iff(F::coal_globally(a, p),
                      F::conjunction(p, F::coal_next(a, F::coal_globally(a, p))));
      break;
    }
    case SchemaName::GFP_G: {
      const auto& a = binding(coalitions, "A", name);
      tmpl = make_implies(
          F::coal_globally(none, make_implies(r, F::conjunction(p, F::coal_next(a, r)))),
          F::coal_globally(none, make_implies(r, F::conjunction(p, F::coal_globally(a, p)))));
      break;
    }
    case SchemaName::FP_U: {
      const auto& a = binding(coalitions, "A", name);
      tmpl = make_iff(F::coal_until(a, p, q),
                      make_or(q, F::conjunction(p, F::coal_next(a, F::coal_until(a, p, q)))));
      break;
    }
    case SchemaName::LFP_U: {
      const auto& a = binding(coalitions, "A", name);
      tmpl = make_implies(
          F::coal_globally(none, make_implies(make_or(q, F::conjunction(p, F::coal_next(a, r))), r)),
          F::coal_globally(none, make_implies(F::coal_until(a, p, q), r)));
      break;
    }
  }
  return substitute(tmpl, sigma);
}

}  // namespace atlstit
