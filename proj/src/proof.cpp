#include <fstream>
#include <sstream>

#include <json.hpp>

#include "atlstit/bridge.hpp"

namespace atlstit {

using json = nlohmann::json;

namespace {

[[noreturn]] void bad(std::size_t line, const std::string& what) {
  throw ProofFormatError("proof line " + std::to_string(line) + ": " + what);
}

Coalition coalition_field(const json& by, const char* key, std::size_t line) {
  const json& v = by.at(key);
  if (!v.is_array()) bad(line, std::string("'") + key + "' must be an array of agent names");
  Coalition c;
  for (const auto& a : v) {
    if (!a.is_string()) bad(line, std::string("'") + key + "' must be an array of agent names");
    c.insert(a.get<std::string>());
  }
  return c;
}

std::size_t index_field(const json& by, const char* key, std::size_t line) {
  if (!by.contains(key) || !by[key].is_number_integer() || by[key].get<long long>() < 1)
    bad(line, std::string("'") + key + "' must be a positive line number");
  return by[key].get<std::size_t>();
}

AtlSubstitution subst_field(const json& by, std::size_t line) {
  AtlSubstitution sigma;
  if (!by.contains("subst")) return sigma;
  const json& v = by["subst"];
  if (!v.is_object()) bad(line, "'subst' must map atoms to formulas");
  for (auto it = v.begin(); it != v.end(); ++it) {
    if (!it.value().is_string()) bad(line, "'subst' must map atoms to formulas");
    try {
      sigma.emplace(it.key(), parse_atl(it.value().get<std::string>()));
    } catch (const ParseError& e) {
      bad(line, std::string("subst.") + it.key() + ": " + e.what());
    }
  }
  return sigma;
}

Justification parse_justification(const json& by, std::size_t line) {
  if (!by.is_object() || !by.contains("kind") || !by["kind"].is_string())
    bad(line, "'by' must be an object with a string 'kind'");
  const std::string kind = by["kind"].get<std::string>();
  Justification j;
  if (kind == "axiom") {
    j.kind = Justification::Kind::Axiom;
    if (!by.contains("schema") || !by["schema"].is_string()) bad(line, "axiom needs 'schema'");
    try {
      j.schema = schema_from_string(by["schema"].get<std::string>());
    } catch (const SchemaError& e) {
      bad(line, e.what());
    }
    for (const char* key : {"A", "B", "Ags"})
      if (by.contains(key)) j.coalitions[key] = coalition_field(by, key, line);
    j.sigma = subst_field(by, line);
  } else if (kind == "mp") {
    j.kind = Justification::Kind::MP;
    j.premise = index_field(by, "premise", line);
    j.implication = index_field(by, "implication", line);
  } else if (kind == "subst") {
    j.kind = Justification::Kind::Subst;
    j.premise = index_field(by, "line", line);
    if (!by.contains("subst")) bad(line, "subst needs 'subst'");
    j.sigma = subst_field(by, line);
  } else if (kind == "xmono") {
    j.kind = Justification::Kind::XMono;
    j.premise = index_field(by, "line", line);
    if (!by.contains("coalition")) bad(line, "xmono needs 'coalition'");
    j.coalition = coalition_field(by, "coalition", line);
  } else if (kind == "gnec") {
    j.kind = Justification::Kind::GNec;
    j.premise = index_field(by, "line", line);
  } else {
    bad(line, "unknown justification kind '" + kind + "'");
  }
  return j;
}

}  // namespace

ProofScript parse_proof_script(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ProofFormatError(std::string("malformed proof script: ") + e.what());
  }
  if (!root.is_array()) throw ProofFormatError("malformed proof script: expected a JSON array");
  ProofScript s;
  std::size_t n = 0;
  for (const auto& entry : root) {
    ++n;
    if (!entry.is_object() || !entry.contains("formula") || !entry["formula"].is_string() ||
        !entry.contains("by"))
      bad(n, "expected {\"formula\": string, \"by\": {...}}");
    AtlFormula f = AtlFormula::atom("p");
    try {
      f = parse_atl(entry["formula"].get<std::string>());
    } catch (const ParseError& e) {
      bad(n, e.what());
    }
    s.lines.push_back({f, parse_justification(entry["by"], n)});
  }
  return s;
}

ProofScript load_proof_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ProofFormatError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_proof_script(buf.str());
}

namespace {

// Empty string when the line follows; otherwise the reason.
std::string check_line(const ProofScript& s, std::size_t n) {
  const ProofLine& line = s.lines[n - 1];
  const Justification& by = line.by;
  auto ref = [&](std::size_t k) -> const AtlFormula* {
    return k >= 1 && k < n ? &s.lines[k - 1].formula : nullptr;
  };
  auto dangling = [](std::size_t k) { return "dangling reference to line " + std::to_string(k); };

  switch (by.kind) {
    case Justification::Kind::Axiom: {
      AtlFormula inst = AtlFormula::atom("p");
      try {
        inst = instantiate_schema(by.schema, by.coalitions, by.sigma);
      } catch (const SchemaError& e) {
        return std::string("side condition: ") + e.what();
      }
      if (inst != line.formula)
        return "not an instance of " + schema_to_string(by.schema) + " (expected " +
               print_formula(inst) + ")";
      return {};
    }
    case Justification::Kind::MP: {
      const AtlFormula* premise = ref(by.premise);
      const AtlFormula* imp = ref(by.implication);
      if (!premise) return dangling(by.premise);
      if (!imp) return dangling(by.implication);
      AtlFormula ante = *premise, cons = *premise;
      if (!match_implication(*imp, &ante, &cons))
        return "line " + std::to_string(by.implication) + " is not an implication";
      if (ante != *premise) return "antecedent mismatch";
      if (cons != line.formula) return "consequent mismatch";
      return {};
    }
    case Justification::Kind::Subst: {
      const AtlFormula* src = ref(by.premise);
      if (!src) return dangling(by.premise);
      const AtlFormula expect = substitute(*src, by.sigma);
      if (expect != line.formula)
        return "substitution mismatch (expected " + print_formula(expect) + ")";
      return {};
    }
    case Justification::Kind::XMono: {
      const AtlFormula* src = ref(by.premise);
      if (!src) return dangling(by.premise);
      AtlFormula ante = *src, cons = *src;
      if (!match_implication(*src, &ante, &cons))
        return "line " + std::to_string(by.premise) + " is not an implication";
      const AtlFormula expect = make_implies(AtlFormula::coal_next(by.coalition, ante),
                                             AtlFormula::coal_next(by.coalition, cons));
      if (expect != line.formula)
        return "not the X-monotonicity image (expected " + print_formula(expect) + ")";
      return {};
    }
    case Justification::Kind::GNec: {
      const AtlFormula* src = ref(by.premise);
      if (!src) return dangling(by.premise);
      const AtlFormula& f = line.formula;
      if (f.op() != AtlOp::CoalG || f.sub() != *src)
        return "not <<>> G applied to line " + std::to_string(by.premise);
      if (!f.coalition().empty()) return "necessitation requires the empty coalition";
      return {};
    }
  }
  return "unknown justification";
}

}  // namespace

ProofVerdict check_proof(const ProofScript& s) {
  ProofVerdict v;
  v.lines = s.lines.size();
  for (std::size_t n = 1; n <= s.lines.size(); ++n) {
    std::string reason = check_line(s, n);
    if (reason.empty()) continue;
    v.accepted = false;
    v.line = n;
    v.reason = std::move(reason);
    return v;
  }
  return v;
}

}  // namespace atlstit
