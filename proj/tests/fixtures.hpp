#pragma once

#include <string>

#include "atlstit/cgs.hpp"

namespace fixtures {

inline std::string data(const std::string& name) { return std::string(ATLSTIT_DATA_DIR) + "/" + name; }

inline atlstit::Cgs toy1() { return atlstit::load_cgs_file(data("toy1.json")); }

// Two agents, two states, every profile but (s1,s1) stays put.
inline const char* kTwoAgents = R"({
  "agents": ["a", "b"],
  "states": ["u", "v"],
  "actions": {"u": {"a": ["s1", "s2"], "b": ["s1", "s2"]}, "v": {"a": ["s1"], "b": ["s1"]}},
  "delta": [
    {"state": "u", "profile": {"a": "s1", "b": "s1"}, "next": "v"},
    {"state": "u", "profile": {"a": "s1", "b": "s2"}, "next": "u"},
    {"state": "u", "profile": {"a": "s2", "b": "s1"}, "next": "u"},
    {"state": "u", "profile": {"a": "s2", "b": "s2"}, "next": "u"},
    {"state": "v", "profile": {"a": "s1", "b": "s1"}, "next": "v"}
  ],
  "valuation": {"p": ["v"]}
})";

}  // namespace fixtures
