#pragma once

// Declarative workspaces: named rings, modules, homomorphisms and complexes
// plus a task list, in a block-structured text format.
//
//   defaults { nmax=10 D=12 window=6 }
//   ring R { char=2 vars=[x:1, y:1] relations=["x^2", "y^2"] truncate=6 }
//   module M over R { gens=[0] relations_matrix=[["x"], ["y"]] }
//   hom F from R to R { frobenius=1 }
//   hom P from Q to R { images=["x", "y"] scale=1 }
//   complex K over R { module=M koszul=["x", "y"] }
//   task betti { name="b" module=M nmax=8 }
//
// `#` starts a comment. Modules also accept `ideal=[...]` (for R/I) and
// `residue=true`; both are stored as a presentation.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "homolocal/complex.hpp"
#include "homolocal/localhom.hpp"
#include "homolocal/module.hpp"

namespace homolocal {

struct Location {
  int line = 0;
  int column = 0;
  friend bool operator==(const Location&, const Location&) = default;
};

struct Value {
  enum class Type { Int, String, Ident, Pair, List };
  Type type = Type::Int;
  std::int64_t i = 0;   // Int, or the degree of a Pair
  std::string s;        // String, Ident, or the name of a Pair
  std::vector<Value> list;
  Location loc;

  bool operator==(const Value& o) const {
    return type == o.type && i == o.i && s == o.s && list == o.list;
  }
};

struct RingDef {
  std::string name;
  std::uint64_t p = 2;
  std::vector<Variable> vars;
  std::vector<std::string> relations;
  std::optional<int> truncate;
  Location loc;
  bool operator==(const RingDef& o) const;
};

struct ModuleDef {
  std::string name;
  std::string ring;
  std::vector<int> gens;
  std::vector<std::vector<std::string>> relations;
  Location loc;
  bool operator==(const ModuleDef& o) const;
};

struct HomDef {
  std::string name;
  std::string source;
  std::string target;
  std::vector<std::string> images;
  int scale = 1;
  std::optional<int> frobenius;
  Location loc;
  bool operator==(const HomDef& o) const;
};

struct ComplexDef {
  std::string name;
  std::string ring;
  std::string module;
  std::vector<std::string> koszul;
  Location loc;
  bool operator==(const ComplexDef& o) const;
};

struct TaskDef {
  std::string kind;
  std::string name;
  std::vector<std::pair<std::string, Value>> params;
  Location loc;
  bool operator==(const TaskDef& o) const;

  const Value* param(const std::string& key) const;
};

struct Defaults {
  int nmax = 10;
  int D = 12;
  int window = 6;  // minimum tail points for the growth estimators
  friend bool operator==(const Defaults&, const Defaults&) = default;
};

struct Workspace {
  Defaults defaults;
  std::vector<RingDef> rings;
  std::vector<ModuleDef> modules;
  std::vector<HomDef> homs;
  std::vector<ComplexDef> complexes;
  std::vector<TaskDef> tasks;

  bool operator==(const Workspace& o) const;
};

// Throws ParseError (message starts with "line:column:") or UnknownReference.
Workspace parse_workspace(const std::string& text);
// Canonical text; parse_workspace(emit_workspace(w)) == w.
std::string emit_workspace(const Workspace& w);

// The objects of a workspace, built and validated.
struct Environment {
  Defaults defaults;
  std::map<std::string, RingPtr> rings;
  std::map<std::string, DegreewiseModule> modules;
  std::map<std::string, HomPtr> homs;
  std::map<std::string, EvaluatedComplex> complexes;
};

// Throws the library's ValidationError family with the block location
// prepended to the message.
Environment build_environment(const Workspace& w);

}  // namespace homolocal
