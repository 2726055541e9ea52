#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace kleenetruth {

// Unbounded naturals. Godel codes and numeral payloads routinely exceed
// any machine word once diagonal sentences embed their own codes.
using Nat = boost::multiprecision::cpp_int;

class Codec;  // coding.hpp

struct TermId {
  uint32_t v = UINT32_MAX;
  bool ok() const { return v != UINT32_MAX; }
  friend bool operator==(TermId a, TermId b) { return a.v == b.v; }
  friend bool operator!=(TermId a, TermId b) { return a.v != b.v; }
  friend bool operator<(TermId a, TermId b) { return a.v < b.v; }
};

struct FormulaId {
  uint32_t v = UINT32_MAX;
  bool ok() const { return v != UINT32_MAX; }
  friend bool operator==(FormulaId a, FormulaId b) { return a.v == b.v; }
  friend bool operator!=(FormulaId a, FormulaId b) { return a.v != b.v; }
  friend bool operator<(FormulaId a, FormulaId b) { return a.v < b.v; }
};

enum class TermKind : uint8_t { Numeral, Succ, Plus, Times, Func, Var };

// Meta-evaluated relations of the object language. `name` and `sub` follow
// the coding module's conventions (sub substitutes the term *coded by* its
// last argument); `subn` substitutes the numeral *of the value* of its last
// argument; `prec` is the sentence dependency relation on codes, evaluated
// against the ambient universe.
enum class Designated : uint8_t { Name, Sub, SubN, Prec };

inline constexpr int designated_arity(Designated d) {
  switch (d) {
    case Designated::Name: return 2;
    case Designated::Sub: return 4;
    case Designated::SubN: return 4;
    case Designated::Prec: return 2;
  }
  return 0;
}
std::string_view designated_name(Designated d);

enum class FormulaKind : uint8_t { Eq, Tr, Rel, Not, And, Or, All, Ex };

struct TermNode {
  TermKind kind;
  uint32_t symbol = 0;  // Func: global symbol id; Var: variable index
  Nat payload;          // Numeral value
  std::vector<TermId> args;
  std::vector<uint32_t> free_vars;  // sorted
  bool closed() const { return free_vars.empty(); }
};

struct FormulaNode {
  FormulaKind kind;
  uint32_t symbol = 0;  // Rel: Designated; All/Ex: bound variable index
  std::vector<TermId> terms;
  std::vector<FormulaId> subs;
  std::vector<uint32_t> free_vars;  // sorted
  bool has_truth = false;           // contains the truth predicate
  bool has_quant = false;
  uint32_t neg_depth = 0;           // leading negations
  bool closed() const { return free_vars.empty(); }
  bool sentence() const { return free_vars.empty(); }
};

// Global hash-consed arenas. Construction is single-threaded; the interned
// nodes are immutable afterwards and safe to share between threads.
namespace ast {

TermId numeral(const Nat& n);
TermId zero();
TermId succ(TermId t);  // collapses onto Numeral when t is one
TermId plus(TermId a, TermId b);
TermId times(TermId a, TermId b);
TermId func(uint32_t symbol, std::vector<TermId> args);
TermId var(uint32_t index);

FormulaId eq(TermId a, TermId b);
FormulaId truth(TermId t);
FormulaId rel(Designated d, std::vector<TermId> args);
FormulaId negation(FormulaId f);
FormulaId conj(FormulaId a, FormulaId b);
FormulaId disj(FormulaId a, FormulaId b);
FormulaId forall(uint32_t v, FormulaId body);
FormulaId exists(uint32_t v, FormulaId body);

const TermNode& term(TermId id);
const FormulaNode& node(FormulaId id);

// Registry of extra function symbols (profile membership is checked by the
// parser, not here; codes embed the symbol name so they do not depend on
// profile order).
uint32_t intern_symbol(std::string_view name);
std::string_view symbol_name(uint32_t id);

// Strips one negation, or wraps one.
FormulaId negated(FormulaId f);

}  // namespace ast

struct ParseError : std::runtime_error {
  size_t position;
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg), position(pos) {}
};

struct ExtraFunction {
  std::string name;
  int arity;
  // The codec pointer is only consulted by code-producing symbols (eqc).
  std::function<Nat(std::span<const Nat>, const Codec*)> eval;
};

struct LanguageProfile {
  std::string id;
  std::vector<ExtraFunction> functions;
  const ExtraFunction* find(std::string_view name) const;
};

// Shipped profiles: plain PA terms; PA plus truncated subtraction; PA plus
// the code-of-equation symbol used by quantified seed families.
const LanguageProfile& profile_pa();
const LanguageProfile& profile_pa_monus();
const LanguageProfile& profile_pa_eqc();
const LanguageProfile* find_profile(std::string_view id);

FormulaId parse(std::string_view text, const LanguageProfile& profile);
TermId parse_term(std::string_view text, const LanguageProfile& profile);

std::string print(FormulaId f);
std::string print(TermId t);
std::string var_name(uint32_t index);

// Standard-model value of a closed term.
Nat val(TermId t, const LanguageProfile& profile, const Codec* codec);

// Substitutes closed term t for every free occurrence of v.
FormulaId substitute(FormulaId f, uint32_t v, TermId t);
TermId substitute(TermId in, uint32_t v, TermId t);

// Unchecked variant used internally where t may contain (fresh) variables;
// the caller guarantees no capture.
FormulaId substitute_open(FormulaId f, uint32_t v, TermId t);

// Replaces every subformula T(t) by `replacement` instantiated at t (the
// hole variable receives t itself). Bound variables of f that clash with
// variables of the replacement are renamed first.
FormulaId substitute_predicate(FormulaId f, FormulaId replacement, uint32_t hole);

uint32_t max_var_index(FormulaId f);  // 0 when no variables occur

}  // namespace kleenetruth
