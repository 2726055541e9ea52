#pragma once

#include <functional>

#include "kleenetruth/coding.hpp"
#include "kleenetruth/syntax.hpp"

namespace kleenetruth {

class Universe;

struct ArithVerdict {
  bool value = false;
  bool exact = false;
  std::optional<Nat> witness;
};

struct EvalEnv {
  const LanguageProfile* profile = &profile_pa();
  const Codec* codec = nullptr;
  // prec is resolved against the ambient universe; when probing outside a
  // universe a bare term pool can stand in.
  const Universe* universe = nullptr;
  const std::vector<TermId>* prec_pool = nullptr;
  uint64_t q_bound = 256;
};

// Classical evaluation of a truth-free sentence over the standard model,
// with existential/universal search bounded by q_bound. `exact` is set when
// the verdict does not rest on the search bound: quantifier-free sentences,
// witnessed existentials and counterwitnessed universals.
ArithVerdict eval_arith(FormulaId sentence, const EvalEnv& env);

// Meta evaluation of a single closed atom (equality or designated relation).
bool eval_atom(FormulaId atom, const EvalEnv& env);

struct ClassicalEnv {
  EvalEnv base;
  // Interpretation of the truth predicate, applied to term values.
  std::function<bool(const Nat&)> t_interp;
  // Quantifier domain: either the universe term pool, or numerals up to
  // range_bound augmented with witness candidates mined from designated
  // atoms (needed for diagonal sentences, whose true witnesses are codes).
  const std::vector<TermId>* pool = nullptr;
  uint64_t range_bound = 8;
};

// Two-valued evaluation of an arbitrary sentence of L_T.
bool classical_eval(FormulaId sentence, const ClassicalEnv& env);

// Candidate witness terms for quantifier variable v mined from equality and
// designated atoms of `body` whose remaining arguments are closed.
std::vector<TermId> witness_candidates(FormulaId body, uint32_t v,
                                       const EvalEnv& env);

}  // namespace kleenetruth
