#pragma once

#include <unordered_map>
#include <unordered_set>

#include "kleenetruth/coding.hpp"
#include "kleenetruth/syntax.hpp"

namespace kleenetruth {

// Evaluation shape of a sentence, precompiled for the jump operators. Every
// truth-free sentence is decided by the arithmetical oracle; the remaining
// forms mirror the jump clauses one to one.
enum class Form : uint8_t {
  ArithOracle,
  TPred,
  NegTPred,
  NegNeg,
  And,
  Or,
  NegAnd,
  NegOr,
  All,
  Ex,
  NegAll,
  NegEx,
};

std::string_view form_name(Form f);

struct Row {
  Form form = Form::ArithOracle;
  bool arith_value = false;
  bool arith_exact = false;
  bool nonsent = false;          // (Neg)TPred: val(t) is not a sentence code
  int32_t a = -1, b = -1;        // operands (see kripke.cpp)
  int32_t na = -1, nb = -1;      // negation partners of the operands
  std::vector<int32_t> insts;    // quantifier instances, parallel to the pool
  std::vector<int32_t> ninsts;   // their negation partners
  bool complete = true;          // every operand the clause may consult exists
};

struct CloseOptions {
  uint64_t bound = 8;        // numerals 0..bound seed the term pool
  uint64_t cap = 20000;      // sentence cap
  uint64_t q_bound = 256;    // oracle search bound
  uint64_t witness_cap = 12; // per-atom cap on mined witness terms
  uint64_t pool_cap = 512;   // term pool cap
};

// A finite, dependency-closed set of sentences: closed under immediate
// subsentence instances, negation partners (to a depth sufficient for the
// jump clauses and guards), dereference of T(t), and instantiation of
// quantified sentences over the term pool. The pool holds numerals up to
// the bound, closed subterms of the seeds, and witness terms mined from
// designated atoms along viable branches; sentences whose expansion was cut
// short by a cap carry the truncated flag.
class Universe {
 public:
  size_t size() const { return sents_.size(); }
  const std::vector<FormulaId>& sentences() const { return sents_; }
  const std::vector<TermId>& term_pool() const { return pool_; }
  const std::vector<FormulaId>& seeds() const { return seeds_; }

  int32_t index_of(FormulaId f) const {
    auto it = index_.find(f.v);
    return it == index_.end() ? -1 : static_cast<int32_t>(it->second);
  }
  bool contains(FormulaId f) const { return index_.count(f.v) != 0; }
  FormulaId sentence(uint32_t idx) const { return sents_[idx]; }

  const Row& row(uint32_t idx) const { return rows_[idx]; }
  const std::vector<uint32_t>& preds(uint32_t idx) const { return preds_[idx]; }
  bool truncated(uint32_t idx) const { return truncated_[idx] != 0; }
  bool any_truncated() const { return any_truncated_; }
  // False when the verdict about idx may depend on a truncated region or an
  // inexact oracle verdict anywhere in its evaluation support.
  bool support_exact(uint32_t idx) const { return support_exact_[idx] != 0; }

  // Index of the syntactic negation of idx, -1 when absent.
  int32_t neg_index(uint32_t idx) const { return negidx_[idx]; }
  // Falsity witness: the negation partner when present, else the body of a
  // double negation (equivalent at any fixed point).
  int32_t falsity_index(uint32_t idx) const;

  const Codec& codec() const { return *codec_; }
  const LanguageProfile& profile() const { return *profile_; }
  const CloseOptions& options() const { return opts_; }

  Nat value_of(TermId t) const;       // cached val
  Nat code_of(FormulaId f) const;     // cached encode
  std::optional<FormulaId> deref(const Nat& code) const;

  // The dependency relation on codes: x names an immediate predecessor of y.
  bool prec(const Nat& x, const Nat& y) const;

 private:
  friend class UniverseBuilder;
  std::vector<FormulaId> sents_;
  std::unordered_map<uint32_t, uint32_t> index_;
  std::vector<TermId> pool_;
  std::vector<uint8_t> truncated_;
  std::vector<uint8_t> support_exact_;
  std::vector<int32_t> negidx_;
  std::vector<Row> rows_;
  std::vector<std::vector<uint32_t>> preds_;
  std::vector<FormulaId> seeds_;
  const Codec* codec_ = nullptr;
  const LanguageProfile* profile_ = nullptr;
  CloseOptions opts_;
  bool any_truncated_ = false;
  mutable std::unordered_map<uint32_t, std::vector<Nat>> pred_codes_;
  mutable std::unordered_map<uint32_t, Nat> codes_;
  mutable std::unordered_map<uint32_t, Nat> vals_;
};

// Least closure of the seeds under the universe rules, stopping at the caps.
// Throws std::invalid_argument on an empty or open seed list.
Universe close(const std::vector<FormulaId>& seeds, const Codec& codec,
               const LanguageProfile& profile, const CloseOptions& opts = {});

// {x : x immediately precedes s} intersected with the universe.
std::vector<FormulaId> predecessors(const Universe& u, FormulaId s);

// The same relation computed structurally against an explicit pool.
std::vector<FormulaId> structural_predecessors(FormulaId s,
                                               std::span<const TermId> pool,
                                               const LanguageProfile& profile,
                                               const Codec& codec);

}  // namespace kleenetruth
