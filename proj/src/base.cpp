#include "kleenetruth/base.hpp"

#include <algorithm>

#include "kleenetruth/universe.hpp"

namespace kleenetruth {

namespace {

bool eval_prec(const Nat& x, const Nat& y, const EvalEnv& env) {
  if (env.universe) return env.universe->prec(x, y);
  if (env.prec_pool) {
    if (!env.codec) throw std::invalid_argument("prec needs a codec");
    auto ys = env.codec->decode_sentence(y);
    if (!ys) return false;
    auto xs = env.codec->decode_sentence(x);
    if (!xs) return false;
    for (FormulaId p : structural_predecessors(*ys, *env.prec_pool,
                                               *env.profile, *env.codec))
      if (p == *xs) return true;
    return false;
  }
  throw std::invalid_argument("prec needs a universe or a term pool");
}

}  // namespace

bool eval_atom(FormulaId atom, const EvalEnv& env) {
  const FormulaNode& f = ast::node(atom);
  if (f.kind == FormulaKind::Eq)
    return val(f.terms[0], *env.profile, env.codec) ==
           val(f.terms[1], *env.profile, env.codec);
  if (f.kind != FormulaKind::Rel) throw std::invalid_argument("not an atom");
  if (!env.codec) throw std::invalid_argument("designated relation needs a codec");
  std::vector<Nat> v;
  v.reserve(f.terms.size());
  for (auto t : f.terms) v.push_back(val(t, *env.profile, env.codec));
  switch (static_cast<Designated>(f.symbol)) {
    case Designated::Name: return v[0] == env.codec->eval_name(v[1]);
    case Designated::Sub: {
      auto r = env.codec->eval_sub(v[1], v[2], v[3]);
      return r && v[0] == *r;
    }
    case Designated::SubN: {
      auto r = env.codec->eval_subn(v[1], v[2], v[3]);
      return r && v[0] == *r;
    }
    case Designated::Prec: return eval_prec(v[0], v[1], env);
  }
  return false;
}

namespace {

ArithVerdict arith_rec(FormulaId id, const EvalEnv& env) {
  const FormulaNode& f = ast::node(id);
  switch (f.kind) {
    case FormulaKind::Eq:
    case FormulaKind::Rel:
      return {eval_atom(id, env), true, std::nullopt};
    case FormulaKind::Tr:
      throw std::invalid_argument("eval_arith on a sentence with T");
    case FormulaKind::Not: {
      ArithVerdict v = arith_rec(f.subs[0], env);
      return {!v.value, v.exact, std::nullopt};
    }
    case FormulaKind::And: {
      ArithVerdict a = arith_rec(f.subs[0], env);
      ArithVerdict b = arith_rec(f.subs[1], env);
      bool exact = (a.exact && b.exact) || (a.exact && !a.value) ||
                   (b.exact && !b.value);
      return {a.value && b.value, exact, std::nullopt};
    }
    case FormulaKind::Or: {
      ArithVerdict a = arith_rec(f.subs[0], env);
      ArithVerdict b = arith_rec(f.subs[1], env);
      bool exact = (a.exact && b.exact) || (a.exact && a.value) ||
                   (b.exact && b.value);
      return {a.value || b.value, exact, std::nullopt};
    }
    case FormulaKind::Ex: {
      bool assumed_true = false;
      for (uint64_t n = 0; n <= env.q_bound; n++) {
        ArithVerdict v = arith_rec(substitute(f.subs[0], f.symbol, ast::numeral(n)), env);
        if (v.value && v.exact) return {true, true, Nat(n)};
        if (v.value) assumed_true = true;
      }
      return {assumed_true, false, std::nullopt};
    }
    case FormulaKind::All: {
      bool assumed_false = false;
      for (uint64_t n = 0; n <= env.q_bound; n++) {
        ArithVerdict v = arith_rec(substitute(f.subs[0], f.symbol, ast::numeral(n)), env);
        if (!v.value && v.exact) return {false, true, Nat(n)};
        if (!v.value) assumed_false = true;
      }
      return {!assumed_false, false, std::nullopt};
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

ArithVerdict eval_arith(FormulaId sentence, const EvalEnv& env) {
  const FormulaNode& f = ast::node(sentence);
  if (!f.sentence()) throw std::invalid_argument("eval_arith expects a sentence");
  if (f.has_truth) throw std::invalid_argument("eval_arith on a sentence with T");
  return arith_rec(sentence, env);
}

std::vector<TermId> witness_candidates(FormulaId body, uint32_t v,
                                       const EvalEnv& env) {
  std::vector<TermId> out;
  auto add = [&](const Nat& n) { out.push_back(ast::numeral(n)); };
  auto is_var_v = [&](TermId t) {
    const TermNode& n = ast::term(t);
    return n.kind == TermKind::Var && n.symbol == v;
  };
  auto closed = [&](TermId t) { return ast::term(t).closed(); };
  auto value = [&](TermId t) { return val(t, *env.profile, env.codec); };

  std::function<void(FormulaId)> walk = [&](FormulaId id) {
    const FormulaNode& f = ast::node(id);
    switch (f.kind) {
      case FormulaKind::Eq:
        if (is_var_v(f.terms[0]) && closed(f.terms[1])) add(value(f.terms[1]));
        if (is_var_v(f.terms[1]) && closed(f.terms[0])) add(value(f.terms[0]));
        return;
      case FormulaKind::Rel: {
        if (!env.codec) return;
        Designated d = static_cast<Designated>(f.symbol);
        if (d == Designated::Name) {
          if (is_var_v(f.terms[0]) && closed(f.terms[1]))
            add(env.codec->eval_name(value(f.terms[1])));
          if (is_var_v(f.terms[1]) && closed(f.terms[0])) {
            auto t = env.codec->decode(value(f.terms[0]));
            if (t && std::holds_alternative<TermId>(*t)) {
              const TermNode& n = ast::term(std::get<TermId>(*t));
              if (n.kind == TermKind::Numeral) add(n.payload);
            }
          }
        } else if (d == Designated::Sub || d == Designated::SubN) {
          if (is_var_v(f.terms[0]) && closed(f.terms[1]) && closed(f.terms[2]) &&
              closed(f.terms[3])) {
            auto r = d == Designated::Sub
                         ? env.codec->eval_sub(value(f.terms[1]), value(f.terms[2]),
                                               value(f.terms[3]))
                         : env.codec->eval_subn(value(f.terms[1]), value(f.terms[2]),
                                                value(f.terms[3]));
            if (r) add(*r);
          }
        } else if (d == Designated::Prec) {
          if (is_var_v(f.terms[0]) && closed(f.terms[1])) {
            const std::vector<TermId>* pool =
                env.universe ? &env.universe->term_pool() : env.prec_pool;
            if (!pool || !env.codec) return;
            auto target = env.codec->decode_sentence(value(f.terms[1]));
            if (!target) return;
            for (FormulaId p : structural_predecessors(*target, *pool,
                                                       *env.profile, *env.codec))
              add(env.codec->encode(p));
          }
        }
        return;
      }
      case FormulaKind::Tr: return;
      case FormulaKind::Not:
      case FormulaKind::And:
      case FormulaKind::Or: {
        for (auto s : f.subs) walk(s);
        return;
      }
      case FormulaKind::All:
      case FormulaKind::Ex:
        if (f.symbol != v) walk(f.subs[0]);
        return;
    }
  };
  walk(body);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

bool classical_rec(FormulaId id, const ClassicalEnv& env) {
  const FormulaNode& f = ast::node(id);
  switch (f.kind) {
    case FormulaKind::Eq:
    case FormulaKind::Rel: return eval_atom(id, env.base);
    case FormulaKind::Tr:
      return env.t_interp(val(f.terms[0], *env.base.profile, env.base.codec));
    case FormulaKind::Not: return !classical_rec(f.subs[0], env);
    case FormulaKind::And:
      return classical_rec(f.subs[0], env) && classical_rec(f.subs[1], env);
    case FormulaKind::Or:
      return classical_rec(f.subs[0], env) || classical_rec(f.subs[1], env);
    case FormulaKind::All:
    case FormulaKind::Ex: {
      std::vector<TermId> domain;
      if (env.pool) {
        domain = *env.pool;
      } else {
        for (uint64_t n = 0; n <= env.range_bound; n++)
          domain.push_back(ast::numeral(n));
        for (TermId t : witness_candidates(f.subs[0], f.symbol, env.base))
          domain.push_back(t);
      }
      bool all = true, any = false;
      for (TermId t : domain) {
        bool v = classical_rec(substitute(f.subs[0], f.symbol, t), env);
        all = all && v;
        any = any || v;
        if (f.kind == FormulaKind::Ex && any) return true;
        if (f.kind == FormulaKind::All && !all) return false;
      }
      return f.kind == FormulaKind::All ? all : any;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

bool classical_eval(FormulaId sentence, const ClassicalEnv& env) {
  if (!ast::node(sentence).sentence())
    throw std::invalid_argument("classical_eval expects a sentence");
  return classical_rec(sentence, env);
}

}  // namespace kleenetruth
