#include "kleenetruth/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

#include <boost/functional/hash.hpp>

namespace kleenetruth {

std::string_view designated_name(Designated d) {
  switch (d) {
    case Designated::Name: return "name";
    case Designated::Sub: return "sub";
    case Designated::SubN: return "subn";
    case Designated::Prec: return "prec";
  }
  return "?";
}

namespace ast {
namespace {

struct TermKey {
  TermKind kind;
  uint32_t symbol;
  Nat payload;
  std::vector<TermId> args;
  bool operator==(const TermKey& o) const {
    return kind == o.kind && symbol == o.symbol && payload == o.payload &&
           args == o.args;
  }
};

struct FormulaKey {
  FormulaKind kind;
  uint32_t symbol;
  std::vector<TermId> terms;
  std::vector<FormulaId> subs;
  bool operator==(const FormulaKey& o) const {
    return kind == o.kind && symbol == o.symbol && terms == o.terms &&
           subs == o.subs;
  }
};

struct TermKeyHash {
  size_t operator()(const TermKey& k) const {
    size_t h = boost::hash<int>()(static_cast<int>(k.kind));
    boost::hash_combine(h, k.symbol);
    boost::hash_combine(h, boost::hash<Nat>()(k.payload));
    for (auto a : k.args) boost::hash_combine(h, a.v);
    return h;
  }
};

struct FormulaKeyHash {
  size_t operator()(const FormulaKey& k) const {
    size_t h = boost::hash<int>()(static_cast<int>(k.kind));
    boost::hash_combine(h, k.symbol);
    for (auto t : k.terms) boost::hash_combine(h, t.v);
    for (auto s : k.subs) boost::hash_combine(h, s.v);
    return h;
  }
};

struct Arena {
  std::deque<TermNode> terms;
  std::deque<FormulaNode> formulas;
  std::unordered_map<TermKey, TermId, TermKeyHash> term_ids;
  std::unordered_map<FormulaKey, FormulaId, FormulaKeyHash> formula_ids;
  std::vector<std::string> symbols;
  std::unordered_map<std::string, uint32_t> symbol_ids;
};

Arena& arena() {
  static Arena a;
  return a;
}

std::vector<uint32_t> merge_vars(const std::vector<uint32_t>& a,
                                 const std::vector<uint32_t>& b) {
  std::vector<uint32_t> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

TermId intern_term(TermKey key) {
  Arena& a = arena();
  auto it = a.term_ids.find(key);
  if (it != a.term_ids.end()) return it->second;
  TermNode n;
  n.kind = key.kind;
  n.symbol = key.symbol;
  n.payload = key.payload;
  n.args = key.args;
  if (n.kind == TermKind::Var) {
    n.free_vars = {n.symbol};
  } else {
    for (auto arg : n.args)
      n.free_vars = merge_vars(n.free_vars, term(arg).free_vars);
  }
  TermId id{static_cast<uint32_t>(a.terms.size())};
  a.terms.push_back(std::move(n));
  a.term_ids.emplace(std::move(key), id);
  return id;
}

FormulaId intern_formula(FormulaKey key) {
  Arena& a = arena();
  auto it = a.formula_ids.find(key);
  if (it != a.formula_ids.end()) return it->second;
  FormulaNode n;
  n.kind = key.kind;
  n.symbol = key.symbol;
  n.terms = key.terms;
  n.subs = key.subs;
  for (auto t : n.terms) n.free_vars = merge_vars(n.free_vars, term(t).free_vars);
  for (auto s : n.subs) {
    const FormulaNode& c = node(s);
    n.free_vars = merge_vars(n.free_vars, c.free_vars);
    n.has_truth = n.has_truth || c.has_truth;
    n.has_quant = n.has_quant || c.has_quant;
  }
  if (n.kind == FormulaKind::Tr) n.has_truth = true;
  if (n.kind == FormulaKind::All || n.kind == FormulaKind::Ex) n.has_quant = true;
  if (n.kind == FormulaKind::All || n.kind == FormulaKind::Ex) {
    auto& fv = n.free_vars;
    fv.erase(std::remove(fv.begin(), fv.end(), n.symbol), fv.end());
  }
  if (n.kind == FormulaKind::Not) n.neg_depth = node(n.subs[0]).neg_depth + 1;
  FormulaId id{static_cast<uint32_t>(a.formulas.size())};
  a.formulas.push_back(std::move(n));
  a.formula_ids.emplace(std::move(key), id);
  return id;
}

}  // namespace

TermId numeral(const Nat& n) {
  return intern_term({TermKind::Numeral, 0, n, {}});
}
TermId zero() { return numeral(0); }

TermId succ(TermId t) {
  const TermNode& n = term(t);
  if (n.kind == TermKind::Numeral) return numeral(n.payload + 1);
  return intern_term({TermKind::Succ, 0, 0, {t}});
}

TermId plus(TermId a, TermId b) {
  return intern_term({TermKind::Plus, 0, 0, {a, b}});
}
TermId times(TermId a, TermId b) {
  return intern_term({TermKind::Times, 0, 0, {a, b}});
}
TermId func(uint32_t symbol, std::vector<TermId> args) {
  return intern_term({TermKind::Func, symbol, 0, std::move(args)});
}
TermId var(uint32_t index) {
  return intern_term({TermKind::Var, index, 0, {}});
}

FormulaId eq(TermId a, TermId b) {
  return intern_formula({FormulaKind::Eq, 0, {a, b}, {}});
}
FormulaId truth(TermId t) {
  return intern_formula({FormulaKind::Tr, 0, {t}, {}});
}
FormulaId rel(Designated d, std::vector<TermId> args) {
  if (static_cast<int>(args.size()) != designated_arity(d))
    throw std::invalid_argument("designated relation arity mismatch");
  return intern_formula(
      {FormulaKind::Rel, static_cast<uint32_t>(d), std::move(args), {}});
}
FormulaId negation(FormulaId f) {
  return intern_formula({FormulaKind::Not, 0, {}, {f}});
}
FormulaId conj(FormulaId a, FormulaId b) {
  return intern_formula({FormulaKind::And, 0, {}, {a, b}});
}
FormulaId disj(FormulaId a, FormulaId b) {
  return intern_formula({FormulaKind::Or, 0, {}, {a, b}});
}
FormulaId forall(uint32_t v, FormulaId body) {
  return intern_formula({FormulaKind::All, v, {}, {body}});
}
FormulaId exists(uint32_t v, FormulaId body) {
  return intern_formula({FormulaKind::Ex, v, {}, {body}});
}

const TermNode& term(TermId id) { return arena().terms[id.v]; }
const FormulaNode& node(FormulaId id) { return arena().formulas[id.v]; }

uint32_t intern_symbol(std::string_view name) {
  Arena& a = arena();
  auto it = a.symbol_ids.find(std::string(name));
  if (it != a.symbol_ids.end()) return it->second;
  uint32_t id = static_cast<uint32_t>(a.symbols.size());
  a.symbols.emplace_back(name);
  a.symbol_ids.emplace(std::string(name), id);
  return id;
}
std::string_view symbol_name(uint32_t id) { return arena().symbols[id]; }

FormulaId negated(FormulaId f) { return negation(f); }

}  // namespace ast

// ---------------------------------------------------------------------------
// Profiles

const ExtraFunction* LanguageProfile::find(std::string_view name) const {
  for (const auto& f : functions)
    if (f.name == name) return &f;
  return nullptr;
}

namespace {

Nat eval_monus(std::span<const Nat> args, const Codec*) {
  return args[0] >= args[1] ? Nat(args[0] - args[1]) : Nat(0);
}

}  // namespace

const LanguageProfile& profile_pa() {
  static LanguageProfile p{"pa", {}};
  return p;
}

const LanguageProfile& profile_pa_monus() {
  static LanguageProfile p{"pa-monus", {{"monus", 2, eval_monus}}};
  return p;
}

// eqc is defined in coding.cpp (it needs encode).
Nat eval_eqc_impl(std::span<const Nat> args, const Codec* codec);

const LanguageProfile& profile_pa_eqc() {
  static LanguageProfile p{"pa-eqc",
                           {{"monus", 2, eval_monus},
                            {"eqc", 1, [](std::span<const Nat> a, const Codec* c) {
                               return eval_eqc_impl(a, c);
                             }}}};
  return p;
}

const LanguageProfile* find_profile(std::string_view id) {
  for (const LanguageProfile* p :
       {&profile_pa(), &profile_pa_monus(), &profile_pa_eqc()})
    if (p->id == id) return p;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Printing

std::string var_name(uint32_t index) {
  static const char* kLetters[] = {"x", "y", "z", "u", "v", "w",
                                   "a", "b", "c", "d", "e"};
  if (index < 11) return kLetters[index];
  return "x" + std::to_string(index);
}

namespace {

void print_term_to(std::ostringstream& out, TermId id) {
  const TermNode& t = ast::term(id);
  switch (t.kind) {
    case TermKind::Numeral:
      if (t.payload == 0)
        out << "0";
      else
        out << "(num " << t.payload.str() << ")";
      return;
    case TermKind::Succ:
      out << "(S ";
      print_term_to(out, t.args[0]);
      out << ")";
      return;
    case TermKind::Plus:
    case TermKind::Times:
      out << (t.kind == TermKind::Plus ? "(+ " : "(* ");
      print_term_to(out, t.args[0]);
      out << " ";
      print_term_to(out, t.args[1]);
      out << ")";
      return;
    case TermKind::Func: {
      out << "(" << ast::symbol_name(t.symbol);
      for (auto a : t.args) {
        out << " ";
        print_term_to(out, a);
      }
      out << ")";
      return;
    }
    case TermKind::Var:
      out << var_name(t.symbol);
      return;
  }
}

void print_formula_to(std::ostringstream& out, FormulaId id) {
  const FormulaNode& f = ast::node(id);
  switch (f.kind) {
    case FormulaKind::Eq:
      out << "(= ";
      print_term_to(out, f.terms[0]);
      out << " ";
      print_term_to(out, f.terms[1]);
      out << ")";
      return;
    case FormulaKind::Tr:
      out << "(T ";
      print_term_to(out, f.terms[0]);
      out << ")";
      return;
    case FormulaKind::Rel: {
      out << "(" << designated_name(static_cast<Designated>(f.symbol));
      for (auto t : f.terms) {
        out << " ";
        print_term_to(out, t);
      }
      out << ")";
      return;
    }
    case FormulaKind::Not:
      out << "(not ";
      print_formula_to(out, f.subs[0]);
      out << ")";
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
      out << (f.kind == FormulaKind::And ? "(and " : "(or ");
      print_formula_to(out, f.subs[0]);
      out << " ";
      print_formula_to(out, f.subs[1]);
      out << ")";
      return;
    case FormulaKind::All:
    case FormulaKind::Ex:
      out << (f.kind == FormulaKind::All ? "(forall " : "(exists ")
          << var_name(f.symbol) << " ";
      print_formula_to(out, f.subs[0]);
      out << ")";
      return;
  }
}

}  // namespace

std::string print(FormulaId f) {
  std::ostringstream out;
  print_formula_to(out, f);
  return out.str();
}

std::string print(TermId t) {
  std::ostringstream out;
  print_term_to(out, t);
  return out.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Lexer {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) pos++;
  }
  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      throw ParseError(std::string("expected '") + c + "'", pos);
    pos++;
  }
  std::string atom() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      pos++;
    if (start == pos) throw ParseError("expected atom", pos);
    return std::string(text.substr(start, pos - start));
  }
};

const std::map<std::string, uint32_t>& var_aliases() {
  static const std::map<std::string, uint32_t> m = {
      {"x", 0}, {"y", 1}, {"z", 2}, {"u", 3}, {"v", 4}, {"w", 5},
      {"a", 6}, {"b", 7}, {"c", 8}, {"d", 9}, {"e", 10}};
  return m;
}

bool is_reserved(const std::string& s) {
  static const std::vector<std::string> kReserved = {
      "0", "S",  "+",   "*",   "num",    "T",      "not",  "and", "or",
      "=", "forall", "exists", "name", "sub", "subn", "prec"};
  return std::find(kReserved.begin(), kReserved.end(), s) != kReserved.end();
}

std::optional<uint32_t> parse_var_name(const std::string& s) {
  auto it = var_aliases().find(s);
  if (it != var_aliases().end()) return it->second;
  if (s.size() >= 2 && s[0] == 'x' &&
      std::all_of(s.begin() + 1, s.end(),
                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return static_cast<uint32_t>(std::stoul(s.substr(1)));
  return std::nullopt;
}

struct Parser {
  Lexer lex;
  const LanguageProfile* profile;

  TermId term() {
    lex.skip_ws();
    size_t at = lex.pos;
    if (lex.peek() == '(') {
      lex.expect('(');
      std::string head = lex.atom();
      TermId result;
      if (head == "S") {
        result = ast::succ(term());
      } else if (head == "+") {
        TermId a = term(), b = term();
        result = ast::plus(a, b);
      } else if (head == "*") {
        TermId a = term(), b = term();
        result = ast::times(a, b);
      } else if (head == "num") {
        std::string digits = lex.atom();
        if (!std::all_of(digits.begin(), digits.end(), [](char c) {
              return std::isdigit(static_cast<unsigned char>(c));
            }))
          throw ParseError("num expects a decimal literal", at);
        result = ast::numeral(Nat(digits));
      } else if (const ExtraFunction* fn = profile->find(head)) {
        std::vector<TermId> args;
        for (int i = 0; i < fn->arity; i++) args.push_back(term());
        result = ast::func(ast::intern_symbol(head), std::move(args));
      } else {
        throw ParseError("unknown term operator '" + head + "'", at);
      }
      lex.expect(')');
      return result;
    }
    std::string a = lex.atom();
    if (a == "0") return ast::zero();
    if (auto v = parse_var_name(a)) return ast::var(*v);
    throw ParseError("unknown term '" + a + "'", at);
  }

  uint32_t binder() {
    size_t at = lex.pos;
    std::string a = lex.atom();
    auto v = parse_var_name(a);
    if (!v || is_reserved(a)) throw ParseError("expected variable", at);
    return *v;
  }

  FormulaId formula() {
    lex.skip_ws();
    size_t at = lex.pos;
    lex.expect('(');
    std::string head = lex.atom();
    FormulaId result;
    if (head == "=") {
      TermId a = term(), b = term();
      result = ast::eq(a, b);
    } else if (head == "T") {
      result = ast::truth(term());
    } else if (head == "not") {
      result = ast::negation(formula());
    } else if (head == "and" || head == "or") {
      FormulaId a = formula(), b = formula();
      result = head == "and" ? ast::conj(a, b) : ast::disj(a, b);
    } else if (head == "forall" || head == "exists") {
      uint32_t v = binder();
      FormulaId body = formula();
      result = head == "forall" ? ast::forall(v, body) : ast::exists(v, body);
    } else if (head == "name" || head == "sub" || head == "subn" ||
               head == "prec") {
      Designated d = head == "name"   ? Designated::Name
                     : head == "sub"  ? Designated::Sub
                     : head == "subn" ? Designated::SubN
                                      : Designated::Prec;
      std::vector<TermId> args;
      for (int i = 0; i < designated_arity(d); i++) args.push_back(term());
      result = ast::rel(d, std::move(args));
    } else {
      throw ParseError("unknown formula operator '" + head + "'", at);
    }
    lex.expect(')');
    return result;
  }
};

}  // namespace

FormulaId parse(std::string_view text, const LanguageProfile& profile) {
  Parser p{{text}, &profile};
  FormulaId f = p.formula();
  if (!p.lex.at_end()) throw ParseError("trailing input", p.lex.pos);
  return f;
}

TermId parse_term(std::string_view text, const LanguageProfile& profile) {
  Parser p{{text}, &profile};
  TermId t = p.term();
  if (!p.lex.at_end()) throw ParseError("trailing input", p.lex.pos);
  return t;
}

// ---------------------------------------------------------------------------
// Evaluation and substitution

Nat val(TermId id, const LanguageProfile& profile, const Codec* codec) {
  const TermNode& t = ast::term(id);
  switch (t.kind) {
    case TermKind::Numeral: return t.payload;
    case TermKind::Succ: return val(t.args[0], profile, codec) + 1;
    case TermKind::Plus:
      return val(t.args[0], profile, codec) + val(t.args[1], profile, codec);
    case TermKind::Times:
      return val(t.args[0], profile, codec) * val(t.args[1], profile, codec);
    case TermKind::Func: {
      std::vector<Nat> args;
      for (auto a : t.args) args.push_back(val(a, profile, codec));
      const ExtraFunction* fn = profile.find(ast::symbol_name(t.symbol));
      if (!fn)
        throw std::invalid_argument("function symbol not in active profile: " +
                                    std::string(ast::symbol_name(t.symbol)));
      return fn->eval(args, codec);
    }
    case TermKind::Var:
      throw std::invalid_argument("val of open term");
  }
  throw std::logic_error("unreachable");
}

TermId substitute(TermId in, uint32_t v, TermId t) {
  const TermNode& n = ast::term(in);
  if (n.closed()) return in;
  switch (n.kind) {
    case TermKind::Var: return n.symbol == v ? t : in;
    case TermKind::Succ: return ast::succ(substitute(n.args[0], v, t));
    case TermKind::Plus:
      return ast::plus(substitute(n.args[0], v, t), substitute(n.args[1], v, t));
    case TermKind::Times:
      return ast::times(substitute(n.args[0], v, t), substitute(n.args[1], v, t));
    case TermKind::Func: {
      std::vector<TermId> args;
      for (auto a : n.args) args.push_back(substitute(a, v, t));
      return ast::func(n.symbol, std::move(args));
    }
    case TermKind::Numeral: return in;
  }
  return in;
}

FormulaId substitute_open(FormulaId f, uint32_t v, TermId t) {
  const FormulaNode& n = ast::node(f);
  if (!std::binary_search(n.free_vars.begin(), n.free_vars.end(), v)) return f;
  switch (n.kind) {
    case FormulaKind::Eq:
      return ast::eq(substitute(n.terms[0], v, t), substitute(n.terms[1], v, t));
    case FormulaKind::Tr: return ast::truth(substitute(n.terms[0], v, t));
    case FormulaKind::Rel: {
      std::vector<TermId> args;
      for (auto a : n.terms) args.push_back(substitute(a, v, t));
      return ast::rel(static_cast<Designated>(n.symbol), std::move(args));
    }
    case FormulaKind::Not: return ast::negation(substitute_open(n.subs[0], v, t));
    case FormulaKind::And:
      return ast::conj(substitute_open(n.subs[0], v, t),
                       substitute_open(n.subs[1], v, t));
    case FormulaKind::Or:
      return ast::disj(substitute_open(n.subs[0], v, t),
                       substitute_open(n.subs[1], v, t));
    case FormulaKind::All:
    case FormulaKind::Ex: {
      if (n.symbol == v) return f;  // bound occurrence
      FormulaId body = substitute_open(n.subs[0], v, t);
      return n.kind == FormulaKind::All ? ast::forall(n.symbol, body)
                                        : ast::exists(n.symbol, body);
    }
  }
  return f;
}

FormulaId substitute(FormulaId f, uint32_t v, TermId t) {
  if (!ast::term(t).closed())
    throw std::invalid_argument("substitute expects a closed term");
  return substitute_open(f, v, t);
}

uint32_t max_var_index(FormulaId f) {
  uint32_t best = 0;
  std::function<void(FormulaId)> walk_f;
  std::function<void(TermId)> walk_t = [&](TermId id) {
    const TermNode& n = ast::term(id);
    if (n.kind == TermKind::Var) best = std::max(best, n.symbol);
    for (auto a : n.args) walk_t(a);
  };
  walk_f = [&](FormulaId id) {
    const FormulaNode& n = ast::node(id);
    if (n.kind == FormulaKind::All || n.kind == FormulaKind::Ex)
      best = std::max(best, n.symbol);
    for (auto tm : n.terms) walk_t(tm);
    for (auto s : n.subs) walk_f(s);
  };
  walk_f(f);
  return best;
}

namespace {

void collect_vars(FormulaId f, std::vector<uint32_t>& bound,
                  std::vector<uint32_t>& all) {
  const FormulaNode& n = ast::node(f);
  if (n.kind == FormulaKind::All || n.kind == FormulaKind::Ex) {
    bound.push_back(n.symbol);
    all.push_back(n.symbol);
  }
  for (auto tm : n.terms)
    for (uint32_t v : ast::term(tm).free_vars) all.push_back(v);
  for (auto s : n.subs) collect_vars(s, bound, all);
}

// Renames bound variable occurrences per `renaming` (old binder -> fresh).
FormulaId rename_binders(FormulaId f, const std::map<uint32_t, uint32_t>& renaming) {
  const FormulaNode& n = ast::node(f);
  switch (n.kind) {
    case FormulaKind::Eq:
    case FormulaKind::Tr:
    case FormulaKind::Rel: return f;
    case FormulaKind::Not: return ast::negation(rename_binders(n.subs[0], renaming));
    case FormulaKind::And:
      return ast::conj(rename_binders(n.subs[0], renaming),
                       rename_binders(n.subs[1], renaming));
    case FormulaKind::Or:
      return ast::disj(rename_binders(n.subs[0], renaming),
                       rename_binders(n.subs[1], renaming));
    case FormulaKind::All:
    case FormulaKind::Ex: {
      FormulaId body = rename_binders(n.subs[0], renaming);
      uint32_t v = n.symbol;
      auto it = renaming.find(v);
      if (it != renaming.end()) {
        body = substitute_open(body, v, ast::var(it->second));
        v = it->second;
      }
      return n.kind == FormulaKind::All ? ast::forall(v, body)
                                        : ast::exists(v, body);
    }
  }
  return f;
}

}  // namespace

FormulaId substitute_predicate(FormulaId f, FormulaId replacement, uint32_t hole) {
  // Rename f's binders away from every variable of the replacement, so that
  // instantiating the replacement inside f cannot capture.
  std::vector<uint32_t> repl_bound, repl_all;
  collect_vars(replacement, repl_bound, repl_all);
  for (uint32_t v : ast::node(replacement).free_vars) repl_all.push_back(v);
  std::sort(repl_all.begin(), repl_all.end());
  repl_all.erase(std::unique(repl_all.begin(), repl_all.end()), repl_all.end());

  std::vector<uint32_t> f_bound, f_all;
  collect_vars(f, f_bound, f_all);
  std::sort(f_bound.begin(), f_bound.end());
  f_bound.erase(std::unique(f_bound.begin(), f_bound.end()), f_bound.end());

  uint32_t fresh = std::max(max_var_index(f), max_var_index(replacement)) + 1;
  std::map<uint32_t, uint32_t> renaming;
  for (uint32_t v : f_bound)
    if (std::binary_search(repl_all.begin(), repl_all.end(), v))
      renaming[v] = fresh++;
  FormulaId g = renaming.empty() ? f : rename_binders(f, renaming);

  std::function<FormulaId(FormulaId)> walk = [&](FormulaId id) -> FormulaId {
    const FormulaNode& n = ast::node(id);
    switch (n.kind) {
      case FormulaKind::Tr:
        return substitute_open(replacement, hole, n.terms[0]);
      case FormulaKind::Eq:
      case FormulaKind::Rel: return id;
      case FormulaKind::Not: return ast::negation(walk(n.subs[0]));
      case FormulaKind::And: return ast::conj(walk(n.subs[0]), walk(n.subs[1]));
      case FormulaKind::Or: return ast::disj(walk(n.subs[0]), walk(n.subs[1]));
      case FormulaKind::All: return ast::forall(n.symbol, walk(n.subs[0]));
      case FormulaKind::Ex: return ast::exists(n.symbol, walk(n.subs[0]));
    }
    return id;
  };
  return walk(g);
}

}  // namespace kleenetruth
