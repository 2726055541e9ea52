#include "kleenetruth/coding.hpp"

#include <unordered_map>

#include <boost/functional/hash.hpp>

namespace kleenetruth {

namespace {

// Serialization tags, pre-permutation.
enum : uint8_t {
  kTNum = 0x01,
  kTSucc = 0x02,
  kTPlus = 0x03,
  kTTimes = 0x04,
  kTFunc = 0x05,
  kTVar = 0x06,
  kFEq = 0x11,
  kFTr = 0x12,
  kFRel = 0x13,
  kFNot = 0x14,
  kFAnd = 0x15,
  kFOr = 0x16,
  kFAll = 0x17,
  kFEx = 0x18,
};

void put_varint(std::vector<uint8_t>& out, Nat n) {
  for (;;) {
    uint8_t b = static_cast<uint8_t>(n & 0x7f);
    n >>= 7;
    if (n == 0) {
      out.push_back(b);
      return;
    }
    out.push_back(b | 0x80);
  }
}

void put_varint(std::vector<uint8_t>& out, uint64_t n) { put_varint(out, Nat(n)); }

struct ByteReader {
  std::span<const uint8_t> bytes;
  size_t pos = 0;
  bool fail = false;

  uint8_t byte() {
    if (pos >= bytes.size()) {
      fail = true;
      return 0;
    }
    return bytes[pos++];
  }
  Nat varint() {
    Nat n = 0;
    int shift = 0;
    for (;;) {
      uint8_t b = byte();
      if (fail) return 0;
      n |= Nat(b & 0x7f) << shift;
      if (!(b & 0x80)) {
        // reject non-minimal encodings (a zero continuation byte at the top)
        if (shift > 0 && b == 0) fail = true;
        return n;
      }
      shift += 7;
      if (shift > 1 << 20) {
        fail = true;
        return 0;
      }
    }
  }
};

}  // namespace

class CodecImplAccess {
 public:
  static void ser_term(const Codec& c, std::vector<uint8_t>& out, TermId id) {
    const TermNode& t = ast::term(id);
    switch (t.kind) {
      case TermKind::Numeral:
        out.push_back(c_tag(c, kTNum));
        put_varint(out, t.payload);
        return;
      case TermKind::Succ:
        out.push_back(c_tag(c, kTSucc));
        ser_term(c, out, t.args[0]);
        return;
      case TermKind::Plus:
      case TermKind::Times:
        out.push_back(c_tag(c, t.kind == TermKind::Plus ? kTPlus : kTTimes));
        ser_term(c, out, t.args[0]);
        ser_term(c, out, t.args[1]);
        return;
      case TermKind::Func: {
        out.push_back(c_tag(c, kTFunc));
        std::string_view name = ast::symbol_name(t.symbol);
        put_varint(out, static_cast<uint64_t>(name.size()));
        for (char ch : name) out.push_back(static_cast<uint8_t>(ch));
        put_varint(out, static_cast<uint64_t>(t.args.size()));
        for (auto a : t.args) ser_term(c, out, a);
        return;
      }
      case TermKind::Var:
        out.push_back(c_tag(c, kTVar));
        put_varint(out, static_cast<uint64_t>(t.symbol));
        return;
    }
  }

  static void ser_formula(const Codec& c, std::vector<uint8_t>& out, FormulaId id) {
    const FormulaNode& f = ast::node(id);
    switch (f.kind) {
      case FormulaKind::Eq:
        out.push_back(c_tag(c, kFEq));
        ser_term(c, out, f.terms[0]);
        ser_term(c, out, f.terms[1]);
        return;
      case FormulaKind::Tr:
        out.push_back(c_tag(c, kFTr));
        ser_term(c, out, f.terms[0]);
        return;
      case FormulaKind::Rel:
        out.push_back(c_tag(c, kFRel));
        put_varint(out, static_cast<uint64_t>(f.symbol));
        for (auto t : f.terms) ser_term(c, out, t);
        return;
      case FormulaKind::Not:
        out.push_back(c_tag(c, kFNot));
        ser_formula(c, out, f.subs[0]);
        return;
      case FormulaKind::And:
      case FormulaKind::Or:
        out.push_back(c_tag(c, f.kind == FormulaKind::And ? kFAnd : kFOr));
        ser_formula(c, out, f.subs[0]);
        ser_formula(c, out, f.subs[1]);
        return;
      case FormulaKind::All:
      case FormulaKind::Ex:
        out.push_back(c_tag(c, f.kind == FormulaKind::All ? kFAll : kFEx));
        put_varint(out, static_cast<uint64_t>(f.symbol));
        ser_formula(c, out, f.subs[0]);
        return;
    }
  }

  static TermId de_term(const Codec& c, ByteReader& r) {
    uint8_t tag = c.unmap_tag(r.byte());
    if (r.fail) return {};
    switch (tag) {
      case kTNum: {
        Nat n = r.varint();
        return r.fail ? TermId{} : ast::numeral(n);
      }
      case kTSucc: {
        TermId t = de_term(c, r);
        return r.fail ? TermId{} : ast::succ(t);
      }
      case kTPlus:
      case kTTimes: {
        TermId a = de_term(c, r);
        TermId b = de_term(c, r);
        if (r.fail) return {};
        return tag == kTPlus ? ast::plus(a, b) : ast::times(a, b);
      }
      case kTFunc: {
        Nat len = r.varint();
        if (r.fail || len > 64) {
          r.fail = true;
          return {};
        }
        std::string name;
        for (uint64_t i = 0; i < len; i++) name.push_back(static_cast<char>(r.byte()));
        Nat arity = r.varint();
        if (r.fail || arity > 8) {
          r.fail = true;
          return {};
        }
        std::vector<TermId> args;
        for (uint64_t i = 0; i < arity; i++) {
          args.push_back(de_term(c, r));
          if (r.fail) return {};
        }
        return ast::func(ast::intern_symbol(name), std::move(args));
      }
      case kTVar: {
        Nat idx = r.varint();
        if (r.fail || idx > UINT32_MAX) {
          r.fail = true;
          return {};
        }
        return ast::var(static_cast<uint32_t>(idx));
      }
      default:
        r.fail = true;
        return {};
    }
  }

  static FormulaId de_formula(const Codec& c, ByteReader& r) {
    uint8_t tag = c.unmap_tag(r.byte());
    if (r.fail) return {};
    switch (tag) {
      case kFEq: {
        TermId a = de_term(c, r), b = de_term(c, r);
        return r.fail ? FormulaId{} : ast::eq(a, b);
      }
      case kFTr: {
        TermId t = de_term(c, r);
        return r.fail ? FormulaId{} : ast::truth(t);
      }
      case kFRel: {
        Nat d = r.varint();
        if (r.fail || d > 3) {
          r.fail = true;
          return {};
        }
        Designated rel = static_cast<Designated>(static_cast<uint32_t>(d));
        std::vector<TermId> args;
        for (int i = 0; i < designated_arity(rel); i++) {
          args.push_back(de_term(c, r));
          if (r.fail) return {};
        }
        return ast::rel(rel, std::move(args));
      }
      case kFNot: {
        FormulaId f = de_formula(c, r);
        return r.fail ? FormulaId{} : ast::negation(f);
      }
      case kFAnd:
      case kFOr: {
        FormulaId a = de_formula(c, r), b = de_formula(c, r);
        if (r.fail) return {};
        return tag == kFAnd ? ast::conj(a, b) : ast::disj(a, b);
      }
      case kFAll:
      case kFEx: {
        Nat v = r.varint();
        if (r.fail || v > UINT32_MAX) {
          r.fail = true;
          return {};
        }
        FormulaId body = de_formula(c, r);
        if (r.fail) return {};
        return tag == kFAll ? ast::forall(static_cast<uint32_t>(v), body)
                            : ast::exists(static_cast<uint32_t>(v), body);
      }
      default:
        r.fail = true;
        return {};
    }
  }

  static uint8_t c_tag(const Codec& c, uint8_t t) { return c.map_tag(t); }
};

std::vector<uint8_t> Codec::serialize(const Decoded& x) const {
  std::vector<uint8_t> out;
  if (std::holds_alternative<TermId>(x))
    CodecImplAccess::ser_term(*this, out, std::get<TermId>(x));
  else
    CodecImplAccess::ser_formula(*this, out, std::get<FormulaId>(x));
  if (padded()) {
    std::vector<uint8_t> wide;
    wide.reserve(out.size() * 2);
    for (uint8_t b : out) {
      wide.push_back(b);
      wide.push_back(0x5a);
    }
    out = std::move(wide);
  }
  return out;
}

std::optional<Decoded> Codec::deserialize(std::span<const uint8_t> bytes) const {
  std::vector<uint8_t> narrow;
  if (padded()) {
    if (bytes.size() % 2 != 0) return std::nullopt;
    for (size_t i = 0; i < bytes.size(); i += 2) {
      if (bytes[i + 1] != 0x5a) return std::nullopt;
      narrow.push_back(bytes[i]);
    }
    bytes = narrow;
  }
  if (bytes.empty()) return std::nullopt;
  ByteReader r{bytes};
  uint8_t first = unmap_tag(bytes[0]);
  Decoded out;
  if (first >= 0x11) {
    FormulaId f = CodecImplAccess::de_formula(*this, r);
    if (r.fail) return std::nullopt;
    out = f;
  } else {
    TermId t = CodecImplAccess::de_term(*this, r);
    if (r.fail) return std::nullopt;
    out = t;
  }
  if (r.pos != bytes.size()) return std::nullopt;
  return out;
}

namespace {

Nat bytes_to_nat(uint8_t sentinel, std::span<const uint8_t> bytes) {
  Nat n = sentinel;
  for (uint8_t b : bytes) {
    n <<= 8;
    n |= b;
  }
  return n;
}

std::optional<std::vector<uint8_t>> nat_to_bytes(uint8_t sentinel, Nat n) {
  std::vector<uint8_t> rev;
  while (n > 0) {
    rev.push_back(static_cast<uint8_t>(n & 0xff));
    n >>= 8;
  }
  if (rev.empty() || rev.back() != sentinel) return std::nullopt;
  rev.pop_back();
  std::reverse(rev.begin(), rev.end());
  return rev;
}

}  // namespace

Nat Codec::encode(FormulaId f) const {
  return bytes_to_nat(sentinel(), serialize(Decoded(f)));
}

Nat Codec::encode(TermId t) const {
  return bytes_to_nat(sentinel(), serialize(Decoded(t)));
}

std::optional<Decoded> Codec::decode(const Nat& n) const {
  auto bytes = nat_to_bytes(sentinel(), n);
  if (!bytes) return std::nullopt;
  auto out = deserialize(*bytes);
  if (!out) return std::nullopt;
  // Strict: only canonical encodings count as codes.
  Nat back = std::holds_alternative<TermId>(*out) ? encode(std::get<TermId>(*out))
                                                  : encode(std::get<FormulaId>(*out));
  if (back != n) return std::nullopt;
  return out;
}

std::optional<FormulaId> Codec::decode_sentence(const Nat& n) const {
  auto d = decode(n);
  if (!d || !std::holds_alternative<FormulaId>(*d)) return std::nullopt;
  FormulaId f = std::get<FormulaId>(*d);
  if (!ast::node(f).sentence()) return std::nullopt;
  return f;
}

Nat Codec::eval_name(const Nat& y) const { return encode(ast::numeral(y)); }

std::optional<Nat> Codec::eval_sub(const Nat& y, const Nat& v, const Nat& s) const {
  auto fy = decode(y);
  if (!fy || !std::holds_alternative<FormulaId>(*fy)) return std::nullopt;
  auto tv = decode(v);
  if (!tv || !std::holds_alternative<TermId>(*tv)) return std::nullopt;
  const TermNode& vn = ast::term(std::get<TermId>(*tv));
  if (vn.kind != TermKind::Var) return std::nullopt;
  auto ts = decode(s);
  if (!ts || !std::holds_alternative<TermId>(*ts)) return std::nullopt;
  TermId st = std::get<TermId>(*ts);
  if (!ast::term(st).closed()) return std::nullopt;
  return encode(substitute(std::get<FormulaId>(*fy), vn.symbol, st));
}

std::optional<Nat> Codec::eval_subn(const Nat& y, const Nat& v, const Nat& z) const {
  return eval_sub(y, v, eval_name(z));
}

namespace {

class CodecA final : public Codec {
 public:
  std::string_view id() const override { return "A"; }

 protected:
  uint8_t map_tag(uint8_t t) const override { return t; }
  uint8_t unmap_tag(uint8_t b) const override { return b; }
  bool padded() const override { return false; }
  uint8_t sentinel() const override { return 0x01; }
};

class CodecB final : public Codec {
 public:
  std::string_view id() const override { return "B"; }

 protected:
  // A fixed involution on the tag space keeps decode simple.
  uint8_t map_tag(uint8_t t) const override { return t ^ 0x29; }
  uint8_t unmap_tag(uint8_t b) const override { return b ^ 0x29; }
  bool padded() const override { return true; }
  uint8_t sentinel() const override { return 0x02; }
};

}  // namespace

const Codec& codec_a() {
  static CodecA c;
  return c;
}

const Codec& codec_b() {
  static CodecB c;
  return c;
}

const Codec* find_codec(std::string_view id) {
  if (id == "A" || id == "a") return &codec_a();
  if (id == "B" || id == "b") return &codec_b();
  return nullptr;
}

// Profile symbol: eqc(n) = code of the equation "numeral(n) = numeral(n)".
Nat eval_eqc_impl(std::span<const Nat> args, const Codec* codec) {
  if (!codec) throw std::invalid_argument("eqc needs an active codec");
  TermId n = ast::numeral(args[0]);
  return codec->encode(ast::eq(n, n));
}

}  // namespace kleenetruth
