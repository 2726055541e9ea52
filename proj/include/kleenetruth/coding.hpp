#pragma once

#include <optional>
#include <variant>

#include "kleenetruth/syntax.hpp"

namespace kleenetruth {

using Decoded = std::variant<TermId, FormulaId>;

// Injective Godel numbering of terms and formulas. Decoding is strict: a
// natural is a code only if it is the canonical encoding of what it decodes
// to, so every syntax object has exactly one code per codec.
class Codec {
 public:
  virtual ~Codec() = default;
  virtual std::string_view id() const = 0;

  Nat encode(FormulaId f) const;
  Nat encode(TermId t) const;
  std::optional<Decoded> decode(const Nat& n) const;

  // Code of the sentence coded by n, when n decodes to a closed formula.
  std::optional<FormulaId> decode_sentence(const Nat& n) const;

  // name: code of the numeral denoting y.
  Nat eval_name(const Nat& y) const;
  // sub: code of the result of substituting the term coded by s for the
  // variable coded by v in the formula coded by y; nullopt on non-codes.
  std::optional<Nat> eval_sub(const Nat& y, const Nat& v, const Nat& s) const;
  // subn: like sub but substitutes the numeral of z's value.
  std::optional<Nat> eval_subn(const Nat& y, const Nat& v, const Nat& z) const;

 protected:
  // Tag permutation and byte padding are the two knobs the shipped codecs
  // differ in.
  virtual uint8_t map_tag(uint8_t tag) const = 0;
  virtual uint8_t unmap_tag(uint8_t byte) const = 0;
  virtual bool padded() const = 0;
  virtual uint8_t sentinel() const = 0;

 private:
  std::vector<uint8_t> serialize(const Decoded& x) const;
  std::optional<Decoded> deserialize(std::span<const uint8_t> bytes) const;
  friend class CodecImplAccess;
};

// Codec A: tag-and-pack byte encoding, dense.
// Codec B: shuffled tags and a pad byte after every content byte, so code
// magnitudes and dereference targets differ from A throughout.
const Codec& codec_a();
const Codec& codec_b();
const Codec* find_codec(std::string_view id);

}  // namespace kleenetruth
