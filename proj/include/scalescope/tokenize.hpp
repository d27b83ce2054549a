#pragma once

#include "scalescope/message.hpp"
#include "scalescope/segmentation.hpp"

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace scalescope {

enum class Attachment { leading, trailing, standalone };

/// Which units separate words and which side of a word they stick to.
struct DelimiterPolicy {
  std::vector<Unit> delimiters{U' '};
  Attachment attachment = Attachment::leading;
};

/// One segment per unit.
Segmentation tokenize_chars(std::shared_ptr<const Message> msg);

/// Word tiling. With leading attachment a cut precedes every delimiter, so
/// " a b" yields " a", " b"; runs of delimiters split into single-delimiter
/// segments on the attached side.
Segmentation tokenize_words(std::shared_ptr<const Message> msg, const DelimiterPolicy& policy = {});

/// Re-reads the message's bytes as bits; one segment per bit.
Segmentation tokenize_bits(const Message& msg);

/// Consecutive blocks of n units; the last block may be shorter.
Segmentation tokenize_ngram(std::shared_ptr<const Message> msg, std::size_t n);

/// Observation scale named on the command line: "chars", "words", "bits",
/// "ngram:N" or "fundamental".
struct ScaleSelector {
  enum class Kind { chars, words, bits, ngram, fundamental };
  Kind kind = Kind::chars;
  std::size_t n = 0;

  static ScaleSelector parse(std::string_view text);
  [[nodiscard]] std::string name() const;

  friend bool operator==(const ScaleSelector&, const ScaleSelector&) = default;
};

/// Tiles `msg` at a fixed scale. Throws for Kind::fundamental, which needs a search.
Segmentation tokenize(std::shared_ptr<const Message> msg, const ScaleSelector& scale,
                      const DelimiterPolicy& policy = {});

} // namespace scalescope
