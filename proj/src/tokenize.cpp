#include "scalescope/tokenize.hpp"

#include "scalescope/error.hpp"

#include <algorithm>
#include <charconv>

namespace scalescope {
namespace {

void require_message(const std::shared_ptr<const Message>& msg) {
  if (!msg || msg->empty()) throw InvalidArgument("empty message");
}

} // namespace

Segmentation tokenize_chars(std::shared_ptr<const Message> msg) {
  require_message(msg);
  std::vector<std::size_t> b(msg->length() + 1);
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = i;
  return Segmentation(std::move(msg), std::move(b));
}

Segmentation tokenize_words(std::shared_ptr<const Message> msg, const DelimiterPolicy& policy) {
  require_message(msg);
  if (policy.delimiters.empty()) throw InvalidArgument("delimiter set is empty");

  const auto& units = msg->units();
  const auto is_delim = [&](Unit u) {
    return std::find(policy.delimiters.begin(), policy.delimiters.end(), u) !=
           policy.delimiters.end();
  };
  const std::size_t n = units.size();
  std::vector<std::size_t> b{0};
  for (std::size_t i = 1; i < n; ++i) {
    bool cut = false;
    switch (policy.attachment) {
    case Attachment::leading: cut = is_delim(units[i]); break;
    case Attachment::trailing: cut = is_delim(units[i - 1]); break;
    case Attachment::standalone: cut = is_delim(units[i]) || is_delim(units[i - 1]); break;
    }
    if (cut) b.push_back(i);
  }
  b.push_back(n);
  return Segmentation(std::move(msg), std::move(b));
}

Segmentation tokenize_bits(const Message& msg) {
  if (msg.empty()) throw InvalidArgument("empty message");
  auto bits = msg.mode() == UnitMode::bits ? std::make_shared<const Message>(msg)
                                           : std::make_shared<const Message>(
                                                 Message::bits_of(msg.to_bytes()));
  return tokenize_chars(std::move(bits));
}

Segmentation tokenize_ngram(std::shared_ptr<const Message> msg, std::size_t n) {
  if (n < 1) throw InvalidArgument("n-gram size must be at least 1");
  require_message(msg);
  std::vector<std::size_t> b;
  for (std::size_t i = 0; i < msg->length(); i += n) b.push_back(i);
  b.push_back(msg->length());
  return Segmentation(std::move(msg), std::move(b));
}

ScaleSelector ScaleSelector::parse(std::string_view text) {
  if (text == "chars") return {Kind::chars, 0};
  if (text == "words") return {Kind::words, 0};
  if (text == "bits") return {Kind::bits, 0};
  if (text == "fundamental") return {Kind::fundamental, 0};
  constexpr std::string_view prefix = "ngram:";
  if (text.starts_with(prefix)) {
    const auto digits = text.substr(prefix.size());
    std::size_t n = 0;
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec == std::errc{} && end == digits.data() + digits.size() && n >= 1) {
      return {Kind::ngram, n};
    }
  }
  throw InvalidArgument("unknown scale '" + std::string(text) + "'");
}

std::string ScaleSelector::name() const {
  switch (kind) {
  case Kind::chars: return "chars";
  case Kind::words: return "words";
  case Kind::bits: return "bits";
  case Kind::ngram: return "ngram:" + std::to_string(n);
  case Kind::fundamental: return "fundamental";
  }
  return "?";
}

Segmentation tokenize(std::shared_ptr<const Message> msg, const ScaleSelector& scale,
                      const DelimiterPolicy& policy) {
  switch (scale.kind) {
  case ScaleSelector::Kind::chars: return tokenize_chars(std::move(msg));
  case ScaleSelector::Kind::words: return tokenize_words(std::move(msg), policy);
  case ScaleSelector::Kind::bits:
    require_message(msg);
    return tokenize_bits(*msg);
  case ScaleSelector::Kind::ngram: return tokenize_ngram(std::move(msg), scale.n);
  case ScaleSelector::Kind::fundamental: break;
  }
  throw InvalidArgument("the fundamental scale is found by search, not tokenized");
}

} // namespace scalescope
