#include "scalescope/segmentation.hpp"

#include "scalescope/error.hpp"

namespace scalescope {

Segmentation::Segmentation(std::shared_ptr<const Message> message,
                           std::vector<std::size_t> boundaries)
    : message_(std::move(message)), boundaries_(std::move(boundaries)) {
  if (!message_) throw InvalidArgument("segmentation needs a message");
  if (message_->empty()) throw InvalidArgument("empty message");
  if (boundaries_.size() < 2 || boundaries_.front() != 0 ||
      boundaries_.back() != message_->length()) {
    throw InvalidArgument("boundaries must start at 0 and end at the message length");
  }
  for (std::size_t i = 1; i < boundaries_.size(); ++i) {
    if (boundaries_[i] <= boundaries_[i - 1]) {
      throw InvalidArgument("boundaries must be strictly increasing");
    }
  }
}

Segmentation Segmentation::whole(std::shared_ptr<const Message> message) {
  const std::size_t n = message ? message->length() : 0;
  return Segmentation(std::move(message), {0, n});
}

Segmentation Segmentation::from_sizes(std::shared_ptr<const Message> message,
                                      const std::vector<std::size_t>& sizes) {
  std::vector<std::size_t> b{0};
  b.reserve(sizes.size() + 1);
  for (std::size_t s : sizes) b.push_back(b.back() + s);
  return Segmentation(std::move(message), std::move(b));
}

UnitView Segmentation::segment(std::size_t i) const {
  return message_->slice(segment_begin(i), segment_size(i));
}

std::string Segmentation::segment_text(std::size_t i) const {
  return message_->render(segment(i));
}

std::vector<std::string> Segmentation::segment_texts() const {
  std::vector<std::string> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(segment_text(i));
  return out;
}

UnitString Segmentation::concatenate() const {
  UnitString out;
  out.reserve(message_->length());
  for (std::size_t i = 0; i < size(); ++i) out.append(segment(i));
  return out;
}

} // namespace scalescope
