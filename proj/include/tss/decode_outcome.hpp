#pragma once

#include <optional>
#include <stdexcept>
#include <utility>

#include "tss/sequence.hpp"

namespace tss {

// Result of a share-pair decoder: the recovered secret sequence, or a
// rejection.
class DecodeOutcome {
 public:
  static DecodeOutcome secret(Sequence s) { return DecodeOutcome(std::move(s)); }
  static DecodeOutcome reject() { return DecodeOutcome(); }

  bool is_reject() const { return !value_.has_value(); }
  bool is_secret() const { return value_.has_value(); }

  const Sequence& value() const {
    if (!value_) throw std::logic_error("DecodeOutcome: rejected outcome has no secret");
    return *value_;
  }

  bool operator==(const DecodeOutcome&) const = default;

 private:
  DecodeOutcome() = default;
  explicit DecodeOutcome(Sequence s) : value_(std::move(s)) {}

  std::optional<Sequence> value_;
};

}  // namespace tss
