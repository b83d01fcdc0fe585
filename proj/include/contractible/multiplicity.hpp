#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace contractible {

// An edge count in N ∪ {ω}. ω absorbs addition and absorbs multiplication
// by any nonzero count; 0·ω = 0.
class Multiplicity {
 public:
  constexpr Multiplicity() noexcept = default;
  constexpr Multiplicity(std::uint64_t count) noexcept : count_(count) {}  // NOLINT: implicit by intent

  static constexpr Multiplicity omega() noexcept {
    Multiplicity m;
    m.infinite_ = true;
    return m;
  }

  constexpr bool is_infinite() const noexcept { return infinite_; }
  constexpr bool is_finite() const noexcept { return !infinite_; }
  constexpr bool is_zero() const noexcept { return !infinite_ && count_ == 0; }

  // Finite value; throws for ω.
  std::uint64_t count() const {
    if (infinite_) throw std::domain_error("count() of an infinite multiplicity");
    return count_;
  }

  friend constexpr Multiplicity operator+(Multiplicity a, Multiplicity b) {
    if (a.infinite_ || b.infinite_) return omega();
    if (a.count_ > std::numeric_limits<std::uint64_t>::max() - b.count_)
      throw std::overflow_error("multiplicity overflow");
    return Multiplicity(a.count_ + b.count_);
  }

  friend constexpr Multiplicity operator*(Multiplicity a, Multiplicity b) {
    if (a.is_zero() || b.is_zero()) return Multiplicity(0);
    if (a.infinite_ || b.infinite_) return omega();
    if (a.count_ > std::numeric_limits<std::uint64_t>::max() / b.count_)
      throw std::overflow_error("multiplicity overflow");
    return Multiplicity(a.count_ * b.count_);
  }

  Multiplicity& operator+=(Multiplicity other) { return *this = *this + other; }
  Multiplicity& operator*=(Multiplicity other) { return *this = *this * other; }

  friend constexpr bool operator==(Multiplicity a, Multiplicity b) noexcept {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.count_ == b.count_);
  }

  friend constexpr std::strong_ordering operator<=>(Multiplicity a, Multiplicity b) noexcept {
    if (a.infinite_ != b.infinite_) return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
    if (a.infinite_) return std::strong_ordering::equal;
    return a.count_ <=> b.count_;
  }

  // "inf" for ω, decimal otherwise. This is also the file-format token.
  std::string to_string() const { return infinite_ ? std::string("inf") : std::to_string(count_); }

  static std::optional<Multiplicity> parse(std::string_view text);

 private:
  std::uint64_t count_ = 0;
  bool infinite_ = false;
};

inline std::optional<Multiplicity> Multiplicity::parse(std::string_view text) {
  if (text == "inf" || text == "omega" || text == "ω") return omega();
  if (text.empty()) return std::nullopt;
  std::uint64_t value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') return std::nullopt;
    std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
    if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) return std::nullopt;
    value = value * 10 + digit;
  }
  return Multiplicity(value);
}

}  // namespace contractible
