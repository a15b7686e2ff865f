#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace fincollab {

/// Calendar date (no time of day), ISO "YYYY-MM-DD" on the wire.
class Date {
 public:
  constexpr Date() = default;
  explicit constexpr Date(std::chrono::sys_days days) : days_(days) {}
  constexpr Date(int y, unsigned m, unsigned d)
      : days_(std::chrono::year{y} / std::chrono::month{m} / std::chrono::day{d}) {}

  /// Strict parse; rejects anything that is not a valid calendar date.
  static std::optional<Date> parse(std::string_view text);
  /// Throws Error{ParseError} on invalid input.
  static Date from_string(std::string_view text);

  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] constexpr std::chrono::sys_days days() const { return days_; }
  [[nodiscard]] constexpr Date plus_days(int n) const { return Date{days_ + std::chrono::days{n}}; }

  friend constexpr auto operator<=>(const Date &, const Date &) = default;

 private:
  std::chrono::sys_days days_{};
};

}  // namespace fincollab
