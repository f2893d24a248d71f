#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace hcp {

/// Epoch length thresholds d(1) <= d(2) <= ...  Materialized lazily; the
/// built-in families are known divergent, explicit lists carry a growth check
/// that the caller can acknowledge away (divergence is not decidable from a
/// finite prefix).
class EpochSchedule {
 public:
  enum class Kind { linear, east, geometric, explicit_list };

  static EpochSchedule linear();                       // d(n) = n
  static EpochSchedule east();                         // 1, 2, 3, 5, 9, ..., 2^(n-2)+1
  static EpochSchedule geometric(double a);            // d(n) = a^(n-1), 1 < a <= 2
  static EpochSchedule explicit_list(std::vector<double> d,
                                     bool divergence_acknowledged = false);

  /// d(n), 1-based.  Extends the materialized prefix on demand (default
  /// horizon 64 up front); explicit lists throw past their end.
  double d(std::size_t n) const;

  std::size_t materialized() const { return d_.size(); }
  Kind kind() const { return kind_; }
  bool divergence_acknowledged() const { return ack_; }
  std::string name() const;

  /// True when every materialized threshold is an exact integer.
  bool integer_valued(std::size_t upto) const;

 private:
  static constexpr std::size_t default_horizon = 64;
  void extend(std::size_t n) const;

  Kind kind_ = Kind::linear;
  double a_ = 2.0;
  bool ack_ = false;
  mutable std::vector<double> d_;
};

struct ScheduleViolation {
  std::size_t index;  // 1-based epoch of the offending entry
  std::string code;   // "positivity" | "monotone" | "no_reschedule" | "divergence"
  std::string message;
};

struct ValidationReport {
  std::vector<ScheduleViolation> violations;
  bool valid() const { return violations.empty(); }
};

/// Checks the materialized prefix d(1..upto): positivity, monotonicity, the
/// no-reschedule condition 2 d(n) >= d(n+1), and (for unacknowledged explicit
/// lists) the growth proxy d(H) >= d(1) * 2^(H/4).
ValidationReport validate_schedule(const EpochSchedule& s, std::size_t upto = 0);

}  // namespace hcp
