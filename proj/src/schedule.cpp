#include "hcp/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hcp {

EpochSchedule EpochSchedule::linear() {
  EpochSchedule s;
  s.kind_ = Kind::linear;
  s.ack_ = true;
  s.extend(default_horizon);
  return s;
}

EpochSchedule EpochSchedule::east() {
  EpochSchedule s;
  s.kind_ = Kind::east;
  s.ack_ = true;
  // 2^(k-2)+1 stays an exact double only up to k = 54; materialize that much.
  s.extend(std::min<std::size_t>(default_horizon, 54));
  return s;
}

EpochSchedule EpochSchedule::geometric(double a) {
  if (!(a > 1.0 && a <= 2.0))
    throw std::invalid_argument("geometric schedule: need 1 < a <= 2");
  EpochSchedule s;
  s.kind_ = Kind::geometric;
  s.a_ = a;
  s.ack_ = true;
  s.extend(default_horizon);
  return s;
}

EpochSchedule EpochSchedule::explicit_list(std::vector<double> d, bool ack) {
  if (d.empty())
    throw std::invalid_argument("explicit schedule: empty threshold list");
  EpochSchedule s;
  s.kind_ = Kind::explicit_list;
  s.ack_ = ack;
  s.d_ = std::move(d);
  return s;
}

void EpochSchedule::extend(std::size_t n) const {
  if (kind_ == Kind::explicit_list) {
    if (n > d_.size())
      throw std::out_of_range("explicit schedule: epoch beyond listed horizon");
    return;
  }
  while (d_.size() < n) {
    const std::size_t k = d_.size() + 1;  // 1-based epoch being appended
    double v = 0.0;
    switch (kind_) {
      case Kind::linear:
        v = static_cast<double>(k);
        break;
      case Kind::east:
        // 1, 2, 3, 5, 9, ...: 2^(k-2) + 1 from the second epoch on.
        if (k == 1) {
          v = 1.0;
        } else {
          if (k - 2 > 52)
            throw std::overflow_error("east schedule: threshold exceeds exact integer range");
          v = std::ldexp(1.0, static_cast<int>(k - 2)) + 1.0;
        }
        break;
      case Kind::geometric:
        v = std::pow(a_, static_cast<double>(k - 1));
        break;
      case Kind::explicit_list:
        break;
    }
    d_.push_back(v);
  }
}

double EpochSchedule::d(std::size_t n) const {
  if (n == 0) throw std::out_of_range("schedule: epochs are 1-based");
  if (n > d_.size()) extend(n);
  return d_[n - 1];
}

std::string EpochSchedule::name() const {
  switch (kind_) {
    case Kind::linear: return "linear";
    case Kind::east: return "east";
    case Kind::geometric: return "geometric";
    case Kind::explicit_list: return "explicit";
  }
  return "?";
}

bool EpochSchedule::integer_valued(std::size_t upto) const {
  for (std::size_t n = 1; n <= upto; ++n) {
    const double v = d(n);
    if (v != std::floor(v)) return false;
  }
  return true;
}

ValidationReport validate_schedule(const EpochSchedule& s, std::size_t upto) {
  ValidationReport rep;
  std::size_t H = upto;
  if (H == 0) H = s.materialized() ? s.materialized() : 1;
  if (s.kind() == EpochSchedule::Kind::explicit_list && H > s.materialized())
    H = s.materialized();
  for (std::size_t n = 1; n <= H; ++n) {
    const double dn = s.d(n);
    if (!(dn > 0.0))
      rep.violations.push_back({n, "positivity", "threshold is not positive"});
    if (n > 1) {
      const double dp = s.d(n - 1);
      if (dn < dp)
        rep.violations.push_back({n, "monotone", "threshold decreases"});
      if (dn > 2.0 * dp)
        rep.violations.push_back(
            {n, "no_reschedule",
             "merged domains could reactivate: d(n+1) > 2 d(n)"});
    }
  }
  if (!s.divergence_acknowledged()) {
    const double need = s.d(1) * std::pow(2.0, static_cast<double>(H) / 4.0);
    if (s.d(H) < need)
      rep.violations.push_back(
          {H, "divergence",
           "growth proxy d(H) >= d(1)*2^(H/4) fails; acknowledge explicitly "
           "if the tail is known to diverge"});
  }
  return rep;
}

}  // namespace hcp
