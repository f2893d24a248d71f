#include <doctest.h>

#include <cmath>
#include <vector>

#include "hcp/rng.hpp"
#include "hcp/stats.hpp"

using hcp::CounterRng;

// Reference vectors computed independently from the generator contract
// (SplitMix64 finalizer in counter mode with the golden-ratio increment).
TEST_CASE("counter rng: frozen reference vectors") {
  {
    CounterRng r(12345, 0);
    CHECK(r.next_u64() == 0xb1dcc3ed9c650001ull);
    CHECK(r.next_u64() == 0xdc4a8c1fb614aeb7ull);
    CHECK(r.next_u64() == 0x12bd3360240fa2bbull);
  }
  {
    CounterRng r(12345, 1);
    CHECK(r.next_u64() == 0x8ac304625270dae0ull);
    CHECK(r.next_u64() == 0x3c47ec595dd9db2full);
  }
  {
    CounterRng r(1, 0);
    CHECK(r.next_u64() == 0xae75508f5d85efe0ull);
  }
  {
    CounterRng r(12345, 0);
    CHECK(r.next_unit() == doctest::Approx(0.6947748618225837).epsilon(1e-15));
    CHECK(r.next_unit() == doctest::Approx(0.8605125024242449).epsilon(1e-15));
  }
}

TEST_CASE("counter rng: replay and stream separation") {
  CounterRng a(7, 3), b(7, 3), c(7, 4);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  // different stream, same seed: sequences must diverge immediately
  CounterRng a2(7, 3);
  int equal = 0;
  for (int i = 0; i < 64; ++i) equal += a2.next_u64() == c.next_u64();
  CHECK(equal == 0);
}

TEST_CASE("counter rng: unit draws land in range and fill bins uniformly") {
  CounterRng r(2024, 0);
  const int bins = 64;
  const std::uint64_t n = 1 << 20;
  std::vector<std::uint64_t> obs(bins, 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double u = r.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    ++obs[static_cast<std::size_t>(u * bins)];
  }
  const std::vector<double> p(bins, 1.0 / bins);
  const double stat = hcp::chi_square_stat(obs, p, n);
  CHECK(stat < hcp::chi_square_quantile(bins - 1, 1.0 - 1e-6));
}

TEST_CASE("counter rng: exponential moments") {
  CounterRng r(99, 0);
  const std::uint64_t n = 1 << 19;
  double sum = 0.0, sq = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double x = r.next_exponential(2.0);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / static_cast<double>(n);
  // Exp(2): mean 1/2, sd 1/2; 4-sigma CLT band
  CHECK(std::abs(mean - 0.5) < 4.0 * 0.5 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(sq / static_cast<double>(n) - 0.5) < 0.01);
}
