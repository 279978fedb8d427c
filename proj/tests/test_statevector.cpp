#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>

#include "qsearch/statevector.hpp"

using namespace qsearch;
using std::numbers::pi;

namespace {

using Matrix = std::vector<std::vector<Complex>>;

// Dense H^{(x) l} built as an explicit Kronecker product.
Matrix hadamard_matrix(std::size_t qubits) {
  Matrix m{{Complex{1.0}}};
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t q = 0; q < qubits; ++q) {
    const std::size_t d = m.size();
    Matrix next(2 * d, std::vector<Complex>(2 * d));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        next[i][j] = r * m[i][j];
        next[i][j + d] = r * m[i][j];
        next[i + d][j] = r * m[i][j];
        next[i + d][j + d] = -r * m[i][j];
      }
    }
    m = std::move(next);
  }
  return m;
}

std::vector<Complex> multiply(const Matrix& m, const std::vector<Complex>& v) {
  std::vector<Complex> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  }
  return out;
}

StateVector random_state(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Complex> amps(n);
  double norm = 0.0;
  for (auto& a : amps) {
    a = {g(rng), g(rng)};
    norm += std::norm(a);
  }
  for (auto& a : amps) a /= std::sqrt(norm);
  return StateVector(std::move(amps));
}

double distance(const StateVector& a, const StateVector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_CASE("marked set") {
  CHECK_THROWS_AS(MarkedSet({1, 4, 1}), std::invalid_argument);
  const MarkedSet m({9, 2, 5});
  CHECK(m.size() == 3);
  CHECK(m.contains(5));
  CHECK_FALSE(m.contains(4));
  CHECK(m.bound() == 10);
  CHECK(MarkedSet().bound() == 0);
}

TEST_CASE("uniform initial state") {
  CHECK_THROWS_AS(init_uniform(0), std::invalid_argument);
  const auto one = init_uniform(1);
  CHECK(one[0] == Complex{1.0});
  const auto four = init_uniform(4);
  for (const auto& a : four.amplitudes()) CHECK(a == Complex{0.5});
  const auto eight = init_uniform(8);
  for (const auto& a : eight.amplitudes()) CHECK(a.real() == doctest::Approx(0.35355339059327373));
}

TEST_CASE("oracle phase") {
  SUBCASE("phase 0 is the identity") {
    std::mt19937_64 rng(3);
    const auto s = random_state(10, rng);
    CHECK(distance(apply_oracle_phase(s, MarkedSet({1, 7}), 0.0), s) == 0.0);
  }
  SUBCASE("phase pi flips marked signs") {
    const auto s = apply_oracle_phase(init_uniform(2), MarkedSet({0}), pi);
    CHECK(s[0].real() == doctest::Approx(-1.0 / std::sqrt(2.0)));
    CHECK(s[1].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  }
  SUBCASE("phase pi/2 gives i/2") {
    const auto s = apply_oracle_phase(init_uniform(4), MarkedSet({3}), pi / 2);
    CHECK(std::abs(s[3] - Complex{0.0, 0.5}) < 1e-15);
    CHECK(s[0] == Complex{0.5});
  }
  SUBCASE("out of range index") {
    CHECK_THROWS_AS(apply_oracle_phase(init_uniform(4), MarkedSet({4}), pi), std::out_of_range);
  }
}

TEST_CASE("diffusion") {
  SUBCASE("uniform state is a fixed point for every phase") {
    for (double phase : {0.0, 0.3, pi / 2, pi, 5.0}) {
      for (std::size_t n : {1u, 3u, 16u}) {
        CHECK(distance(apply_diffusion(init_uniform(n), phase), init_uniform(n)) < 1e-15);
      }
    }
  }
  SUBCASE("N=4 reflection equals explicit H P H matrix product") {
    const Matrix h = hadamard_matrix(2);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      const auto s = random_state(4, rng);
      std::vector<Complex> v(s.amplitudes().begin(), s.amplitudes().end());
      v = multiply(h, v);
      for (std::size_t i = 1; i < v.size(); ++i) v[i] = -v[i];
      v = multiply(h, v);
      const auto fast = apply_diffusion(s, pi);
      for (std::size_t i = 0; i < 4; ++i) REQUIRE(std::abs(fast[i] - v[i]) < 1e-12);
    }
  }
  SUBCASE("fast Hadamard equals the Kronecker product matrix") {
    std::mt19937_64 rng(6);
    for (std::size_t l = 0; l <= 6; ++l) {
      const auto s = random_state(std::size_t{1} << l, rng);
      const auto expected = multiply(hadamard_matrix(l), {s.amplitudes().begin(), s.amplitudes().end()});
      const auto fast = apply_hadamard_all(s);
      for (std::size_t i = 0; i < expected.size(); ++i) REQUIRE(std::abs(fast[i] - expected[i]) < 1e-12);
    }
  }
  SUBCASE("gate-level diffusion matches the direct form for any phase, l <= 10") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> phase(-pi, pi);
    for (std::size_t l = 0; l <= 10; ++l) {
      const auto s = random_state(std::size_t{1} << l, rng);
      const double chi = l % 2 ? pi : phase(rng);
      REQUIRE(distance(apply_diffusion_hadamard(s, chi), apply_diffusion(s, chi)) < 1e-12);
    }
    CHECK_THROWS_AS(apply_diffusion_hadamard(init_uniform(2048), pi), std::invalid_argument);
    CHECK_THROWS_AS(apply_hadamard_all(init_uniform(6)), std::invalid_argument);
  }
  SUBCASE("classic N=4 single query") {
    const auto s = apply_grover_step(init_uniform(4), MarkedSet({2}), PhasePair::standard());
    CHECK(std::abs(s[2] - Complex{1.0}) < 1e-15);
    CHECK(std::abs(s[0]) < 1e-15);
  }
}

TEST_CASE("norm is preserved by every operation") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> phase(-pi, pi);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 70;
    auto s = random_state(n, rng);
    const MarkedSet marked = MarkedSet::first(rng() % (n + 1));
    s = apply_oracle_phase(std::move(s), marked, phase(rng));
    REQUIRE(std::abs(s.norm() - 1.0) < 1e-10);
    s = apply_diffusion(std::move(s), phase(rng));
    REQUIRE(std::abs(s.norm() - 1.0) < 1e-10);
    s = apply_nonzero_phase(std::move(s), phase(rng));
    REQUIRE(std::abs(s.norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("Grover success probability") {
  CHECK(grover_success_probability(4, MarkedSet({2}), 1) == doctest::Approx(1.0).epsilon(1e-14));
  for (auto pair : {std::array<std::uint64_t, 2>{0, 1}, {3, 6}, {2, 7}}) {
    CHECK(grover_success_probability(8, MarkedSet({pair[0], pair[1]}), 1) ==
          doctest::Approx(1.0).epsilon(1e-14));
  }
  const MarkedSet five({3, 17, 29, 40, 63});
  const double theta = 2.0 * std::asin(std::sqrt(5.0 / 64.0));
  for (std::uint64_t n = 0; n <= 12; ++n) {
    const double closed = std::pow(std::sin(theta / 2 + n * theta), 2);
    CHECK(std::abs(grover_success_probability(64, five, n) - closed) < 1e-10);
  }
}

TEST_CASE("within-class uniformity after standard iterations") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng() % 100;
    std::vector<std::uint64_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      if (rng() % 3 == 0) idx.push_back(i);
    }
    const MarkedSet marked(idx);
    StateVector s = init_uniform(n);
    for (int k = 0; k < 15; ++k) {
      s = apply_grover_step(std::move(s), marked, PhasePair::standard());
      std::optional<Complex> m_amp, u_amp;
      for (std::size_t i = 0; i < n; ++i) {
        auto& ref = marked.contains(i) ? m_amp : u_amp;
        if (!ref) ref = s[i];
        REQUIRE(std::abs(s[i] - *ref) < 1e-10);
      }
    }
  }
}

TEST_CASE("measurement sampling") {
  std::mt19937_64 rng(12);
  for (std::size_t k : {0u, 3u, 7u}) {
    const auto e = basis_state(8, k);
    for (int i = 0; i < 100; ++i) REQUIRE(measure_sample(e, rng) == k);
  }
  std::array<int, 4> counts{};
  const auto u = init_uniform(4);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) ++counts[measure_sample(u, rng)];
  for (int c : counts) CHECK(std::abs(c / double(draws) - 0.25) < 0.01);

  const auto after = apply_grover_step(init_uniform(4), MarkedSet({2}), PhasePair::standard());
  for (int i = 0; i < 1000; ++i) REQUIRE(measure_sample(after, rng) == 2);

  std::mt19937_64 a(99), b(99);
  const auto r = apply_grover_step(init_uniform(50), MarkedSet({4, 8}), PhasePair::standard());
  for (int i = 0; i < 50; ++i) REQUIRE(measure_sample(r, a) == measure_sample(r, b));
}

TEST_CASE("projection onto the invariant plane") {
  const auto p = project_to_subspace(init_uniform(10), MarkedSet({1, 2, 3}));
  CHECK(p.amp_marked.real() == doctest::Approx(std::sqrt(0.3)));
  CHECK(p.amp_unmarked.real() == doctest::Approx(std::sqrt(0.7)));
  const auto none = project_to_subspace(init_uniform(5), MarkedSet());
  CHECK(none.amp_marked == Complex{0.0});
  CHECK(none.amp_unmarked.real() == doctest::Approx(1.0));
}
