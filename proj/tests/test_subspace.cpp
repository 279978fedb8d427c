#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qsearch/statevector.hpp"
#include "qsearch/subspace.hpp"

using namespace qsearch;
using std::numbers::pi;

TEST_CASE("search instance validation") {
  CHECK_THROWS_AS(SearchInstance(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(SearchInstance(4, 5), std::invalid_argument);
  CHECK_NOTHROW(SearchInstance(4, 4));
  CHECK_NOTHROW(SearchInstance(1, 0));
}

TEST_CASE("rotation angles") {
  SUBCASE("N=4, t=1 gives pi/3") {
    const auto a = rotation_angles({4, 1});
    CHECK(a.theta == doctest::Approx(pi / 3).epsilon(1e-15));
    CHECK(a.theta0 == doctest::Approx(pi / 6).epsilon(1e-15));
  }
  SUBCASE("t = N gives pi") {
    for (std::uint64_t n : {1u, 2u, 7u, 1024u}) {
      const auto a = rotation_angles({n, n});
      CHECK(a.theta == pi);
      CHECK(a.theta0 == pi / 2);
    }
  }
  SUBCASE("t = 0 gives 0") { CHECK(rotation_angles({17, 0}).theta == 0.0); }
  SUBCASE("N=1024, t=1") {
    const auto a = rotation_angles({1024, 1});
    CHECK(a.theta == doctest::Approx(2.0 * std::asin(1.0 / 32.0)).epsilon(1e-14));
    CHECK(a.theta == doctest::Approx(0.06251017699899031).epsilon(1e-14));
    CHECK(std::cos(a.theta) == doctest::Approx(1.0 - 2.0 / 1024.0).epsilon(1e-14));
  }
  SUBCASE("cos, sin and half-angle identities for every instance up to N = 200") {
    for (std::uint64_t n = 1; n <= 200; ++n) {
      for (std::uint64_t t = 0; t <= n; ++t) {
        const auto a = rotation_angles({n, t});
        const double N = static_cast<double>(n), T = static_cast<double>(t);
        REQUIRE(std::abs(std::cos(a.theta) - (1.0 - 2.0 * T / N)) < 1e-12);
        REQUIRE(std::abs(std::sin(a.theta) - 2.0 * std::sqrt(T * (N - T)) / N) < 1e-12);
        REQUIRE(a.theta0 == a.theta / 2.0);
        REQUIRE(std::abs(std::pow(std::sin(a.theta / 2), 2) - T / N) < 1e-12);
      }
    }
  }
}

TEST_CASE("initial state") {
  const auto s = initial_state({4, 1});
  CHECK(s.amp_unmarked.real() == doctest::Approx(std::sqrt(3.0) / 2));
  CHECK(s.amp_marked.real() == doctest::Approx(0.5));
  CHECK(s.amp_marked.imag() == 0.0);

  const auto none = initial_state({9, 0});
  CHECK(none.amp_unmarked == Complex{1.0});
  CHECK(none.amp_marked == Complex{0.0});

  const auto all = initial_state({9, 9});
  CHECK(all.amp_unmarked == Complex{0.0});
  CHECK(all.amp_marked == Complex{1.0});

  CHECK(success_probability(initial_state({10, 3})) == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("standard iteration is a rotation by theta") {
  for (std::uint64_t n : {5u, 16u, 100u}) {
    for (std::uint64_t t = 1; t < n; t += 3) {
      const SearchInstance inst{n, t};
      const auto a = rotation_angles(inst);
      SubspaceState s = initial_state(inst);
      for (std::uint64_t k = 1; k <= 30; ++k) {
        s = apply_iteration(s, a, PhasePair::standard());
        REQUIRE(std::abs(s.amp_unmarked - std::cos(a.theta0 + k * a.theta)) < 1e-10);
        REQUIRE(std::abs(s.amp_marked - std::sin(a.theta0 + k * a.theta)) < 1e-10);
      }
    }
  }
}

TEST_CASE("rotation law holds up to 10^4 iterations") {
  for (auto [n, t] : {std::pair{1024u, 1u}, std::pair{1000u, 37u}, std::pair{65536u, 5u}}) {
    const SearchInstance inst{n, t};
    const auto a = rotation_angles(inst);
    SubspaceState s = initial_state(inst);
    for (std::uint64_t k = 1; k <= 10000; ++k) {
      s = apply_iteration(s, a, PhasePair::standard());
      if (k % 500 == 0) REQUIRE(overlap(s, state_after(inst, k)) > 1.0 - 1e-10);
    }
    CHECK(std::abs(s.amp_marked - state_after(inst, 10000).amp_marked) < 1e-10);
    CHECK(overlap(rotate(initial_state(inst), 10000 * a.theta), s) > 1.0 - 1e-10);
  }
}

TEST_CASE("zero oracle phase leaves the initial state unchanged") {
  for (std::uint64_t t = 0; t <= 12; ++t) {
    const SearchInstance inst{12, t};
    const auto s0 = initial_state(inst);
    const auto s1 = apply_iteration(s0, rotation_angles(inst), {0.0, pi});
    CHECK(overlap(s0, s1) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("generalized iteration agrees with the statevector simulation") {
  SUBCASE("N=8, t=2, phi=pi/2, chi=pi") {
    const SearchInstance inst{8, 2};
    const MarkedSet marked({3, 6});
    const auto sub = apply_iteration(initial_state(inst), rotation_angles(inst), {pi / 2, pi});
    const auto full = project_to_subspace(
        apply_grover_step(init_uniform(8), marked, {pi / 2, pi}), marked);
    CHECK(std::abs(sub.amp_unmarked - full.amp_unmarked) < 1e-10);
    CHECK(std::abs(sub.amp_marked - full.amp_marked) < 1e-10);
  }
  SUBCASE("random phases, several steps, exact amplitudes (no global phase dropped)") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> phase(-pi, pi);
    for (std::uint64_t n : {2u, 3u, 8u, 13u, 32u}) {
      for (std::uint64_t t = 0; t <= n; ++t) {
        const SearchInstance inst{n, t};
        const auto marked = MarkedSet::first(t);
        const auto angles = rotation_angles(inst);
        SubspaceState sub = initial_state(inst);
        StateVector sv = init_uniform(n);
        for (int step = 0; step < 5; ++step) {
          const PhasePair pp{phase(rng), phase(rng)};
          sub = apply_iteration(sub, angles, pp);
          sv = apply_grover_step(std::move(sv), marked, pp);
          const auto proj = project_to_subspace(sv, marked);
          REQUIRE(std::abs(sub.amp_unmarked - proj.amp_unmarked) < 1e-10);
          REQUIRE(std::abs(sub.amp_marked - proj.amp_marked) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("unitarity for arbitrary phases and states") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-pi, pi);
  for (int i = 0; i < 2000; ++i) {
    const SearchInstance inst{1 + rng() % 500, 0};
    const SearchInstance marked_inst{inst.n_total, rng() % (inst.n_total + 1)};
    const double alpha = u(rng);
    const SubspaceState s{std::polar(std::cos(alpha), u(rng)), std::polar(std::sin(alpha), u(rng))};
    const auto out = apply_iteration(s, rotation_angles(marked_inst), {u(rng), u(rng)});
    REQUIRE(std::abs(out.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("non-normalized input is rejected") {
  const SearchInstance inst{8, 1};
  const SubspaceState bad{Complex{1.0}, Complex{0.1}};
  CHECK_THROWS_AS(apply_iteration(bad, rotation_angles(inst), PhasePair::standard()),
                  std::invalid_argument);
}

TEST_CASE("closed form after n iterations") {
  const auto s = state_after({4, 1}, 1);
  CHECK(std::abs(s.amp_unmarked) < 1e-15);
  CHECK(s.amp_marked.real() == doctest::Approx(1.0));

  for (std::uint64_t n = 0; n < 6; ++n) {
    const auto all = state_after({5, 5}, n);
    CHECK(all.amp_unmarked == Complex{0.0});
    CHECK(std::abs(all.amp_marked) == 1.0);
    CHECK(success_probability(all) == 1.0);
  }

  // sin^2(3 arcsin(1/sqrt 8)) = 121/128
  CHECK(success_probability(state_after({8, 1}, 2)) == doctest::Approx(0.9453125).epsilon(1e-12));
  CHECK(grover_success_probability(8, MarkedSet({5}), 2) == doctest::Approx(0.9453125).epsilon(1e-12));

  CHECK(success_probability(state_after({8, 2}, 1)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(success_probability(state_after({4, 1}, 1)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(success_probability(state_after({13, 0}, 9)) == 0.0);
}

TEST_CASE("closed form matches the statevector marked mass") {
  for (std::uint64_t n = 2; n <= 64; ++n) {
    for (std::uint64_t t = 0; t <= n; ++t) {
      const SearchInstance inst{n, t};
      const auto marked = MarkedSet::first(t);
      StateVector sv = init_uniform(n);
      for (std::uint64_t k = 0; k <= 20; ++k) {
        REQUIRE(std::abs(success_probability(state_after(inst, k)) - marked_mass(sv, marked)) < 1e-10);
        sv = apply_grover_step(std::move(sv), marked, PhasePair::standard());
      }
    }
  }
}

TEST_CASE("evolve runs a schedule of mixed iterations") {
  const SearchInstance inst{50, 4};
  const std::vector<PhasePair> steps{PhasePair::standard(), {1.0, 2.0}, PhasePair::oracle_only(0.5),
                                     PhasePair::standard()};
  const auto angles = rotation_angles(inst);
  SubspaceState manual = initial_state(inst);
  for (const auto& s : steps) manual = apply_iteration(manual, angles, s);
  const auto via = evolve(inst, steps);
  CHECK(std::abs(via.amp_unmarked - manual.amp_unmarked) < 1e-14);
  CHECK(std::abs(via.amp_marked - manual.amp_marked) < 1e-14);
}
