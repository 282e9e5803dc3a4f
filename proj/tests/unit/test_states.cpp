// Copyright 2026 The dncircle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dncircle/errors.hpp"
#include "dncircle/states.hpp"
#include "oracles.hpp"

namespace st = dncircle::states;
using dncircle::testing::cdouble;
using dncircle::testing::displacement_matrix;
using dncircle::testing::superposition_by_expm;
using st::SuperpositionSpec;

TEST_SUITE("states") {
  TEST_CASE("spec construction and validation") {
    const auto s = SuperpositionSpec::from_cycles(2, 2, 3.03);
    CHECK(s.components == 8);
    CHECK(s.theta1 == doctest::Approx(2.0 * std::numbers::pi / 8.0));
    CHECK(s.half_angle() == doctest::Approx(std::numbers::pi / 8.0));
    const auto d = s.displacements();
    REQUIRE(d.size() == 8);
    for (int r = 0; r < 8; ++r) {
      CHECK(std::abs(d[r]) == doctest::Approx(3.03));
      CHECK(std::abs(d[r] - s.component(r)) == 0.0);
    }
    CHECK(std::abs(d[1] / d[0] - std::polar(1.0, std::numbers::pi / 4.0)) < 1e-14);
    CHECK_THROWS_AS(SuperpositionSpec({-1, 2, 1.0, 0.0}).validate(), dncircle::UsageError);
    CHECK_THROWS_AS(SuperpositionSpec({0, 0, 1.0, 0.0}).validate(), dncircle::UsageError);
    CHECK_THROWS_AS(SuperpositionSpec({0, 2, -1.0, 0.0}).validate(), dncircle::UsageError);
  }

  TEST_CASE("normalization constant trivial cases") {
    for (int n : {0, 1, 3}) {
      for (int N : {1, 2, 5, 8}) CHECK(st::normalization_constant(SuperpositionSpec::circle(n, N, 0.0)) ==
                                       doctest::Approx(1.0 / N).epsilon(1e-14));
    }
    CHECK(st::normalization_constant({0, 1, 2.0, 0.3}) == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("normalization constant matches the brute-force Fock norm") {
    CHECK(st::normalization_constant(SuperpositionSpec::circle(2, 4, 3.03)) ==
          doctest::Approx(1.0 / superposition_by_expm(2, 4, 3.03, std::numbers::pi / 2.0, 64).norm())
              .epsilon(1e-9));
    for (int n = 0; n <= 4; ++n) {
      for (int N : {1, 2, 4, 8}) {
        for (double b : {0.4, 1.7, 3.5}) {
          const auto spec = SuperpositionSpec::circle(n, N, b);
          const double norm = superposition_by_expm(n, N, b, spec.theta1, 110).norm();
          const double c = st::normalization_constant(spec);
          CAPTURE(n);
          CAPTURE(N);
          CAPTURE(b);
          CHECK(std::fabs(c * c * norm * norm - 1.0) <= 1e-9);
        }
      }
    }
  }

  TEST_CASE("closed-form normalization agrees with the positive series") {
    for (int n = 0; n <= 3; ++n) {
      for (int N : {1, 2, 3, 8}) {
        for (double b : {0.0, 0.7, 2.2, 4.0}) {
          const auto spec = SuperpositionSpec::circle(n, N, b);
          const double c = st::normalization_constant(spec);
          CHECK(c * c * st::superposition_norm_squared(spec) == doctest::Approx(1.0).epsilon(1e-12));
        }
      }
    }
  }

  TEST_CASE("normalization near a Laguerre zero") {
    // L_1(1) = 0: the diagonal overlap vanishes and the cross terms cancel to ~1e-32.
    const auto spec = SuperpositionSpec::circle(1, 32, 1.0);
    const double c = st::normalization_constant(spec);
    CHECK(std::isfinite(c));
    const auto v = st::build_fock_vector(spec, 80, 1.0);
    CHECK(v.squared_norm() == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("normalization constant ignores the global rotation") {
    auto spec = SuperpositionSpec::circle(1, 4, 2.2);
    const double ref = st::normalization_constant(spec);
    for (double th : {0.0, 0.37, 2.0, -5.0}) {
      spec.theta1 = th;
      CHECK(st::normalization_constant(spec) == doctest::Approx(ref).epsilon(1e-15));
    }
  }

  TEST_CASE("displaced number overlap") {
    for (int m = 0; m < 5; ++m) {
      for (int n = 0; n < 5; ++n) CHECK(std::abs(st::displaced_number_overlap(m, n, 0.0) - cdouble(m == n)) == 0.0);
    }
    const cdouble beta(0.8, -1.3);
    CHECK(std::abs(st::displaced_number_overlap(0, 0, beta) - std::exp(-0.5 * std::norm(beta))) < 1e-15);

    const auto D = displacement_matrix(beta, 120);
    for (int m = 0; m < 30; ++m) {
      for (int n = 0; n < 8; ++n) CHECK(std::abs(st::displaced_number_overlap(m, n, beta) - D(m, n)) < 1e-12);
    }
  }

  TEST_CASE("displaced number states are unit vectors under truncation") {
    for (int n = 0; n <= 5; ++n) {
      for (double b : {0.5, 1.5, 3.0}) {
        const cdouble beta = std::polar(b, 0.3 * n + 0.1);
        double sum = 0.0;
        for (int m = 0; m < 128; ++m) sum += std::norm(st::displaced_number_overlap(m, n, beta));
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        const auto v = st::displaced_number_state(n, beta, 128);
        CHECK(v.squared_norm() == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("overlap is safe for large indices") {
    const cdouble beta(12.0, 5.0);
    const auto v = st::displaced_number_state(3, beta, 512);
    CHECK(v.squared_norm() == doctest::Approx(1.0).epsilon(1e-10));
    for (const auto& a : v.amps) CHECK(std::isfinite(std::abs(a)));
  }

  TEST_CASE("coherent state amplitudes") {
    const double b = 1.3;
    const auto v = st::build_fock_vector({0, 1, b, 0.0}, 32);
    double fact = 1.0;
    for (int m = 0; m < 32; ++m) {
      if (m) fact *= m;
      CHECK(std::abs(v.amps[m] - std::pow(b, m) * std::exp(-0.5 * b * b) / std::sqrt(fact)) < 1e-14);
    }
  }

  TEST_CASE("two-component parity pattern") {
    // D(b)|1> + D(-b)|1>: <m|D(-b)|1> = (-1)^{m-1} <m|D(b)|1>, so even m cancel.
    const auto v = st::build_fock_vector({1, 2, 1.0, 0.0}, 48);
    const Eigen::VectorXcd ref = superposition_by_expm(1, 2, 1.0, 0.0, 48);
    const double scale = ref.norm();
    for (int m = 0; m < 48; ++m) {
      if (m % 2 == 0) {
        CHECK(std::abs(v.amps[m]) < 1e-15);
      } else {
        CHECK(std::abs(v.amps[m] - ref(m) / scale) < 1e-12);
      }
    }
    CHECK(std::abs(v.amps[3]) > 0.1);  // <1|D(1)|1> itself vanishes since L_1(1) = 0
  }

  TEST_CASE("zero displacement gives the Fock state") {
    const auto v = st::build_fock_vector(SuperpositionSpec::circle(3, 8, 0.0), 10);
    for (int m = 0; m < 10; ++m) CHECK(std::abs(v.amps[m] - cdouble(m == 3)) < 1e-15);
  }

  TEST_CASE("truncation loss decreases with dimension") {
    const auto spec = SuperpositionSpec::circle(2, 4, 3.03);
    double last = 1.0;
    for (std::size_t dim = 4; dim <= 60; dim += 4) {
      const auto v = st::build_fock_vector(spec, dim, 1.0);
      CHECK(v.truncation_loss <= last + 1e-15);
      CHECK(v.truncation_loss == doctest::Approx(1.0 - v.squared_norm()).epsilon(1e-12));
      last = v.truncation_loss;
    }
    for (int n : {0, 2, 4}) {
      for (double b : {0.5, 2.0, 3.5}) {
        const auto s = SuperpositionSpec::circle(n, 4, b);
        CHECK(st::build_fock_vector(s, st::default_dim(s)).truncation_loss <= 1e-10);
        const auto base = static_cast<std::size_t>(std::ceil(b * b) + 6.0 * std::ceil(b)) + std::size_t(n) + 10;
        CHECK(st::default_dim(s) >= base);
        if (n <= 2) CHECK(st::default_dim(s) == base);
      }
    }
  }

  TEST_CASE("truncation errors") {
    const auto spec = SuperpositionSpec::circle(2, 4, 3.03);
    CHECK_THROWS_AS(st::build_fock_vector(spec, 2), dncircle::UsageError);
    try {
      (void)st::build_fock_vector(spec, 12);
      FAIL("expected TruncationError");
    } catch (const dncircle::TruncationError& e) {
      CHECK(e.required_dim() > 12);
      CHECK(st::build_fock_vector(spec, e.required_dim()).truncation_loss <= st::kDefaultTruncationThreshold);
      CHECK_THROWS_AS(st::build_fock_vector(spec, e.required_dim() - 1), dncircle::TruncationError);
    }
  }

  TEST_CASE("inner product") {
    const auto a = st::build_fock_vector(SuperpositionSpec::circle(1, 4, 1.2), 40);
    CHECK(std::abs(st::inner_product(a, a) - cdouble(a.squared_norm())) < 1e-14);
  }
}
