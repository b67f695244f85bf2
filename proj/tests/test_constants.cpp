#include <cmath>

#include "doctest.h"
#include "fclust/constants.hpp"
#include "fclust/errors.hpp"

using namespace fclust;

TEST_SUITE_BEGIN("constants");

TEST_CASE("paper profile reproduces the literal formulas") {
  const AlgorithmConstants paper = AlgorithmConstants::paper_defaults();
  CHECK(paper.c0 == 1000.0);

  const long n = 100000;
  const int k = 3;
  const double b = 0.5, delta = 0.4, eta = 0.1;
  const double ln_n = std::log(static_cast<double>(n));

  CHECK(paper.balanced_sample_size(n, k, b, delta) ==
        static_cast<long>(std::ceil(400.0 * 1000.0 * k * k * ln_n / (b * b * delta * delta))));
  CHECK(paper.gap_sample_size(n, k, b, delta) ==
        static_cast<long>(std::ceil(8.0 * 1000.0 * std::pow(k, 4) * ln_n / (b * b * delta * delta))));
  CHECK(paper.grow_reference_size(n, delta) ==
        static_cast<long>(std::ceil(1600.0 * ln_n / (delta * delta))));
  CHECK(paper.enum_seed_size(n, eta, delta) ==
        static_cast<long>(std::ceil(256.0 * ln_n / (eta * eta * delta * delta))));
  CHECK(paper.bias_trials(n, k, b) == static_cast<long>(std::ceil(16.0 * k * ln_n / b)));
  CHECK(paper.stop_floor(n, k, delta) ==
        static_cast<long>(std::ceil(40000.0 * 1000.0 * std::pow(k, 4) * ln_n / (delta * delta))));

  CHECK(paper.enum_bias_ratio_ok(0.1, 0.1));  // eta^2/b = 0.1 >= 64/1000
}

TEST_CASE("desk profile stays desk-sized") {
  const AlgorithmConstants desk = AlgorithmConstants::desk_defaults();
  CHECK(desk.balanced_sample_size(900, 3, 1.0, 0.7) <= 900);
  CHECK(desk.grow_reference_size(900, 0.7) < 200);
  CHECK(desk.stop_floor(900, 3, 0.7) < 900);
  CHECK_FALSE(desk.enum_bias_ratio_ok(0.1, 0.1));  // needs c0 >= 6400
}

TEST_CASE("scale multiplies every derived size") {
  AlgorithmConstants consts = AlgorithmConstants::desk_defaults();
  const long base = consts.balanced_sample_size(500, 2, 1.0, 0.5);
  consts.scale = 2.0;
  const long doubled = consts.balanced_sample_size(500, 2, 1.0, 0.5);
  CHECK(doubled >= 2 * base - 1);
  CHECK(doubled <= 2 * base + 1);
}

TEST_CASE("derived sizes are positive even for tiny pools") {
  const AlgorithmConstants desk = AlgorithmConstants::desk_defaults();
  CHECK(desk.grow_reference_size(1, 1.0) >= 1);
  CHECK(desk.enum_seed_size(2, 0.1, 1.0) >= 1);
  CHECK(desk.bias_trials(1, 1, 0.1) >= 1);
}

TEST_CASE("knobs must be strictly positive") {
  AlgorithmConstants consts = AlgorithmConstants::desk_defaults();
  consts.validate();
  consts.scale = 0.0;
  CHECK_THROWS_AS(consts.validate(), DomainError);
  consts.scale = 1.0;
  consts.c0 = -1.0;
  CHECK_THROWS_AS(consts.validate(), DomainError);
}

TEST_SUITE_END();
