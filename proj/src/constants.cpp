#include "fclust/constants.hpp"

#include <cmath>

#include "fclust/errors.hpp"

namespace fclust {

namespace {

double ln_floor2(long n) { return std::log(static_cast<double>(n < 2 ? 2 : n)); }

long ceil_positive(double x) {
  double c = std::ceil(x - 1e-12);
  return c < 1.0 ? 1L : static_cast<long>(c);
}

}  // namespace

AlgorithmConstants AlgorithmConstants::paper_defaults() {
  AlgorithmConstants c;
  c.c0 = 1000.0;
  c.sample_mult = 400.0;    // balanced sampling; gap keeps the 400:8 ratio
  c.grow_size_mult = 1600.0;
  c.enum_seed_mult = 256.0;
  c.bias_trials_mult = 16.0;
  c.stop_size_mult = 40000.0 * c.c0;
  c.scale = 1.0;
  return c;
}

AlgorithmConstants AlgorithmConstants::desk_defaults() {
  // Calibrated by the self-check suite; see README.
  AlgorithmConstants c;
  c.c0 = 4.0;
  c.sample_mult = 1.2;
  c.grow_size_mult = 6.0;
  c.enum_seed_mult = 0.05;
  c.bias_trials_mult = 1.0;
  c.stop_size_mult = 0.1;
  c.scale = 1.0;
  return c;
}

void AlgorithmConstants::validate() const {
  const double knobs[] = {c0,            sample_mult,    grow_size_mult, enum_seed_mult,
                          bias_trials_mult, stop_size_mult, scale};
  for (double v : knobs)
    if (!(v > 0.0)) throw DomainError("AlgorithmConstants: every knob must be strictly positive");
}

long AlgorithmConstants::balanced_sample_size(long n, int k, double b, double delta) const {
  return ceil_positive(scale * sample_mult * c0 * k * k * ln_floor2(n) / (b * b * delta * delta));
}

long AlgorithmConstants::gap_sample_size(long n, int k, double b, double delta) const {
  const double k4 = static_cast<double>(k) * k * k * k;
  return ceil_positive(scale * (sample_mult / 50.0) * c0 * k4 * ln_floor2(n) /
                       (b * b * delta * delta));
}

long AlgorithmConstants::grow_reference_size(long n, double delta) const {
  return ceil_positive(scale * grow_size_mult * ln_floor2(n) / (delta * delta));
}

long AlgorithmConstants::enum_seed_size(long n, double eta, double delta) const {
  return ceil_positive(scale * enum_seed_mult * ln_floor2(n) / (eta * eta * delta * delta));
}

long AlgorithmConstants::bias_trials(long n, int k, double b) const {
  return ceil_positive(scale * bias_trials_mult * k * ln_floor2(n) / b);
}

long AlgorithmConstants::stop_floor(long n, int k, double delta) const {
  const double k4 = static_cast<double>(k) * k * k * k;
  return ceil_positive(scale * stop_size_mult * k4 * ln_floor2(n) / (delta * delta));
}

bool AlgorithmConstants::enum_bias_ratio_ok(double eta, double b) const {
  return eta * eta / b >= 64.0 / c0;
}

}  // namespace fclust
