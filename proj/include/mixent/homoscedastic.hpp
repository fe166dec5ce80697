#pragma once

#include "mixent/mixture.hpp"

namespace mixent {

/// Gaussian mixture whose covariances all match the first one element-wise
/// within 1e-9.
bool is_homoscedastic(const MixtureModel& mix);

/// Chernoff-alpha lower bound for a shared covariance S, using
///   d/2 + (d/2) ln(alpha (1 - alpha)) - sum_i c_i ln sum_j c_j N(mu_i; mu_j, S / (alpha (1 - alpha)))
/// which needs one factorization instead of one per pair. alpha in (0, 1).
double homoscedastic_chernoff_lower(const MixtureModel& mix, double alpha);

} // namespace mixent
