// Copyright 2026 The deloc Authors
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

#include "deloc/entangling.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "deloc/errors.hpp"

namespace deloc {

namespace {

double entropy_of_reduced(const ComplexMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  double e = 0.0;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    const double p = solver.eigenvalues()(k);
    if (p > kEntropyEigenFloor) e -= p * std::log2(p);
  }
  return std::max(e, 0.0);
}

ComplexVector unit_from_real(const RealVector& x, Eigen::Index offset, int d) {
  ComplexVector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(x(offset + i), x(offset + d + i));
  const double n = v.norm();
  return n > 0.0 ? ComplexVector(v / n) : basis_vector(d, 0);
}

}  // namespace

double entanglement_entropy(const ComplexVector& psi, int d_a, int d_b, Side keep) {
  if (std::abs(psi.norm() - 1.0) > 1e-9) {
    throw NormalizationError("entanglement_entropy: state is not normalized");
  }
  return entropy_of_reduced(reduced_state(psi, d_a, d_b, keep));
}

void OptimizationConfig::validate() const {
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (max_iters < 0) throw std::invalid_argument("max_iters must be >= 0");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (!(initial_step > 0.0) || !(grow >= 1.0) || !(shrink > 0.0 && shrink < 1.0)) {
    throw std::invalid_argument("invalid step schedule");
  }
}

EntanglingPowerResult entangling_power(
    const BipartiteUnitary& u, const OptimizationConfig& cfg) {
  cfg.validate();
  const int d_a = u.d_a();
  const int d_b = u.d_b();
  const Side keep = d_a <= d_b ? Side::A : Side::B;
  const Eigen::Index dim = 2 * (d_a + d_b);

  auto objective = [&](const RealVector& x) {
    const ComplexVector a = unit_from_real(x, 0, d_a);
    const ComplexVector b = unit_from_real(x, 2 * d_a, d_b);
    return entropy_of_reduced(reduced_state(u.matrix() * kron(a, b), d_a, d_b, keep));
  };

  EntanglingPowerResult result;
  result.value = -1.0;
  RealVector best_x;
  for (int r = 0; r < cfg.restarts; ++r) {
    std::mt19937_64 rng(derive_seed(cfg.seed, r));
    std::normal_distribution<double> normal;
    RealVector x(dim);
    for (Eigen::Index i = 0; i < dim; ++i) x(i) = normal(rng);
    double fx = objective(x);
    double step = cfg.initial_step;
    bool converged = false;
    RealVector trial(dim);
    for (int it = 0; it < cfg.max_iters; ++it) {
      for (Eigen::Index i = 0; i < dim; ++i) trial(i) = x(i) + step * normal(rng);
      const double ft = objective(trial);
      if (ft > fx) {
        x = trial;
        fx = ft;
        step *= cfg.grow;
      } else {
        step *= cfg.shrink;
      }
      // Keep the parametrization on the unit spheres so steps stay relative.
      x.segment(0, 2 * d_a) /= x.segment(0, 2 * d_a).norm();
      x.segment(2 * d_a, 2 * d_b) /= x.segment(2 * d_a, 2 * d_b).norm();
      if (step < cfg.tol) {
        converged = true;
        break;
      }
    }
    result.restart_values.push_back(fx);
    if (fx > result.value) {
      result.value = fx;
      result.converged = converged;
      best_x = x;
    }
  }
  result.argmax_a = unit_from_real(best_x, 0, d_a);
  result.argmax_b = unit_from_real(best_x, 2 * d_a, d_b);
  result.value = entanglement_entropy(
      u.matrix() * kron(result.argmax_a, result.argmax_b), d_a, d_b, keep);
  return result;
}

}  // namespace deloc
