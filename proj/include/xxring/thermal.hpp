#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "xxring/eigen.hpp"
#include "xxring/error.hpp"
#include "xxring/matrix.hpp"
#include "xxring/model.hpp"

namespace xxring {

/// Scaled temperature tau = kT/|J|. The sign of J lives in ModelParams.
struct ThermalParams {
  double tau = 1.0;
};

inline void validate(const ThermalParams& tp) {
  if (!(tp.tau > 0.0) || std::isnan(tp.tau))
    throw Error(ErrorCode::NonPositiveTau, "tau must be > 0, got " + std::to_string(tp.tau));
}

/// Boltzmann weights measured from the lowest level:
/// w_i = exp(-(E_i - E_min) / (tau |J|)), never overflowing.
struct ShiftedWeights {
  std::vector<double> weights;
  double z_shifted = 0.0;
  double e_min = 0.0;
};

inline ShiftedWeights shifted_weights(std::span<const double> energies, double energy_scale,
                                      const ThermalParams& tp) {
  validate(tp);
  ShiftedWeights out;
  out.e_min = *std::min_element(energies.begin(), energies.end());
  out.weights.resize(energies.size());
  const double kt = tp.tau * energy_scale;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    out.weights[i] = std::exp(-(energies[i] - out.e_min) / kt);
    out.z_shifted += out.weights[i];
  }
  return out;
}

struct GibbsState {
  ComplexMatrix rho;
  double z_shifted = 0.0;  // sum_i exp(-(E_i - e_min)/(tau |J|))
  double e_min = 0.0;
  std::vector<double> probabilities;  // per eigenstate, sums to 1
};

namespace detail {

inline GibbsState assemble_gibbs(const ComplexMatrix& vectors, std::vector<double> probabilities,
                                 double z_shifted, double e_min) {
  const std::size_t dim = vectors.rows();
  GibbsState g{ComplexMatrix(dim, dim), z_shifted, e_min, std::move(probabilities)};
  for (std::size_t k = 0; k < g.probabilities.size(); ++k) {
    const double p = g.probabilities[k];
    if (p == 0.0) continue;
    for (std::size_t r = 0; r < dim; ++r) {
      const Complex vr = vectors(r, k) * p;
      if (vr == Complex{}) continue;
      for (std::size_t c = 0; c < dim; ++c) g.rho(r, c) += vr * std::conj(vectors(c, k));
    }
  }
  return g;
}

inline GibbsState gibbs_from_spectrum(std::span<const double> energies, const ComplexMatrix& vectors,
                                      double energy_scale, const ThermalParams& tp) {
  ShiftedWeights sw = shifted_weights(energies, energy_scale, tp);
  std::vector<double> probs(sw.weights.size());
  for (std::size_t i = 0; i < probs.size(); ++i) probs[i] = sw.weights[i] / sw.z_shifted;
  return assemble_gibbs(vectors, std::move(probs), sw.z_shifted, sw.e_min);
}

}  // namespace detail

inline GibbsState gibbs_state(const EigenSystem& sys, const ThermalParams& tp) {
  return detail::gibbs_from_spectrum(sys.energies, sys.vectors, sys.params.energy_scale(), tp);
}

/// Gibbs state from a numerical diagonalisation; `energy_scale` is |J|.
inline GibbsState gibbs_state(const EigenDecomposition& eig, double energy_scale, const ThermalParams& tp) {
  return detail::gibbs_from_spectrum(eig.values, eig.vectors, energy_scale, tp);
}

/// Z = value * exp(log_shift). log_shift is 0 whenever the unshifted sum is
/// representable in double precision.
struct PartitionFunction {
  double value = 0.0;
  double log_shift = 0.0;
  double ground_shifted = 0.0;  // Z e^{beta E0}, summed in the ground frame

  double log_z() const { return std::log(value) + log_shift; }
  /// Z * exp(-log_ref), i.e. the sum re-expressed against another shift.
  double rescaled(double log_ref) const { return value * std::exp(log_shift - log_ref); }
};

/// Z = 2(1 + e^{J beta}) cosh(J beta B)
///   + 2 e^{-J beta/2} [cosh(J beta B+ / 2) + cosh(J beta B- / 2)],
/// evaluated term by term as e^{c+|x|}(1 + e^{-2|x|}) for 2 e^c cosh x.
inline PartitionFunction partition_function_closed(const ModelParams& params, const ThermalParams& tp) {
  validate(params);
  validate(tp);
  const double jb = params.j / (tp.tau * params.energy_scale());  // J beta = +-1/tau
  const auto [bp, bm] = b_plus_minus(params.b);
  struct Term {
    double c;
    double x;
  };
  const std::array<Term, 4> terms{{
      {0.0, jb * params.b},
      {jb, jb * params.b},
      {-0.5 * jb, 0.5 * jb * bp},
      {-0.5 * jb, 0.5 * jb * bm},
  }};
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) m = std::max(m, t.c + std::abs(t.x));
  double shifted = 0.0;
  for (const auto& t : terms) shifted += std::exp(t.c + std::abs(t.x) - m) * (1.0 + std::exp(-2.0 * std::abs(t.x)));

  constexpr double kMaxLogRepresentable = 700.0;
  // The largest exponent is -beta E0, so `shifted` is already ground-relative.
  if (m < kMaxLogRepresentable) return {shifted * std::exp(m), 0.0, shifted};
  return {shifted, m, shifted};
}

inline constexpr double kDefaultDegeneracyTol = 1e-9;

/// Equal-weight mixture over the ground manifold: the tau -> 0 limit of
/// gibbs_state. `degeneracy_tol` is in units of |J|.
inline GibbsState ground_state_mixture(const EigenSystem& sys, double degeneracy_tol = kDefaultDegeneracyTol) {
  if (!(degeneracy_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "degeneracy_tol must be > 0");
  const double e_min = *std::min_element(sys.energies.begin(), sys.energies.end());
  const double cut = degeneracy_tol * sys.params.energy_scale();
  std::vector<double> probs(kRingStates, 0.0);
  double count = 0.0;
  for (std::size_t i = 0; i < kRingStates; ++i)
    if (sys.energies[i] - e_min <= cut) {
      probs[i] = 1.0;
      count += 1.0;
    }
  for (auto& p : probs) p /= count;
  return detail::assemble_gibbs(sys.vectors, std::move(probs), count, e_min);
}

/// Trace distance (1/2)||a - b||_1 between two Hermitian matrices.
inline double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  const EigenDecomposition eig = hermitian_eigen(a - b);
  double s = 0.0;
  for (double v : eig.values) s += std::abs(v);
  return 0.5 * s;
}

}  // namespace xxring
