#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xxring/eigen.hpp"
#include "xxring/error.hpp"
#include "xxring/matrix.hpp"
#include "xxring/model.hpp"
#include "xxring/thermal.hpp"

namespace xxring {

enum class Pair { P12, P13, P23 };

inline std::string_view to_string(Pair p) {
  switch (p) {
    case Pair::P12: return "12";
    case Pair::P13: return "13";
    case Pair::P23: return "23";
  }
  return "?";
}

inline std::optional<Pair> parse_pair(std::string_view s) {
  if (s == "12") return Pair::P12;
  if (s == "13") return Pair::P13;
  if (s == "23") return Pair::P23;
  return std::nullopt;
}

/// 1-based site numbers of a pair, smaller first.
inline std::array<std::size_t, 2> sites_of(Pair p) {
  switch (p) {
    case Pair::P12: return {1, 2};
    case Pair::P13: return {1, 3};
    case Pair::P23: return {2, 3};
  }
  return {1, 2};
}

/// Reduced two-site state of an n-qubit density matrix, keeping sites
/// `site_a` < `site_b` (1-based). Output basis is |s_a s_b> with s_a the
/// more significant bit.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, std::size_t n_sites, std::size_t site_a,
                                   std::size_t site_b) {
  if (site_a > site_b) std::swap(site_a, site_b);
  if (site_a < 1 || site_b > n_sites || site_a == site_b)
    throw Error(ErrorCode::BadSiteIndex, "keep sites must be two distinct values in [1, " +
                                             std::to_string(n_sites) + "]");
  const std::size_t dim = std::size_t{1} << n_sites;
  if (rho.rows() != dim || rho.cols() != dim)
    throw Error(ErrorCode::InvalidArgument, "rho must be 2^n x 2^n");

  const std::size_t bit_a = n_sites - site_a;
  const std::size_t bit_b = n_sites - site_b;
  const std::size_t kept_mask = (std::size_t{1} << bit_a) | (std::size_t{1} << bit_b);
  auto reduced_index = [&](std::size_t i) {
    return (((i >> bit_a) & 1u) << 1) | ((i >> bit_b) & 1u);
  };

  ComplexMatrix out(4, 4);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c)
      if ((r & ~kept_mask) == (c & ~kept_mask)) out(reduced_index(r), reduced_index(c)) += rho(r, c);
  return out;
}

/// Unnormalised X-state entries of a reduced pair state:
///   rho = (1/z) [[u,0,0,0],[0,w1,y,0],[0,y,w2,0],[0,0,0,v]]
/// in the basis |00>, |01>, |10>, |11>.
struct XElements {
  double u = 0.0;
  double v = 0.0;
  double w1 = 0.0;
  double w2 = 0.0;
  double y = 0.0;
  double z = 1.0;

  XElements normalized() const { return {u / z, v / z, w1 / z, w2 / z, y / z, 1.0}; }
};

inline ComplexMatrix x_matrix(const XElements& e) {
  const XElements n = e.normalized();
  ComplexMatrix m(4, 4);
  m(0, 0) = n.u;
  m(1, 1) = n.w1;
  m(1, 2) = n.y;
  m(2, 1) = n.y;
  m(2, 2) = n.w2;
  m(3, 3) = n.v;
  return m;
}

/// Reads the X-state entries off a 4x4 reduced density matrix (z = 1).
inline XElements x_elements_of(const ComplexMatrix& rho) {
  return {rho(0, 0).real(), rho(3, 3).real(), rho(1, 1).real(), rho(2, 2).real(), rho(1, 2).real(), 1.0};
}

namespace detail {

struct LevelWeights {
  std::array<double, kRingStates> w{};
  double z = 0.0;
};

inline LevelWeights level_weights(const EigenSystem& sys, const ThermalParams& tp) {
  const ShiftedWeights sw = shifted_weights(sys.energies, sys.params.energy_scale(), tp);
  LevelWeights lw;
  std::copy(sw.weights.begin(), sw.weights.end(), lw.w.begin());
  lw.z = sw.z_shifted;
  return lw;
}

}  // namespace detail

/// Entries of rho_12 (site 3 traced out), all exponentials shifted by E_min.
inline XElements reduced_elements_12(const EigenSystem& sys, const ThermalParams& tp) {
  const auto [w, z] = detail::level_weights(sys, tp);
  const auto& a = sys.a;
  auto n2 = [&](std::size_t i) { return sys.norm2(i); };

  const double singlet_free = n2(1) * w[1] + n2(4) * w[4] + n2(5) * w[5] + n2(6) * w[6];
  XElements e;
  e.y = singlet_free - 0.5 * w[2] - 0.5 * w[3];
  e.w1 = singlet_free + 0.5 * w[2] + 0.5 * w[3];
  e.w2 = e.w1;
  e.u = w[0] + a[1] * a[1] * n2(1) * w[1] + a[5] * a[5] * n2(5) * w[5];
  e.v = w[7] + a[4] * a[4] * n2(4) * w[4] + a[6] * a[6] * n2(6) * w[6];
  e.z = z;
  return e;
}

/// Entries of rho_13 (site 2 traced out).
inline XElements reduced_elements_13(const EigenSystem& sys, const ThermalParams& tp) {
  const auto [w, z] = detail::level_weights(sys, tp);
  const auto& a = sys.a;
  auto n2 = [&](std::size_t i) { return sys.norm2(i); };

  XElements e;
  e.y = a[1] * n2(1) * w[1] + a[4] * n2(4) * w[4] + a[5] * n2(5) * w[5] + a[6] * n2(6) * w[6];
  e.w1 = a[1] * a[1] * n2(1) * w[1] + 0.5 * w[3] + n2(4) * w[4] + a[5] * a[5] * n2(5) * w[5] + n2(6) * w[6];
  e.w2 = n2(1) * w[1] + 0.5 * w[2] + a[4] * a[4] * n2(4) * w[4] + n2(5) * w[5] + a[6] * a[6] * n2(6) * w[6];
  e.u = w[0] + n2(1) * w[1] + 0.5 * w[2] + n2(5) * w[5];
  e.v = w[7] + 0.5 * w[3] + n2(4) * w[4] + n2(6) * w[6];
  e.z = z;
  return e;
}

inline XElements reduced_elements(const EigenSystem& sys, const ThermalParams& tp, Pair pair) {
  return pair == Pair::P12 ? reduced_elements_12(sys, tp) : reduced_elements_13(sys, tp);
}

inline constexpr double kXStateTol = 1e-12;

/// C = (2/z) max{|y| - sqrt(u v), 0}.
inline double concurrence_x(const XElements& e) {
  if (!(e.z > 0.0)) throw Error(ErrorCode::InvalidXState, "normalizer z must be positive");
  const XElements n = e.normalized();
  if (n.u < -kXStateTol || n.v < -kXStateTol || n.w1 < -kXStateTol || n.w2 < -kXStateTol)
    throw Error(ErrorCode::InvalidXState, "negative population");
  const double trace = n.u + n.v + n.w1 + n.w2;
  if (std::abs(trace - 1.0) > 1e-12 * 4)
    throw Error(ErrorCode::InvalidXState, "populations do not sum to z");
  const double coherence_bound = std::sqrt(std::max(n.w1, 0.0) * std::max(n.w2, 0.0));
  if (std::abs(n.y) > coherence_bound + kXStateTol)
    throw Error(ErrorCode::InvalidXState, "|y| exceeds sqrt(w1 w2)");
  const double c = 2.0 * (std::abs(n.y) - std::sqrt(std::max(n.u, 0.0) * std::max(n.v, 0.0)));
  return std::clamp(c, 0.0, 1.0);
}

/// Sigma_y (x) Sigma_y.
inline ComplexMatrix spin_flip_operator() { return kron(pauli::y(), pauli::y()); }

/// rho~ = (Y (x) Y) rho* (Y (x) Y).
inline ComplexMatrix spin_flip(const ComplexMatrix& rho) {
  const ComplexMatrix yy = spin_flip_operator();
  return yy * rho.conjugate() * yy;
}

inline constexpr double kDensityTraceTol = 1e-10;

/// Wootters lambdas (descending) of a two-qubit density matrix. They are the
/// singular values of sqrt(rho) sqrt(rho~), whose squares are the spectrum
/// of sqrt(rho) rho~ sqrt(rho) (and of rho rho~).
inline std::array<double, 4> wootters_lambdas(const ComplexMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw Error(ErrorCode::NotDensityMatrix, "rho must be 4x4");
  if (!is_hermitian(rho, kHermitianTol)) throw Error(ErrorCode::NotDensityMatrix, "rho is not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0)) > kDensityTraceTol)
    throw Error(ErrorCode::NotDensityMatrix, "trace differs from 1");
  ComplexMatrix root;
  try {
    root = psd_sqrt(rho);
  } catch (const Error& err) {
    if (err.code() == ErrorCode::NotPositiveSemidefinite) throw Error(ErrorCode::NotDensityMatrix, err.what());
    throw;
  }
  const ComplexMatrix yy = spin_flip_operator();
  const ComplexMatrix root_flipped = yy * root.conjugate() * yy;  // sqrt(rho~)
  const std::vector<double> s = singular_values(root * root_flipped);
  return {s[0], s[1], s[2], s[3]};
}

inline double concurrence_general(const ComplexMatrix& rho) {
  const auto l = wootters_lambdas(rho);
  return std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
}

/// Closed-form pairwise concurrence of the impurity ring; pair 23 equals
/// pair 13 by the 1 <-> 2 exchange symmetry.
inline double concurrence_pair(const ModelParams& params, const ThermalParams& tp, Pair pair) {
  validate(params);
  validate(tp);
  require_three_sites(params);
  const EigenSystem sys = closed_form_eigensystem(params);
  return concurrence_x(reduced_elements(sys, tp, pair));
}

/// Unclamped |y| - sqrt(uv), normalised by z. Its sign decides entanglement.
inline double entanglement_margin(const ModelParams& params, const ThermalParams& tp, Pair pair) {
  const EigenSystem sys = closed_form_eigensystem(params);
  const XElements n = reduced_elements(sys, tp, pair).normalized();
  return std::abs(n.y) - std::sqrt(n.u * n.v);
}

/// tau -> 0 limit of C12: 1 for J > 0, 2/(2 + a4^2) for J < 0.
inline double c12_zero_t_limit(const ModelParams& params) {
  validate(params);
  if (params.b == 0.0)
    throw Error(ErrorCode::DegenerateLimit, "B = 0 ground state is degenerate; use ground_state_mixture");
  if (params.j > 0.0) return 1.0;
  // C(B) = C(-B), so evaluate a4 at |B|.
  const EigenSystem sys = closed_form_eigensystem({params.j, std::abs(params.b), 3});
  return 2.0 / (2.0 + sys.a[4] * sys.a[4]);
}

struct LowTApprox {
  double value;
  bool in_regime;  // tau << |B| << 1
};

/// C13 ~ (2/3)[1 - e^{B/3tau} / (1 + e^{2B/3tau})] = (2/3)[1 - 1/(2 cosh(B/3tau))],
/// meant for J < 0 and tau << B << 1.
inline LowTApprox c13_low_t_approx(double b, double tau) {
  if (!(tau > 0.0)) throw Error(ErrorCode::NonPositiveTau, "tau must be > 0");
  const double x = std::abs(b) / (3.0 * tau);
  const double value = (2.0 / 3.0) * (1.0 - 1.0 / (2.0 * std::cosh(x)));
  const bool in_regime = 10.0 * tau <= std::abs(b) && std::abs(b) <= 0.1;
  return {value, in_regime};
}

/// Entanglement of formation E = h((1 + sqrt(1 - C^2)) / 2), h the binary entropy.
inline double eof_from_concurrence(double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw Error(ErrorCode::OutOfRange, "concurrence must lie in [0, 1]");
  const double x = 0.5 * (1.0 + std::sqrt(1.0 - c * c));
  auto term = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
  return term(x) + term(1.0 - x);
}

}  // namespace xxring
