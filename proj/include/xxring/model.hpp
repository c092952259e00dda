#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "xxring/error.hpp"
#include "xxring/matrix.hpp"

namespace xxring {

/// Coupling J (energy unit, only its sign survives once tau is used) and
/// dimensionless impurity strength B; the physical field on site 3 is B*J.
struct ModelParams {
  double j = 1.0;
  double b = 0.0;
  std::size_t n_sites = 3;

  double energy_scale() const noexcept { return std::abs(j); }
  int j_sign() const noexcept { return j > 0.0 ? 1 : -1; }
};

inline void validate(const ModelParams& p) {
  if (p.j == 0.0 || !std::isfinite(p.j))
    throw Error(ErrorCode::InvalidArgument, "coupling j must be finite and nonzero");
  if (!std::isfinite(p.b)) throw Error(ErrorCode::InvalidArgument, "field b must be finite");
}

inline void require_three_sites(const ModelParams& p) {
  if (p.n_sites != 3)
    throw Error(ErrorCode::UnsupportedSize, "closed-form path requires n_sites = 3");
}

/// (B+, B-) with B+- = sqrt(4B^2 +- 4B + 9).
struct BPlusMinus {
  double plus;
  double minus;
};

inline BPlusMinus b_plus_minus(double b) {
  return {std::sqrt(4.0 * b * b + 4.0 * b + 9.0), std::sqrt(4.0 * b * b - 4.0 * b + 9.0)};
}

inline constexpr std::size_t kRingStates = 8;
inline constexpr std::size_t kMinSites = 2;
inline constexpr std::size_t kMaxSites = 10;

/// Closed-form solution of the three-site ring. Amplitude arrays are indexed
/// by eigenstate label and only entries 1, 4, 5, 6 are meaningful; the other
/// labels hold a = 0 and N = 1 so that index arithmetic stays uniform.
struct EigenSystem {
  ModelParams params;
  std::array<double, kRingStates> energies{};
  double b_plus = 0.0;
  double b_minus = 0.0;
  std::array<double, kRingStates> a{};
  std::array<double, kRingStates> norm{};
  ComplexMatrix vectors;  // column i is |phi_i>

  std::vector<Complex> state(std::size_t i) const { return vectors.column(i); }
  double norm2(std::size_t i) const { return norm[i] * norm[i]; }
};

/// (J/2) sum_cyclic (XX + YY) + sum_i fields[i] Z_i. Site 1 is the leftmost
/// tensor factor, so |s1 s2 ... sn> sits at index sum s_k 2^(n-k).
inline ComplexMatrix build_hamiltonian(const ModelParams& params, std::span<const double> fields) {
  const std::size_t n = params.n_sites;
  if (n < kMinSites || n > kMaxSites)
    throw Error(ErrorCode::UnsupportedSize, "n_sites must lie in [2, 10], got " + std::to_string(n));
  if (fields.size() != n)
    throw Error(ErrorCode::BadFieldLength,
                "expected " + std::to_string(n) + " fields, got " + std::to_string(fields.size()));

  const std::size_t dim = std::size_t{1} << n;
  ComplexMatrix h(dim, dim);
  const std::size_t n_bonds = n == 2 ? 1 : n;  // a two-site "ring" has a single bond
  for (std::size_t i = 0; i < n_bonds; ++i) {
    const std::size_t k = (i + 1) % n;
    h += 0.5 * params.j *
         (pauli::on_site(pauli::x(), i, n) * pauli::on_site(pauli::x(), k, n) +
          pauli::on_site(pauli::y(), i, n) * pauli::on_site(pauli::y(), k, n));
  }
  for (std::size_t i = 0; i < n; ++i)
    if (fields[i] != 0.0) h += fields[i] * pauli::on_site(pauli::z(), i, n);
  return h;
}

/// Per-site z-fields realising the impurity model in the computational basis.
/// The closed-form kets label spin-up by the digit 1 (|000> has energy -BJ),
/// whereas sigma_z |0> = +|0> here, so the impurity enters with a minus sign.
inline std::vector<double> impurity_fields(const ModelParams& params) {
  std::vector<double> f(params.n_sites, 0.0);
  f.back() = -params.b * params.j;
  return f;
}

inline ComplexMatrix impurity_hamiltonian(const ModelParams& params) {
  return build_hamiltonian(params, impurity_fields(params));
}

inline std::array<double, kRingStates> closed_form_spectrum(const ModelParams& params) {
  require_three_sites(params);
  const double j = params.j;
  const double b = params.b;
  const auto [bp, bm] = b_plus_minus(b);
  return {
      -j * b,                // E0
      0.5 * j * (1.0 + bm),  // E1
      -j * (1.0 + b),        // E2
      -j * (1.0 - b),        // E3
      0.5 * j * (1.0 + bp),  // E4
      0.5 * j * (1.0 - bm),  // E5
      0.5 * j * (1.0 - bp),  // E6
      j * b,                 // E7
  };
}

inline EigenSystem closed_form_eigensystem(const ModelParams& params) {
  require_three_sites(params);
  EigenSystem sys;
  sys.params = params;
  sys.energies = closed_form_spectrum(params);
  const double b = params.b;
  const auto [bp, bm] = b_plus_minus(b);
  sys.b_plus = bp;
  sys.b_minus = bm;

  sys.a.fill(0.0);
  sys.a[1] = -0.5 + 0.5 * bm + b;
  sys.a[4] = -0.5 + 0.5 * bp - b;
  sys.a[5] = -0.5 - 0.5 * bm + b;
  sys.a[6] = -0.5 - 0.5 * bp - b;
  sys.norm.fill(1.0);
  for (std::size_t i : {1, 4, 5, 6}) sys.norm[i] = 1.0 / std::sqrt(2.0 + sys.a[i] * sys.a[i]);

  // Basis index of |s1 s2 s3> is 4 s1 + 2 s2 + s3.
  enum : std::size_t { k000 = 0, k001 = 1, k010 = 2, k011 = 3, k100 = 4, k101 = 5, k110 = 6, k111 = 7 };
  const double r2 = 1.0 / std::sqrt(2.0);
  ComplexMatrix v(kRingStates, kRingStates);
  v(k000, 0) = 1.0;

  v(k100, 1) = sys.norm[1];
  v(k010, 1) = sys.norm[1];
  v(k001, 1) = sys.norm[1] * sys.a[1];

  v(k010, 2) = r2;
  v(k100, 2) = -r2;

  v(k101, 3) = r2;
  v(k011, 3) = -r2;

  v(k110, 4) = sys.norm[4] * sys.a[4];
  v(k101, 4) = sys.norm[4];
  v(k011, 4) = sys.norm[4];

  v(k100, 5) = sys.norm[5];
  v(k010, 5) = sys.norm[5];
  v(k001, 5) = sys.norm[5] * sys.a[5];

  v(k110, 6) = sys.norm[6] * sys.a[6];
  v(k101, 6) = sys.norm[6];
  v(k011, 6) = sys.norm[6];

  v(k111, 7) = 1.0;
  sys.vectors = std::move(v);
  return sys;
}

/// Label permutation induced by B -> -B: E0<->E7, E1<->E4, E2<->E3, E5<->E6.
inline constexpr std::array<std::size_t, kRingStates> kFieldReversalPermutation = {7, 4, 3, 2, 1, 6, 5, 0};

struct NegationCheck {
  std::array<std::size_t, kRingStates> permutation;
  double worst_deviation;
};

/// Verifies that `minus` (built at -B) is the label-permuted image of `plus`
/// (built at +B): energies swap pairwise and a1<->a4, a5<->a6.
inline NegationCheck spectrum_b_negation_map(const EigenSystem& plus, const EigenSystem& minus,
                                             double tol = 1e-12) {
  if (plus.params.j != minus.params.j || plus.params.b != -minus.params.b)
    throw Error(ErrorCode::InvalidArgument, "systems must share J and have opposite B");

  double worst = 0.0;
  std::string worst_label;
  auto record = [&](double d, const std::string& label) {
    if (d > worst) {
      worst = d;
      worst_label = label;
    }
  };
  for (std::size_t i = 0; i < kRingStates; ++i) {
    const std::size_t k = kFieldReversalPermutation[i];
    record(std::abs(plus.energies[i] - minus.energies[k]),
           "E" + std::to_string(i) + " vs E" + std::to_string(k));
  }
  for (std::size_t i : {1, 4, 5, 6}) {
    const std::size_t k = kFieldReversalPermutation[i];
    record(std::abs(plus.a[i] - minus.a[k]), "a" + std::to_string(i) + " vs a" + std::to_string(k));
  }
  if (worst > tol)
    throw Error(ErrorCode::MappingViolation,
                "worst pair " + worst_label + " deviates by " + std::to_string(worst));
  return {kFieldReversalPermutation, worst};
}

}  // namespace xxring
