#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <exception>
#include <functional>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "xxring/eigen.hpp"
#include "xxring/entanglement.hpp"
#include "xxring/error.hpp"
#include "xxring/model.hpp"
#include "xxring/thermal.hpp"

namespace xxring {

// --------------------------------------------------------------------------
// Brute-force pipeline: numeric H -> Jacobi -> Gibbs -> partial trace ->
// general Wootters concurrence. Shares nothing with the closed-form path
// beyond the numeric kernel.
// --------------------------------------------------------------------------

struct NumericSolution {
  EigenDecomposition eig;
  GibbsState gibbs;
};

inline NumericSolution numeric_solution(const ModelParams& params, const ThermalParams& tp) {
  validate(params);
  validate(tp);
  EigenDecomposition eig = hermitian_eigen(impurity_hamiltonian(params));
  GibbsState g = gibbs_state(eig, params.energy_scale(), tp);
  return {std::move(eig), std::move(g)};
}

inline ComplexMatrix numeric_reduced_state(const ModelParams& params, const ThermalParams& tp, Pair pair) {
  const NumericSolution sol = numeric_solution(params, tp);
  const auto [a, b] = sites_of(pair);
  return partial_trace(sol.gibbs.rho, params.n_sites, a, b);
}

inline double numeric_concurrence(const ModelParams& params, const ThermalParams& tp, Pair pair) {
  return concurrence_general(numeric_reduced_state(params, tp, pair));
}

// --------------------------------------------------------------------------
// Cross-validation harness
// --------------------------------------------------------------------------

struct Tolerances {
  double spectrum = 1e-10;
  double z_relative = 1e-12;
  double elements = 1e-10;
  double concurrence = 1e-9;
};

struct Grid {
  std::vector<double> taus;
  std::vector<double> bs;
  std::vector<double> js;
  std::vector<Pair> pairs;

  std::size_t size() const { return taus.size() * bs.size() * js.size() * pairs.size(); }
};

/// 7 tau x 7 B x 2 signs x 2 pairs = 196 points.
inline Grid default_grid() {
  return {{0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 3.0}, {0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0}, {1.0, -1.0},
          {Pair::P12, Pair::P13}};
}

struct GridPoint {
  double j;
  double b;
  double tau;
  Pair pair;
};

struct PointDeviation {
  GridPoint point;
  double spectrum = 0.0;
  double z_relative = 0.0;
  double elements = 0.0;
  double concurrence = 0.0;
  double closed_concurrence = 0.0;
  double numeric_concurrence = 0.0;
};

struct Worst {
  double value = 0.0;
  std::size_t index = 0;
};

struct CrossCheckReport {
  Grid grid;
  Tolerances tol;
  std::vector<PointDeviation> points;  // ordered by grid index
  Worst spectrum, z_relative, elements, concurrence;

  bool passed() const {
    return spectrum.value <= tol.spectrum && z_relative.value <= tol.z_relative &&
           elements.value <= tol.elements && concurrence.value <= tol.concurrence;
  }

  void print(std::ostream& os, bool per_point = false) const {
    os << "grid: " << grid.taus.size() << " tau x " << grid.bs.size() << " B x " << grid.js.size()
       << " J x " << grid.pairs.size() << " pairs = " << points.size() << " points\n";
    if (per_point) {
      os << "j,B,tau,pair,spectrum,z_rel,elements,concurrence\n";
      for (const auto& p : points)
        os << p.point.j << ',' << p.point.b << ',' << p.point.tau << ',' << to_string(p.point.pair) << ','
           << p.spectrum << ',' << p.z_relative << ',' << p.elements << ',' << p.concurrence << '\n';
    }
    auto line = [&](const char* name, const Worst& w, double limit) {
      const auto& p = points.at(w.index).point;
      os << std::left << std::setw(12) << name << " worst " << std::scientific << std::setprecision(3)
         << w.value << " (limit " << limit << ") at J=" << std::defaultfloat << p.j << " B=" << p.b
         << " tau=" << p.tau << " pair=" << to_string(p.pair) << (w.value <= limit ? "  ok" : "  FAIL")
         << '\n';
    };
    if (!points.empty()) {
      line("spectrum", spectrum, tol.spectrum);
      line("Z (rel)", z_relative, tol.z_relative);
      line("elements", elements, tol.elements);
      line("concurrence", concurrence, tol.concurrence);
    }
    os << (passed() ? "PASS" : "FAIL") << '\n';
  }
};

/// Raised by cross_check when any deviation exceeds its tolerance.
class CrossCheckFailure : public Error {
 public:
  explicit CrossCheckFailure(CrossCheckReport report)
      : Error(ErrorCode::ToleranceExceeded, describe(report)), report_(std::move(report)) {}
  const CrossCheckReport& report() const noexcept { return report_; }

 private:
  static std::string describe(const CrossCheckReport& r) {
    std::ostringstream os;
    r.print(os);
    return os.str();
  }
  CrossCheckReport report_;
};

using ClosedFormProvider = std::function<EigenSystem(const ModelParams&)>;

inline PointDeviation compare_point(const GridPoint& gp, const ClosedFormProvider& closed_form) {
  const ModelParams params{gp.j, gp.b, 3};
  const ThermalParams tp{gp.tau};
  PointDeviation d{gp};

  const EigenSystem sys = closed_form(params);
  const NumericSolution num = numeric_solution(params, tp);

  std::array<double, kRingStates> sorted = sys.energies;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < kRingStates; ++i)
    d.spectrum = std::max(d.spectrum, std::abs(sorted[i] - num.eig.values[i]));

  // Z is compared with each pipeline shifted to its own ground energy; the
  // ground energies themselves are covered by the spectrum check. Comparing
  // unshifted Z would need E0 to better than one ulp once beta |E0| > 1e4.
  const double z_num = num.gibbs.z_shifted;
  const double z_closed = partition_function_closed(params, tp).ground_shifted;
  const double z_spectral = shifted_weights(sys.energies, params.energy_scale(), tp).z_shifted;
  d.z_relative = std::max(std::abs(z_closed - z_num), std::abs(z_spectral - z_num)) / z_num;

  const auto [sa, sb] = sites_of(gp.pair);
  const ComplexMatrix reduced = partial_trace(num.gibbs.rho, 3, sa, sb);
  const XElements closed = reduced_elements(sys, tp, gp.pair);
  d.elements = max_abs_diff(x_matrix(closed), reduced);

  d.numeric_concurrence = concurrence_general(reduced);
  try {
    d.closed_concurrence = concurrence_x(closed);
    d.concurrence = std::abs(d.closed_concurrence - d.numeric_concurrence);
  } catch (const Error& e) {
    // A broken closed form can produce elements that are not a state at all.
    if (e.code() != ErrorCode::InvalidXState) throw;
    d.closed_concurrence = std::numeric_limits<double>::quiet_NaN();
    d.concurrence = std::numeric_limits<double>::infinity();
  }
  return d;
}

inline std::vector<GridPoint> expand(const Grid& grid) {
  std::vector<GridPoint> pts;
  pts.reserve(grid.size());
  for (double j : grid.js)
    for (double b : grid.bs)
      for (double tau : grid.taus)
        for (Pair p : grid.pairs) pts.push_back({j, b, tau, p});
  return pts;
}

/// Evaluates fn(i) for i in [0, n) on up to `threads` workers. Results are
/// written by index so the outcome is independent of scheduling.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += threads) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

inline CrossCheckReport run_cross_check(const Grid& grid, const ClosedFormProvider& closed_form = closed_form_eigensystem,
                                        unsigned threads = 1, Tolerances tol = {}) {
  for (double tau : grid.taus) validate(ThermalParams{tau});
  const std::vector<GridPoint> pts = expand(grid);
  CrossCheckReport report{grid, tol, std::vector<PointDeviation>(pts.size()), {}, {}, {}, {}};
  parallel_for(pts.size(), threads, [&](std::size_t i) { report.points[i] = compare_point(pts[i], closed_form); });

  auto track = [](Worst& w, double v, std::size_t i) {
    if (v > w.value || std::isnan(v)) w = {v, i};
  };
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    const auto& p = report.points[i];
    track(report.spectrum, p.spectrum, i);
    track(report.z_relative, p.z_relative, i);
    track(report.elements, p.elements, i);
    track(report.concurrence, p.concurrence, i);
  }
  return report;
}

/// Like run_cross_check, but raises CrossCheckFailure when any tolerance is exceeded.
inline CrossCheckReport cross_check(const Grid& grid, const ClosedFormProvider& closed_form = closed_form_eigensystem,
                                    unsigned threads = 1) {
  CrossCheckReport report = run_cross_check(grid, closed_form, threads);
  if (!report.passed()) throw CrossCheckFailure(std::move(report));
  return report;
}

// --------------------------------------------------------------------------
// Entanglement threshold
// --------------------------------------------------------------------------

struct TauInterval {
  double lo;
  double hi;
};

inline constexpr std::size_t kThresholdScanSamples = 400;
inline constexpr double kThresholdTol = 1e-7;

/// Largest tau in the interval where the pair concurrence vanishes, found by
/// bisection on the sign of |y| - sqrt(uv) inside the last bracket where it
/// changes from positive to non-positive.
inline double threshold_scan(const ModelParams& params, Pair pair, TauInterval range,
                             std::size_t samples = kThresholdScanSamples) {
  validate(params);
  if (!(range.lo > 0.0) || !(range.hi > range.lo))
    throw Error(ErrorCode::InvalidArgument, "tau range must satisfy 0 < lo < hi");
  auto margin = [&](double tau) { return entanglement_margin(params, ThermalParams{tau}, pair); };

  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "threshold scan needs at least 2 samples");
  const std::size_t n = samples;
  std::vector<double> taus(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    taus[i] = range.lo + (range.hi - range.lo) * static_cast<double>(i) / static_cast<double>(n);

  std::optional<std::size_t> bracket;
  double prev = margin(taus[n]);
  for (std::size_t i = n; i-- > 0;) {
    const double cur = margin(taus[i]);
    if (cur > 0.0 && prev <= 0.0) {
      bracket = i;
      break;
    }
    prev = cur;
  }
  if (!bracket) throw Error(ErrorCode::NoThresholdFound, "concurrence does not vanish inside the range");

  double lo = taus[*bracket];
  double hi = taus[*bracket + 1];
  while (hi - lo > kThresholdTol) {
    const double mid = 0.5 * (lo + hi);
    (margin(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace xxring
