#pragma once

// Constant-step consistencization.
//
//   multiplicative:  a_ij <- a_ij + h * w_ij
//   additive:        b_ij <- b_ij + h * w_ij      (a_ij <- a_ij * exp(w_ij)^h)
//
// where w is the selected priority direction at the current iterate. Every
// iterate is recorded; the result carries the iterate with the lowest
// indicator value.

#include <cstddef>
#include <limits>
#include <string_view>
#include <vector>

#include "pcgrad/gradients.hpp"
#include "pcgrad/indicators.hpp"
#include "pcgrad/pc_matrix.hpp"

namespace pcgrad {

enum class Scheme { Multiplicative, Additive };
enum class GradientKind { Analytic, Difference };
enum class StopReason { Converged, Stalled, MaxIter, PositivityFailure, IndicatorUndefined };

std::string_view to_string(Scheme s);
std::string_view to_string(GradientKind g);
std::string_view to_string(StopReason r);

inline constexpr int kMaxStepHalvings = 60;
// Minimum drop of the running minimum that counts as progress.
inline constexpr double kStallImprovement = 1e-12;

struct DescentConfig {
  Scheme scheme = Scheme::Multiplicative;
  GradientKind gradient = GradientKind::Difference;
  PExponent p = PExponent::finite(1.0);
  double h = 0.01;
  double l = 0.001;
  double eps = 1e-4;
  std::size_t max_iter = 100000;
  std::size_t stall_window = 50;

  // Throws InvalidConfig / NonSmoothExponent. The order matters because
  // 3x3 analytic gradients exist for every p.
  void validate(std::size_t order) const;
};

struct IterationRecord {
  std::size_t iter = 0;
  double indicator = 0.0;
  std::vector<double> upper;  // in the scheme's coordinates (a_ij or b_ij)
  // Norm of the direction taken from this iterate; NaN for the last record.
  double direction_norm = std::numeric_limits<double>::quiet_NaN();
};

struct ClampEvent {
  std::size_t iter = 0;  // iterate the step started from
  std::size_t slot = 0;
  int halvings = 0;
};

struct IterationTrace {
  std::vector<IterationRecord> records;
  std::vector<ClampEvent> clamps;
};

struct DescentResult {
  Scheme scheme = Scheme::Multiplicative;
  std::size_t order = 0;
  std::size_t best_iter = 0;
  double best_indicator = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> best_upper;  // scheme coordinates
  StopReason stop_reason = StopReason::MaxIter;
  std::string stop_detail;
  IterationTrace trace;

  MultiplicativePCMatrix best_matrix() const;
  AdditivePCMatrix best_additive() const;
};

// Halves the step of any entry that would become nonpositive. Clamp events
// are appended to `clamps` when given. Throws PositivityFailure.
MultiplicativePCMatrix step_multiplicative(const MultiplicativePCMatrix& m, const DirectionVector& v, double h,
                                           std::vector<ClampEvent>* clamps = nullptr, std::size_t iter = 0);

AdditivePCMatrix step_additive(const AdditivePCMatrix& b, const DirectionVector& v, double h);

// Never throws for numeric reasons; failures end up in stop_reason.
// Throws InvalidConfig for an invalid configuration.
DescentResult run(const MultiplicativePCMatrix& start, const DescentConfig& cfg);

// Additive-scheme entry point for a start given in log form.
DescentResult run(const AdditivePCMatrix& start, const DescentConfig& cfg);

}  // namespace pcgrad
