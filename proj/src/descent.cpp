#include "pcgrad/descent.hpp"

#include <cmath>

#include "pcgrad/errors.hpp"

namespace pcgrad {

std::string_view to_string(Scheme s) {
  return s == Scheme::Multiplicative ? "multiplicative" : "additive";
}

std::string_view to_string(GradientKind g) { return g == GradientKind::Analytic ? "analytic" : "difference"; }

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::Converged: return "converged";
    case StopReason::Stalled: return "stalled";
    case StopReason::MaxIter: return "max_iter";
    case StopReason::PositivityFailure: return "positivity_failure";
    case StopReason::IndicatorUndefined: return "indicator_undefined";
  }
  return "unknown";
}

void DescentConfig::validate(std::size_t order) const {
  auto bad = [](const std::string& what) { throw PcError(ErrorKind::InvalidConfig, what); };
  if (!(h > 0.0) || !std::isfinite(h)) bad("step h must be positive");
  if (!(eps > 0.0)) bad("eps must be positive");
  if (max_iter < 1) bad("max_iter must be at least 1");
  if (stall_window < 1) bad("stall_window must be at least 1");
  if (gradient == GradientKind::Difference && (!(l > 0.0) || !std::isfinite(l))) {
    bad("difference increment l must be positive");
  }
  if (gradient == GradientKind::Analytic && order > 3 && (p.is_infinite() || p.value() == 1.0)) {
    throw PcError(ErrorKind::NonSmoothExponent,
                  "analytic gradient needs a finite p other than 1 for order > 3, got p = " + p.to_string());
  }
}

MultiplicativePCMatrix DescentResult::best_matrix() const {
  if (scheme == Scheme::Multiplicative) return MultiplicativePCMatrix::from_upper(order, best_upper);
  return to_multiplicative(AdditivePCMatrix::from_upper(order, best_upper));
}

AdditivePCMatrix DescentResult::best_additive() const {
  if (scheme == Scheme::Additive) return AdditivePCMatrix::from_upper(order, best_upper);
  return to_additive(MultiplicativePCMatrix::from_upper(order, best_upper));
}

MultiplicativePCMatrix step_multiplicative(const MultiplicativePCMatrix& m, const DirectionVector& v, double h,
                                           std::vector<ClampEvent>* clamps, std::size_t iter) {
  const auto up = m.upper();
  if (v.components.size() != up.size()) {
    throw PcError(ErrorKind::InvalidConfig, "direction does not match the matrix order");
  }
  std::vector<double> next(up.size());
  for (std::size_t s = 0; s < up.size(); ++s) {
    double step = h;
    int halvings = 0;
    double candidate = up[s] + step * v.components[s];
    while (!(candidate > 0.0)) {
      if (halvings == kMaxStepHalvings) {
        throw PcError(ErrorKind::PositivityFailure,
                      "entry " + entry_label(s) + " stays nonpositive after " + std::to_string(kMaxStepHalvings) +
                          " step halvings");
      }
      step *= 0.5;
      ++halvings;
      candidate = up[s] + step * v.components[s];
    }
    if (halvings > 0 && clamps != nullptr) clamps->push_back({iter, s, halvings});
    next[s] = candidate;
  }
  return MultiplicativePCMatrix::from_upper(m.order(), std::move(next));
}

AdditivePCMatrix step_additive(const AdditivePCMatrix& b, const DirectionVector& v, double h) {
  const auto up = b.upper();
  if (v.components.size() != up.size()) {
    throw PcError(ErrorKind::InvalidConfig, "direction does not match the matrix order");
  }
  std::vector<double> next(up.size());
  for (std::size_t s = 0; s < up.size(); ++s) next[s] = up[s] + h * v.components[s];
  return AdditivePCMatrix::from_upper(b.order(), std::move(next));
}

namespace {

template <typename Matrix>
DirectionVector direction_at(const Matrix& m, const DescentConfig& cfg) {
  if (cfg.gradient == GradientKind::Analytic) return instant_pv_np(m, cfg.p);
  return difference_priority_vector(m, cfg.p, cfg.l);
}

template <typename Matrix, typename StepFn>
DescentResult descend(Matrix current, const DescentConfig& cfg, StepFn step) {
  DescentResult result;
  result.scheme = cfg.scheme;
  result.order = current.order();
  result.best_upper.assign(current.upper().begin(), current.upper().end());
  auto& trace = result.trace;

  auto fail = [&](StopReason reason, const PcError& e) {
    result.stop_reason = reason;
    result.stop_detail = e.what();
  };
  auto reason_for = [](const PcError& e) {
    return e.kind() == ErrorKind::PositivityFailure ? StopReason::PositivityFailure
                                                    : StopReason::IndicatorUndefined;
  };

  double value = 0.0;
  try {
    value = kii(current, cfg.p);
  } catch (const PcError& e) {
    fail(StopReason::IndicatorUndefined, e);
    return result;
  }
  trace.records.push_back({0, value, result.best_upper});
  result.best_indicator = value;
  if (value < cfg.eps) {
    result.stop_reason = StopReason::Converged;
    return result;
  }

  std::size_t since_progress = 0;
  for (std::size_t iter = 0;; ++iter) {
    if (iter == cfg.max_iter) {
      result.stop_reason = StopReason::MaxIter;
      return result;
    }
    try {
      const DirectionVector dir = direction_at(current, cfg);
      trace.records.back().direction_norm = dir.norm();
      current = step(current, dir, iter, trace.clamps);
      value = kii(current, cfg.p);
    } catch (const PcError& e) {
      fail(reason_for(e), e);
      return result;
    }
    trace.records.push_back({iter + 1, value, {current.upper().begin(), current.upper().end()}});

    if (value < result.best_indicator) {
      since_progress = result.best_indicator - value >= kStallImprovement ? 0 : since_progress + 1;
      result.best_indicator = value;
      result.best_iter = iter + 1;
      result.best_upper = trace.records.back().upper;
    } else {
      ++since_progress;
    }
    if (value < cfg.eps) {
      result.stop_reason = StopReason::Converged;
      return result;
    }
    if (since_progress >= cfg.stall_window) {
      result.stop_reason = StopReason::Stalled;
      return result;
    }
  }
}

}  // namespace

DescentResult run(const MultiplicativePCMatrix& start, const DescentConfig& cfg) {
  cfg.validate(start.order());
  if (cfg.scheme == Scheme::Additive) return run(to_additive(start), cfg);
  return descend(start, cfg, [&](const MultiplicativePCMatrix& m, const DirectionVector& v, std::size_t iter,
                                 std::vector<ClampEvent>& clamps) {
    return step_multiplicative(m, v, cfg.h, &clamps, iter);
  });
}

DescentResult run(const AdditivePCMatrix& start, const DescentConfig& cfg) {
  cfg.validate(start.order());
  if (cfg.scheme == Scheme::Multiplicative) return run(to_multiplicative(start), cfg);
  return descend(start, cfg, [&](const AdditivePCMatrix& b, const DirectionVector& v, std::size_t,
                                 std::vector<ClampEvent>&) {
    return step_additive(b, v, cfg.h);
  });
}

}  // namespace pcgrad
