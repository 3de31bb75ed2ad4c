#include "sbr/schedules.hpp"

#include <cmath>
#include <stdexcept>

namespace sbr {

void SmoothnessProfile::validate() const {
  if (!(mu_s > 0) || !(L_s >= mu_s))
    throw std::invalid_argument("SmoothnessProfile: requires 0 < mu_s <= L_s");
  if (!(alpha_check > 0 && alpha_check < 1))
    throw std::invalid_argument("SmoothnessProfile: alpha_check must be in (0, 1)");
}

long BatchSchedule::size_at(int t, const SmoothnessProfile& profile, const Budget& budget) const {
  if (t < 1) throw std::invalid_argument("BatchSchedule: update index < 1");
  switch (kind) {
    case ScheduleKind::Constant:
      if (base < 1) throw std::invalid_argument("BatchSchedule: base < 1");
      return base;
    case ScheduleKind::Geometric: {
      if (base < 1) throw std::invalid_argument("BatchSchedule: base < 1");
      if (ratio < 1.0) throw std::invalid_argument("BatchSchedule: geometric ratio < 1");
      return static_cast<long>(std::ceil(base * std::pow(ratio, t - 1)));
    }
    case ScheduleKind::TheoryExploration:
    case ScheduleKind::TheoryExploitation:
    case ScheduleKind::TheoryHybrid:
      return theory_batch_size(profile, budget, kind, horizon_T, stage_k, target_delta,
                               confidence, c_B, sigma);
  }
  throw std::logic_error("BatchSchedule: unknown kind");
}

long theory_batch_size(const SmoothnessProfile& profile, const Budget& budget, ScheduleKind kind,
                       int T, int k, double Delta, double delta, double c_B, double sigma) {
  profile.validate();
  if (T < 1) throw std::invalid_argument("theory_batch_size: T < 1");
  if (!(Delta > 0)) throw std::invalid_argument("theory_batch_size: Delta must be positive");
  if (!(delta > 0 && delta < 1))
    throw std::invalid_argument("theory_batch_size: delta must be in (0, 1)");
  if (!std::isfinite(profile.r_inf))
    throw std::invalid_argument(
        "theory_batch_size: r_inf is infinite (unbounded feature law); supply a finite "
        "effective bound via the profile and tune c_B");

  const double kappa = profile.kappa();
  const double L = profile.L_s, mu = profile.mu_s;
  const double R2 = profile.r_inf * profile.r_inf;
  const double R4 = R2 * R2;
  const double a = profile.alpha_check;
  const double s = static_cast<double>(budget.s);
  const double decay = std::pow(1.0 - a, T);
  const double log_factor = std::log(kappa * budget.d * T / delta);

  double noise_branch = sigma * sigma / Delta * (R2 / L) * (T * s / decay);
  double variance_branch;
  switch (kind) {
    case ScheduleKind::TheoryExploration:
      variance_branch = kappa * kappa * (R4 / (L * L)) * s * s;
      break;
    case ScheduleKind::TheoryExploitation:
      variance_branch = (R4 / (mu * mu)) * T * s * s;
      break;
    case ScheduleKind::TheoryHybrid:
      variance_branch = kappa * kappa * (R4 / (L * L)) * T * s * s;
      noise_branch = sigma * sigma / (a * std::pow(1.0 - a, k) * Delta) * (R2 / L) * (T * s / decay);
      break;
    default:
      throw std::invalid_argument("theory_batch_size: not a theory schedule kind");
  }
  const double value = c_B * log_factor * std::max(variance_branch, noise_branch);
  return std::max(1L, static_cast<long>(std::ceil(value)));
}

int hybrid_inner_length(const SmoothnessProfile& profile, const Budget& budget, double c_T) {
  profile.validate();
  if (!(c_T > 0)) throw std::invalid_argument("hybrid_inner_length: c_T must be positive");
  const double kappa = profile.kappa();
  const double arg = std::max(
      static_cast<double>(budget.d) / (c_T * kappa * kappa * budget.block_width()), 1.0);
  const double t = std::ceil(std::log(arg) / std::log(1.0 / (1.0 - profile.alpha_check)));
  return std::max(1, static_cast<int>(t));
}

bool ParameterReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

ParameterReport validate_parameters(double eta, int s, const Budget& budget,
                                    const SmoothnessProfile& profile, double B_t,
                                    double delta_t) {
  profile.validate();
  const double L = profile.L_s, mu = profile.mu_s;
  ParameterReport report;

  {
    ConstraintCheck c;
    c.name = "step_size";
    c.lhs = eta;
    c.rhs = 1.0 / (2.0 * L);
    c.slack = c.rhs - c.lhs;
    c.passed = c.slack > 0;  // strict: eta < 1/(2L)
    report.checks.push_back(c);
  }
  {
    ConstraintCheck c;
    c.name = "sparsity_level";
    const double ratio_bound = 2.0 * (0.25 + eta * L / 2.0) / (0.25 - eta * L / 2.0) - 1.0;
    const double curvature_bound = 64.0 / (eta * eta * mu * mu) + 1.0;
    c.lhs = static_cast<double>(s);
    c.rhs = std::max(ratio_bound, curvature_bound) * budget.s_star;
    c.slack = c.lhs - c.rhs;
    c.passed = c.slack >= 0;
    report.checks.push_back(c);
  }
  {
    ConstraintCheck c;
    c.name = "batch_size";
    const double s_ = static_cast<double>(s);
    const double ss = static_cast<double>(budget.s_star);
    const double R4 = std::pow(profile.r_inf, 4);
    c.lhs = B_t;
    c.rhs = (4.0 * s_ / ss) * (s_ + ss) * (s_ + ss) * (2.5 + eta * L) * R4 * eta *
            std::log(2.0 * budget.d / delta_t) / (1.0 / (4.0 * eta) + L / 2.0);
    c.slack = c.lhs - c.rhs;
    c.passed = c.slack >= 0;
    report.checks.push_back(c);
  }
  return report;
}

ContractionDiagnostics contraction_diagnostics(double eta, int s, const Budget& budget,
                                               const SmoothnessProfile& profile, double sigma,
                                               double delta_t) {
  profile.validate();
  const double L = profile.L_s, mu = profile.mu_s;
  const double s_ = static_cast<double>(s);
  const double ss = static_cast<double>(budget.s_star);
  ContractionDiagnostics out;
  out.alpha = 0.5 * (1.0 - 2.0 * ss / (s_ + ss)) * mu * (0.25 + eta * L / 2.0) * eta;
  out.c_t = 4.0 * sigma * sigma * s_ * (2.5 + eta * L) * eta * std::log(budget.d / delta_t);
  return out;
}

}  // namespace sbr
