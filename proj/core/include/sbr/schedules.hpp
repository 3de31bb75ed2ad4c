#pragma once

#include <string>
#include <vector>

#include "sbr/data_env.hpp"

namespace sbr {

// Restricted smoothness/strong-convexity constants of the objective over
// sparse points, with the per-update contraction rate used by the theory
// schedules. For identity-covariance synthetic instances L = mu = 1 exactly.
struct SmoothnessProfile {
  double L_s = 1.0;
  double mu_s = 1.0;
  double r_inf = 1.0;
  double alpha_check = 1.0 / 32.0;  // default 1/(32 kappa)

  double kappa() const { return L_s / mu_s; }

  static SmoothnessProfile identity_covariance() {
    SmoothnessProfile p;
    p.L_s = 1.0;
    p.mu_s = 1.0;
    p.alpha_check = 1.0 / 32.0;
    return p;
  }

  void validate() const;
};

enum class ScheduleKind {
  Constant,
  Geometric,
  TheoryExploration,
  TheoryExploitation,
  TheoryHybrid,
};

// Mini-batch size per update. Theory kinds evaluate the closed-form bound
// once (the bound does not vary in t within a stage); geometric grows as
// ceil(B0 * ratio^(t-1)).
struct BatchSchedule {
  ScheduleKind kind = ScheduleKind::Constant;
  int base = 1;            // B0
  double ratio = 1.1;      // geometric growth
  double c_B = 1.0;        // multiplier on the hidden theory constant
  int horizon_T = 1;       // T of the stage
  int stage_k = 1;         // hybrid outer round
  double target_delta = 1.0;
  double confidence = 0.1;
  double sigma = 0.0;

  long size_at(int t, const SmoothnessProfile& profile, const Budget& budget) const;
};

// Closed-form mini-batch bounds. Both branches of the max are evaluated as
// written, scaled by c_B and by the shared log factor log(kappa * d * T /
// delta), then rounded up. Infinite r_inf (Gaussian features) requires an
// explicit c_B override with an effective bound folded in, and is rejected.
long theory_batch_size(const SmoothnessProfile& profile, const Budget& budget, ScheduleKind kind,
                       int T, int k, double Delta, double delta, double c_B, double sigma);

// Exploitation inner-loop length for the alternating scheme, with the hidden
// Theta(kappa^2) instantiated as c_T * kappa^2. Always >= 1.
int hybrid_inner_length(const SmoothnessProfile& profile, const Budget& budget, double c_T);

struct ConstraintCheck {
  std::string name;
  bool passed = false;
  double slack = 0.0;  // constraint satisfied iff slack >= 0
  double lhs = 0.0;
  double rhs = 0.0;
};

struct ParameterReport {
  std::vector<ConstraintCheck> checks;
  bool all_passed() const;
};

// Checks the three analysis-side constraints on (eta, s, B_t) literally:
//   eta < 1/(2 L),
//   s  >= max{ 2((1/4 + eta L/2)/(1/4 - eta L/2)) - 1, 64/(eta^2 mu^2) + 1 } s*,
//   B_t >= (4s/s*)(s+s*)^2 (5/2 + eta L) R^4 eta log(2d/delta_t) / (1/(4 eta) + L/2).
ParameterReport validate_parameters(double eta, int s, const Budget& budget,
                                    const SmoothnessProfile& profile, double B_t, double delta_t);

struct ContractionDiagnostics {
  double alpha = 0.0;  // per-update contraction of the expected excess risk
  double c_t = 0.0;    // additive noise term (before division by B_t)
};

ContractionDiagnostics contraction_diagnostics(double eta, int s, const Budget& budget,
                                               const SmoothnessProfile& profile, double sigma,
                                               double delta_t);

}  // namespace sbr
