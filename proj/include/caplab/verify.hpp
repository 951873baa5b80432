#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "caplab/flow.hpp"
#include "caplab/potential.hpp"

namespace caplab::verify {

struct Sample {
    std::string metric;
    double p = 0;
    double r0 = 0;
};

struct InequalityReport {
    std::string check;
    std::string paper_ref;  // literature statement the check exercises
    std::string status;     // "pass" | "fail" | "skipped"
    double margin = 0;      // signed, natural units; pass <=> margin >= -tol
    double tolerance = 0;
    std::vector<Sample> samples;
    nlohmann::json diagnostics = nlohmann::json::object();

    bool failed() const { return status == "fail"; }
    nlohmann::json to_json() const;
};

enum class Monotone { PHawking, PHawkingModified, Ordering };
enum class Derivative { Geroch, Cclt };
enum class Inequality {
    PenroseP,
    PenroseLimit,
    BrayMiao,
    CapacityPenroseGamma,
    SharpIsocap,
    IsoUpper,
    HawkingVsPHawking,
};
enum class Asymptotic {
    PotentialLog,
    Gradient,
    CrossCapacity,
    Area,
    GradientDecay,
    TwoSided,
    EnergyDagger,
    FanShiTam,
    Comparison,
};

/// Scans a mass series built from the solution for decreases (or ordering
/// violations); margin is the most negative relative increment. Curvature
/// checks are skipped when the metric fails validate() (the monotonicity is
/// a theorem only under R >= 0).
InequalityReport check_monotonicity(const PotentialSolution& solution,
                                    Monotone which);

/// Central finite differences of the evolving mass against the closed-form
/// derivative identity; margin = tol - max relative mismatch.
InequalityReport check_derivative(const PotentialSolution& solution,
                                  Derivative which);

/// Global inequalities of the capacity/mass family. kappa_s is the Sobolev
/// constant in the convention |f|_{L^6}^2 <= kappa_s |grad f|_{L^2}^2; it is
/// only consulted by HawkingVsPHawking, which is skipped on curved metrics
/// when absent.
InequalityReport check_inequality(const MetricProfile& metric, double p,
                                  Inequality which,
                                  std::optional<double> kappa_s = {});

/// Large-sphere / large-t expansions and limits.
InequalityReport check_asymptotics(const PotentialSolution& solution,
                                   Asymptotic which);

/// Pairwise agreement of the three capacity computations (quadrature,
/// variational ladder, hypergeometric closed form where available).
InequalityReport check_oracle_consistency(const MetricProfile& metric, double p,
                                          double r0);

/// The default verification suite:
/// {flat, Schwarzschild(1) both charts, one superharmonic perturbation}
/// x p in {1.2, 1.5, 2, 2.5}, all applicable checks.
std::vector<InequalityReport> default_suite();

nlohmann::json reports_to_json(const std::vector<InequalityReport>& reports);

}  // namespace caplab::verify
