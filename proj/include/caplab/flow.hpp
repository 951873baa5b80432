#pragma once

#include <span>
#include <vector>

#include "caplab/potential.hpp"

namespace caplab::flow {

/// All surface data on the level set {w_p = t}. On radial metrics the level
/// sets are round umbilic spheres, so every surface integral is the constant
/// integrand times the area; tangential-gradient and trace-free second
/// fundamental form terms vanish identically and are not stored.
struct LevelSetRecord {
    double t = 0;
    double r = 0;               // chart radius of the level set
    double area = 0;
    double volume = 0;          // enclosed volume from the volume origin
    double cap_t = 0;           // e^t cap_p(base surface)
    double mean_curvature = 0;
    double grad_w = 0;          // |grad w_p| on the level set
    double integral_scalar_half = 0;  // int R/2 dsigma
    double integral_deficit = 0;      // int (|grad w|/(3-p) - H/2)^2 dsigma
    double m_hawking = 0;
    double m_p_hawking = 0;
    double m_p_hawking_mod = 0;
    double m_iso_p = 0;
    double m_iso = 0;
    double rhs_geroch = 0;
};

struct LimitEstimate {
    double value = 0;
    double residual = 0;  // magnitude of the last extrapolation correction
};

struct MassSeries {
    double p = 0;
    std::vector<LevelSetRecord> records;
    // t -> infinity limits, Richardson-extrapolated in e^{-t/(3-p)}
    LimitEstimate hawking, p_hawking, p_hawking_mod, iso_p, iso;
};

/// (sqrt(area)/(16 pi^{3/2}))(4 pi - willmore/4), willmore = int H^2 dsigma.
double hawking_mass(double area, double willmore);

/// (cap_t^{1/(3-p)}/8pi)[4pi + int|grad w|^2/(3-p)^2 - int (|grad w|/(3-p)) H].
double p_hawking_mass(double p, double cap_t, double integral_grad2,
                      double integral_grad_h);

/// (cap_t^{1/(3-p)}/(4pi(3-p)))(4pi - int |grad w|^2/(3-p)^2 dsigma).
double p_hawking_modified(double p, double cap_t, double integral_grad2);

/// (1/(2 p pi cap^{2/(3-p)}))(volume - (4pi/3) cap^{3/(3-p)}).
double iso_p_quasilocal(double volume, double cap, double p);

/// (2/area)(volume - area^{3/2}/(6 sqrt(pi))).
double iso_quasilocal(double volume, double area);

/// (2 cap^{(1-3a)/(3-p)}/(3 p a))((3 volume/4pi)^a - cap^{3a/(3-p)}); a = 1
/// reduces to iso_p_quasilocal.
double alpha_iso_p(double volume, double cap, double p, double alpha);
double alpha_iso(double volume, double area, double alpha);

/// Right-hand side of the monotonicity formula on a radial record:
/// (cap_t^{1/(3-p)}/((3-p) 8pi))[int R/2 + ((5-p)/(p-1)) int deficit^2].
double geroch_rhs(const LevelSetRecord& rec, double p);

/// Single record at level t; volume is integrated from the metric's volume
/// origin each call (mass_series amortizes this incrementally instead).
LevelSetRecord level_record(const PotentialSolution& solution, double t);

/// Records over a strictly increasing t-grid plus limit estimates.
MassSeries mass_series(const PotentialSolution& solution,
                       std::span<const double> t_grid);

std::vector<double> uniform_t_grid(double t_lo, double t_hi, int n);

}  // namespace caplab::flow
