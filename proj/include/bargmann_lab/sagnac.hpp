#pragma once

// Closed-form Sagnac comparators for two counter-propagating signals on a ring of
// radius R rotating at angular velocity Omega.
//
//   dt        = 4 pi R^2 Omega / (c sqrt(c^2 - Omega^2 R^2))   arrival-time difference
//   dphi_rel  = omega dt                                       relativistic phase difference
//   omega     = m c^2 / (hbar sqrt(1 - v^2/c^2))               Einstein-Planck frequency
//   dphi_N    = 4 pi R^2 m Omega / hbar                        non-relativistic limit
//   dphi_NQM  = m (v + Omega R)^2 t/2hbar - m (v - Omega R)^2 t/2hbar,  t = pi/Omega by default
//
// dphi_NQM simplifies to 2 m v Omega R t / hbar and matches dphi_N only for v = 2 Omega R.

#include "bargmann_lab/fit.hpp"
#include "bargmann_lab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace bargmann_lab {

struct RingConfig
{
  double radius    = 1.0;
  double omega     = 0.0;  ///< angular velocity of the disk
  double mass      = 1.0;
  double v_signal  = 0.0;  ///< signal speed relative to the ring
  PhysicalContext ctx{};

  void validate() const
  {
    ctx.validate();
    if (!(radius > 0.0)) throw std::invalid_argument("ring: R must be > 0");
    if (!(omega >= 0.0)) throw std::invalid_argument("ring: Omega must be >= 0");
    if (!(omega * radius < ctx.c)) throw std::invalid_argument("ring: Omega*R must be < c");
    if (!(mass > 0.0)) throw std::invalid_argument("ring: mass must be > 0");
    if (!(v_signal >= 0.0)) throw std::invalid_argument("ring: v_signal must be >= 0");
  }
};

inline double sagnac_dt(const RingConfig& cfg)
{
  cfg.validate();
  const double c  = cfg.ctx.c;
  const double wr = cfg.omega * cfg.radius;
  return 4.0 * pi * cfg.radius * cfg.radius * cfg.omega / (c * std::sqrt(c * c - wr * wr));
}

inline double sagnac_phase_rel(const RingConfig& cfg, double signal_frequency)
{
  if (!(signal_frequency > 0.0)) throw std::invalid_argument("sagnac: signal frequency must be > 0");
  return signal_frequency * sagnac_dt(cfg);
}

inline double einstein_planck_omega(double m, double v_signal, const PhysicalContext& ctx = {})
{
  if (!(m > 0.0)) throw std::invalid_argument("einstein_planck: mass must be > 0");
  const double beta = v_signal / ctx.c;
  if (!(std::abs(beta) < 1.0)) throw std::invalid_argument("einstein_planck: |v| must be < c");
  return m * ctx.c * ctx.c / (ctx.hbar * std::sqrt(1.0 - beta * beta));
}

/// Signed form allows Omega < 0 (counter-rotation); no ring validation.
inline double sagnac_phase_nonrel(double radius, double omega, double m, const PhysicalContext& ctx = {})
{
  return 4.0 * pi * radius * radius * m * omega / ctx.hbar;
}

inline double sagnac_phase_nonrel(const RingConfig& cfg)
{
  cfg.validate();
  return sagnac_phase_nonrel(cfg.radius, cfg.omega, cfg.mass, cfg.ctx);
}

/// Unsimplified difference of the two boost phases; signed Omega allowed.
inline double sagnac_phase_projective(double m, double v, double omega, double radius, double t_flight,
                                      const PhysicalContext& ctx = {})
{
  const double up   = v + omega * radius;
  const double down = v - omega * radius;
  return m * up * up * t_flight / (2.0 * ctx.hbar) - m * down * down * t_flight / (2.0 * ctx.hbar);
}

inline double sagnac_phase_projective_simplified(double m, double v, double omega, double radius, double t_flight,
                                                 const PhysicalContext& ctx = {})
{
  return 2.0 * m * v * omega * radius * t_flight / ctx.hbar;
}

inline double default_flight_time(const RingConfig& cfg)
{
  if (!(cfg.omega > 0.0)) throw std::invalid_argument("sagnac: t = pi/Omega undefined for Omega = 0");
  return pi / cfg.omega;
}

inline double sagnac_phase_projective(const RingConfig& cfg, std::optional<double> t_flight = std::nullopt)
{
  cfg.validate();
  const double t = t_flight ? *t_flight : default_flight_time(cfg);
  return sagnac_phase_projective(cfg.mass, cfg.v_signal, cfg.omega, cfg.radius, t, cfg.ctx);
}

struct SagnacSweepRow
{
  double c;
  double dphi_rel;
  double dphi_n;
  double abs_diff;
};

struct SagnacReport
{
  double dt        = 0.0;
  double omega_ep  = 0.0;  ///< Einstein-Planck frequency at v_signal
  double dphi_rel  = 0.0;
  double dphi_n    = 0.0;
  double dphi_nqm  = 0.0;
  double t_flight  = 0.0;
  double rel_minus_n   = 0.0;
  double nqm_minus_n   = 0.0;
  double rel_minus_nqm = 0.0;
  bool nqm_equals_n    = false;  ///< |dphi_NQM - dphi_N| <= tolerance * max(1, |dphi_N|)
  std::vector<SagnacSweepRow> sweep;
  std::optional<LogLogFit> limit_fit;  ///< |dphi_rel - dphi_N| vs c
};

/// Default c values for the non-relativistic limit sweep: five doublings starting well above
/// both Omega R and v_signal.
inline std::vector<double> default_sagnac_c_sweep(const RingConfig& cfg)
{
  const double floor = 8.0 * std::max({cfg.omega * cfg.radius, cfg.v_signal, 1e-300});
  const double c0    = std::max(cfg.ctx.c, floor);
  std::vector<double> out;
  for (int i = 0; i < 5; ++i) out.push_back(c0 * std::pow(2.0, i));
  return out;
}

inline SagnacReport sagnac_report(const RingConfig& cfg, std::optional<double> t_flight = std::nullopt,
                                  std::vector<double> c_sweep = {}, double equality_tol = 1e-12)
{
  cfg.validate();
  SagnacReport r;
  r.dt       = sagnac_dt(cfg);
  r.omega_ep = einstein_planck_omega(cfg.mass, cfg.v_signal, cfg.ctx);
  r.dphi_rel = sagnac_phase_rel(cfg, r.omega_ep);
  r.dphi_n   = sagnac_phase_nonrel(cfg);

  if (t_flight || cfg.omega > 0.0) {
    r.t_flight = t_flight ? *t_flight : default_flight_time(cfg);
    r.dphi_nqm = sagnac_phase_projective(cfg, r.t_flight);
  }
  r.rel_minus_n   = r.dphi_rel - r.dphi_n;
  r.nqm_minus_n   = r.dphi_nqm - r.dphi_n;
  r.rel_minus_nqm = r.dphi_rel - r.dphi_nqm;
  r.nqm_equals_n  = std::abs(r.nqm_minus_n) <= equality_tol * std::max(1.0, std::abs(r.dphi_n));

  if (cfg.omega > 0.0) {
    if (c_sweep.empty()) c_sweep = default_sagnac_c_sweep(cfg);
    std::vector<double> cs, diffs;
    for (double c : c_sweep) {
      RingConfig at = cfg;
      at.ctx.c      = c;
      at.validate();
      const double rel = sagnac_phase_rel(at, einstein_planck_omega(at.mass, at.v_signal, at.ctx));
      const double nr  = sagnac_phase_nonrel(at);
      r.sweep.push_back({c, rel, nr, std::abs(rel - nr)});
      cs.push_back(c);
      diffs.push_back(std::abs(rel - nr));
    }
    if (cs.size() >= 2) r.limit_fit = fit_loglog(cs, diffs);
  }
  return r;
}

}  // namespace bargmann_lab
