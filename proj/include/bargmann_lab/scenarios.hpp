#pragma once

// Scenario dispatch: turns a validated ScenarioConfig into a PhaseReport.

#include "bargmann_lab/config.hpp"
#include "bargmann_lab/evolution.hpp"
#include "bargmann_lab/fit.hpp"
#include "bargmann_lab/frame_ops.hpp"
#include "bargmann_lab/grid.hpp"
#include "bargmann_lab/kinematic_groups.hpp"
#include "bargmann_lab/report.hpp"
#include "bargmann_lab/sagnac.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bargmann_lab {

class ScenarioError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline double tolerance(const ScenarioConfig& cfg, const std::string& name)
{
  if (auto it = cfg.tolerances.find(name); it != cfg.tolerances.end()) return it->second;
  return scenario_info(cfg.scenario).default_tolerances.at(name);
}

inline Grid scenario_grid(const ScenarioConfig& cfg, std::size_t n, double length)
{
  return cfg.grid ? Grid(cfg.grid->n, cfg.grid->length) : Grid(n, length);
}

inline std::vector<double> sweep_values(const ScenarioConfig& cfg, const std::string& parameter,
                                        std::vector<double> fallback)
{
  if (cfg.sweep && cfg.sweep->parameter == parameter) return cfg.sweep->resolved();
  return fallback;
}

/// Direction of v, or x when v vanishes.
inline Vec3 direction(const Vec3& v) { return v.isZero(0.0) ? Vec3::UnitX() : Vec3(v.normalized()); }

inline int spatial_dim_for(const Vec3& v, const Vec3& a)
{
  return v.tail<2>().isZero(0.0) && a.tail<2>().isZero(0.0) ? 1 : 3;
}

inline void add_band_check(PhaseReport& r, const std::string& name, const std::optional<LogLogFit>& fit, double target,
                           double band)
{
  if (fit) r.add(Check::within(name, fit->slope, target, band));
}

inline MassChannelState packet_state(const ScenarioConfig& cfg, const Grid& grid, double center, double width,
                                     double k0)
{
  if (cfg.packet) {
    if (cfg.packet->center) center = *cfg.packet->center;
    if (cfg.packet->width) width = *cfg.packet->width;
    k0 = cfg.packet->k0;
  }
  const ComplexField psi = gaussian_packet(grid, center, width, k0);
  std::vector<MassChannel> channels;
  for (double m : cfg.particle->masses) channels.push_back({m, psi});
  return MassChannelState(std::move(channels), cfg.context());
}

// ---------------------------------------------------------------------------

struct LoopPoint
{
  double analytic  = 0.0;  ///< first channel, unreduced
  double extracted = 0.0;
  double phase_error = 0.0;  ///< max over channels
  double shape_residual = 0.0;
  double norm_drift = 0.0;
  double group_phase_error = 0.0;
  double relative_phase = 0.0;     ///< channel 1 minus channel 0, wrapped
  double relative_expected = 0.0;  ///< wrapped
  double global_residual = 0.0;
};

inline LoopPoint loop_point(const MassChannelState& state, const Vec3& v, const Vec3& a, Diagnostics& diag)
{
  const PhysicalContext& ctx = state.context();
  diag.observe(state[0].field, "bargmann-loop");
  diag.observe(translate_field(state[0].field, -a.x()), "bargmann-loop");

  const MassChannelState after = bargmann_loop_on_state(state, v, a);
  const std::vector<PhaseMatch> phases = channel_phases(state, after);
  const double s_shift = central_shift(bargmann_group_loop(v, a)).shift;

  LoopPoint p;
  p.analytic  = bargmann_loop_phase(state[0].mass, v, a, ctx);
  p.extracted = phases[0].angle;
  for (std::size_t i = 0; i < state.size(); ++i) {
    const double m        = state[i].mass;
    const double expected = bargmann_loop_phase(m, v, a, ctx);
    p.phase_error    = std::max(p.phase_error, std::abs(wrap_angle(phases[i].angle - expected)));
    p.shape_residual = std::max(p.shape_residual, phases[i].residual);
    p.group_phase_error = std::max(p.group_phase_error, std::abs(wrap_angle(s_shift * m / ctx.hbar - expected)));
  }
  p.norm_drift = std::abs(after.norm_squared() - state.norm_squared()) / state.norm_squared();
  if (state.size() >= 2) {
    p.relative_phase    = wrap_angle(phases[1].angle - phases[0].angle);
    p.relative_expected = wrap_angle(bargmann_loop_phase(state[1].mass, v, a, ctx) - p.analytic);
    p.global_residual   = global_phase_between(state, after).residual;
  }
  return p;
}

inline PhaseReport run_bargmann_loop(const ScenarioConfig& cfg)
{
  PhaseReport r;
  const Grid grid = scenario_grid(cfg, 1024, 20.0);
  const Vec3 v    = cfg.transform->v;
  const Vec3 a    = cfg.transform->a;
  const MassChannelState state = packet_state(cfg, grid, 0.5 * a.x(), grid.length() / 64.0, 0.0);
  Diagnostics diag;

  const LoopPoint p = loop_point(state, v, a, diag);
  r.scalars["analytic_phase"]    = p.analytic;
  r.scalars["analytic_phase_wrapped"] = wrap_angle(p.analytic);
  r.scalars["extracted_phase"]   = p.extracted;
  r.scalars["phase_error"]       = p.phase_error;
  r.scalars["shape_residual"]    = p.shape_residual;
  r.scalars["norm_drift"]        = p.norm_drift;
  r.scalars["group_phase_error"] = p.group_phase_error;
  r.scalars["central_shift"]     = central_shift(bargmann_group_loop(v, a)).shift;

  double phase_error = p.phase_error, shape = p.shape_residual, drift = p.norm_drift, group = p.group_phase_error;
  if (cfg.sweep) {
    r.sweep.parameter = "v";
    r.sweep.metrics   = {"analytic_phase", "extracted_phase", "phase_error", "group_phase_error"};
    const Vec3 dir    = direction(v);
    for (double speed : cfg.sweep->resolved()) {
      const LoopPoint q = loop_point(state, speed * dir, a, diag);
      r.sweep.add_row(speed, {q.analytic, q.extracted, q.phase_error, q.group_phase_error});
      phase_error = std::max(phase_error, q.phase_error);
      shape       = std::max(shape, q.shape_residual);
      drift       = std::max(drift, q.norm_drift);
      group       = std::max(group, q.group_phase_error);
    }
  }

  r.add(Check::at_most("phase_error", phase_error, tolerance(cfg, "phase_error")));
  r.add(Check::at_most("shape_residual", shape, tolerance(cfg, "shape_residual")));
  r.add(Check::at_most("norm_drift", drift, tolerance(cfg, "norm_drift")));
  r.add(Check::at_most("group_phase_error", group, tolerance(cfg, "group_phase_error")));

  if (state.size() >= 2) {
    r.scalars["relative_phase"]          = p.relative_phase;
    r.scalars["relative_phase_expected"] = p.relative_expected;
    r.scalars["global_phase_residual"]   = p.global_residual;
    // A superposition with a visible relative phase cannot be matched by any global phase.
    if (std::abs(p.relative_expected) >= 0.5) {
      r.add(Check::at_least("witness_residual", p.global_residual, tolerance(cfg, "witness_residual")));
    }
  }
  r.warnings = diag.warnings;
  return r;
}

// ---------------------------------------------------------------------------

inline double max_channel_norm_drift(const MassChannelState& before, const MassChannelState& after)
{
  double worst = 0.0;
  for (std::size_t i = 0; i < before.size(); ++i) {
    const double n0 = norm_squared(before[i].field);
    worst = std::max(worst, std::abs(norm_squared(after[i].field) - n0) / n0);
  }
  return worst;
}

inline PhaseReport run_covariance(const ScenarioConfig& cfg)
{
  PhaseReport r;
  const Grid grid = scenario_grid(cfg, 1024, 40.0);
  const MassChannelState state = packet_state(cfg, grid, 0.0, 1.0, 0.0);
  const Vec3 v = cfg.transform->v;
  const EvolutionParams p{cfg.evolution->dt, cfg.evolution->steps, cfg.evolution->include_rest_energy};
  const Potential V = cfg.potential && cfg.potential->type == "harmonic" ? Potential::harmonic(cfg.potential->omega)
                                                                         : Potential::free();

  const CovarianceResult cov = verify_boost_covariance(state, v, V, p);
  Diagnostics diag;
  const MassChannelState evolved = schrodinger_evolve(state, V, p, &diag);
  const double drift = max_channel_norm_drift(state, evolved);

  r.scalars["discrepancy"]     = cov.discrepancy;
  r.scalars["phase_extracted"] = cov.phase_extracted;
  r.scalars["phase_expected"]  = cov.phase_expected;
  r.scalars["phase_error"]     = cov.phase_error;
  r.scalars["norm_drift"]      = drift;
  r.scalars["duration"]        = p.duration();

  const char* disc_name = V.is_free() ? "discrepancy" : "discrepancy_with_potential";
  r.add(Check::at_most(disc_name, cov.discrepancy, tolerance(cfg, disc_name)));
  r.add(Check::at_most("phase_error", cov.phase_error, tolerance(cfg, "phase_error")));
  r.add(Check::at_most("norm_drift", drift, tolerance(cfg, "norm_drift")));
  r.warnings = cov.warnings;

  // Splitting order: compare each dt against dt/2 at fixed duration.
  if (!V.is_free()) {
    const double T = p.duration();
    std::vector<double> dts = sweep_values(cfg, "dt", {T / 25.0, T / 50.0, T / 100.0, T / 200.0});
    r.sweep.parameter = "dt";
    r.sweep.metrics   = {"splitting_error", "discrepancy"};
    std::vector<double> xs, ys;
    for (double dt : dts) {
      const std::size_t steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(T / dt)));
      const EvolutionParams coarse{T / static_cast<double>(steps), steps, p.include_rest_energy};
      const EvolutionParams fine{coarse.dt / 2.0, 2 * steps, p.include_rest_energy};
      const MassChannelState a = schrodinger_evolve(state, V, coarse);
      const MassChannelState b = schrodinger_evolve(state, V, fine);
      double err = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) err += norm_squared(a[i].field - b[i].field);
      err = std::sqrt(err / state.norm_squared());
      const double disc = verify_boost_covariance(state, v, V, coarse).discrepancy;
      r.sweep.add_row(dt, {err, disc});
      xs.push_back(coarse.dt);
      ys.push_back(err);
    }
    if (xs.size() >= 2) {
      r.fits["splitting_error"] = fit_loglog(xs, ys);
      add_band_check(r, "splitting_order", r.fits["splitting_error"], 2.0, tolerance(cfg, "splitting_order_band"));
    }
  }
  for (const auto& w : diag.warnings) r.warnings.push_back(w);
  return r;
}

// ---------------------------------------------------------------------------

inline PhaseReport run_kg_reduce(const ScenarioConfig& cfg)
{
  PhaseReport r;
  const Grid grid = scenario_grid(cfg, 1024, 40.0);
  const double m  = cfg.particle->masses.front();
  if (cfg.particle->masses.size() > 1) r.warnings.push_back("kg-reduce: only the first mass is used");
  double center = 0.0, width = 1.0, k0 = 1.0;
  if (cfg.packet) {
    center = cfg.packet->center.value_or(center);
    width  = cfg.packet->width.value_or(width);
    k0     = cfg.packet->k0;
  }
  const ComplexField psi0 = gaussian_packet(grid, center, width, k0);
  const double h          = cfg.evolution->dt;
  const double T          = cfg.evolution->dt * static_cast<double>(cfg.evolution->steps);
  if (!(T > 2.0 * h)) throw ScenarioError("kg-reduce: duration must exceed 2 dt");

  r.sweep.parameter = "c";
  r.sweep.metrics   = {"kg_schrodinger_diff", "energy_drift", "residual_ratio"};
  std::vector<double> cs, diffs, ratios;
  double worst_energy = 0.0;
  Diagnostics diag;
  for (double c : sweep_values(cfg, "c", {8.0, 16.0, 32.0, 64.0, 128.0})) {
    const PhysicalContext ctx{cfg.particle->hbar, c};
    const KGState s0 = KGState::positive_frequency(psi0, m, ctx);
    const KGState sT = kg_evolve(s0, T);
    const ComplexField env = factor_rest_phase(sT, T);

    const MassChannelState schr = schrodinger_evolve(MassChannelState::single(m, psi0, ctx), Potential::free(),
                                                     EvolutionParams{T, 1, false}, &diag);
    const double diff = l2_norm(env - schr[0].field);
    const double e0   = kg_energy(s0);
    const double drift = std::abs(kg_energy(sT) - e0) / e0;

    std::vector<ComplexField> slices;
    for (int k = -2; k <= 2; ++k) {
      const double t = T + k * h;
      slices.push_back(factor_rest_phase(kg_evolve(s0, t), t));
    }
    const double ratio = kg_residual_ratio(slices, h, m, ctx);

    r.sweep.add_row(c, {diff, drift, ratio});
    cs.push_back(c);
    diffs.push_back(diff);
    ratios.push_back(ratio);
    worst_energy = std::max(worst_energy, drift);
  }

  r.scalars["duration"]         = T;
  r.scalars["max_energy_drift"] = worst_energy;
  r.add(Check::at_most("energy_drift", worst_energy, tolerance(cfg, "energy_drift")));
  if (cs.size() >= 2) {
    r.fits["kg_schrodinger_diff"] = fit_loglog(cs, diffs);
    r.fits["residual_ratio"]      = fit_loglog(cs, ratios);
    add_band_check(r, "diff_slope", r.fits["kg_schrodinger_diff"], -2.0, tolerance(cfg, "diff_slope_band"));
    add_band_check(r, "residual_slope", r.fits["residual_ratio"], -2.0, tolerance(cfg, "residual_slope_band"));
  } else {
    r.warnings.push_back("kg-reduce: need at least two c values for slope fits");
  }
  for (const auto& w : diag.warnings) r.warnings.push_back(w);
  return r;
}

// ---------------------------------------------------------------------------

inline PhaseReport run_remnant(const ScenarioConfig& cfg)
{
  PhaseReport r;
  const double m = cfg.particle->masses.front();
  const Vec3 v   = cfg.transform->v;
  const Vec3 x   = cfg.event->x;
  const double t = cfg.event->t;

  const RemnantPhase here = remnant_phase_compare(m, v, x, t, cfg.context());
  r.scalars["theta_rel"] = here.theta_rel;
  r.scalars["theta_gal"] = here.theta_gal;
  r.scalars["delta"]     = here.delta;

  r.sweep.parameter = "c";
  r.sweep.metrics   = {"theta_rel", "theta_gal", "abs_delta"};
  std::vector<double> cs, ds;
  for (double c : sweep_values(cfg, "c", {10.0, 20.0, 40.0, 80.0, 160.0})) {
    const RemnantPhase p = remnant_phase_compare(m, v, x, t, PhysicalContext{cfg.particle->hbar, c});
    r.sweep.add_row(c, {p.theta_rel, p.theta_gal, std::abs(p.delta)});
    if (p.delta != 0.0) {
      cs.push_back(c);
      ds.push_back(std::abs(p.delta));
    }
  }
  if (cs.size() >= 2) {
    r.fits["abs_delta"] = fit_loglog(cs, ds);
    add_band_check(r, "slope", r.fits["abs_delta"], -2.0, tolerance(cfg, "slope_band"));
  } else {
    r.warnings.push_back("remnant: phase difference vanishes; slope undefined");
  }
  return r;
}

// ---------------------------------------------------------------------------

inline PhaseReport run_sagnac(const ScenarioConfig& cfg)
{
  PhaseReport r;
  RingConfig ring;
  ring.radius   = cfg.ring->R;
  ring.omega    = cfg.ring->Omega;
  ring.mass     = cfg.particle->masses.front();
  ring.v_signal = cfg.ring->v_signal;
  ring.ctx      = cfg.context();

  std::vector<double> c_sweep;
  if (cfg.sweep && cfg.sweep->parameter == "c") c_sweep = cfg.sweep->resolved();
  const SagnacReport sr = sagnac_report(ring, cfg.ring->t_flight, c_sweep);

  r.scalars["dt"]            = sr.dt;
  r.scalars["omega_ep"]      = sr.omega_ep;
  r.scalars["dphi_rel"]      = sr.dphi_rel;
  r.scalars["dphi_n"]        = sr.dphi_n;
  r.scalars["dphi_nqm"]      = sr.dphi_nqm;
  r.scalars["t_flight"]      = sr.t_flight;
  r.scalars["rel_minus_n"]   = sr.rel_minus_n;
  r.scalars["nqm_minus_n"]   = sr.nqm_minus_n;
  r.scalars["rel_minus_nqm"] = sr.rel_minus_nqm;
  r.scalars["nqm_equals_n"]  = sr.nqm_equals_n ? 1.0 : 0.0;

  // omega dt against the fully expanded product, relative.
  const double c = ring.ctx.c, R = ring.radius, W = ring.omega, beta = ring.v_signal / c;
  const double expanded = 4.0 * pi * R * R * W * ring.mass * c /
                          (ring.ctx.hbar * std::sqrt(1.0 - beta * beta) * std::sqrt(c * c - W * W * R * R));
  const double identity = std::abs(sr.dphi_rel - expanded) / std::max(1.0, std::abs(expanded));
  r.scalars["identity_error"] = identity;
  r.add(Check::at_most("identity", identity, tolerance(cfg, "identity")));

  if (W > 0.0) {
    const double nqm = sagnac_phase_projective(ring.mass, 2.0 * W * R, W, R, pi / W, ring.ctx);
    const double err = std::abs(nqm - sr.dphi_n) / std::max(1.0, std::abs(sr.dphi_n));
    r.scalars["projective_special_error"] = err;
    r.add(Check::at_most("projective_forms", err, tolerance(cfg, "projective_forms")));
  } else {
    r.warnings.push_back("sagnac: Omega = 0, limit and projective checks skipped");
  }

  if (cfg.sweep && cfg.sweep->parameter == "Omega") {
    r.sweep.parameter = "Omega";
    r.sweep.metrics   = {"dphi_rel", "dphi_n", "dphi_nqm"};
    for (double w : cfg.sweep->resolved()) {
      RingConfig at = ring;
      at.omega      = w;
      const SagnacReport q = sagnac_report(at, cfg.ring->t_flight, {c * 8.0});
      r.sweep.add_row(w, {q.dphi_rel, q.dphi_n, q.dphi_nqm});
    }
  } else if (!sr.sweep.empty()) {
    r.sweep.parameter = "c";
    r.sweep.metrics   = {"dphi_rel", "dphi_n", "abs_diff"};
    for (const auto& row : sr.sweep) r.sweep.add_row(row.c, {row.dphi_rel, row.dphi_n, row.abs_diff});
  }
  if (sr.limit_fit) {
    r.fits["abs_diff"] = *sr.limit_fit;
    add_band_check(r, "limit_slope", sr.limit_fit, -2.0, tolerance(cfg, "limit_slope_band"));
  }
  return r;
}

// ---------------------------------------------------------------------------

inline PhaseReport run_group_loop(const ScenarioConfig& cfg)
{
  PhaseReport r;
  const Vec3 v   = cfg.transform->v;
  const Vec3 a   = cfg.transform->a;
  const double c = cfg.context().c;
  const int dim  = spatial_dim_for(v, a);

  double commutator = 0.0;
  for (int d : {1, 3}) {
    for (auto rep : {Representation::extended_galilei, Representation::poincare}) {
      for (const auto& rc : verify_algebra(RepSpec{rep, d, c})) commutator = std::max(commutator, rc.error);
    }
  }
  r.scalars["commutator_error"] = commutator;
  r.add(Check::at_most("commutator", commutator, tolerance(cfg, "commutator")));

  const CentralShift cs = central_shift(bargmann_group_loop(v, a, dim));
  r.scalars["central_shift"]     = cs.shift;
  r.scalars["central_deviation"] = cs.deviation;
  r.scalars["central_shift_error"] = std::abs(cs.shift - v.dot(a));
  r.add(Check::at_most("central_deviation", cs.deviation, tolerance(cfg, "central_deviation")));
  r.add(Check::at_most("central_shift_error", std::abs(cs.shift - v.dot(a)), tolerance(cfg, "central_shift_error")));

  const Vec3 dir = direction(v);
  auto shifts = [&](const Vec3& w) {
    const SpacetimeEvent e = event_shift(poincare_group_loop(w, a, c, dim), SpacetimeEvent{});
    const SpacetimeEvent l = poincare_loop_leading_shift(w, a, c);
    return std::array<double, 4>{e.t, e.x.dot(dir), e.t - l.t, e.x.dot(dir) - l.x.dot(dir)};
  };
  const auto here = shifts(v);
  const SpacetimeEvent lead = poincare_loop_leading_shift(v, a, c);
  r.scalars["poincare_time_shift"]  = here[0];
  r.scalars["poincare_space_shift"] = here[1];
  r.scalars["leading_time_shift"]   = lead.t;
  r.scalars["leading_space_shift"]  = lead.x.dot(dir);

  const double beta2 = v.squaredNorm() / (c * c);
  if (v.dot(a) != 0.0) {
    if (beta2 <= 0.25) {
      // Next-order terms are bounded by beta^2 times the leading ones.
      const double ft = std::abs(here[2]) / (beta2 * std::abs(lead.t));
      const double fx = std::abs(here[3]) / (beta2 * std::abs(lead.x.dot(dir)));
      r.scalars["leading_order_factor"] = std::max(ft, fx);
      r.add(Check::at_most("leading_order_factor", std::max(ft, fx), tolerance(cfg, "leading_order_factor")));
    } else {
      r.warnings.push_back("group-loop: |v|/c > 0.5, leading-order comparison skipped");
    }

    const double speed = v.norm();
    std::vector<double> fallback;
    for (int k = 0; k < 5; ++k) fallback.push_back(speed * std::pow(0.5, k));
    r.sweep.parameter = "v";
    r.sweep.metrics   = {"time_shift", "space_shift", "time_residual", "space_residual"};
    std::vector<double> vs, ts, xs;
    for (double s : sweep_values(cfg, "v", fallback)) {
      const auto row = shifts(s * dir);
      r.sweep.add_row(s, {row[0], row[1], row[2], row[3]});
      vs.push_back(s);
      ts.push_back(row[0]);
      xs.push_back(row[1]);
    }
    if (vs.size() >= 2) {
      r.fits["time_shift"]  = fit_loglog(vs, ts);
      r.fits["space_shift"] = fit_loglog(vs, xs);
      add_band_check(r, "time_slope", r.fits["time_shift"], 1.0, tolerance(cfg, "time_slope_band"));
      add_band_check(r, "space_slope", r.fits["space_shift"], 2.0, tolerance(cfg, "space_slope_band"));
    }
  } else {
    r.warnings.push_back("group-loop: v.a = 0, loop is the identity");
  }
  return r;
}

// ---------------------------------------------------------------------------

inline PhaseReport run_contract(const ScenarioConfig& cfg)
{
  PhaseReport r;
  const Vec3 v  = cfg.transform->v;
  const Vec3 a  = cfg.transform->a;
  const ContractionResult res =
      contraction_check(v, a, sweep_values(cfg, "c", {10.0, 20.0, 40.0, 80.0, 160.0}), spatial_dim_for(v, a));

  r.scalars["central_shift"] = res.central_shift;
  r.sweep.parameter = "c";
  r.sweep.metrics   = {"time_shift", "scaled_time_shift", "scaled_residual", "time_residual", "space_shift",
                       "space_residual"};
  double worst_shift = 0.0;
  for (const auto& row : res.rows) {
    r.sweep.add_row(row.c, {row.time_shift, row.scaled_time_shift, row.scaled_residual, row.time_residual,
                            row.space_shift, row.space_residual});
    worst_shift = std::max(worst_shift, std::abs(row.time_shift));
  }

  if (res.scaled_residual_fit) {
    r.fits["scaled_residual"] = *res.scaled_residual_fit;
    r.fits["time_residual"]   = *res.time_residual_fit;
    r.scalars["slope"]        = res.scaled_residual_fit->slope;
    add_band_check(r, "scaled_slope", res.scaled_residual_fit, -2.0, tolerance(cfg, "scaled_slope_band"));
    add_band_check(r, "time_residual_slope", res.time_residual_fit, -4.0, tolerance(cfg, "time_slope_band"));
    if (res.space_residual_fit) {
      r.fits["space_residual"] = *res.space_residual_fit;
      add_band_check(r, "space_residual_slope", res.space_residual_fit, -4.0, tolerance(cfg, "space_slope_band"));
    }
    r.scalars["extrapolated"]        = *res.extrapolated;
    r.scalars["extrapolation_error"] = *res.extrapolation_error;
    r.add(Check::at_most("extrapolation", std::abs(*res.extrapolated - res.central_shift), *res.extrapolation_error));
  } else if (v.dot(a) == 0.0) {
    r.add(Check::at_most("zero_shift", worst_shift, 1e-15));
  } else {
    r.warnings.push_back("contract: need at least two c values for slope fits");
  }
  return r;
}

}  // namespace detail

/// Runs one scenario. Downstream failures are rethrown as ScenarioError naming the scenario.
inline PhaseReport run_scenario(const ScenarioConfig& cfg)
{
  validate_config(cfg);
  PhaseReport r;
  try {
    if (cfg.scenario == "bargmann-loop") r = detail::run_bargmann_loop(cfg);
    else if (cfg.scenario == "covariance") r = detail::run_covariance(cfg);
    else if (cfg.scenario == "kg-reduce") r = detail::run_kg_reduce(cfg);
    else if (cfg.scenario == "remnant") r = detail::run_remnant(cfg);
    else if (cfg.scenario == "sagnac") r = detail::run_sagnac(cfg);
    else if (cfg.scenario == "group-loop") r = detail::run_group_loop(cfg);
    else if (cfg.scenario == "contract") r = detail::run_contract(cfg);
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::exception& e) {
    throw ScenarioError("scenario '" + cfg.scenario + "': " + e.what());
  }
  r.scenario = cfg.scenario;
  return r;
}

}  // namespace bargmann_lab
