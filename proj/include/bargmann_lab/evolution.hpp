#pragma once

// Time evolution: Strang split-step Schrodinger propagation, exact per-mode
// Klein-Gordon propagation, the rest-phase envelope, the neglected second
// time-derivative term, and the Lorentz-vs-Galilean phase comparison.

#include "bargmann_lab/frame_ops.hpp"
#include "bargmann_lab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bargmann_lab {

/// Real scalar potential. Harmonic wells are 0.5 m omega^2 (x - center)^2 and so depend on
/// the channel mass; sampled potentials are taken as given on the grid.
class Potential
{
public:
  enum class Kind { free, harmonic, sampled };

  static Potential free() { return Potential(Kind::free); }

  static Potential harmonic(double omega, double center = 0.0)
  {
    if (!(omega > 0.0)) throw std::invalid_argument("potential: harmonic omega must be > 0");
    Potential p(Kind::harmonic);
    p.omega_  = omega;
    p.center_ = center;
    return p;
  }

  static Potential sampled(Grid grid, std::vector<double> values)
  {
    if (values.size() != grid.size()) throw std::invalid_argument("potential: sampled length must equal grid n");
    for (double v : values) {
      if (!std::isfinite(v)) throw std::invalid_argument("potential: sampled values must be finite");
    }
    Potential p(Kind::sampled);
    p.grid_ = grid;
    p.values_ = std::move(values);
    return p;
  }

  Kind kind() const { return kind_; }
  bool is_free() const { return kind_ == Kind::free; }
  double omega() const { return omega_; }
  double center() const { return center_; }

  /// V(x_j + shift) on the grid, for a particle of the given mass.
  std::vector<double> sample(const Grid& grid, double mass, double shift = 0.0) const
  {
    std::vector<double> out(grid.size(), 0.0);
    switch (kind_) {
      case Kind::free: break;
      case Kind::harmonic:
        for (std::size_t j = 0; j < grid.size(); ++j) {
          const double d = grid.position(j) + shift - center_;
          out[j]         = 0.5 * mass * omega_ * omega_ * d * d;
        }
        break;
      case Kind::sampled: {
        if (!(*grid_ == grid)) throw std::invalid_argument("potential: sampled on a different grid");
        if (shift == 0.0) return values_;
        // Spectral interpolation; assumes a band-limited potential.
        std::vector<Complex> z(values_.begin(), values_.end());
        const ComplexField moved = translate_field(ComplexField(grid, std::move(z)), -shift);
        for (std::size_t j = 0; j < grid.size(); ++j) out[j] = moved[j].real();
        break;
      }
    }
    return out;
  }

private:
  explicit Potential(Kind k) : kind_(k) {}

  Kind kind_;
  double omega_  = 0.0;
  double center_ = 0.0;
  std::optional<Grid> grid_;
  std::vector<double> values_;
};

struct EvolutionParams
{
  double dt                = 1e-3;
  std::size_t steps        = 1;
  bool include_rest_energy = false;

  double duration() const { return dt * static_cast<double>(steps); }

  void validate() const
  {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("evolution: dt must be > 0");
  }
};

/// Non-fatal findings collected during a run.
struct Diagnostics
{
  double max_boundary_mass = 0.0;
  std::vector<std::string> warnings;

  static constexpr double boundary_mass_limit = 1e-12;

  void observe(const ComplexField& f, const char* where)
  {
    const double bm = boundary_mass(f);
    if (bm > max_boundary_mass) max_boundary_mass = bm;
    if (bm > boundary_mass_limit && !flagged_) {
      flagged_ = true;
      warnings.push_back(std::string(where) + ": wavepacket reached the boundary region (boundary mass " +
                         std::to_string(bm) + ")");
    }
  }

private:
  bool flagged_ = false;
};

namespace detail {

inline double kinetic_symbol(double k, double m, const PhysicalContext& ctx, bool rest)
{
  double e = ctx.hbar * ctx.hbar * k * k / (2.0 * m);
  if (rest) e += m * ctx.c * ctx.c;
  return e;
}

// drift: potential evaluated at x + drift * t (a potential at rest in a frame moving
// with velocity -drift); t0: start time.
inline ComplexField split_step_channel(const ComplexField& psi0, double m, const Potential& V,
                                       const EvolutionParams& p, const PhysicalContext& ctx, double drift,
                                       double t0, Diagnostics* diag)
{
  const Grid& grid = psi0.grid();
  const double dt  = p.dt;
  if (p.steps == 0) return psi0;

  if (V.is_free()) {
    const double T = p.duration();
    ComplexField out = apply_spectral_multiplier(psi0, [&](double k) {
      return std::polar(1.0, -kinetic_symbol(k, m, ctx, p.include_rest_energy) * T / ctx.hbar);
    });
    if (diag != nullptr) {
      diag->observe(psi0, "schrodinger_evolve");
      diag->observe(out, "schrodinger_evolve");
    }
    return out;
  }

  std::vector<Complex> kinetic(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    kinetic[j] = std::polar(1.0, -kinetic_symbol(grid.wavenumber(j), m, ctx, p.include_rest_energy) * dt / ctx.hbar);
  }

  auto half_kick = [&](double t) {
    const std::vector<double> v = V.sample(grid, m, drift * t);
    std::vector<Complex> phase(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) phase[j] = std::polar(1.0, -0.5 * v[j] * dt / ctx.hbar);
    return phase;
  };

  const bool static_potential = drift == 0.0;
  std::vector<Complex> kick   = half_kick(t0);

  ComplexField psi = psi0;
  if (diag != nullptr) diag->observe(psi, "schrodinger_evolve");
  for (std::size_t step = 0; step < p.steps; ++step) {
    const double t = t0 + dt * static_cast<double>(step);
    for (std::size_t j = 0; j < grid.size(); ++j) psi[j] *= kick[j];
    SpectralField s = to_spectrum(psi);
    for (std::size_t j = 0; j < grid.size(); ++j) s[j] *= kinetic[j];
    psi = from_spectrum(s);
    if (!static_potential) kick = half_kick(t + dt);
    for (std::size_t j = 0; j < grid.size(); ++j) psi[j] *= kick[j];
    if (diag != nullptr) diag->observe(psi, "schrodinger_evolve");
  }
  return psi;
}

}  // namespace detail

/// Strang splitting exp(-iV dt/2h) exp(-iK dt/h) exp(-iV dt/2h) per step, K = h^2 k^2/2m
/// (+ m c^2 when include_rest_energy). Free evolution uses the exact diagonal propagator.
inline MassChannelState schrodinger_evolve(const MassChannelState& state, const Potential& V,
                                           const EvolutionParams& p, Diagnostics* diag = nullptr)
{
  p.validate();
  const PhysicalContext& ctx = state.context();
  return state.map_channels([&](double m, const ComplexField& f) {
    return detail::split_step_channel(f, m, V, p, ctx, 0.0, 0.0, diag);
  });
}

/// Same as schrodinger_evolve but in a frame where the potential is V(x + drift t).
inline MassChannelState schrodinger_evolve_drifting(const MassChannelState& state, const Potential& V,
                                                    const EvolutionParams& p, double drift,
                                                    Diagnostics* diag = nullptr)
{
  p.validate();
  const PhysicalContext& ctx = state.context();
  return state.map_channels([&](double m, const ComplexField& f) {
    return detail::split_step_channel(f, m, V, p, ctx, drift, 0.0, diag);
  });
}

struct CovarianceResult
{
  double discrepancy     = 0.0;  ///< ||A - B|| / ||A|| over the stacked state
  double phase_extracted = 0.0;  ///< arg <B, A without the m v^2 T/2 phase>, first channel
  double phase_expected  = 0.0;  ///< m v^2 T / (2 hbar), first channel
  double phase_error     = 0.0;  ///< max over channels of the wrapped difference
  MassChannelState path_a;
  MassChannelState path_b;
  std::vector<std::string> warnings;
};

/// Evolve-then-boost (A) against boost-then-evolve (B). In the primed frame the potential
/// is V'(x', t) = V(x' + v t).
inline CovarianceResult verify_boost_covariance(const MassChannelState& state, const Vec3& v, const Potential& V,
                                                const EvolutionParams& p)
{
  Diagnostics diag_a, diag_b;
  const double T = p.duration();

  MassChannelState a = apply_boost(schrodinger_evolve(state, V, p, &diag_a), v, T);
  MassChannelState b = schrodinger_evolve_drifting(apply_boost(state, v, 0.0), V, p, v.x(), &diag_b);

  double diff = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) diff += norm_squared(a[i].field - b[i].field);
  const double discrepancy = std::sqrt(diff / a.norm_squared());

  const PhysicalContext& ctx = state.context();
  double phase_error = 0.0, extracted0 = 0.0, expected0 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double m        = a[i].mass;
    const double expected = 0.5 * m * v.squaredNorm() * T / ctx.hbar;
    ComplexField spatial  = a[i].field;
    spatial *= std::polar(1.0, expected);
    const PhaseMatch pm = global_phase_between(b[i].field, spatial);
    phase_error         = std::max(phase_error, std::abs(wrap_angle(pm.angle - expected)));
    if (i == 0) {
      extracted0 = pm.angle;
      expected0  = expected;
    }
  }

  CovarianceResult r{discrepancy, extracted0, expected0, phase_error, std::move(a), std::move(b), {}};
  for (auto* d : {&diag_a, &diag_b}) r.warnings.insert(r.warnings.end(), d->warnings.begin(), d->warnings.end());
  return r;
}

// ---------------------------------------------------------------------------
// Klein-Gordon

/// omega_k = c sqrt(k^2 + (m c / hbar)^2)
inline double kg_frequency(double k, double m, const PhysicalContext& ctx)
{
  const double mc = m * ctx.c / ctx.hbar;
  return ctx.c * std::sqrt(k * k + mc * mc);
}

struct KGState
{
  ComplexField phi;
  ComplexField phi_dot;
  double mass;
  PhysicalContext ctx;

  /// Initial data on the exp(-i omega_k t) branch only.
  static KGState positive_frequency(const ComplexField& psi0, double m, PhysicalContext ctx = {})
  {
    if (!(m > 0.0)) throw std::invalid_argument("kg: mass must be > 0");
    ctx.validate();
    const ComplexField dot = apply_spectral_multiplier(
        psi0, [&](double k) { return Complex(0.0, -kg_frequency(k, m, ctx)); });
    return KGState{psi0, dot, m, ctx};
  }
};

/// sum_k (|phi_dot_k|^2 + omega_k^2 |phi_k|^2) dx
inline double kg_energy(const KGState& s)
{
  const SpectralField f  = to_spectrum(s.phi);
  const SpectralField fd = to_spectrum(s.phi_dot);
  const Grid& g          = s.phi.grid();
  double e               = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double w = kg_frequency(g.wavenumber(j), s.mass, s.ctx);
    e += std::norm(fd[j]) + w * w * std::norm(f[j]);
  }
  return e * g.spacing();
}

/// Exact evolution of every mode by time t.
inline KGState kg_evolve(const KGState& s, double t)
{
  if (t == 0.0) return s;
  SpectralField f  = to_spectrum(s.phi);
  SpectralField fd = to_spectrum(s.phi_dot);
  const Grid& g    = s.phi.grid();
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double w  = kg_frequency(g.wavenumber(j), s.mass, s.ctx);
    const double cs = std::cos(w * t), sn = std::sin(w * t);
    const Complex a = f[j], b = fd[j];
    f[j]            = a * cs + b * (sn / w);
    fd[j]           = -a * (w * sn) + b * cs;
  }
  return KGState{from_spectrum(f), from_spectrum(fd), s.mass, s.ctx};
}

inline KGState kg_evolve(const KGState& s, const EvolutionParams& p)
{
  p.validate();
  return kg_evolve(s, p.duration());
}

/// psi = exp(+i m c^2 t / hbar) phi, the envelope left after removing the rest phase.
inline ComplexField factor_rest_phase(const KGState& s, double t)
{
  ComplexField psi = s.phi;
  if (t != 0.0) psi *= std::polar(1.0, s.mass * s.ctx.c * s.ctx.c * t / s.ctx.hbar);
  return psi;
}

namespace detail {

inline ComplexField second_difference(const ComplexField& prev, const ComplexField& mid, const ComplexField& next,
                                      double dt)
{
  ComplexField out = mid;
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = (prev[j] - 2.0 * mid[j] + next[j]) / (dt * dt);
  return out;
}

}  // namespace detail

/// The term -(hbar^2 / 2 m c^2) d^2psi/dt^2 dropped in the Schrodinger limit, from central
/// differences. `dt` is the spacing between consecutive slices. With three slices the
/// centre slice is used directly; with five, the estimate from spacing 2 dt is compared
/// against spacing dt and a disagreement above 10% is rejected.
inline ComplexField kg_residual(std::span<const ComplexField> slices, double dt, double m,
                                const PhysicalContext& ctx = {})
{
  if (!(dt > 0.0)) throw std::invalid_argument("kg_residual: dt must be > 0");
  if (!(m > 0.0)) throw std::invalid_argument("kg_residual: mass must be > 0");
  const double coeff = -ctx.hbar * ctx.hbar / (2.0 * m * ctx.c * ctx.c);

  if (slices.size() == 3) {
    ComplexField d2 = detail::second_difference(slices[0], slices[1], slices[2], dt);
    return d2 *= coeff;
  }
  if (slices.size() == 5) {
    ComplexField coarse = detail::second_difference(slices[0], slices[2], slices[4], 2.0 * dt);
    ComplexField fine   = detail::second_difference(slices[1], slices[2], slices[3], dt);
    const double nf     = l2_norm(fine);
    const double gap    = l2_norm(coarse - fine);
    if (nf > 0.0 && gap > 0.1 * nf) {
      throw std::invalid_argument("kg_residual: dt too large (step-halving disagreement " +
                                  std::to_string(gap / nf) + ")");
    }
    return fine *= coeff;
  }
  throw std::invalid_argument("kg_residual: expected 3 or 5 slices");
}

/// ||residual|| / ||i hbar dpsi/dt|| at the centre slice.
inline double kg_residual_ratio(std::span<const ComplexField> slices, double dt, double m,
                                const PhysicalContext& ctx = {})
{
  const ComplexField r   = kg_residual(slices, dt, m, ctx);
  const std::size_t mid  = slices.size() / 2;
  ComplexField dpsi      = slices[mid + 1] - slices[mid - 1];
  dpsi *= Complex(ctx.hbar / (2.0 * dt), 0.0);
  const double denom = l2_norm(dpsi);
  if (denom == 0.0) return l2_norm(r) == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return l2_norm(r) / denom;
}

// ---------------------------------------------------------------------------
// Relativistic remnant of the boost phase

struct RemnantPhase
{
  double theta_rel = 0.0;  ///< m c^2 (t' - t) / hbar, t' = gamma (t - v.x / c^2)
  double theta_gal = 0.0;  ///< m (v^2 t/2 - v.x) / hbar
  double delta     = 0.0;  ///< theta_rel - theta_gal
};

inline RemnantPhase remnant_phase_compare(double m, const Vec3& v, const Vec3& x, double t,
                                          const PhysicalContext& ctx = {})
{
  if (!(m > 0.0)) throw std::invalid_argument("remnant: mass must be > 0");
  const double c     = ctx.c;
  const double v2    = v.squaredNorm();
  const double beta2 = v2 / (c * c);
  if (!(beta2 < 1.0)) throw std::invalid_argument("remnant: |v| must be < c");

  // s = 1/gamma; gamma - 1 and the O(1/c^2) difference in cancellation-free form.
  const double s            = std::sqrt(1.0 - beta2);
  const double gamma_m1     = beta2 / (s * (1.0 + s));
  const double gamma_m1_cc  = v2 / (s * (1.0 + s));
  const double vx           = v.dot(x);
  const double gamma        = 1.0 + gamma_m1;
  const double rest_excess  = v2 * beta2 * (2.0 + s) / (2.0 * s * (1.0 + s) * (1.0 + s));

  RemnantPhase r;
  r.theta_rel = m * (gamma_m1_cc * t - gamma * vx) / ctx.hbar;
  r.theta_gal = m * (0.5 * v2 * t - vx) / ctx.hbar;
  r.delta     = m * (rest_excess * t - gamma_m1 * vx) / ctx.hbar;
  return r;
}

}  // namespace bargmann_lab
