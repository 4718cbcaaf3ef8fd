#pragma once

// Frame transformations of wavefunctions: translations, Galilean boosts with
// their projective phase, and the translation/boost loop acting on states that
// carry several mass channels.
//
// All maps are active on fields:
//   translate(a):  psi_a(x + a) = psi(x)               (spectral, exp(-i k a) per mode)
//   boost(v, t):   psi'(x') = exp(i m (v^2 t/2 - v.x)/hbar) psi(x, t),  x' = x - v t
// Field-level operations use the x components of v and a; v^2 uses the full vector.

#include "bargmann_lab/grid.hpp"

#include <Eigen/Core>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bargmann_lab {

using Vec3 = Eigen::Vector3d;

struct MassChannel
{
  double mass;
  ComplexField field;
};

/// psi = sum of mass sectors, each on the same grid. Distinct masses are orthogonal sectors.
class MassChannelState
{
public:
  MassChannelState(std::vector<MassChannel> channels, PhysicalContext ctx = {})
      : channels_(std::move(channels)), ctx_(ctx)
  {
    ctx_.validate();
    if (channels_.empty()) throw std::invalid_argument("state: at least one channel required");
    for (const auto& ch : channels_) {
      if (!(ch.mass > 0.0) || !std::isfinite(ch.mass)) throw std::invalid_argument("state: masses must be > 0");
      if (!(ch.field.grid() == channels_.front().field.grid())) {
        throw std::invalid_argument("state: all channels must share one grid");
      }
    }
  }

  static MassChannelState single(double mass, ComplexField field, PhysicalContext ctx = {})
  {
    std::vector<MassChannel> chans;
    chans.push_back({mass, std::move(field)});
    return MassChannelState(std::move(chans), ctx);
  }

  const std::vector<MassChannel>& channels() const { return channels_; }
  std::size_t size() const { return channels_.size(); }
  const MassChannel& operator[](std::size_t i) const { return channels_[i]; }
  const PhysicalContext& context() const { return ctx_; }
  const Grid& grid() const { return channels_.front().field.grid(); }

  double norm_squared() const
  {
    double acc = 0.0;
    for (const auto& ch : channels_) acc += bargmann_lab::norm_squared(ch.field);
    return acc;
  }

  /// New state with the same masses and context, fields mapped by f(mass, field).
  template<typename F>
  MassChannelState map_channels(F&& f) const
  {
    std::vector<MassChannel> out;
    out.reserve(channels_.size());
    for (const auto& ch : channels_) out.push_back({ch.mass, f(ch.mass, ch.field)});
    return MassChannelState(std::move(out), ctx_);
  }

private:
  std::vector<MassChannel> channels_;
  PhysicalContext ctx_;
};

/// m (v^2 t/2 - v.x)/hbar, not reduced mod 2 pi.
inline double boost_phase(double m, const Vec3& v, const Vec3& x, double t, const PhysicalContext& ctx = {})
{
  if (!(m > 0.0)) throw std::invalid_argument("boost_phase: mass must be > 0");
  return m * (0.5 * v.squaredNorm() * t - v.dot(x)) / ctx.hbar;
}

/// Active shift of a band-limited field: result(x + shift) = f(x).
inline ComplexField translate_field(const ComplexField& f, double shift)
{
  if (shift == 0.0) return f;
  return apply_spectral_multiplier(f, [shift](double k) { return std::polar(1.0, -k * shift); });
}

inline ComplexField boost_field(const ComplexField& f, double m, const Vec3& v, double t, const PhysicalContext& ctx)
{
  // psi(x' + v t) expressed on the primed grid, then the projective phase at x = x' + v t.
  ComplexField out  = translate_field(f, -v.x() * t);
  const Grid& grid  = f.grid();
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const Vec3 x(grid.position(j) + v.x() * t, 0.0, 0.0);
    out[j] *= std::polar(1.0, boost_phase(m, v, x, t, ctx));
  }
  return out;
}

inline MassChannelState apply_boost(const MassChannelState& state, const Vec3& v, double t = 0.0)
{
  if (v.isZero(0.0)) return state;
  const PhysicalContext& ctx = state.context();
  return state.map_channels([&](double m, const ComplexField& f) { return boost_field(f, m, v, t, ctx); });
}

inline MassChannelState apply_translation(const MassChannelState& state, const Vec3& a)
{
  return state.map_channels([&](double, const ComplexField& f) { return translate_field(f, a.x()); });
}

/// Field-level realization of exp(-iv.C) exp(-iP.a) exp(iv.C) exp(iP.a), rightmost first,
/// at t = 0. In coordinate terms: translate the frame by a, boost by v, translate by -a,
/// boost by -v. Each channel comes back multiplied by exp(i m v.a / hbar).
inline MassChannelState bargmann_loop_on_state(const MassChannelState& state, const Vec3& v, const Vec3& a)
{
  MassChannelState s = apply_translation(state, -a);
  s                  = apply_boost(s, v);
  s                  = apply_translation(s, a);
  return apply_boost(s, -v);
}

inline double bargmann_loop_phase(double m, const Vec3& v, const Vec3& a, const PhysicalContext& ctx = {})
{
  if (!(m > 0.0)) throw std::invalid_argument("bargmann_loop_phase: mass must be > 0");
  return m * v.dot(a) / ctx.hbar;
}

/// Per-channel phase of `after` relative to `before`.
inline std::vector<PhaseMatch> channel_phases(const MassChannelState& before, const MassChannelState& after)
{
  if (before.size() != after.size()) throw std::invalid_argument("channel_phases: channel count mismatch");
  std::vector<PhaseMatch> out;
  out.reserve(before.size());
  for (std::size_t i = 0; i < before.size(); ++i) {
    out.push_back(global_phase_between(before[i].field, after[i].field));
  }
  return out;
}

/// Global phase of the whole multi-channel state, channels stacked into one vector.
inline PhaseMatch global_phase_between(const MassChannelState& f, const MassChannelState& g)
{
  if (f.size() != g.size()) throw std::invalid_argument("global_phase_between: channel count mismatch");
  Complex overlap{0.0, 0.0};
  for (std::size_t i = 0; i < f.size(); ++i) overlap += inner_product(f[i].field, g[i].field);
  const double nf = std::sqrt(f.norm_squared());
  const double ng = std::sqrt(g.norm_squared());
  if (nf == 0.0 || ng == 0.0) throw std::invalid_argument("global_phase_between: zero-norm input");

  const double angle  = std::arg(overlap);
  const Complex scale = std::polar(ng / nf, angle);
  double diff         = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) diff += norm_squared(g[i].field - scale * f[i].field);
  return {wrap_angle(angle), std::sqrt(diff) / ng};
}

}  // namespace bargmann_lab
