#pragma once

// Matrix realizations of the extended Galilei (Bargmann) and Poincare groups.
//
// Both act passively on homogeneous event coordinates (a group element changes the frame
// in which an event is described).
//
// Extended Galilei, coordinates (t, x_1..x_d, s, 1):
//   H   = E(t,1)                      t -> t + tau
//   P_i = -E(x_i,1)                   x -> x - a
//   C_i = -E(x_i,t) - E(s,x_i)        x -> x - v t,  s -> s - v.x + v^2 t/2
//   M   = E(s,1)                      s -> s + sigma
//   [C_i, P_j] = delta_ij M,  [C_i, H] = P_i,  M central, [C_i, C_j] = [H, P_i] = 0.
//
// Poincare, coordinates (ct, x_1..x_d, 1):
//   H   = c E(ct,1)
//   P_i = -E(x_i,1)
//   K_i = -(E(x_i,ct) + E(ct,x_i)) / c    exp(theta K_i) is a boost of rapidity theta/c
//   [K_i, P_j] = delta_ij H / c^2,  [K_i, H] = P_i.
//
// exp(v.C) reproduces the wavefunction boost phase as m s / hbar; the loop
// exp(-v.C) exp(-a.P) exp(v.C) exp(a.P) is the central shift s -> s + v.a.
// Matrices are hbar-free.

#include <Eigen/Core>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bargmann_lab/fit.hpp"

namespace bargmann_lab {

using Matrix = Eigen::MatrixXd;
using Vec3   = Eigen::Vector3d;

enum class Representation { extended_galilei, poincare };

inline const char* to_string(Representation r)
{
  return r == Representation::extended_galilei ? "extended-galilei" : "poincare";
}

/// Representation plus the parameters that fix its matrix shapes.
struct RepSpec
{
  Representation rep = Representation::extended_galilei;
  int spatial_dim    = 1;  ///< 1 or 3
  double c           = 1.0;  ///< used by the Poincare rep only

  int dimension() const { return rep == Representation::extended_galilei ? spatial_dim + 3 : spatial_dim + 2; }
  int time_index() const { return 0; }
  int space_index(int i) const { return 1 + i; }
  int central_index() const { return spatial_dim + 1; }  // extended Galilei only
  int affine_index() const { return dimension() - 1; }

  void validate() const
  {
    if (spatial_dim != 1 && spatial_dim != 3) throw std::invalid_argument("group: spatial_dim must be 1 or 3");
    if (rep == Representation::poincare && !(c > 0.0)) throw std::invalid_argument("group: c must be > 0");
  }

  bool operator==(const RepSpec&) const = default;
};

struct AlgebraElement
{
  RepSpec rep;
  Matrix matrix;
  std::string label;
};

struct GroupFactor
{
  std::string generator;
  double parameter;
};

struct GroupElement
{
  RepSpec rep;
  Matrix matrix;
  std::vector<GroupFactor> provenance;

  static GroupElement identity(const RepSpec& rep)
  {
    return {rep, Matrix::Identity(rep.dimension(), rep.dimension()), {}};
  }

  GroupElement inverse() const
  {
    std::vector<GroupFactor> prov;
    for (auto it = provenance.rbegin(); it != provenance.rend(); ++it) prov.push_back({it->generator, -it->parameter});
    return {rep, matrix.inverse(), std::move(prov)};
  }

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b)
  {
    if (!(a.rep == b.rep)) throw std::invalid_argument("group: representation mismatch in product");
    std::vector<GroupFactor> prov = a.provenance;
    prov.insert(prov.end(), b.provenance.begin(), b.provenance.end());
    return {a.rep, a.matrix * b.matrix, std::move(prov)};
  }
};

namespace detail {

inline Matrix unit(const RepSpec& r, int row, int col)
{
  Matrix m = Matrix::Zero(r.dimension(), r.dimension());
  m(row, col) = 1.0;
  return m;
}

inline int parse_axis(const std::string& label, int spatial_dim)
{
  if (label.size() == 1) return 0;
  if (label.size() != 2 || label[1] < '1' || label[1] > '3') throw std::invalid_argument("group: bad label " + label);
  const int axis = label[1] - '1';
  if (axis >= spatial_dim) throw std::invalid_argument("group: axis out of range in " + label);
  return axis;
}

}  // namespace detail

/// Basis generator by label: H, M, P/P1..P3, C/C1..C3 (extended Galilei) or K/K1..K3 (Poincare).
inline AlgebraElement generator(const RepSpec& r, const std::string& label)
{
  r.validate();
  using detail::unit;
  if (label.empty()) throw std::invalid_argument("group: empty generator label");
  const char kind = label[0];
  const int t     = r.time_index();
  const int one   = r.affine_index();

  if (r.rep == Representation::extended_galilei) {
    const int s = r.central_index();
    switch (kind) {
      case 'H':
        if (label.size() != 1) break;
        return {r, unit(r, t, one), label};
      case 'M':
        if (label.size() != 1) break;
        return {r, unit(r, s, one), label};
      case 'P': {
        const int i = r.space_index(detail::parse_axis(label, r.spatial_dim));
        return {r, -unit(r, i, one), label};
      }
      case 'C': {
        const int i = r.space_index(detail::parse_axis(label, r.spatial_dim));
        return {r, -unit(r, i, t) - unit(r, s, i), label};
      }
      default: break;
    }
  } else {
    switch (kind) {
      case 'H':
        if (label.size() != 1) break;
        return {r, r.c * unit(r, t, one), label};
      case 'P': {
        const int i = r.space_index(detail::parse_axis(label, r.spatial_dim));
        return {r, -unit(r, i, one), label};
      }
      case 'K': {
        const int i = r.space_index(detail::parse_axis(label, r.spatial_dim));
        return {r, -(unit(r, i, t) + unit(r, t, i)) / r.c, label};
      }
      default: break;
    }
  }
  throw std::invalid_argument("group: unknown generator '" + label + "' for " + to_string(r.rep));
}

inline AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b)
{
  if (!(a.rep == b.rep)) throw std::invalid_argument("group: representation mismatch in commutator");
  return {a.rep, a.matrix * b.matrix - b.matrix * a.matrix, "[" + a.label + "," + b.label + "]"};
}

/// sum_i w_i G_i over the spatial generators of one family (e.g. v.C, a.P).
inline AlgebraElement vector_generator(const RepSpec& r, char family, const Vec3& w)
{
  Matrix m = Matrix::Zero(r.dimension(), r.dimension());
  for (int i = 0; i < r.spatial_dim; ++i) {
    const std::string label = std::string(1, family) + static_cast<char>('1' + i);
    m += w[i] * generator(r, label).matrix;
  }
  return {r, m, std::string(1, family) + "(vec)"};
}

/// exp(theta X) in closed form. Nilpotent elements (every extended-Galilei element, Poincare
/// translations) use the terminating series; elements with A^3 = phi^2 A (Lorentz boosts)
/// use the cosh/sinh form. Anything else is rejected.
inline GroupElement exponentiate(const AlgebraElement& x, double theta)
{
  const auto n   = x.matrix.rows();
  const Matrix a = theta * x.matrix;
  Matrix result  = Matrix::Identity(n, n);
  std::vector<GroupFactor> prov{{x.label, theta}};
  if (theta == 0.0) return {x.rep, result, std::move(prov)};

  Matrix power = a;
  double fact  = 1.0;
  for (Eigen::Index k = 1; k <= n; ++k) {
    if (power.isZero(0.0)) return {x.rep, result, std::move(prov)};
    fact *= static_cast<double>(k);
    result += power / fact;
    power = power * a;
  }
  if (power.isZero(0.0)) return {x.rep, result, std::move(prov)};

  const Matrix a2   = a * a;
  const double phi2 = a2.trace() / 2.0;
  const Matrix a3   = a2 * a;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if (phi2 > 0.0 && (a3 - phi2 * a).cwiseAbs().maxCoeff() <= 1e-12 * scale * phi2) {
    const double phi = std::sqrt(phi2);
    const Matrix one = Matrix::Identity(n, n);
    return {x.rep, one + (std::sinh(phi) / phi) * a + ((std::cosh(phi) - 1.0) / phi2) * a2, std::move(prov)};
  }
  throw std::invalid_argument("group: no closed-form exponential for " + x.label);
}

// Algebra relations -------------------------------------------------------------------

struct RelationCheck
{
  std::string relation;
  double error;  ///< max entrywise |lhs - rhs|
};

/// Evaluates every documented bracket relation of the basis in the given representation.
inline std::vector<RelationCheck> verify_algebra(const RepSpec& r)
{
  r.validate();
  std::vector<RelationCheck> out;
  const int d  = r.spatial_dim;
  const auto n = r.dimension();
  const Matrix zero = Matrix::Zero(n, n);
  auto axis = [](char fam, int i) { return std::string(1, fam) + static_cast<char>('1' + i); };
  auto record = [&](const std::string& rel, const Matrix& lhs, const Matrix& rhs) {
    out.push_back({rel, (lhs - rhs).cwiseAbs().maxCoeff()});
  };

  const AlgebraElement h = generator(r, "H");
  if (r.rep == Representation::extended_galilei) {
    const AlgebraElement m = generator(r, "M");
    record("[M,H]=0", commutator(m, h).matrix, zero);
    for (int i = 0; i < d; ++i) {
      const AlgebraElement ci = generator(r, axis('C', i));
      const AlgebraElement pi_ = generator(r, axis('P', i));
      record("[M," + ci.label + "]=0", commutator(m, ci).matrix, zero);
      record("[M," + pi_.label + "]=0", commutator(m, pi_).matrix, zero);
      record("[H," + pi_.label + "]=0", commutator(h, pi_).matrix, zero);
      record("[" + ci.label + ",H]=" + pi_.label, commutator(ci, h).matrix, pi_.matrix);
      for (int j = 0; j < d; ++j) {
        const AlgebraElement cj = generator(r, axis('C', j));
        const AlgebraElement pj = generator(r, axis('P', j));
        record("[" + ci.label + "," + pj.label + "]=" + (i == j ? "M" : "0"), commutator(ci, pj).matrix,
               i == j ? m.matrix : zero);
        record("[" + ci.label + "," + cj.label + "]=0", commutator(ci, cj).matrix, zero);
        record("[" + pi_.label + "," + pj.label + "]=0", commutator(pi_, pj).matrix, zero);
      }
    }
  } else {
    for (int i = 0; i < d; ++i) {
      const AlgebraElement ki = generator(r, axis('K', i));
      const AlgebraElement pi_ = generator(r, axis('P', i));
      record("[H," + pi_.label + "]=0", commutator(h, pi_).matrix, zero);
      record("[" + ki.label + ",H]=" + pi_.label, commutator(ki, h).matrix, pi_.matrix);
      for (int j = 0; j < d; ++j) {
        const AlgebraElement pj = generator(r, axis('P', j));
        record("[" + ki.label + "," + pj.label + "]=" + (i == j ? "H/c^2" : "0"), commutator(ki, pj).matrix,
               i == j ? Matrix(h.matrix / (r.c * r.c)) : zero);
        record("[" + pi_.label + "," + pj.label + "]=0", commutator(pi_, pj).matrix, zero);
      }
    }
  }
  return out;
}

// Named one-parameter subgroups ------------------------------------------------------

inline GroupElement translation(const RepSpec& r, const Vec3& a)
{
  GroupElement g = exponentiate(vector_generator(r, 'P', a), 1.0);
  g.provenance   = {{"P.a", a.norm()}};
  return g;
}

inline GroupElement galilean_boost(const RepSpec& r, const Vec3& v)
{
  if (r.rep != Representation::extended_galilei) throw std::invalid_argument("group: Galilean boost needs extended-galilei rep");
  GroupElement g = exponentiate(vector_generator(r, 'C', v), 1.0);
  g.provenance   = {{"C.v", v.norm()}};
  return g;
}

/// Lorentz boost to a frame moving with velocity v (rapidity artanh(|v|/c) along v).
inline GroupElement lorentz_boost(const RepSpec& r, const Vec3& v)
{
  if (r.rep != Representation::poincare) throw std::invalid_argument("group: Lorentz boost needs poincare rep");
  const double speed = v.head(r.spatial_dim).norm();
  if (!(speed < r.c)) throw std::invalid_argument("group: |v| must be < c");
  if (speed == 0.0) return GroupElement::identity(r);
  const Vec3 dir     = v / speed;
  GroupElement g     = exponentiate(vector_generator(r, 'K', dir), r.c * std::atanh(speed / r.c));
  g.provenance       = {{"K.v", speed}};
  return g;
}

// Events -----------------------------------------------------------------------------

struct ExtendedEvent
{
  double t = 0.0;
  Vec3 x   = Vec3::Zero();
  double s = 0.0;
};

struct SpacetimeEvent
{
  double t = 0.0;
  Vec3 x   = Vec3::Zero();
};

inline ExtendedEvent event_shift(const GroupElement& g, const ExtendedEvent& e)
{
  const RepSpec& r = g.rep;
  if (r.rep != Representation::extended_galilei) throw std::invalid_argument("event_shift: representation mismatch");
  Eigen::VectorXd h = Eigen::VectorXd::Zero(r.dimension());
  h(r.time_index()) = e.t;
  for (int i = 0; i < r.spatial_dim; ++i) h(r.space_index(i)) = e.x[i];
  h(r.central_index()) = e.s;
  h(r.affine_index())  = 1.0;
  const Eigen::VectorXd o = g.matrix * h;
  ExtendedEvent out;
  out.t = o(r.time_index());
  for (int i = 0; i < r.spatial_dim; ++i) out.x[i] = o(r.space_index(i));
  out.s = o(r.central_index());
  return out;
}

inline SpacetimeEvent event_shift(const GroupElement& g, const SpacetimeEvent& e)
{
  const RepSpec& r = g.rep;
  if (r.rep != Representation::poincare) throw std::invalid_argument("event_shift: representation mismatch");
  Eigen::VectorXd h = Eigen::VectorXd::Zero(r.dimension());
  h(r.time_index()) = r.c * e.t;
  for (int i = 0; i < r.spatial_dim; ++i) h(r.space_index(i)) = e.x[i];
  h(r.affine_index()) = 1.0;
  const Eigen::VectorXd o = g.matrix * h;
  SpacetimeEvent out;
  out.t = o(r.time_index()) / r.c;
  for (int i = 0; i < r.spatial_dim; ++i) out.x[i] = o(r.space_index(i));
  return out;
}

// Loops ------------------------------------------------------------------------------

/// exp(-v.C) exp(-a.P) exp(v.C) exp(a.P).
inline GroupElement bargmann_group_loop(const Vec3& v, const Vec3& a, int spatial_dim = 1)
{
  const RepSpec r{Representation::extended_galilei, spatial_dim, 1.0};
  return galilean_boost(r, -v) * translation(r, -a) * galilean_boost(r, v) * translation(r, a);
}

struct CentralShift
{
  double shift     = 0.0;  ///< s-displacement
  double deviation = 0.0;  ///< max |loop - (I + shift E(s,1))|
};

inline CentralShift central_shift(const GroupElement& g)
{
  const RepSpec& r = g.rep;
  if (r.rep != Representation::extended_galilei) throw std::invalid_argument("central_shift: extended-galilei only");
  CentralShift cs;
  cs.shift   = g.matrix(r.central_index(), r.affine_index());
  Matrix ref = Matrix::Identity(r.dimension(), r.dimension());
  ref(r.central_index(), r.affine_index()) = cs.shift;
  cs.deviation = (g.matrix - ref).cwiseAbs().maxCoeff();
  return cs;
}

/// Relativistic analogue with velocity-parametrized Lorentz boosts, exact product.
inline GroupElement poincare_group_loop(const Vec3& v, const Vec3& a, double c, int spatial_dim = 1)
{
  const RepSpec r{Representation::poincare, spatial_dim, c};
  r.validate();
  return lorentz_boost(r, -v) * translation(r, -a) * lorentz_boost(r, v) * translation(r, a);
}

/// Leading-order prediction for the Poincare loop acting on the origin:
/// t' = v.a / c^2, x' = (v.a) v / 2c^2.
inline SpacetimeEvent poincare_loop_leading_shift(const Vec3& v, const Vec3& a, double c)
{
  const double va = v.dot(a);
  return {va / (c * c), va * v / (2.0 * c * c)};
}

struct ContractionRow
{
  double c;
  double time_shift;         ///< exact loop t' on the origin
  double scaled_time_shift;  ///< c^2 t'
  double scaled_residual;    ///< c^2 t' - v.a
  double time_residual;      ///< t' - v.a/c^2
  double space_shift;        ///< exact loop x' (component along v, 1D: x)
  double space_residual;     ///< x' - (v.a) v_x / 2c^2
};

struct ContractionResult
{
  double central_shift = 0.0;  ///< Bargmann loop s-shift (v.a)
  std::vector<ContractionRow> rows;
  std::optional<LogLogFit> scaled_residual_fit;  ///< |c^2 t' - v.a| vs c
  std::optional<LogLogFit> time_residual_fit;    ///< |t' - v.a/c^2| vs c
  std::optional<LogLogFit> space_residual_fit;   ///< |x' - (v.a)v/2c^2| vs c
  std::optional<double> extrapolated;            ///< Richardson limit of c^2 t' from the two largest c
  std::optional<double> extrapolation_error;     ///< |extrapolated - finest c^2 t'|
};

inline ContractionResult contraction_check(const Vec3& v, const Vec3& a, std::vector<double> c_sweep,
                                           int spatial_dim = 1)
{
  std::sort(c_sweep.begin(), c_sweep.end());
  ContractionResult res;
  res.central_shift = central_shift(bargmann_group_loop(v, a, spatial_dim)).shift;
  const double va   = v.dot(a);

  std::vector<double> cs, scaled, tres, xres;
  for (double c : c_sweep) {
    const GroupElement loop  = poincare_group_loop(v, a, c, spatial_dim);
    const SpacetimeEvent e   = event_shift(loop, SpacetimeEvent{});
    const SpacetimeEvent lead = poincare_loop_leading_shift(v, a, c);
    ContractionRow row;
    row.c                 = c;
    row.time_shift        = e.t;
    row.scaled_time_shift = c * c * e.t;
    row.scaled_residual   = row.scaled_time_shift - va;
    row.time_residual     = e.t - lead.t;
    row.space_shift       = e.x.x();
    row.space_residual    = e.x.x() - lead.x.x();
    res.rows.push_back(row);
    if (va != 0.0) {
      cs.push_back(c);
      scaled.push_back(row.scaled_residual);
      tres.push_back(row.time_residual);
      xres.push_back(row.space_residual);
    }
  }
  if (cs.size() >= 2) {
    res.scaled_residual_fit = fit_loglog(cs, scaled);
    res.time_residual_fit   = fit_loglog(cs, tres);
    if (v.x() != 0.0) res.space_residual_fit = fit_loglog(cs, xres);
    const auto& coarse = res.rows[res.rows.size() - 2];
    const auto& fine   = res.rows.back();
    res.extrapolated        = richardson(coarse.scaled_time_shift, fine.scaled_time_shift, fine.c / coarse.c, 2.0);
    res.extrapolation_error = std::abs(*res.extrapolated - fine.scaled_time_shift);
  }
  return res;
}

}  // namespace bargmann_lab
