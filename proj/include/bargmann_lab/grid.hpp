#pragma once

// Periodic 1D grid, complex fields and the spectral substrate.
//
// Conventions
// -----------
//  * Sample points x_j = -L/2 + j L/n, j = 0..n-1 (box [-L/2, L/2)).
//  * Wavenumbers k_j = 2 pi j~/L with j~ = j for j <= n/2, j - n otherwise
//    (the Nyquist mode keeps its positive sign).
//  * Transforms are unitary: F_k = n^{-1/2} sum_j f_j exp(-2 pi i j k/n), and
//    the inverse carries the same n^{-1/2}. Spectral norms are measured with
//    the same spacing weight as spatial norms, so Parseval reads
//    dx sum |f_j|^2 == dx sum |F_k|^2.
//  * Inner products are antilinear in the first slot: <f,g> = dx sum conj(f) g.

#include "bargmann_lab/fft.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bargmann_lab {

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/// Maps an angle to (-pi, pi].
inline double wrap_angle(double theta)
{
  double r = std::remainder(theta, 2.0 * pi);
  if (r <= -pi) r += 2.0 * pi;
  return r;
}

struct PhysicalContext
{
  double hbar = 1.0;
  double c    = 1.0;

  void validate() const
  {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) throw std::invalid_argument("context: hbar must be > 0");
    if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("context: c must be > 0");
  }

  bool operator==(const PhysicalContext&) const = default;
};

class Grid
{
public:
  Grid(std::size_t n, double length) : n_(n), length_(length)
  {
    if (n < 8 || (n & (n - 1)) != 0) {
      throw std::invalid_argument("grid: n must be a power of two >= 8, got " + std::to_string(n));
    }
    if (!(length > 0.0) || !std::isfinite(length)) throw std::invalid_argument("grid: length must be > 0");
  }

  std::size_t size() const { return n_; }
  double length() const { return length_; }
  double spacing() const { return length_ / static_cast<double>(n_); }

  double position(std::size_t j) const { return -0.5 * length_ + static_cast<double>(j) * spacing(); }

  long signed_index(std::size_t j) const
  {
    const auto jj = static_cast<long>(j);
    return j <= n_ / 2 ? jj : jj - static_cast<long>(n_);
  }

  double wavenumber(std::size_t j) const { return 2.0 * pi * static_cast<double>(signed_index(j)) / length_; }

  double max_wavenumber() const { return pi * static_cast<double>(n_) / length_; }

  std::vector<double> positions() const
  {
    std::vector<double> x(n_);
    for (std::size_t j = 0; j < n_; ++j) x[j] = position(j);
    return x;
  }

  std::vector<double> wavenumbers() const
  {
    std::vector<double> k(n_);
    for (std::size_t j = 0; j < n_; ++j) k[j] = wavenumber(j);
    return k;
  }

  bool operator==(const Grid&) const = default;

private:
  std::size_t n_;
  double length_;
};

namespace detail {

template<typename Field>
void require_same_grid(const Field& a, const Field& b, const char* what)
{
  if (!(a.grid() == b.grid())) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

}  // namespace detail

/// Complex amplitudes sampled on a Grid.
class ComplexField
{
public:
  explicit ComplexField(Grid grid) : grid_(grid), values_(grid.size()) {}

  ComplexField(Grid grid, std::vector<Complex> values) : grid_(grid), values_(std::move(values))
  {
    if (values_.size() != grid_.size()) {
      throw std::invalid_argument("field: expected " + std::to_string(grid_.size()) + " samples, got " +
                                  std::to_string(values_.size()));
    }
  }

  template<typename F>
  static ComplexField from_function(const Grid& grid, F&& f)
  {
    ComplexField out(grid);
    for (std::size_t j = 0; j < grid.size(); ++j) out.values_[j] = Complex(f(grid.position(j)));
    return out;
  }

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  std::span<const Complex> values() const { return values_; }
  std::span<Complex> values() { return values_; }

  const Complex& operator[](std::size_t j) const { return values_[j]; }
  Complex& operator[](std::size_t j) { return values_[j]; }

  ComplexField& operator*=(Complex s)
  {
    for (auto& z : values_) z *= s;
    return *this;
  }

  ComplexField& operator+=(const ComplexField& o)
  {
    detail::require_same_grid(*this, o, "field +=");
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += o.values_[j];
    return *this;
  }

  ComplexField& operator-=(const ComplexField& o)
  {
    detail::require_same_grid(*this, o, "field -=");
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= o.values_[j];
    return *this;
  }

  friend ComplexField operator*(Complex s, ComplexField f) { return f *= s; }
  friend ComplexField operator-(ComplexField a, const ComplexField& b) { return a -= b; }
  friend ComplexField operator+(ComplexField a, const ComplexField& b) { return a += b; }

private:
  Grid grid_;
  std::vector<Complex> values_;
};

/// Coefficients of a ComplexField in the unitary DFT basis, mode j at wavenumber grid.wavenumber(j).
class SpectralField
{
public:
  SpectralField(Grid grid, std::vector<Complex> coefficients) : grid_(grid), coefficients_(std::move(coefficients))
  {
    if (coefficients_.size() != grid_.size()) throw std::invalid_argument("spectrum: size does not match grid");
  }

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return coefficients_.size(); }
  std::span<const Complex> coefficients() const { return coefficients_; }
  std::span<Complex> coefficients() { return coefficients_; }
  const Complex& operator[](std::size_t j) const { return coefficients_[j]; }
  Complex& operator[](std::size_t j) { return coefficients_[j]; }

private:
  Grid grid_;
  std::vector<Complex> coefficients_;
};

inline SpectralField to_spectrum(const ComplexField& f)
{
  return SpectralField(f.grid(), detail::unitary_dft(f.values(), detail::FftDirection::forward));
}

inline ComplexField from_spectrum(const SpectralField& s)
{
  return ComplexField(s.grid(), detail::unitary_dft(s.coefficients(), detail::FftDirection::backward));
}

inline ComplexField from_spectrum(const SpectralField& s, const Grid& expected)
{
  if (!(s.grid() == expected)) throw std::invalid_argument("from_spectrum: grid mismatch");
  return from_spectrum(s);
}

/// Multiplies every mode by symbol(k) and transforms back.
template<typename Symbol>
ComplexField apply_spectral_multiplier(const ComplexField& f, Symbol&& symbol)
{
  SpectralField s = to_spectrum(f);
  const Grid& g   = f.grid();
  for (std::size_t j = 0; j < g.size(); ++j) s[j] *= Complex(symbol(g.wavenumber(j)));
  return from_spectrum(s);
}

inline double norm_squared(const ComplexField& f)
{
  double acc = 0.0;
  for (const auto& z : f.values()) acc += std::norm(z);
  return acc * f.grid().spacing();
}

inline double spectral_norm_squared(const SpectralField& s)
{
  double acc = 0.0;
  for (const auto& z : s.coefficients()) acc += std::norm(z);
  return acc * s.grid().spacing();
}

inline double l2_norm(const ComplexField& f) { return std::sqrt(norm_squared(f)); }

inline Complex inner_product(const ComplexField& f, const ComplexField& g)
{
  detail::require_same_grid(f, g, "inner_product");
  Complex acc{0.0, 0.0};
  for (std::size_t j = 0; j < f.size(); ++j) acc += std::conj(f[j]) * g[j];
  return acc * f.grid().spacing();
}

struct PhaseMatch
{
  double angle    = 0.0;  ///< arg<f,g> in (-pi, pi]
  double residual = 0.0;  ///< ||g - e^{i angle} f ||g||/||f|| || / ||g||
};

/// Best global phase relating g to f, and how far g is from being that phase multiple of f.
inline PhaseMatch global_phase_between(const ComplexField& f, const ComplexField& g)
{
  detail::require_same_grid(f, g, "global_phase_between");
  const double nf = l2_norm(f);
  const double ng = l2_norm(g);
  if (nf == 0.0 || ng == 0.0) throw std::invalid_argument("global_phase_between: zero-norm input");

  const Complex overlap = inner_product(f, g);
  const double angle    = std::arg(overlap);
  const Complex scale   = std::polar(ng / nf, angle);
  double diff           = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) diff += std::norm(g[j] - scale * f[j]);
  diff *= f.grid().spacing();
  return {wrap_angle(angle), std::sqrt(diff) / ng};
}

/// Normalized Gaussian packet (2 pi w^2)^{-1/4} exp(-(x-x0)^2/(4 w^2) + i k0 x); w is the
/// standard deviation of |psi|^2.
inline ComplexField gaussian_packet(const Grid& grid, double center, double width, double k0 = 0.0)
{
  if (!(width > 0.0)) throw std::invalid_argument("gaussian_packet: width must be > 0");
  const double amp = std::pow(2.0 * pi * width * width, -0.25);
  return ComplexField::from_function(grid, [&](double x) {
    const double d = x - center;
    return amp * std::exp(Complex(-d * d / (4.0 * width * width), k0 * x));
  });
}

/// Fraction of norm^2 held in the outer n/16 samples at each end of the box.
inline double boundary_mass(const ComplexField& f)
{
  const double total = norm_squared(f);
  if (total == 0.0) return 0.0;
  const std::size_t n    = f.size();
  const std::size_t edge = n / 16;
  double acc             = 0.0;
  for (std::size_t j = 0; j < edge; ++j) acc += std::norm(f[j]) + std::norm(f[n - 1 - j]);
  return acc * f.grid().spacing() / total;
}

/// Fraction of spectral norm^2 carried by modes with |k| > fraction * k_max.
inline double spectral_tail(const ComplexField& f, double fraction = 0.5)
{
  const SpectralField s = to_spectrum(f);
  const double cut      = fraction * f.grid().max_wavenumber();
  double tail = 0.0, total = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double w = std::norm(s[j]);
    total += w;
    if (std::abs(f.grid().wavenumber(j)) > cut) tail += w;
  }
  return total == 0.0 ? 0.0 : tail / total;
}

}  // namespace bargmann_lab
