#pragma once

#include <string_view>

namespace plstats {

enum class KernelKind { gaussian, tricube };

//! Smoothing kernel with its moment constants: sigma_sq = int x^2 K(x) dx
//! and l2_norm_sq = int K(x)^2 dx. Both are exact closed forms; the test
//! suite cross-checks them by quadrature.
struct Kernel {
  KernelKind kind = KernelKind::gaussian;

  double operator()(double x) const;
  [[nodiscard]] double sigma_sq() const;
  [[nodiscard]] double l2_norm_sq() const;

  //! Radius beyond which K is zero (tricube) or numerically negligible,
  //! below 1e-17 (gaussian); used for windowed sums and grid padding.
  [[nodiscard]] double support_radius() const;

  //! Padding factor for evaluation grids: 6 bandwidths for the gaussian,
  //! 1 for the compactly supported tricube.
  [[nodiscard]] double grid_pad() const;

  [[nodiscard]] const char* name() const;

  static Kernel gaussian() { return {KernelKind::gaussian}; }
  static Kernel tricube() { return {KernelKind::tricube}; }
  static Kernel by_name(std::string_view name);
};

} // namespace plstats
