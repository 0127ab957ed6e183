#include "plstats/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace plstats {

double Kernel::operator()(double x) const {
  switch (kind) {
    case KernelKind::gaussian:
      return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    case KernelKind::tricube: {
      const double a = std::abs(x);
      if (a >= 1.0) return 0.0;
      const double w = 1.0 - a * a * a;
      return (70.0 / 81.0) * w * w * w;
    }
  }
  return 0.0;
}

double Kernel::sigma_sq() const {
  // tricube: 2 * (70/81) * int_0^1 x^2 (1-x^3)^3 dx = 2 * (70/81) / 12 = 35/243
  return kind == KernelKind::gaussian ? 1.0 : 35.0 / 243.0;
}

double Kernel::l2_norm_sq() const {
  // gaussian: 1/(2 sqrt(pi)); tricube: 2 (70/81)^2 * 6561/13832 = 1225/1729
  return kind == KernelKind::gaussian ? 1.0 / (2.0 * std::sqrt(std::numbers::pi))
                                      : 1225.0 / 1729.0;
}

double Kernel::support_radius() const {
  return kind == KernelKind::gaussian ? 9.0 : 1.0;
}

double Kernel::grid_pad() const {
  return kind == KernelKind::gaussian ? 6.0 : 1.0;
}

const char* Kernel::name() const {
  return kind == KernelKind::gaussian ? "gaussian" : "tricube";
}

Kernel Kernel::by_name(std::string_view name) {
  if (name == "gaussian") return gaussian();
  if (name == "tricube") return tricube();
  throw std::invalid_argument("unknown kernel: " + std::string(name));
}

} // namespace plstats
