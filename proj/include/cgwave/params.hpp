#pragma once

namespace cgwave {

/// Physical constants of one wave problem, in SI units with density scaled
/// to one (so sigma and p_atm carry m^3/s^2 and m^2/s^2 respectively).
struct PhysicalParams {
  double g = 9.81;      ///< gravitational acceleration [m/s^2]
  double sigma = 0.073; ///< surface tension coefficient
  double h = 0.1;       ///< conformal mean depth [m]
  double k = 10.0;      ///< wavenumber 2*pi/L [1/m]
  double p_atm = 0.0;   ///< atmospheric pressure constant

  /// Throws std::invalid_argument unless g >= 0, sigma >= 0, g + sigma > 0,
  /// h > 0, k > 0 and every value is finite.
  void validate() const;

  double depth() const noexcept { return k * h; }  ///< strip depth kh
  PhysicalParams with_wavenumber(double kk) const {
    PhysicalParams p = *this;
    p.k = kk;
    return p;
  }
  PhysicalParams with_p_atm(double p) const {
    PhysicalParams q = *this;
    q.p_atm = p;
    return q;
  }
};

}  // namespace cgwave
