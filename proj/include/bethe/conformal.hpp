// Disk <-> energy-plane uniformization z = sqrt2 (zeta + 1/zeta), doubled
// Chebyshev values, cosine-series weights, the per-eigenvalue term G_w, and
// the beyond-band functional F^A.

#pragma once

#include <complex>
#include <span>
#include <vector>

namespace bethe {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950;
inline constexpr double kSqrt2 = 1.41421356237309504880168872420970;
inline constexpr double kBandEdge = 2 * kSqrt2;  // spectrum of the free operator

Complex z_of_zeta(Complex zeta);
// |zeta| < 1 branch; |z| on the band is rejected
Complex zeta_of_z(Complex z);

// t[0] = 2, t[1] = y, t[k+1] = y t[k] - t[k-1]; satisfies t[k](2cos a) = 2cos ka
std::vector<double> chebyshev_doubled(double y, int kmax);

// finite cosine series w(theta) = sum c[n] cos(n theta)
struct CosSeries {
  std::vector<double> c;

  double eval(double theta) const;
  int degree() const { return static_cast<int>(c.size()) - 1; }
  // order of the zero at theta in {0, pi}; 0 when w does not vanish there
  bool nonnegative_on_grid(int samples = 4096) const;
};

CosSeries operator+(const CosSeries& a, const CosSeries& b);

// 2^(2p) sin^(2p)(theta) as an exact cosine series
CosSeries sin_power_weight(int two_p);
// 8 A(2cos theta) sin^2 theta for a polynomial A(x) = sum a[k] x^k
CosSeries band_poly_weight(std::span<const double> a);

// G_w at a signed determinant zero: 2 c0 log(1/|zeta|) + sum (c_n/n)(zeta^-n - zeta^n).
// For even series this depends on |zeta| only, matching the display convention.
double eigen_term_G(const CosSeries& w, double zeta);

// F^A(x) = integral of A(s/sqrt2) sqrt(s^2 - 8) ds from the near band edge to |x|
double beyond_band_F(std::span<const double> a, double x);

}  // namespace bethe
