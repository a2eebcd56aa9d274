#include "bethe/conformal.hpp"

#include <cmath>
#include <stdexcept>

#include "bethe/quadrature.hpp"

namespace bethe {

Complex z_of_zeta(Complex zeta) {
  if (zeta == Complex(0.0, 0.0)) throw std::invalid_argument("zeta = 0");
  return kSqrt2 * (zeta + 1.0 / zeta);
}

Complex zeta_of_z(Complex z) {
  Complex w = z / kSqrt2;
  Complex root = std::sqrt(w * w - 4.0);
  Complex a = 0.5 * (w + root);
  Complex b = 0.5 * (w - root);  // a*b = 1
  Complex zeta = std::abs(a) < std::abs(b) ? a : b;
  if (std::abs(std::abs(zeta) - 1.0) < 1e-12 && std::abs(z.imag()) < 1e-12)
    throw std::invalid_argument("z on the band: branch undefined");
  return zeta;
}

std::vector<double> chebyshev_doubled(double y, int kmax) {
  if (kmax < 0) throw std::invalid_argument("negative order");
  std::vector<double> t(kmax + 1);
  t[0] = 2.0;
  if (kmax >= 1) t[1] = y;
  for (int k = 1; k < kmax; ++k) t[k + 1] = y * t[k] - t[k - 1];
  return t;
}

double CosSeries::eval(double theta) const {
  double s = 0.0;
  for (std::size_t n = 0; n < c.size(); ++n) s += c[n] * std::cos(n * theta);
  return s;
}

bool CosSeries::nonnegative_on_grid(int samples) const {
  for (int j = 0; j < samples; ++j) {
    double theta = (j + 0.5) * 2.0 * M_PI / samples;
    if (eval(theta) < -1e-12) return false;
  }
  return true;
}

CosSeries operator+(const CosSeries& a, const CosSeries& b) {
  CosSeries out;
  out.c.resize(std::max(a.c.size(), b.c.size()), 0.0);
  for (std::size_t n = 0; n < a.c.size(); ++n) out.c[n] += a.c[n];
  for (std::size_t n = 0; n < b.c.size(); ++n) out.c[n] += b.c[n];
  return out;
}

namespace {
double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}
}  // namespace

CosSeries sin_power_weight(int two_p) {
  if (two_p < 2 || two_p % 2 != 0)
    throw std::invalid_argument("sin power must be a positive even integer");
  int p = two_p / 2;
  CosSeries w;
  w.c.assign(two_p + 1, 0.0);
  // 2^(2p) sin^(2p) = C(2p,p) + 2 sum_j (-1)^j C(2p, p-j) cos 2j theta
  w.c[0] = binomial(two_p, p);
  double sign = -1.0;
  for (int j = 1; j <= p; ++j) {
    w.c[2 * j] = 2.0 * sign * binomial(two_p, p - j);
    sign = -sign;
  }
  return w;
}

CosSeries band_poly_weight(std::span<const double> a) {
  if (a.empty()) throw std::invalid_argument("empty polynomial");
  for (std::size_t k = 1; k < a.size(); k += 2)
    if (a[k] != 0.0)
      throw std::invalid_argument("odd-degree terms are not supported");
  int deg = static_cast<int>(a.size()) - 1;
  int half = deg + 2;
  // exponential coefficients of A(2cos theta), offset by half
  std::vector<double> arr(2 * half + 1, 0.0);
  for (int k = 0; k <= deg; ++k) {
    if (a[k] == 0.0) continue;
    for (int j = 0; j <= k; ++j) arr[half + 2 * j - k] += a[k] * binomial(k, j);
  }
  // multiply by 8 sin^2 = 4 - 2 e^{2i t} - 2 e^{-2i t}
  std::vector<double> out(2 * half + 1, 0.0);
  for (int n = -half; n <= half; ++n) {
    double v = 4.0 * arr[half + n];
    if (n - 2 >= -half) v -= 2.0 * arr[half + n - 2];
    if (n + 2 <= half) v -= 2.0 * arr[half + n + 2];
    out[half + n] = v;
  }
  CosSeries w;
  w.c.assign(half + 1, 0.0);
  w.c[0] = out[half];
  for (int n = 1; n <= half; ++n) w.c[n] = 2.0 * out[half + n];
  while (w.c.size() > 1 && w.c.back() == 0.0) w.c.pop_back();
  return w;
}

double eigen_term_G(const CosSeries& w, double zeta) {
  double r = std::abs(zeta);
  if (r <= 0.0 || r > 1.0)
    throw std::invalid_argument("zero location must satisfy 0 < |zeta| <= 1");
  if (w.c.empty()) return 0.0;
  double val = 2.0 * w.c[0] * std::log(1.0 / r);
  double pos = 1.0, neg = 1.0;  // zeta^n, zeta^-n
  for (std::size_t n = 1; n < w.c.size(); ++n) {
    pos *= zeta;
    neg /= zeta;
    val += w.c[n] / static_cast<double>(n) * (neg - pos);
  }
  return val;
}

double beyond_band_F(std::span<const double> a, double x) {
  double ax = std::abs(x);
  if (ax < kBandEdge)
    throw std::invalid_argument("F is defined outside the band only");
  if (ax == kBandEdge) return 0.0;
  // s = 2 sqrt2 cosh u removes the square-root endpoint
  double umax = std::acosh(ax / kBandEdge);
  auto [xs, ws] = gauss_legendre(64);
  double total = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double u = 0.5 * umax * (xs[i] + 1.0);
    double s = kBandEdge * std::cosh(u);
    double av = 0.0;
    for (std::size_t k = a.size(); k-- > 0;) av = av * (s / kSqrt2) + a[k];
    total += ws[i] * av * 8.0 * std::sinh(u) * std::sinh(u);
  }
  return 0.5 * umax * total;
}

}  // namespace bethe
