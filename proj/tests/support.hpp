#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace testsupport {

// Property-test generator; independent of the library's own variate stream.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }
  std::complex<double> disk(double rmax) {
    const double r = rmax * std::sqrt(real(0.0, 1.0));
    return std::polar(r, real(0.0, 6.283185307179586));
  }
  std::vector<std::complex<double>> unit_vector(std::size_t n) {
    std::normal_distribution<double> nd;
    std::vector<std::complex<double>> v(n);
    double s = 0.0;
    for (auto& c : v) {
      c = {nd(eng_), nd(eng_)};
      s += std::norm(c);
    }
    for (auto& c : v) c /= std::sqrt(s);
    return v;
  }

 private:
  std::mt19937_64 eng_;
};

inline double rel(std::complex<double> a, std::complex<double> b) {
  const double d = std::max(std::abs(a), std::abs(b));
  return d == 0.0 ? 0.0 : std::abs(a - b) / d;
}

// Adaptive Simpson on [a, b].
template <class F>
double simpson(F&& f, double a, double b, double tol, int depth = 50) {
  auto step = [&](auto&& self, double lo, double hi, double flo, double fmid, double fhi, double whole, double eps,
                  int d) -> double {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
    const double flm = f(lm), frm = f(rm);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    if (d <= 0 || std::abs(left + right - whole) <= 15.0 * eps) return left + right + (left + right - whole) / 15.0;
    return self(self, lo, mid, flo, flm, fmid, left, 0.5 * eps, d - 1) +
           self(self, mid, hi, fmid, frm, fhi, right, 0.5 * eps, d - 1);
  };
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return step(step, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, depth);
}

}  // namespace testsupport
