#pragma once

// Reference evaluations written straight from the defining sums. They are slow and
// share no code with the library.

#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
constexpr long double kPiL = 3.141592653589793238462643383279502884L;

struct PointScatterer {
  double naf;
  cd amplitude;
};

// Double sum over every TX/RX element pair, positions in units of d, phase referenced
// to `center`.
inline cd monostatic_response(const std::vector<int>& tx, const std::vector<int>& rx, const std::vector<cd>& wt,
                              const std::vector<cd>& wr, double center, const std::vector<PointScatterer>& scene,
                              double steer) {
  cd total = 0.0;
  for (const auto& s : scene)
    for (std::size_t n = 0; n < tx.size(); ++n)
      for (std::size_t m = 0; m < rx.size(); ++m) {
        const double phase = 2.0 * static_cast<double>(kPiL) * (steer - s.naf) * (tx[n] + rx[m] - center);
        total += s.amplitude * wt[n] * wr[m] * std::exp(cd(0.0, phase));
      }
  return total;
}

inline std::vector<int> ula(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  return p;
}

// (1/M) sum_m exp(j 2 pi (m - (M-1)/2) lag), real for a symmetric spectrum.
inline double dirichlet_phasor(double lag, int order) {
  cd acc = 0.0;
  for (int m = 0; m < order; ++m)
    acc += std::exp(cd(0.0, 2.0 * static_cast<double>(kPiL) * (m - 0.5 * (order - 1)) * lag));
  return (acc / static_cast<double>(order)).real();
}

inline long double naf_long(long double az_deg, long double el_deg, long double spacing) {
  const long double a = az_deg * kPiL / 180.0L;
  const long double e = el_deg * kPiL / 180.0L;
  return spacing * std::sin(a) * std::cos(e);
}

// Cell averaging with explicit loops, clipped windows.
inline std::vector<bool> ca_cfar(const std::vector<double>& x, int train, int guard, double p_fa) {
  const int n = static_cast<int>(x.size());
  std::vector<bool> out(x.size());
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    int cnt = 0;
    for (int j = i - guard - train; j <= i + guard + train; ++j) {
      if (j < 0 || j >= n || std::abs(j - i) <= guard) continue;
      sum += x[static_cast<std::size_t>(j)];
      ++cnt;
    }
    const double alpha = cnt * (std::pow(p_fa, -1.0 / cnt) - 1.0);
    out[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] > alpha * sum / cnt;
  }
  return out;
}

// Naive DFT with the given exponent sign, no normalization.
inline std::vector<cd> dft(const std::vector<cd>& x, std::size_t size, int sign) {
  std::vector<cd> out(size);
  for (std::size_t k = 0; k < size; ++k) {
    cd acc = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n)
      acc += x[n] * std::exp(cd(0.0, sign * 2.0 * static_cast<double>(kPiL) * static_cast<double>(k * n) /
                                         static_cast<double>(size)));
    out[k] = acc;
  }
  return out;
}

}  // namespace oracle
