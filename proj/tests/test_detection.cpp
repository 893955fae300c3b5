#include <gtest/gtest.h>

#include <random>

#include "beamsweep/detection.hpp"
#include "beamsweep/errors.hpp"
#include "beamsweep/sampling.hpp"
#include "oracles.hpp"

using namespace beamsweep;

namespace {

std::vector<NafAngle> fine_grid() { return oversampled_naf_grid(8, NafAngle(0.2723), 10); }

// Amplitude spectrum of two unit scatterers, |D_8|^2 shaped, on the fine grid.
std::vector<double> two_lobes(double a, double b, double amp_b = 1.0) {
  std::vector<double> v;
  for (const auto& g : fine_grid()) {
    const double da = oracle::dirichlet_phasor(g.value - a, 8);
    const double db = oracle::dirichlet_phasor(g.value - b, 8);
    v.push_back(std::abs(da * da) + amp_b * std::abs(db * db));
  }
  return v;
}

}  // namespace

TEST(CfarAlpha, ClosedForm) {
  EXPECT_NEAR(cfar_alpha(16, 1e-6), 16.0 * (std::pow(10.0, 6.0 / 16.0) - 1.0), 1e-12);
  EXPECT_THROW(cfar_alpha(0, 0.1), ConfigError);
}

TEST(CaCfar, FlatProfileHasNoDetections) {
  const auto mask = ca_cfar(std::vector<double>(64, 3.0), CfarConfig{});
  for (bool b : mask) EXPECT_FALSE(b);
}

TEST(CaCfar, StrongCellDetected) {
  std::vector<double> p(64, 1.0);
  p[30] = 1000.0;
  const auto mask = ca_cfar(p, CfarConfig{});
  EXPECT_TRUE(mask[30]);
  EXPECT_GT(1000.0, cfar_alpha(16, 1e-6));
  int n = 0;
  for (bool b : mask) n += b;
  EXPECT_EQ(n, 1);
}

TEST(CaCfar, MatchesLoopOracleWithEdges) {
  std::mt19937_64 gen(5);
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(120);
  for (auto& x : p) x = e(gen);
  p[3] = 80;
  p[60] = 40;
  p[118] = 90;
  CfarConfig cfg;
  cfg.p_fa = 1e-3;
  EXPECT_EQ(ca_cfar(p, cfg), oracle::ca_cfar(p, cfg.n_training, cfg.n_guard, cfg.p_fa));
}

TEST(CaCfar, ShortProfileRejected) {
  EXPECT_THROW(ca_cfar(std::vector<double>(20, 1.0), CfarConfig{}), InputError);
  CfarConfig bad;
  bad.p_fa = 1.5;
  EXPECT_THROW(ca_cfar(std::vector<double>(64, 1.0), bad), ConfigError);
}

TEST(GateRange, Examples) {
  RangeAngleMap m;
  for (int i = 0; i <= 25; ++i) m.range_axis.push_back(i);
  m.angle_axis = {NafAngle(-0.1), NafAngle(0.1)};
  m.power = Eigen::MatrixXd::Ones(26, 2);
  const auto g = gate_range(m, {21.0, 25.0});
  EXPECT_EQ(g.range_axis.size(), 21u);
  EXPECT_EQ(g.range_axis.back(), 20.0);
  EXPECT_EQ(gate_range(m, {1.0, 0.0}).range_axis.size(), 26u);
  EXPECT_THROW(gate_range(m, {0.0, 25.0}), InputError);
}

TEST(ExtractPeaks, TwoPeaksBeyondResolution) {
  const double rho = 1.0 / 15.0;
  const auto grid = fine_grid();
  const auto v = two_lobes(-rho, rho);
  const auto peaks = extract_peaks(AngularSpectrum{grid, v, {}, {}}, PeakSearchOptions{});
  ASSERT_EQ(peaks.size(), 2u);
  EXPECT_NEAR(std::min(peaks[0].naf.value, peaks[1].naf.value), -rho, 1.0 / 150.0);
  EXPECT_NEAR(std::max(peaks[0].naf.value, peaks[1].naf.value), rho, 1.0 / 150.0);
}

TEST(ExtractPeaks, CloseLobesGiveOnePeak) {
  const double rho = 1.0 / 15.0;
  const auto grid = fine_grid();
  std::vector<double> power(grid.size(), 0.0);
  // Two narrow spikes 0.5 rho apart.
  power[40] = 4.0;
  power[45] = 2.0;
  const auto peaks = extract_peaks(grid, power, rho, 2);
  ASSERT_EQ(peaks.size(), 1u);
  EXPECT_NEAR(peaks[0].power, 4.0, 1e-12);
}

TEST(CollapseMap, MatchesColumnwiseOracle) {
  const auto grid = fine_grid();
  std::vector<double> range;
  for (int r = 0; r < 42; ++r) range.push_back(r * 0.61);
  std::mt19937_64 gen(17);
  std::exponential_distribution<double> e(1.0);
  Eigen::MatrixXd amp(42, static_cast<Eigen::Index>(grid.size()));
  for (Eigen::Index r = 0; r < amp.rows(); ++r)
    for (Eigen::Index j = 0; j < amp.cols(); ++j) amp(r, j) = std::sqrt(e(gen));
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double d = oracle::dirichlet_phasor(grid[j].value - 0.05, 8);
    amp(29, static_cast<Eigen::Index>(j)) += 30.0 * d * d;
    amp(37, static_cast<Eigen::Index>(j)) += 100.0;  // beyond the rear-wall gate
  }
  DetectionConfig cfg;
  const auto s = collapse_map(amp, range, grid, cfg);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    std::vector<double> col;
    std::size_t best = 0;
    for (std::size_t r = 0; r < range.size(); ++r) {
      if (range[r] >= 21.0) continue;
      col.push_back(std::pow(amp(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)), 2));
      if (col.back() > col[best]) best = col.size() - 1;
    }
    const auto mask = oracle::ca_cfar(col, 8, 2, 1e-6);
    EXPECT_EQ(s.detected[j], mask[best]) << j;
    EXPECT_DOUBLE_EQ(s.values[j], std::sqrt(col[best]));
    EXPECT_DOUBLE_EQ(s.range_m[j], range[best]);
  }
  const auto peaks = extract_peaks(s, cfg.peaks);
  ASSERT_FALSE(peaks.empty());
  EXPECT_NEAR(peaks[0].naf.value, 0.05, 1.0 / 150.0);
  EXPECT_NEAR(peaks[0].range_m, range[29], 1e-12);
}

TEST(ExtractPeaks, OnePeakWhenSidelobeUndetected) {
  // Power-level spectrum where only the main lobe bins are CFAR-detected.
  const auto grid = fine_grid();
  std::vector<double> v;
  std::vector<bool> det;
  for (const auto& g : grid) {
    const double d = oracle::dirichlet_phasor(g.value, 8);
    v.push_back(d * d);
    det.push_back(std::abs(g.value) < 0.05);
  }
  PeakSearchOptions opt;
  const auto peaks = extract_peaks(AngularSpectrum{grid, v, det, {}}, opt);
  ASSERT_EQ(peaks.size(), 1u);
  EXPECT_NEAR(peaks[0].naf.value, 0.0, 1e-12);
  det.assign(grid.size(), true);
  EXPECT_EQ(extract_peaks(AngularSpectrum{grid, v, det, {}}, opt).size(), 2u);
}

TEST(ExtractPeaks, ParabolicRefinementStaysWithinBin) {
  const auto grid = fine_grid();
  for (double off : {0.0, 0.0021, -0.0033, 0.00333}) {
    const auto v = two_lobes(0.1 + off, -0.2, 0.3);
    const auto peaks = extract_peaks(AngularSpectrum{grid, v, {}, {}}, PeakSearchOptions{});
    ASSERT_FALSE(peaks.empty());
    EXPECT_NEAR(peaks[0].naf.value, 0.1 + off, 1.5e-3) << off;
  }
}

TEST(ExtractPeaks, EmptyAndInvalidInput) {
  EXPECT_THROW(extract_peaks(AngularSpectrum{}, PeakSearchOptions{}), InputError);
  const auto grid = fine_grid();
  std::vector<double> zeros(grid.size(), 0.0);
  EXPECT_TRUE(extract_peaks(AngularSpectrum{grid, zeros, {}, {}}, PeakSearchOptions{}).empty());
  PeakSearchOptions bad;
  bad.resolution = 0.0;
  EXPECT_THROW(extract_peaks(AngularSpectrum{grid, zeros, {}, {}}, bad), ConfigError);
}

TEST(ResolvePeaks, KeepsStrongestSeparated) {
  std::vector<PeakEstimate> c{{NafAngle(0.0), 1, 1.0}, {NafAngle(0.03), 1, 5.0}, {NafAngle(0.2), 1, 0.5}};
  const auto out = resolve_peaks(c, 1.0 / 15.0, 2);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].naf.value, 0.03);
  EXPECT_EQ(out[1].naf.value, 0.2);
}
