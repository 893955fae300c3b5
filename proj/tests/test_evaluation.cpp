#include <gtest/gtest.h>

#include <sstream>

#include "beamsweep/errors.hpp"
#include "beamsweep/evaluation.hpp"

using namespace beamsweep;

namespace {

PeakEstimate at(double naf, double power = 1.0) { return {NafAngle(naf), 18.0, power}; }

RunEstimate run(const std::string& sc, ReflectorKind kind, Method m, std::array<double, 2> truth,
                std::vector<PeakEstimate> peaks) {
  return {sc, kind, m, 1, truth, std::move(peaks)};
}

}  // namespace

TEST(ScenarioCatalog, EightScenarios) {
  const auto cat = scenario_catalog();
  ASSERT_EQ(cat.size(), 8u);
  const auto& near = find_scenario(cat, "octahedral-near");
  EXPECT_NEAR(near.separation(), 0.126, 1e-12);
  EXPECT_NEAR(near.target_nafs[0].value, -near.target_nafs[1].value, 1e-15);
  EXPECT_EQ(near.range_m, 18.0);
  EXPECT_EQ(near.elevation_deg, -3.9);
  EXPECT_NEAR(find_scenario(cat, "wall-far").amplitude_db - find_scenario(cat, "octahedral-far").amplitude_db, 15.0,
              1e-12);
  const double seps[] = {0.209, 0.168, 0.126, 0.084};
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(cat[static_cast<std::size_t>(i)].separation(), seps[i], 1e-12);
    EXPECT_NEAR(cat[static_cast<std::size_t>(i + 4)].separation(), seps[i], 1e-12);
  }
  EXPECT_THROW(find_scenario(cat, "nope"), ConfigError);
}

TEST(BuildScene, TargetsAndRearWall) {
  const auto sc = scenario_catalog()[0];
  const auto scene = build_scene(sc, 3);
  ASSERT_EQ(scene.scatterers.size(), 2u + 17u);
  EXPECT_EQ(scene.scatterers[0].naf, sc.target_nafs[0]);
  EXPECT_NEAR(std::abs(scene.scatterers[0].amplitude), 1.0, 1e-12);
  double wall = 0.0;
  for (std::size_t i = 2; i < scene.scatterers.size(); ++i) {
    wall += std::norm(scene.scatterers[i].amplitude);
    EXPECT_EQ(scene.scatterers[i].range_m, 22.8);
  }
  EXPECT_NEAR(10 * std::log10(wall), sc.rear_wall.amplitude_db, 1e-9);
  EXPECT_NEAR(scene.scatterers[2].naf.value, -0.25, 1e-15);
  EXPECT_NEAR(scene.scatterers.back().naf.value, 0.25, 1e-15);
  const auto again = build_scene(sc, 3);
  EXPECT_EQ(again.scatterers[1].amplitude, scene.scatterers[1].amplitude);
}

TEST(Median, Basics) {
  EXPECT_EQ(median({3.0, 1.0, 2.0}), 2.0);
  EXPECT_EQ(median({4.0, 1.0, 2.0, 3.0}), 2.5);
  EXPECT_THROW(median({}), InputError);
}

TEST(GroundTruth, IdenticalFramesGiveFrameEstimate) {
  std::vector<std::vector<PeakEstimate>> frames(24, {at(-0.101), at(0.098)});
  const auto gt = estimate_ground_truth(frames, {NafAngle(-0.1), NafAngle(0.1)});
  EXPECT_DOUBLE_EQ(gt.naf[0].value, -0.101);
  EXPECT_DOUBLE_EQ(gt.naf[1].value, 0.098);
  EXPECT_EQ(gt.n_estimates[0], 24);
  EXPECT_FALSE(gt.fallback[0]);
}

TEST(GroundTruth, OutlierBarelyMovesMedian) {
  std::vector<std::vector<PeakEstimate>> frames;
  std::vector<double> t1;
  for (int f = 0; f < 24; ++f) {
    const double v = -0.1 + 0.0004 * f;
    t1.push_back(v);
    frames.push_back({at(v), at(0.1)});
  }
  const auto clean = estimate_ground_truth(frames, {NafAngle(-0.1), NafAngle(0.1)});
  frames[5][0] = at(-0.045);  // wild, still nearer T1
  const auto dirty = estimate_ground_truth(frames, {NafAngle(-0.1), NafAngle(0.1)});
  EXPECT_LE(std::abs(dirty.naf[0].value - clean.naf[0].value), 0.0004 + 1e-12);
}

TEST(GroundTruth, PartialFramesAndFallback) {
  std::vector<std::vector<PeakEstimate>> frames{{at(-0.1)}, {at(-0.098), at(-0.09)}, {}};
  const auto gt = estimate_ground_truth(frames, {NafAngle(-0.1), NafAngle(0.1)});
  // Frame 2: both peaks are nearer T1, the closer one wins.
  EXPECT_EQ(gt.n_estimates[0], 2);
  EXPECT_NEAR(gt.naf[0].value, -0.099, 1e-12);
  EXPECT_EQ(gt.n_estimates[1], 0);
  EXPECT_TRUE(gt.fallback[1]);
  EXPECT_EQ(gt.naf[1].value, 0.1);
}

TEST(MatchTargets, NearestAndMisses) {
  const auto m = match_targets({-0.1, 0.1}, {at(0.11), at(-0.095)});
  EXPECT_FALSE(m[0].miss);
  EXPECT_NEAR(m[0].error, 0.005, 1e-15);
  EXPECT_NEAR(m[1].error, 0.01, 1e-15);
  const auto e = match_targets({-0.1, 0.1}, {});
  EXPECT_TRUE(e[0].miss);
  EXPECT_TRUE(e[1].miss);
}

TEST(ScoreRmse, ZeroErrorAndConstantOffset) {
  std::vector<RunEstimate> runs;
  for (const auto& sc : scenario_catalog()) {
    const std::array<double, 2> t{sc.target_nafs[0].value, sc.target_nafs[1].value};
    runs.push_back(run(sc.name, sc.kind, Method::dft, t, {at(t[0]), at(t[1])}));
    runs.push_back(run(sc.name, sc.kind, Method::spline, t, {at(t[0] + 0.01), at(t[1])}));
  }
  const auto rep = score_rmse(runs, 1.0 / 30.0);
  EXPECT_EQ(rep.at("Total", "all", Method::dft).rmse, 0.0);
  EXPECT_NEAR(rep.at("Combined", "T1", Method::spline).rmse, 0.01, 1e-12);
  EXPECT_NEAR(rep.at("Combined", "T2", Method::spline).rmse, 0.0, 1e-12);
  EXPECT_NEAR(rep.at("Total", "all", Method::spline).rmse, std::sqrt(0.5 * 1e-4), 1e-12);
  EXPECT_NEAR(rep.at("Walls", "T1", Method::spline).error_variance, 0.0, 1e-15);
  EXPECT_EQ(rep.at("Reflectors", "all", Method::spline).matched, 8);
  EXPECT_DOUBLE_EQ(rep.at("Total", "all", Method::dft).detection_rate, 1.0);
}

TEST(ScoreRmse, PooledNotAveraged) {
  std::vector<RunEstimate> runs{
      run("octahedral-far", ReflectorKind::octahedral, Method::omp, {-0.1, 0.1}, {at(-0.1 + 0.03), at(0.1)}),
      run("octahedral-far", ReflectorKind::octahedral, Method::omp, {-0.1, 0.1}, {at(-0.1), at(0.1)}),
      run("wall-far", ReflectorKind::wall, Method::omp, {-0.1, 0.1}, {at(-0.1 + 0.01), at(0.1)}),
  };
  const auto rep = score_rmse(runs, 1.0 / 30.0);
  const double pooled = std::sqrt((0.03 * 0.03 + 0.0 + 0.01 * 0.01) / 3.0);
  EXPECT_NEAR(rep.at("Combined", "T1", Method::omp).rmse, pooled, 1e-12);
  const double mean_of = 0.5 * (std::sqrt(0.03 * 0.03 / 2.0) + 0.01);
  EXPECT_GT(std::abs(pooled - mean_of), 1e-4);
}

TEST(ScoreRmse, MissesExcludedAndCounted) {
  std::vector<RunEstimate> runs{
      run("octahedral-far", ReflectorKind::octahedral, Method::omp, {-0.1, 0.1}, {}),
      run("octahedral-far", ReflectorKind::octahedral, Method::omp, {-0.1, 0.1}, {at(-0.09), at(0.2)}),
  };
  const auto rep = score_rmse(runs, 1.0 / 30.0);
  const auto& c = rep.at("Reflectors", "T1", Method::omp);
  EXPECT_EQ(c.misses, 1);
  EXPECT_EQ(c.matched, 1);
  EXPECT_NEAR(c.rmse, 0.01, 1e-12);
  const auto& t2 = rep.at("Reflectors", "T2", Method::omp);
  EXPECT_EQ(t2.hits, 0);
  EXPECT_DOUBLE_EQ(t2.detection_rate, 0.0);
  EXPECT_DOUBLE_EQ(c.detection_rate, 0.5);
}

TEST(ScoreRmse, PermutationInvariant) {
  std::vector<PeakEstimate> p{at(0.07), at(-0.12), at(0.31)};
  auto a = score_rmse({run("wall-near", ReflectorKind::wall, Method::dft, {-0.063, 0.063}, p)}, 0.03);
  std::reverse(p.begin(), p.end());
  auto b = score_rmse({run("wall-near", ReflectorKind::wall, Method::dft, {-0.063, 0.063}, p)}, 0.03);
  EXPECT_EQ(a.at("Total", "all", Method::dft).rmse, b.at("Total", "all", Method::dft).rmse);
}

TEST(CrossTrack, ArcLength) {
  // asin on the visible NAF region, arc length at 18 m.
  const double m = naf_to_cross_track_m(0.017, 18.0);
  EXPECT_NEAR(m, 18.0 * std::asin(0.034), 1e-12);
  EXPECT_NEAR(m, 0.612, 1e-3);
  EXPECT_NEAR(naf_to_cross_track_m(0.0, 18.0), 0.0, 1e-15);
  EXPECT_THROW(naf_to_cross_track_m(0.6, 18.0), InputError);
}

TEST(RunComparison, NoiselessFarScenario) {
  auto sc = find_scenario(scenario_catalog(), "octahedral-far");
  sc.snr_db = 300.0;
  PipelineConfig cfg;
  cfg.frames_per_beam = 2;
  cfg.averaged_frames = 2;
  const auto res = run_comparison(sc, {Method::oversampled, Method::dft}, {11}, cfg);
  ASSERT_EQ(res.runs.size(), 2u);
  const auto& over = res.runs[0];
  ASSERT_EQ(over.peaks.size(), 2u);
  const auto m = match_targets({sc.target_nafs[0].value, sc.target_nafs[1].value}, over.peaks);
  EXPECT_LE(std::abs(m[0].error), 1.0 / 150.0);
  EXPECT_LE(std::abs(m[1].error), 1.0 / 150.0);
  EXPECT_EQ(res.first_seed_maps.at(Method::dft).angle_axis.size(), 81u);
}

TEST(RunComparison, DftUsesNineBeams) {
  PipelineConfig cfg;
  const MethodRunner runner(cfg);
  Eigen::MatrixXd amp = Eigen::MatrixXd::Ones(42, 81);
  const auto res = runner.run(Method::dft, amp, cfg.radio.range_axis());
  EXPECT_EQ(res.beams_used, 9);
  EXPECT_EQ(runner.run(Method::oversampled, amp, cfg.radio.range_axis()).beams_used, 81);
}

TEST(Evaluate, DeterministicReportBytes) {
  auto cat = scenario_catalog();
  std::vector<Scenario> two{cat[0], cat[7]};
  PipelineConfig cfg;
  cfg.frames_per_beam = 6;
  auto once = [&](int threads) {
    std::ostringstream s;
    write_report_json(s, evaluate(two, all_methods(), {5, 6}, cfg, threads), cfg);
    return s.str();
  };
  const std::string a = once(1);
  EXPECT_EQ(a, once(1));
  EXPECT_EQ(a, once(3));
}

TEST(Evaluate, ErrorsCarryScenarioContext) {
  auto sc = scenario_catalog()[0];
  PipelineConfig cfg;
  cfg.frames_per_beam = 2;
  cfg.averaged_frames = 6;
  try {
    run_comparison(sc, {Method::dft}, {1}, cfg);
    FAIL() << "expected an error";
  } catch (const std::exception& e) {
    EXPECT_NE(std::string(e.what()).find("octahedral-far"), std::string::npos) << e.what();
  }
}
