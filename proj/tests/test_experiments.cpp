#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "caustic/csv.hpp"
#include "caustic/errors.hpp"
#include "caustic/experiments.hpp"

using namespace caustic;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("caustic_tests_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("preset registry") {
  const auto& reg = preset_registry();
  CHECK(reg.size() == 14);
  const Preset& f = find_preset("focal-alpha2.5");
  CHECK(f.grid.size() == 1024);
  CHECK(f.params.epsilon == doctest::Approx(1.0 / 150));
  CHECK(f.params.sigma == 2.0);
  const Preset& s = find_preset("scatter-sigma2-lambda-1");
  CHECK(s.params.lambda == -1.0);
  CHECK(s.grid.size() == 8192);
  CHECK(s.dt == doctest::Approx(2 * 55.0 / 20000));
  CHECK(find_preset("cusp-alpha3").grid.size() == 4096);
  CHECK_THROWS_AS(find_preset("nope"), ValidationError);
  for (const Preset& p : reg) CHECK_NOTHROW(p.validate());
}

TEST_CASE("config and overrides") {
  Preset p = focal_preset(2.5);
  apply_config_text(p, R"({"preset": "cusp-alpha3", "dt": 0.002, "params": {"lambda": 2.0},
                           "grid": {"num_points": 2048}, "scheme": "lie"})");
  CHECK(p.name == "cusp-alpha3");
  CHECK(p.kind == PresetKind::Cusp);
  CHECK(p.dt == 0.002);
  CHECK(p.params.lambda == 2.0);
  CHECK(p.params.alpha == 3.0);
  CHECK(p.grid.size() == 2048);
  CHECK(p.scheme == SplitScheme::Lie);

  Overrides ov;
  ov.dt = 0.0005;
  ov.modes = 512;
  ov.scheme = SplitScheme::Strang;
  apply_overrides(p, ov);
  CHECK(p.dt == 0.0005);
  CHECK(p.grid.size() == 512);
  CHECK(p.scheme == SplitScheme::Strang);

  CHECK_THROWS_AS(apply_config_text(p, R"({"bogus": 1})"), ValidationError);
  CHECK_THROWS_AS(apply_config_text(p, R"({"params": {"alpha": 0.5}})"), ValidationError);
  CHECK_THROWS_AS(apply_config_text(p, R"({"dt": "fast"})"), ValidationError);
  CHECK_THROWS_AS(apply_config_text(p, "not json"), ValidationError);
  Overrides bad;
  bad.dt = 0.3;
  CHECK_THROWS_AS(apply_overrides(p, bad), ValidationError);  // 3.5 / 0.3 is not whole

  const fs::path dir = scratch("config");
  fs::create_directories(dir);
  std::ofstream(dir / "c.json") << R"({"preset": "focal-alpha2", "t_final": 1.5})";
  Preset q = focal_preset(2.5);
  apply_config_file(q, dir / "c.json");
  CHECK(q.params.alpha == 2.0);
  CHECK(q.t_final == 1.5);
  CHECK_THROWS_AS(apply_config_file(q, dir / "missing.json"), ValidationError);
}

TEST_CASE("csv writers") {
  const fs::path dir = scratch("csv");
  const GridSpec g(0.0, 1.0, 4);
  WaveField f(g);
  f[1] = Complex(0.5, -0.25);
  write_wave_csv(dir / "w.csv", f);
  CHECK(slurp(dir / "w.csv") ==
        "x,re,im,density\n0,0,0,0\n0.25,0.5,-0.25,0.3125\n0.5,0,0,0\n0.75,0,0,0\n");
  write_spectrum_csv(dir / "s.csv", SpectrumField(g));
  CHECK(slurp(dir / "s.csv").rfind("k,re,im,magnitude\n-2,0,0,0\n", 0) == 0);
  write_series_csv(dir / "t.csv", {{0.1, 1, 2, 3, 4}});
  CHECK(slurp(dir / "t.csv") ==
        "t,mass,energy,sup_norm,sigma_norm\n0.10000000000000001,1,2,3,4\n");
  CHECK_THROWS_AS(write_table_csv(dir / "x.csv", {"a", "b"}, {{1.0}}), ValidationError);
}

TEST_CASE("focal runs are deterministic and ordered") {
  const fs::path a = scratch("focal_a"), b = scratch("focal_b"), c = scratch("focal_c");
  const FocalSummary sub = run_focal(focal_preset(2.5), a);
  run_focal(focal_preset(2.5), b);
  for (const char* name : {"linear_final.csv", "nonlinear_final.csv", "maslov.csv", "series_nonlinear.csv"}) {
    CHECK(slurp(a / name) == slurp(b / name));
  }
  const FocalSummary crit = run_focal(focal_preset(2.0), c);
  CHECK(sub.l2_error < crit.l2_error);
  CHECK(sub.sup_error < crit.sup_error);
  CHECK(sub.regime == Regime::LinearCaustic_LinearProp);
  CHECK(crit.regime == Regime::NonlinearCaustic_LinearProp);
  CHECK(sub.mass_drift_nonlinear <= kMassDriftLimit);

  const auto meta = nlohmann::json::parse(slurp(a / "meta.json"));
  CHECK(meta.at("preset").at("dt") == 1e-3);
  CHECK(meta.at("preset").at("grid").at("num_points") == 1024);
  CHECK(meta.at("summary").contains("mass_drift_nonlinear"));
  CHECK(meta.contains("wall_time_s"));

  // series rows: t = 0 then every 10 steps
  std::istringstream rows(slurp(a / "series_linear.csv"));
  std::string line;
  std::size_t count = 0;
  while (std::getline(rows, line)) ++count;
  CHECK(count == 1 + 201);
}

TEST_CASE("convergence and alias drivers") {
  const ConvergenceSummary conv = run_convergence(scratch("conv"), 128);
  CHECK(conv.lie_slope == doctest::Approx(1.0).epsilon(0.2));
  CHECK(conv.strang_slope == doctest::Approx(2.0).epsilon(0.1));
  for (double e : conv.linear_errors) CHECK(e <= 1e-12);

  const AliasSummary al = run_alias_check(scratch("alias"));
  CHECK(al.fold_max_error <= 1e-12);
  CHECK(al.band_limited_error <= 1e-11);
  CHECK(al.out_of_band_error > 0.1);
  CHECK(al.gaussian_tail_monotone);
  CHECK(al.chirp_tail_ratio >= 100);
}

TEST_CASE("parallel_for") {
  std::vector<int> hits(50, 0);
  parallel_for(50, 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) { if (i == 7) throw BlowUp("x"); }), BlowUp);
}

TEST_CASE("loglog slope") {
  CHECK(loglog_slope({1, 2, 4}, {3, 12, 48}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(loglog_slope({1}, {1}), ValidationError);
  CHECK_THROWS_AS(loglog_slope({1, 2}, {0, 1}), ValidationError);
}
