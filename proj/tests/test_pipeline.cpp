#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <random>

#include "geoprint/error.hpp"
#include "geoprint/pipeline.hpp"
#include "geoprint/suite.hpp"

using namespace geoprint;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("geoprint_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidArgument;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(GEOPRINT_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, JsonRoundTrip) {
  PipelineConfig cfg;
  cfg.image = "a.pbm";
  cfg.n_robots = 3;
  cfg.rng_seed = 99;
  cfg.pitch = 0.25;
  cfg.starts = std::vector<Vec2>{{0, 40}, {10, 40}, {20, 40.5}};
  cfg.output_dir = "runs/x";
  const PipelineConfig back = config_from_json(config_to_json(cfg));
  EXPECT_EQ(config_to_json(back), config_to_json(cfg));
  EXPECT_EQ(back.starts->at(2), (Vec2{20, 40.5}));
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  EXPECT_EQ(kind_of([] { config_from_json(json{{"robots", 3}}); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { config_from_json(json{{"n_robots", "three"}}); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { config_from_json(json::array()); }), ErrorKind::Parse);
  PipelineConfig cfg;
  cfg.v_print = 50;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(AutoStarts, ClearAndDeterministic) {
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto starts = auto_starts(n, 2.0, 64, 64, 7);
    ASSERT_EQ(starts.size(), n);
    EXPECT_TRUE(check_clearance(starts, 2.0).ok);
    EXPECT_EQ(starts, auto_starts(n, 2.0, 64, 64, 7));
    for (const Vec2& p : starts) EXPECT_GT(p.y, 63.0);
  }
}

TEST(AutoFrameStride, TargetsFiftyFrames) {
  EXPECT_EQ(auto_frame_stride(0.0, 0.05), 1u);
  EXPECT_EQ(auto_frame_stride(1.0, 0.05), 1u);
  EXPECT_EQ(auto_frame_stride(100.0, 0.05), 40u);
}

TEST(Serialize, NumbersAreShortestRoundTrip) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(3.0), "3");
  EXPECT_EQ(format_number(std::nan("")), "nan");
  std::mt19937_64 gen(1);
  for (int k = 0; k < 200; ++k) {
    const double v = std::uniform_real_distribution<>(-1e6, 1e6)(gen);
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
}

TEST(Serialize, ArtifactsRoundTrip) {
  const BinaryRaster raster = four_fold_disks();
  const GeodesicCells cells = cluster(raster, {4, 3});
  const GeodesicCells cells_back = cells_from_json(cells_to_json(cells), raster);
  EXPECT_EQ(cells_back.membership, cells.membership);
  EXPECT_EQ(cells_back.means, cells.means);
  EXPECT_EQ(cells_back.cost_history, cells.cost_history);

  const Fleet fleet({{0, 2.0, {1, 80}, 10, 30}, {5, 2.0, {20.125, 80}, 10, 30}});
  const Fleet fleet_back = fleet_from_json(fleet_to_json(fleet));
  EXPECT_EQ(fleet_to_json(fleet_back), fleet_to_json(fleet));

  AssignmentResult a{{1, 0}, 12.5, true, 0.0, 3.75};
  const AssignmentResult a_back = assignment_from_json(assignment_to_json(a));
  EXPECT_EQ(a_back.perm, a.perm);
  EXPECT_EQ(a_back.tf, a.tf);
  EXPECT_EQ(kind_of([] { assignment_from_json(json{{"perm", {0, 0}}, {"total_sq_cost", 0}, {"clearance_ok", true},
                                                   {"t0", 0}, {"tf", 1}}); }),
            ErrorKind::Parse);

  std::vector<MotionPlan> plans;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    plans.push_back(serpentine_plan(cells.cells[i], static_cast<int>(i)));
    prepend_lead_in(plans.back(), cells.means[i]);
  }
  const std::string csv = plans_to_csv(plans);
  EXPECT_EQ(csv.rfind("robot_id,seq,mode,x0,y0,x1,y1,length_px\n", 0), 0u);
  const auto plans_back = plans_from_csv(csv);
  ASSERT_EQ(plans_back.size(), plans.size());
  for (std::size_t i = 0; i < plans.size(); ++i) {
    EXPECT_EQ(plans_back[i].robot_id, plans[i].robot_id);
    ASSERT_EQ(plans_back[i].segments.size(), plans[i].segments.size());
    for (std::size_t k = 0; k < plans[i].segments.size(); ++k) {
      EXPECT_EQ(plans_back[i].segments[k].start, plans[i].segments[k].start);
      EXPECT_EQ(plans_back[i].segments[k].end, plans[i].segments[k].end);
      EXPECT_EQ(plans_back[i].segments[k].mode, plans[i].segments[k].mode);
      EXPECT_EQ(plans_back[i].segments[k].length, plans[i].segments[k].length);
    }
    EXPECT_DOUBLE_EQ(plans_back[i].print_length, plans[i].print_length);
  }
  EXPECT_EQ(kind_of([] { plans_from_csv("robot_id,seq,mode,x0,y0,x1,y1,length_px\n0,0,FLY,0,0,1,1,1\n"); }),
            ErrorKind::Parse);
}

TEST(Suite, GeneratedImages) {
  const BinaryRaster board = checkerboard(32, 32);
  EXPECT_EQ(count_printable(board), 512u);
  EXPECT_TRUE(board.printable(0, 0));
  EXPECT_FALSE(board.printable(1, 0));

  const GeodesicCells four = cluster(four_fold_disks(), {4, 1});
  const auto counts = four.membership.counts();
  EXPECT_LE(*std::max_element(counts.begin(), counts.end()) - *std::min_element(counts.begin(), counts.end()), 1u);

  const auto a = flatness_suite(5), b = flatness_suite(5);
  ASSERT_EQ(a.size(), 8u);
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].raster, b[k].raster);
    EXPECT_GT(count_printable(a[k].raster), 0u);
  }

  const fs::path dir = scratch("suite");
  const auto paths = gen_suite(dir, 5);
  EXPECT_EQ(paths.size(), 10u);
  for (const auto& p : paths) EXPECT_NO_THROW(load_pbm(p));
}

TEST(StripPartition, CoversEveryPixel) {
  const BinaryRaster raster = flatness_suite(1)[2].raster;
  const GeodesicCells strips = strip_partition(raster, 4);
  std::size_t total = 0;
  for (const auto& c : strips.cells) total += c.size();
  EXPECT_EQ(total, count_printable(raster));
  EXPECT_EQ(strips.means.size(), 4u);
}

TEST(Pipeline, WritesArtifactTree) {
  const fs::path dir = scratch("run");
  write_pbm(four_fold_disks(), dir / "disks.pbm");
  PipelineConfig cfg;
  cfg.image = (dir / "disks.pbm").string();
  cfg.n_robots = 4;
  cfg.output_dir = (dir / "out").string();
  const PipelineResult r = run_pipeline(cfg);
  for (const char* name : {"config.json", "cells.json", "cells.ppm", "fleet.json", "assignment.json", "plan.csv",
                           "cost.csv", "outcome.json"}) {
    EXPECT_TRUE(fs::exists(dir / "out" / name)) << name;
  }
  EXPECT_TRUE(fs::exists(dir / "out" / "frames" / "frame_00000.ppm"));
  std::size_t frames = 0;
  for (const auto& e : fs::directory_iterator(dir / "out" / "frames")) frames += e.is_regular_file() ? 1 : 0;
  EXPECT_EQ(frames, r.outcome.frames_emitted);
  EXPECT_EQ(r.outcome.printed_count, count_printable(r.raster));
  EXPECT_EQ(r.outcome.overprinted, 0u);
  ASSERT_TRUE(r.report.objective.has_value());

  const json outcome = read_json(dir / "out" / "outcome.json");
  EXPECT_EQ(outcome["makespan"].get<double>(), r.outcome.makespan);
  const std::string cost = read_text(dir / "out" / "cost.csv");
  EXPECT_EQ(cost.rfind("robot_id,approach_time,T_i\n", 0), 0u);
  EXPECT_NE(cost.find("\nobjective,"), std::string::npos);
}

TEST(Pipeline, ErrorKindsAndExitCodes) {
  const fs::path dir = scratch("errors");
  BinaryRaster tiny = BinaryRaster::blank(4, 4);
  tiny.set(1, 1, true);
  tiny.set(2, 2, true);
  write_pbm(tiny, dir / "tiny.pbm");
  write_pbm(BinaryRaster::blank(4, 4), dir / "blank.pbm");

  PipelineConfig cfg;
  cfg.image = (dir / "tiny.pbm").string();
  cfg.output_dir = (dir / "out").string();
  cfg.n_robots = 3;
  EXPECT_EQ(kind_of([&] { run_pipeline(cfg); }), ErrorKind::Infeasible);

  cfg.image = (dir / "blank.pbm").string();
  cfg.n_robots = 1;
  EXPECT_EQ(kind_of([&] { run_pipeline(cfg); }), ErrorKind::EmptyImage);

  cfg.image = (dir / "tiny.pbm").string();
  cfg.n_robots = 2;
  cfg.radius = 1.0;
  cfg.starts = std::vector<Vec2>{{0, 8}, {2, 8}};
  EXPECT_EQ(kind_of([&] { run_pipeline(cfg); }), ErrorKind::Clearance);
  PipelineOptions forced;
  forced.force = true;
  forced.write_outputs = false;
  EXPECT_NO_THROW(run_pipeline(cfg, forced));

  cfg.image = (dir / "missing.pbm").string();
  EXPECT_EQ(kind_of([&] { run_pipeline(cfg); }), ErrorKind::Io);

  EXPECT_EQ(exit_code(Error(ErrorKind::Infeasible, "")), 2);
  EXPECT_EQ(exit_code(Error(ErrorKind::EmptyImage, "")), 2);
  EXPECT_EQ(exit_code(Error(ErrorKind::Clearance, "")), 3);
  EXPECT_EQ(exit_code(Error(ErrorKind::Parse, "")), 4);
  EXPECT_EQ(exit_code(Error(ErrorKind::Io, "")), 4);
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch("cli");
  BinaryRaster tiny = BinaryRaster::blank(4, 4);
  tiny.set(1, 1, true);
  tiny.set(2, 2, true);
  write_pbm(tiny, dir / "tiny.pbm");
  write_pbm(four_fold_disks(), dir / "disks.pbm");
  const std::string out = " --out " + (dir / "out").string();

  EXPECT_EQ(run_cli("pipeline --image " + (dir / "disks.pbm").string() + " --n-robots 4" + out), 0);
  EXPECT_TRUE(fs::exists(dir / "out" / "outcome.json"));
  EXPECT_EQ(run_cli("pipeline --image " + (dir / "tiny.pbm").string() + " --n-robots 3" + out), 2);
  EXPECT_EQ(run_cli("pipeline --image " + (dir / "tiny.pbm").string() +
                    " --n-robots 2 --radius 1 --start 0,8 --start 2,8" + out),
            3);
  EXPECT_EQ(run_cli("pipeline --image " + (dir / "nope.pbm").string() + out), 4);
  EXPECT_EQ(run_cli("pipeline --bogus-flag"), 4);
  EXPECT_EQ(run_cli("gen-suite --out " + (dir / "suite").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "suite" / "worst_checkerboard.pbm"));
}

TEST(Cli, StagewiseMatchesPipeline) {
  const fs::path dir = scratch("stages");
  write_pbm(four_fold_disks(), dir / "disks.pbm");
  const std::string common = " --image " + (dir / "disks.pbm").string() + " --n-robots 4 --seed 11";
  ASSERT_EQ(run_cli("pipeline" + common + " --out " + (dir / "full").string()), 0);
  const std::string s = " --out " + (dir / "staged").string();
  const std::string cells = " --cells " + (dir / "staged" / "cells.json").string();
  const std::string fleet = " --fleet " + (dir / "staged" / "fleet.json").string();
  const std::string assign = " --assignment " + (dir / "staged" / "assignment.json").string();
  ASSERT_EQ(run_cli("cluster" + common + s), 0);
  ASSERT_EQ(run_cli("assign" + common + cells + s), 0);
  ASSERT_EQ(run_cli("plan" + common + cells + fleet + assign + s), 0);
  ASSERT_EQ(run_cli("simulate" + common + cells + fleet + assign + " --plan " +
                    (dir / "staged" / "plan.csv").string() + s),
            0);
  for (const char* name : {"cells.json", "assignment.json", "plan.csv", "outcome.json"}) {
    EXPECT_EQ(read_text(dir / "staged" / name), read_text(dir / "full" / name)) << name;
  }
}
