#include <cstdio>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "lcb/errors.hpp"
#include "lcb/io.hpp"

using namespace lcb;
using namespace lcb::testing;

namespace {

const Rectangle kChart{0.5, 0.5, 21, 21};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

TEST(Json, FieldFormats) {
  const auto h = field_from_json(json::parse(R"({"trig": {"M": 1.5}})"));
  EXPECT_DOUBLE_EQ(h(0.0, 0.0), 3.0);
  EXPECT_EQ(field_to_json(h), json::parse(R"({"trig": {"M": 1.5}})"));
  const auto mixed = field_from_json(json::parse(R"({"coeffs": [[1, 2], [3]], "sin": 0.5})"));
  EXPECT_DOUBLE_EQ(mixed(0.5, 1.0), 1 + 2 + 1.5 + 0.5 * std::sin(0.5));
  EXPECT_EQ(field_from_json(field_to_json(mixed)), mixed);
  EXPECT_THROW(field_from_json(json::parse(R"({"nope": 1})")), ConfigError);
  EXPECT_THROW(field_from_json(json::parse(R"({"coeffs": "x"})")), ConfigError);
}

TEST(Json, SystemRoundTrip) {
  auto sys = iwp_system(kIwp);
  sys.b = SmoothField2D::polynomial({{1.0, 0.1}, {0.2}});
  const auto back = system_from_json(system_to_json(sys));
  EXPECT_EQ(back.a, sys.a);
  EXPECT_EQ(back.b, sys.b);
  EXPECT_EQ(back.h, sys.h);
  EXPECT_EQ(back.domain, sys.domain);
  EXPECT_TRUE(back.periodic);
  EXPECT_THROW(system_from_json(json::parse(R"({"a": {"coeffs": [[1]]}})")), ConfigError);
  const auto minimal = system_from_json(json::parse(
      R"({"a": {"coeffs": [[2]]}, "b": {"coeffs": [[1]]}, "c": {"coeffs": [[1]]}, "h": {"trig": {"M": 1}}})"));
  EXPECT_FALSE(minimal.periodic);
  EXPECT_EQ(minimal.domain, Rectangle{});
}

TEST(Json, ControllerRoundTrip) {
  const auto ctrl = iwp_controller(kChart, 0.7, 1.3);
  const auto back = controller_from_json(json::parse(controller_to_json(ctrl).dump()));
  EXPECT_EQ(back.gamma0(), ctrl.gamma0());
  EXPECT_EQ(back.kappa(), 0.7);
  EXPECT_EQ(back.l(), 1.3);
  EXPECT_EQ(back.chart(), kChart);
  EXPECT_EQ(back.delta().values(), ctrl.delta().values());
  EXPECT_EQ(back.v().values(), ctrl.v().values());
  EXPECT_DOUBLE_EQ(back.boundary().s1, 0.1);
  const State s{0.13, -0.21, 0.3, 0.1};
  EXPECT_NEAR(lambda_value(back, s), lambda_value(ctrl, s), 1e-12);
  EXPECT_NEAR(lyapunov_value(back, s), lyapunov_value(ctrl, s), 1e-14);
}

TEST(Json, FileErrors) {
  EXPECT_THROW(read_json_file("/nonexistent/x.json"), ConfigError);
  const auto path = (std::filesystem::temp_directory_path() / "lcb_bad.json").string();
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  EXPECT_THROW(read_json_file(path), ConfigError);
  write_json_file(path, json{{"k", 1}});
  EXPECT_EQ(read_json_file(path)["k"], 1);
  std::remove(path.c_str());
}

TEST(Json, Reports) {
  const auto sys = iwp_system(kIwp);
  const auto jr = to_json(check_condpos2(sys));
  EXPECT_EQ(jr["clause_bc"], -1.0);
  EXPECT_EQ(jr["stabilizable"], true);
  const auto jg = to_json(choose_gamma(sys, std::nullopt));
  EXPECT_EQ(jg["gamma0"], 3.0);
  EXPECT_EQ(jg["route"], "c1");
  const auto jh = to_json(hessian_v_origin(sys, kGamma, iwp_boundary()));
  EXPECT_EQ(jh["det"], 0.25);
  const auto jv = to_json(validate_system(sys));
  EXPECT_EQ(jv["checks"].size(), 4u);
  const auto jres = to_json(Residual{0.5, 1, 2}, kChart);
  EXPECT_EQ(jres["at"][0], kChart.x(1));
}

TEST(FieldCsv, HeaderOrderAndRoundTrip) {
  const auto ctrl = iwp_controller(kChart);
  std::stringstream ss;
  write_field_csv(ss, ctrl.v());
  std::string header, first, second;
  std::getline(ss, header);
  std::getline(ss, first);
  std::getline(ss, second);
  EXPECT_EQ(header, "x,y,value");
  // j outer, i inner: the first two rows share y and step in x.
  EXPECT_EQ(split(first)[1], split(second)[1]);
  EXPECT_LT(std::stod(split(first)[0]), std::stod(split(second)[0]));
  EXPECT_DOUBLE_EQ(std::stod(split(first)[0]), -0.5);

  ss.clear();
  ss.seekg(0);
  const auto back = read_field_csv(ss);
  EXPECT_EQ(back.domain(), kChart);
  EXPECT_EQ(back.values(), ctrl.v().values());

  std::stringstream bad("x,y,val\n");
  EXPECT_THROW(read_field_csv(bad), ConfigError);
}

TEST(TrajectoryCsv, HeaderAndDecreasingV) {
  const auto ctrl = iwp_controller(kChart);
  SimOptions opt;
  opt.t_final = 5.0;
  opt.record_every = 50;
  const auto traj = integrate(ctrl, {0.1, 0.1, 0.0, 0.0}, opt);
  std::stringstream ss;
  write_trajectory_csv(ss, traj);
  std::string line;
  std::getline(ss, line);
  EXPECT_EQ(line, "t,x,y,px,py,V,mu,lambda,dVdt");
  std::size_t rows = 0;
  double prev_v = 1e300;
  while (std::getline(ss, line)) {
    const auto cells = split(line);
    ASSERT_EQ(cells.size(), 9u);
    const double v = std::stod(cells[5]);
    EXPECT_LE(v, prev_v + 1e-9);
    EXPECT_GE(std::stod(cells[6]), 0.0);
    prev_v = v;
    ++rows;
  }
  EXPECT_EQ(rows, traj.samples.size());
}
