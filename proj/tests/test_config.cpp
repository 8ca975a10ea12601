#include <cmath>
#include <fstream>

#include "doctest.h"
#include "etmas/config.hpp"
#include "json.hpp"

using namespace etmas;

TEST_CASE("canonical dump round-trips bitwise") {
  RunConfig cfg;
  cfg.scenario = "robot-arms-rr";
  cfg.horizon = 15.0;
  cfg.step = 0.1 + 0.2;  // not exactly 0.3: %.17g must preserve it
  cfg.etm = "ttc";
  cfg.rho_ratio = 1.0 / 3.0;
  cfg.monitor = true;
  cfg.decimation = 7;
  cfg.ratios = {0.0, 0.5, 1.0};
  cfg.nets.resize(2);
  cfg.nets[1].T = 0.025;
  cfg.nets[1].rho = 0.0371 * 0.2;

  const std::string d1 = dump_config(cfg);
  const std::string d2 = dump_config(parse_config(d1));
  CHECK(d1 == d2);

  const RunConfig back = parse_config(d1);
  CHECK(back.step == cfg.step);
  CHECK(back.rho_ratio == cfg.rho_ratio);
  CHECK(back.ratios == cfg.ratios);
  REQUIRE(back.nets.size() == 2);
  CHECK_FALSE(back.nets[0].T.has_value());
  CHECK(*back.nets[1].T == 0.025);
  CHECK(*back.nets[1].rho == cfg.nets[1].rho);
}

TEST_CASE("comments, blank lines, sections, and the global reset") {
  const std::string text =
      "# full-line comment\n"
      "scenario = observers-coupled  # trailing comment\n"
      "\n"
      "[net 2]\n"
      "T = 0.5\n"
      "[global]\n"
      "horizon = 12\n"
      "[net 1]\n"
      "delay = 0.001\n";
  const RunConfig cfg = parse_config(text);
  CHECK(cfg.scenario == "observers-coupled");
  CHECK(cfg.horizon == 12.0);
  REQUIRE(cfg.nets.size() == 2);
  CHECK(*cfg.nets[1].T == 0.5);
  CHECK(*cfg.nets[0].delay == 0.001);
  CHECK_FALSE(cfg.nets[0].T.has_value());
}

TEST_CASE("later keys override earlier ones (flag appending)") {
  const RunConfig cfg = parse_config(
      "horizon = 100\nstep = 0.001\n[net 1]\nT = 0.2\n[global]\nhorizon = 5\n");
  CHECK(cfg.horizon == 5.0);
  CHECK(cfg.step == 0.001);
  CHECK(*cfg.nets[0].T == 0.2);
}

TEST_CASE("strict parsing errors") {
  CHECK_THROWS_AS(parse_config("speling = x\n"), ConfigViolation);
  CHECK_THROWS_AS(parse_config("horizon = ten\n"), ConfigViolation);
  CHECK_THROWS_AS(parse_config("horizon = 10 20\n"), ConfigViolation);
  CHECK_THROWS_AS(parse_config("etm = sometimes\n"), ConfigViolation);
  CHECK_THROWS_AS(parse_config("monitor = yes\n"), ConfigViolation);
  CHECK_THROWS_AS(parse_config("[nets 1]\nT = 1\n"), ConfigViolation);
  CHECK_THROWS_AS(parse_config("[net 0]\nT = 1\n"), ConfigViolation);
  CHECK_THROWS_AS(parse_config("[net 1\nT = 1\n"), ConfigViolation);
  CHECK_THROWS_AS(parse_config("justakey\n"), ConfigViolation);
  CHECK_THROWS_AS(parse_config("[net 1]\nhorizon = 3\n"), ConfigViolation);
  CHECK_THROWS_AS(parse_config("ratios = 0.1,abc\n"), ConfigViolation);
}

TEST_CASE("ratios parsing") {
  const RunConfig cfg = parse_config("ratios = 0, 0.25 , 0.5,1\n");
  CHECK(cfg.ratios == std::vector<double>{0.0, 0.25, 0.5, 1.0});
}

TEST_CASE("etm mode resolution") {
  RunConfig cfg;
  CHECK(etm_mode_of(cfg) == EtmMode::Decentralized);
  cfg.etm = "ttc";
  CHECK(etm_mode_of(cfg) == EtmMode::TimeTriggered);
  cfg.etm = "centralized";
  CHECK(etm_mode_of(cfg) == EtmMode::Centralized);
}

TEST_CASE("make_scenario applies overrides and validates the ordering") {
  RunConfig cfg;
  cfg.scenario = "observers-coupled";
  cfg.nets.resize(2);
  cfg.nets[0].T = 0.1;
  cfg.nets[0].h = 0.05;
  cfg.nets[1].rho = 0.123;
  const Scenario s = make_scenario(cfg);
  CHECK(s.nets[0].T == 0.1);
  CHECK(s.nets[0].h == 0.05);
  CHECK(s.nets[1].cert.rho == 0.123);
  CHECK(s.nets[1].T == 0.4);  // untouched

  RunConfig bad = cfg;
  bad.nets[0].h = 0.2;  // exceeds the overridden T
  CHECK_THROWS_AS(make_scenario(bad), ConfigViolation);

  RunConfig bad2;
  bad2.scenario = "robot-arms-rr";
  bad2.nets.resize(1);
  bad2.nets[0].Delta = 0.02;  // Delta > T = 0.015
  CHECK_THROWS_AS(make_scenario(bad2), ConfigViolation);

  RunConfig bad3;
  bad3.scenario = "observers-coupled";
  bad3.nets.resize(1);
  bad3.nets[0].delay = 0.01;  // exceeds min(Delta, h) with Delta = 0
  CHECK_THROWS_AS(make_scenario(bad3), ConfigViolation);

  RunConfig bad4;
  bad4.nets.resize(3);  // scenario only has two networks
  bad4.nets[2].T = 1.0;
  CHECK_THROWS_AS(make_scenario(bad4), ConfigViolation);

  RunConfig bad5;
  bad5.scenario = "no-such-scenario";
  CHECK_THROWS_AS(make_scenario(bad5), ConfigViolation);
}

TEST_CASE("load_config rejects a missing file") {
  CHECK_THROWS_AS(load_config("/nonexistent/path.cfg"), ConfigViolation);
}

TEST_CASE("shipped constants match the golden file") {
  std::ifstream f(std::string(ETMAS_SOURCE_DIR) + "/tests/golden/constants.json");
  REQUIRE(f.good());
  const nlohmann::json g = nlohmann::json::parse(f);

  auto near = [](double a, double b) { return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(b)); };

  const auto& ra = g["robot_arms"];
  for (ProtocolKind proto : {ProtocolKind::RoundRobin, ProtocolKind::TryOnceDiscard}) {
    const RobotArmConstants c = robot_arm_constants(proto);
    CHECK(near(c.a1, ra["a1"]));
    CHECK(near(c.a2, ra["a2"]));
    CHECK(near(c.c1, ra["c1"]));
    CHECK(near(c.c2, ra["c2"]));
    CHECK(near(c.b_coupling, ra["b_coupling"]));
    CHECK(near(c.rho_bar1, ra["rho_bar1"]));
    CHECK(near(c.rho_bar2, ra["rho_bar2"]));
    CHECK(near(c.gamma10, ra["gamma10"]));
    CHECK(near(c.gamma20, ra["gamma20"]));
    const auto& p = ra[proto == ProtocolKind::RoundRobin ? "rr" : "tod"];
    CHECK(near(c.L10, p["L10"]));
    CHECK(near(c.L11, p["L11"]));
    CHECK(near(c.L20, p["L20"]));
    CHECK(near(c.L21, p["L21"]));
    CHECK(near(c.gamma11, p["gamma11"]));
    CHECK(near(c.gamma21, p["gamma21"]));
    CHECK(near(c.phi0_net1, p["phi0_net1"]));
    CHECK(near(c.phi0_net2, p["phi0_net2"]));
    CHECK(near(c.T_fig, p["T"]));
    CHECK(near(c.Delta_fig, p["Delta"]));
  }

  const ObserverConstants oc = observer_constants();
  const auto& ob = g["observers"];
  CHECK(near(oc.L1, ob["L1"]));
  CHECK(near(oc.L2, ob["L2"]));
  CHECK(near(oc.gamma1, ob["gamma1"]));
  CHECK(near(oc.gamma2, ob["gamma2"]));
  CHECK(near(oc.mu1, ob["mu1"]));
  CHECK(near(oc.mu2, ob["mu2"]));
  CHECK(near(oc.chi1, ob["chi1"]));
  CHECK(near(oc.chi2, ob["chi2"]));
  CHECK(near(oc.T1, ob["T1"]));
  CHECK(near(oc.T2, ob["T2"]));
  for (int k = 0; k < 3; ++k) {
    CHECK(near(oc.J1[k], ob["J1"][k]));
    CHECK(near(oc.J12[k], ob["J12"][k]));
    CHECK(near(oc.J21[k], ob["J21"][k]));
    CHECK(near(oc.J2[k], ob["J2"][k]));
    CHECK(near(oc.x_p0[k], ob["x_p0"][k]));
    CHECK(near(oc.x_ob1_0[k], ob["x_ob1_0"][k]));
    CHECK(near(oc.x_ob2_0[k], ob["x_ob2_0"][k]));
    CHECK(near(oc.vartheta1_0[k], ob["vartheta1_0"][k]));
    CHECK(near(oc.vartheta2_0[k], ob["vartheta2_0"][k]));
  }
}
