#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "optdesign/errors.hpp"
#include "optdesign/io.hpp"
#include "optdesign/slr.hpp"

using namespace optdesign;

TEST_CASE("format_fixed") {
  CHECK(format_fixed(0.35584, 3) == "0.356");
  CHECK(format_fixed(-0.0001, 3) == "0.000");
  CHECK(format_fixed(-0.9704, 3) == "-0.970");
  CHECK(format_fixed(1.0, 2) == "1.00");
}

TEST_CASE("design JSON round trip") {
  const DesignSpace s(1.0, 5.0);
  const Design d = make_design({{1.0, 0.644159729723798}, {5.0, 0.355840270276202}}, s);
  const Design back = design_from_json(design_to_json(d));
  CHECK(back == d);

  const OptimizeResult res = optimize_design(OptimizeRequest(slr_model(s), CriterionSpec::r()));
  const std::string json = result_to_json(res, slr_model(s), CriterionSpec::r());
  CHECK(design_from_json(json) == res.design);
  CHECK(json.find("\"status\": \"certified\"") != std::string::npos);

  CHECK(design_from_json(R"({"points": [{"x": 2, "w": 1}]})", &s).lowest().x == 2.0);
  CHECK_THROWS_AS(design_from_json(R"({"points": [{"x": 2, "w": 1}]})"), InvalidArgument);
  CHECK_THROWS_AS(design_from_json("{"), InvalidArgument);
  CHECK_THROWS_AS(design_from_json(R"({"points": [{"x": 2}]})", &s), InvalidArgument);
  CHECK_THROWS_AS(design_from_json(R"({"points": [{"x": 9, "w": 1}]})", &s), InvalidArgument);
}

TEST_CASE("slr table CSV layout") {
  const std::vector<double> as{1.0, 0.0};
  const std::string csv = slr_table_csv(table_slr(as, 5.0));
  std::istringstream in(csv);
  std::string header, row1, row2;
  std::getline(in, header);
  std::getline(in, row1);
  std::getline(in, row2);
  CHECK(header == "a,p_R,p_r2,eff_d_r,eff_d_r2,eff_r_d,eff_r_r2,corr_d,corr_r,corr_r2");
  CHECK(row1 == "1,0.356,0.167,0.958,0.745,0.934,0.837,-0.832,-0.785,-0.745");
  CHECK(row2.rfind("0,0.333,,", 0) == 0);
  CHECK(row2.back() == ',');
  CHECK(slr_table_csv(table_slr(as, 5.0)) == csv);
}

TEST_CASE("table and sweep CSV headers") {
  CHECK(mm_designs_csv({}) == "eps,criterion,a,p\n");
  CHECK(mm_efficiencies_csv({}) == "eps,criterion,eff_d,eff_sa,eff_r,eff_em,eff_r2,r2\n");
  CHECK(front_csv({}, 1.0) == "eff_d,eff_r,p,a,r2\n");
  CHECK(sweep_csv({}) == "p,phi_d,phi_r,phi_r2,corr\n");

  MmEfficiencyRow row;
  row.eps = 0.05;
  row.criterion = CriterionKind::EM;
  row.eff_d = 0.1834;
  const std::vector<MmEfficiencyRow> rows{row};
  CHECK(mm_efficiencies_csv(rows) ==
        "eps,criterion,eff_d,eff_sa,eff_r,eff_em,eff_r2,r2\n0.05,EM,0.18,,,,,\n");

  const std::vector<SweepRow> sweep{{0.5, 2.0, 2.5, 0.36, -0.6}};
  CHECK(sweep_csv(sweep) == "p,phi_d,phi_r,phi_r2,corr\n0.5,2,2.5,0.36,-0.6\n");
}

TEST_CASE("atomic writes replace the target") {
  const auto dir = std::filesystem::temp_directory_path() / "optdesign_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.csv";
  write_file_atomic(path, "first\n");
  write_file_atomic(path, "second\n");
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == "second\n");
  CHECK_FALSE(std::filesystem::exists(dir / "out.csv.tmp"));
  std::filesystem::remove_all(dir);
}
