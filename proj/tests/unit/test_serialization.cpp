#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "gkm/error.hpp"
#include "gkm/finite_volume.hpp"
#include "gkm/graph.hpp"
#include "gkm/graphon.hpp"
#include "gkm/initial_density.hpp"
#include "gkm/serialization.hpp"

using namespace gkm;

TEST(FormatDouble, RoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) EXPECT_EQ(std::stod(format_double(v)), v);
}

TEST(GraphonJson, RoundTrip) {
  for (const Graphon& w : {Graphon::constant(0.3), Graphon::small_world(0.1, 0.2), Graphon::nearest_neighbor(0.25),
                           Graphon::step(cell_average(Graphon::small_world(0.1, 0.2), 3))}) {
    const Graphon back = graphon_from_json(graphon_to_json(w));
    EXPECT_EQ(back.kind(), w.kind());
    for (double x : {0.1, 0.45, 0.9})
      for (double y : {0.05, 0.5, 0.77}) EXPECT_EQ(back.eval(x, y), w.eval(x, y));
  }
}

TEST(GraphonJson, Errors) {
  EXPECT_THROW(graphon_to_json(Graphon::custom([](double, double) { return 0.0; })), std::invalid_argument);
  EXPECT_THROW(graphon_from_json("{"), ParseError);
  EXPECT_THROW(graphon_from_json(R"({"kind":"ring"})"), ParseError);
  EXPECT_THROW(graphon_from_json(R"({"kind":"constant","p":0.5,"q":1})"), ParseError);
  EXPECT_THROW(graphon_from_json(R"({"kind":"constant"})"), ParseError);
}

TEST(MatrixCsv, RoundTripAndHeaderless) {
  const SquareMatrix m = cell_average(Graphon::small_world(0.1, 0.2), 4).values();
  std::stringstream ss;
  write_matrix_csv(ss, m);
  EXPECT_EQ(read_matrix_csv(ss), m);
  std::istringstream bare("1,0\n0,1\n");
  const SquareMatrix id = read_matrix_csv(bare);
  EXPECT_EQ(id.size(), 2u);
  EXPECT_EQ(id(1, 1), 1.0);
  EXPECT_EQ(id(0, 1), 0.0);
}

TEST(MatrixCsv, Errors) {
  std::istringstream empty("");
  EXPECT_THROW(read_matrix_csv(empty), ParseError);
  std::istringstream ragged("1,0\n0\n");
  EXPECT_THROW(read_matrix_csv(ragged), ParseError);
  std::istringstream rect("1,0,1\n0,1,0\n");
  EXPECT_THROW(read_matrix_csv(rect), ParseError);
  std::istringstream header("n=3\n1,0\n0,1\n");
  EXPECT_THROW(read_matrix_csv(header), ParseError);
  std::istringstream junk("1,x\n0,1\n");
  EXPECT_THROW(read_matrix_csv(junk), ParseError);
}

TEST(FamilyCsv, RoundTrip) {
  const MeasureFamily f = initial_family(InitialDensity::von_mises(2.0, 1.0, 0.3), 3, 5, InitMode::iid, 4);
  std::stringstream ss;
  write_family_csv(ss, f);
  const MeasureFamily back = read_family_csv(ss);
  ASSERT_EQ(back.n_cells(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    ASSERT_EQ(back.cell(i).size(), 5u);
    for (std::size_t k = 0; k < 5; ++k) {
      EXPECT_EQ(back.cell(i).atoms()[k].position, f.cell(i).atoms()[k].position);
      EXPECT_EQ(back.cell(i).atoms()[k].mass, f.cell(i).atoms()[k].mass);
    }
  }
}

TEST(FamilyCsv, Errors) {
  std::istringstream gap("cell,position,mass\n0,0.0,1\n2,0.0,1\n");
  EXPECT_THROW(read_family_csv(gap), ParseError);
  std::istringstream empty("cell,position,mass\n");
  EXPECT_THROW(read_family_csv(empty), ParseError);
  std::istringstream header("cell,pos\n0,0.0,1\n");
  EXPECT_THROW(read_family_csv(header), ParseError);
}

TEST(DensityCsv, RoundTrip) {
  const DensityField f = discretize_density(InitialDensity::two_cluster(0.5, 3.0, 0.4), 2, 16);
  std::stringstream ss;
  write_density_csv(ss, f);
  const DensityField back = read_density_csv(ss);
  EXPECT_EQ(back.n(), 2u);
  EXPECT_EQ(back.g(), 16u);
  for (std::size_t j = 0; j < f.values().size(); ++j) EXPECT_EQ(back.values()[j], f.values()[j]);
}

TEST(DensityCsv, IncompleteGrid) {
  std::istringstream missing("cell,u_index,value\n0,0,0.3\n1,1,0.3\n");
  EXPECT_THROW(read_density_csv(missing), ParseError);
  std::istringstream duplicate("cell,u_index,value\n0,0,0.3\n0,0,0.3\n");
  EXPECT_THROW(read_density_csv(duplicate), ParseError);
}

TEST(TrajectoryCsv, Layout) {
  Trajectory tr;
  tr.states.push_back(PhaseState{0.0, {0.0, 0.0}});
  tr.lifted.push_back({0.0, 0.0});
  std::ostringstream out;
  write_trajectory_csv(out, tr);
  std::istringstream in(out.str());
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "t,u_1,u_2,r,psi");
  EXPECT_EQ(row, "0,0,0,1,0");
}

TEST(PicardReportJson, NullFirstRatio) {
  PicardReport r;
  r.distances = {0.5, 0.1};
  r.ratios = {std::nan(""), 0.2};
  r.converged = true;
  r.iterations = 2;
  const std::string s = picard_report_json(r);
  EXPECT_NE(s.find("null"), std::string::npos);
  EXPECT_NE(s.find("\"converged\": true"), std::string::npos);
  EXPECT_NE(s.find("\"iterations\": 2"), std::string::npos);
}

TEST(Pgm, HeaderAndBytes) {
  SquareMatrix id(2, 0.0);
  id(0, 0) = id(1, 1) = 1.0;
  std::ostringstream out;
  write_pgm(out, pixel_picture(id));
  const std::string s = out.str();
  EXPECT_EQ(s, std::string("P5\n2 2\n255\n") + std::string("\x00\xff\xff\x00", 4));
}
