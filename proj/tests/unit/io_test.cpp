#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <numbers>

#include "helpers.hpp"
#include "nev/io.hpp"

using namespace nev;
using testing::scalar;

TEST_SUITE("io") {
  TEST_CASE("complex and matrix encodings") {
    CHECK(complex_from_json(Json::parse("[1.5, -2]")) == Complex(1.5, -2));
    CHECK(complex_from_json(Json::parse("3")) == Complex(3, 0));
    CHECK_THROWS_AS(complex_from_json(Json::parse("\"x\"")), ParseError);
    Rng rng(1);
    const CMatrix m = rng.complex_matrix(2, 3);
    CHECK(matrix_from_json(matrix_to_json(m)) == m);
    CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1,2],[3]]")), ParseError);
    CHECK(matrix_to_json(scalar(Complex(1, 2))).dump() == "[[[1.0,2.0]]]");
  }

  TEST_CASE("RealizedFunction round trip") {
    const auto f = random_nevanlinna(3, 2, 4);
    const auto g = realized_from_json(Json::parse(to_json(f).dump()));
    CHECK(g.as_realization().T == f.as_realization().T);
    CHECK(g.as_realization().K == f.as_realization().K);
    const auto m = RealizedFunction::measure(scalar(0.5), scalar(0), {Atom{-0.25, scalar(2)}});
    const Json j = to_json(m);
    CHECK(j["variant"] == "measure");
    CHECK(j["dim"] == 1);
    const auto back = realized_from_json(j);
    CHECK(evaluate(back, Complex(0, 1)) == evaluate(m, Complex(0, 1)));
    CHECK_THROWS_AS(realized_from_json(Json::parse(R"({"variant":"other","dim":1})")), ParseError);
    CHECK_THROWS_AS(realized_from_json(Json::parse(R"({"variant":"realization","T":[[0]]})")), ParseError);
    const Json bad = Json::parse(R"({"variant":"measure","dim":1,"A":[[0]],"B":[[0]],"atoms":[{"t":0,"W":[[-1]]}]})");
    CHECK_THROWS_AS(realized_from_json(bad), InvalidInput);
    CHECK_FALSE(realized_from_json(bad, false).violations().empty());
  }

  TEST_CASE("BlockJacobi round trip") {
    const auto j = build_J0(1, 4);
    const Json s = to_json(j);
    CHECK(s["a"][0].is_number());
    CHECK(jacobi_from_json(s).dense() == j.dense());
    const auto j2 = build_Jhat0(2, 3);
    CHECK(jacobi_from_json(Json::parse(to_json(j2).dump())).dense() == j2.dense());
    CHECK_THROWS_AS(jacobi_from_json(Json::parse(R"({"d":0,"a":[],"b":[]})")), ParseError);
    CHECK_THROWS_AS(jacobi_from_json(Json::parse(R"({"a":[0],"b":[]})")), ParseError);
  }

  TEST_CASE("StepHamiltonian and WeylDiskEstimate") {
    const auto h = hamiltonian_H0(4);
    const auto back = hamiltonian_from_json(Json::parse(to_json(h).dump()));
    CHECK(back.breakpoints() == h.breakpoints());
    CHECK(back.thetas() == h.thetas());
    CHECK_THROWS_AS(hamiltonian_from_json(Json::parse(R"({"breakpoints":[0,1]})")), ParseError);
    WeylDiskEstimate e{Complex(0, 2), Complex(0.1, 0.4), 1e-7, 16, true, false};
    const Json w = to_json(e);
    CHECK(w["lambda"] == Json::parse("[0.0, 2.0]"));
    CHECK(w["m"] == Json::parse("[0.1, 0.4]"));
    CHECK(w["radius"] == 1e-7);
    CHECK(w["T"] == 16.0);
    e.line = true;
    CHECK(to_json(e)["radius"].is_null());
  }

  TEST_CASE("SubspaceRealization round trip") {
    const auto r = SubspaceRealization::leading(CMatrix::Identity(3, 3) * 0.5, 2);
    const auto back = subspace_from_json(Json::parse(to_json(r).dump()));
    CHECK(back.T == r.T);
    CHECK(back.basis == r.basis);
  }

  TEST_CASE("files") {
    CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), ParseError);
    const std::string path = "io_test_tmp.json";
    {
      std::ofstream out(path);
      out << "{\"d\": 1, ";
    }
    CHECK_THROWS_AS(read_json_file(path), ParseError);
    std::remove(path.c_str());
    // Shortest round-trip formatting.
    CHECK(dump(Json(std::numbers::pi)) == "3.141592653589793\n");
  }
}
