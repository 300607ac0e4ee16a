#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "reflectum/io.hpp"

using namespace reflectum;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("reflectum_io_test_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

HopfPtr kg(const FiniteGroup& g) { return std::make_shared<HopfAlgebra>(group_algebra(g)); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("group file round trip") {
  TempDir tmp;
  FiniteGroup g = symmetric_group_s3();
  io::save_group(g, tmp.path / "s3.json");
  FiniteGroup back = io::load_group(tmp.path / "s3.json");
  CHECK(back.order == 6);
  CHECK(back.mult_table == g.mult_table);
  CHECK(back.inverse_table == g.inverse_table);
  CHECK(io::detect_kind(tmp.path / "s3.json") == "group");
}

TEST_CASE("hopf file round trip preserves every structure tensor") {
  TempDir tmp;
  auto dd = drinfeld_double(kg(cyclic_group(3)));
  io::save_hopf(*dd.hopf, &dd.r, tmp.path / "d.json");
  io::HopfFile back = io::load_hopf(tmp.path / "d.json");
  CHECK(back.hopf->alg.mult == dd.hopf->alg.mult);
  CHECK(back.hopf->coalg.comult == dd.hopf->coalg.comult);
  CHECK(back.hopf->alg.unit == dd.hopf->alg.unit);
  CHECK(back.hopf->coalg.counit == dd.hopf->coalg.counit);
  CHECK(back.hopf->antipode == dd.hopf->antipode);
  CHECK(back.hopf->antipode_inv == dd.hopf->antipode_inv);
  REQUIRE(back.rmatrix.has_value());
  CHECK(back.rmatrix->coeffs == dd.r.coeffs);
  CHECK(back.rmatrix->inverse_coeffs == dd.r.inverse_coeffs);
  CHECK(check_hopf(*back.hopf).all_passed());
}

TEST_CASE("comodule and kmatrix files round trip") {
  TempDir tmp;
  auto dd = drinfeld_double(kg(cyclic_group(2)));
  ReflectiveAlgebra ra = reflective_algebra(dd.hopf, dd.r, trivial_comodule(dd.hopf));
  io::save_comodule(*ra.delta_ref, tmp.path / "ca.json");
  ComodPtr back = io::load_comodule(tmp.path / "ca.json", dd.hopf);
  CHECK(back->coaction == ra.delta_ref->coaction);
  CHECK(back->algebra->mult == ra.algebra->mult);
  io::save_kmatrix(ra.k_ref, "R", tmp.path / "k.json");
  KMatrix kb = io::load_kmatrix(tmp.path / "k.json", back);
  CHECK(kb.coeffs == ra.k_ref.coeffs);
  CHECK(kb.inverse_coeffs == ra.k_ref.inverse_coeffs);
  CHECK(check_kmatrix(kb, dd.r).all_passed());
}

TEST_CASE("module file round trip") {
  TempDir tmp;
  auto h = kg(cyclic_group(2));
  Module reg = regular_module(algebra_of(h));
  io::save_module(reg, "kC2", tmp.path / "m.json");
  Module back = io::load_module(tmp.path / "m.json", algebra_of(h));
  for (std::uint32_t i = 0; i < 2; ++i) CHECK(back.action[i] == reg.action[i]);
}

TEST_CASE("malformed files raise ParseError") {
  TempDir tmp;
  {
    std::ofstream out(tmp.path / "bad.json");
    out << "{ not json";
  }
  CHECK_THROWS_AS(io::detect_kind(tmp.path / "bad.json"), io::ParseError);
  {
    std::ofstream out(tmp.path / "wrongkind.json");
    out << "{\"schema_version\":1,\"kind\":\"group\",\"order\":2,\"elements\":[\"e\",\"g\"],"
           "\"table\":[[0,1],[1,1]]}";
  }
  CHECK_THROWS_AS(io::load_group(tmp.path / "wrongkind.json"), io::ParseError);
  {
    std::ofstream out(tmp.path / "badscalar.json");
    out << "{\"schema_version\":1,\"kind\":\"hopf\",\"dim\":1,\"unit\":[\"x\"],"
           "\"counit\":[\"1\"],\"mult\":[],\"comult\":[],\"antipode\":[]}";
  }
  CHECK_THROWS_AS(io::load_hopf(tmp.path / "badscalar.json"), io::ParseError);
  CHECK_THROWS_AS(io::load_group("/nonexistent/file.json"), io::ParseError);
}

TEST_CASE("reports serialize deterministically") {
  auto h = kg(cyclic_group(2));
  VerificationReport rep = check_hopf(*h);
  std::string a = io::report_to_json(rep);
  std::string b = io::report_to_json(check_hopf(*h));
  CHECK(a == b);
  CHECK(a.find("\"status\": \"PASS\"") != std::string::npos);
}

TEST_CASE("saved files are byte-identical across runs") {
  TempDir tmp;
  auto dd = drinfeld_double(kg(cyclic_group(2)));
  io::save_hopf(*dd.hopf, &dd.r, tmp.path / "a.json");
  io::save_hopf(*dd.hopf, &dd.r, tmp.path / "b.json");
  CHECK(slurp(tmp.path / "a.json") == slurp(tmp.path / "b.json"));
}
