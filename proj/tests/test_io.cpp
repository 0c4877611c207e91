#include <filesystem>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracle.hpp"
#include "schlab/error.hpp"
#include "schlab/io.hpp"

using namespace schlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("schlab_test_io_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("doubles round-trip through text") {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-300, 300);
  for (int i = 0; i < 1000; ++i) {
    const double x = std::pow(10.0, u(gen) / 10) * (i % 2 ? -1 : 1);
    CHECK(std::stod(io::format_double(x)) == x);
  }
  CHECK(io::format_double(kInf) == "inf");
  CHECK(io::exponent_json(kInf) == "inf");
  CHECK(std::isinf(io::exponent_from_json(io::exponent_json(kInf))));
  CHECK(io::exponent_from_json(io::exponent_json(0.5)) == 0.5);
}

TEST_CASE("sequence and function CSV") {
  const RealSeq x({0.1, 1.0 / 3, 2});
  std::stringstream ss;
  io::write_sequence_csv(ss, x);
  CHECK(ss.str().rfind("index,value\n", 0) == 0);
  const auto back = io::read_sequence_csv(ss);
  CHECK(std::vector<double>(back.values().begin(), back.values().end()) ==
        std::vector<double>(x.values().begin(), x.values().end()));

  std::mt19937_64 gen(2);
  const auto v = oracle::random_vector(7, gen);
  std::stringstream fs_;
  io::write_function_csv(fs_, v);
  CHECK(io::read_function_csv(fs_, 7) == v);

  std::stringstream bad("element,re,im\n0,1,0\n");
  CHECK_THROWS_AS(io::read_function_csv(bad, 2), InputError);
  std::stringstream junk("element,re,im\n0,abc,0\n");
  CHECK_THROWS_AS(io::read_function_csv(junk, 1), InputError);
}

TEST_CASE("vector function and matrix formats") {
  std::mt19937_64 gen(3);
  const auto g = enumerate_group({3});
  const VectorFunction f(g, 2, oracle::random_vector(6, gen));
  std::stringstream ss;
  io::write_vector_function_csv(ss, f);
  CHECK(io::read_vector_function_csv(ss, g).values == f.values);

  const CMatrix m = oracle::random_matrix(4, 3, gen);
  std::stringstream cs;
  io::write_matrix_csv(cs, m);
  CHECK(io::read_matrix_csv(cs) == m);
  std::stringstream bs;
  io::write_matrix_binary(bs, m);
  CHECK(bs.str().substr(0, 8) == "SCHLABM1");
  CHECK(bs.str().size() == 8 + 16 + 12 * 16);
  CHECK(io::read_matrix_binary(bs) == m);
  std::stringstream trunc(bs.str().substr(0, 40));
  CHECK_THROWS_AS(io::read_matrix_binary(trunc), InputError);
}

TEST_CASE("chain directories round-trip") {
  std::mt19937_64 gen(4);
  const auto g = enumerate_group({6});
  const auto chain = conv_factor(GroupFunction(g, oracle::random_vector(6, gen)), 0.5);
  const auto dir = scratch("chain");
  io::write_chain(dir, chain, {{"s", 0.5}});
  CHECK(fs::exists(dir / "manifest.json"));
  const auto back = io::read_chain(dir);
  REQUIRE(back.size() == chain.size());
  CHECK(back.middle_index() == chain.middle_index());
  for (std::size_t k = 0; k < chain.size(); ++k) {
    CHECK(back.stages()[k].matrix == chain.stages()[k].matrix);
    CHECK(back.stages()[k].from == chain.stages()[k].from);
    CHECK(back.stages()[k].to == chain.stages()[k].to);
  }
  fs::remove(dir / "stage_1.bin");
  CHECK_THROWS_AS(io::read_chain(dir), InputError);
  fs::remove_all(dir);
}

TEST_CASE("reports") {
  const auto j = io::quasinorm_report(LorentzParams::make(1, kInf), 2.5, "direct");
  CHECK(j["q"] == "inf");
  CHECK(j["norm"] == 2.5);
  const auto c = composition_check(CMatrix::identity(2), CMatrix::identity(2), LorentzParams::make(2, 2),
                                   LorentzParams::make(2, 2));
  CHECK(io::to_json(c)["holds"] == true);
  CHECK_THROWS_AS(io::read_text("/nonexistent/schlab/file"), InputError);
}
