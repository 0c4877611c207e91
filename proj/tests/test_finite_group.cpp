#include <cmath>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "schlab/error.hpp"
#include "schlab/finite_group.hpp"

using namespace schlab;
using doctest::Approx;

namespace {

double max_gap(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double g = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) g = std::max(g, std::abs(a[i] - b[i]));
  return g;
}

const char* kGroups[] = {"Z2", "Z3", "Z4", "Z6", "Z8", "Z2xZ2", "Z2xZ3", "Z4xZ3xZ5", "Z3xZ3", "Z2xZ2xZ2"};

}  // namespace

TEST_CASE("group enumeration and parsing") {
  const auto z2 = enumerate_group({2});
  CHECK(z2.order() == 2);
  CHECK(z2.character(1, 1) == cplx(-1, 0));
  CHECK(enumerate_group({2, 3}).order() == 6);
  const auto z4 = enumerate_group({4});
  CHECK(std::abs(z4.character(1, 1) - cplx(0, 1)) == 0.0);

  const auto g = FiniteAbelianGroup::parse(" Z4x Z3 xZ5 ");
  CHECK(g.moduli() == std::vector<int>{4, 3, 5});
  CHECK(g.to_string() == "Z4xZ3xZ5");
  CHECK(g.coords(1) == std::vector<int>{0, 0, 1});
  CHECK(g.coords(5) == std::vector<int>{0, 1, 0});
  for (std::size_t i = 0; i < g.order(); ++i) CHECK(g.index(g.coords(i)) == i);

  CHECK_THROWS_AS(FiniteAbelianGroup::parse(""), InputError);
  CHECK_THROWS_AS(FiniteAbelianGroup::parse("Z1"), InputError);
  CHECK_THROWS_AS(FiniteAbelianGroup::parse("Z4*Z3"), InputError);
  CHECK_THROWS_AS(FiniteAbelianGroup::parse("Z4xx"), InputError);
  CHECK_THROWS_AS(FiniteAbelianGroup::parse("Z2048xZ1024"), InputError);
}

TEST_CASE("group law and characters") {
  for (const char* spec : kGroups) {
    const auto g = FiniteAbelianGroup::parse(spec);
    const std::size_t n = g.order();
    for (std::size_t a = 0; a < n; ++a) {
      CHECK(g.add(a, g.neg(a)) == 0);
      for (std::size_t b = 0; b < n; ++b) {
        CHECK(g.sub(g.add(a, b), b) == a);
        for (std::size_t chi = 0; chi < n; ++chi)
          CHECK(std::abs(g.character(chi, g.add(a, b)) - g.character(chi, a) * g.character(chi, b)) < 1e-13);
      }
    }
    // Character table is unitary.
    const CMatrix t = g.character_table();
    const CMatrix id = t * t.adjoint();
    CHECK(max_abs_diff(id, CMatrix::identity(n)) < 1e-13);
  }
}

TEST_CASE("fourier transform examples") {
  const auto z2 = enumerate_group({2});
  const auto one = fourier(GroupFunction(z2, {1, 1}));
  CHECK(std::abs(one[0] - 1.0) < 1e-15);
  CHECK(std::abs(one[1]) < 1e-15);
  const auto delta = fourier(GroupFunction(z2, {1, 0}));
  CHECK(std::abs(delta[0] - 0.5) < 1e-15);
  CHECK(std::abs(delta[1] - 0.5) < 1e-15);

  const auto z4 = enumerate_group({4});
  const auto g1 = fourier(character_function(z4, 1));
  CHECK(max_gap(g1, {0, 1, 0, 0}) < 1e-15);
}

TEST_CASE("fourier matches the naive DFT and inverts") {
  std::mt19937_64 gen(3);
  for (const char* spec : kGroups) {
    const auto g = FiniteAbelianGroup::parse(spec);
    const auto v = oracle::random_vector(g.order(), gen);
    const GroupFunction f(g, v);
    const auto fh = fourier(f);
    CHECK(max_gap(fh, oracle::dft(g.moduli(), v)) < 1e-13);
    CHECK(max_gap(inverse_fourier(g, fh).values, v) < 1e-13);
    // Parseval with the probability weight.
    double lhs = 0.0, rhs = 0.0;
    for (const auto& z : v) lhs += std::norm(z) / double(g.order());
    for (const auto& z : fh) rhs += std::norm(z);
    CHECK(lhs == Approx(rhs).epsilon(1e-13));
  }
}

TEST_CASE("measure transform") {
  const auto g = FiniteAbelianGroup::parse("Z3xZ4");
  const auto e = measure_fourier(GroupMeasure::dirac(g, 0));
  for (const auto& z : e) CHECK(std::abs(z - 1.0) < 1e-15);
  const auto zero = measure_fourier(GroupMeasure(g, std::vector<cplx>(g.order())));
  for (const auto& z : zero) CHECK(std::abs(z) == 0.0);
  for (std::size_t chi = 0; chi < g.order(); ++chi) {
    std::vector<cplx> atoms(g.order());
    for (std::size_t t = 0; t < g.order(); ++t) atoms[t] = g.character(chi, t) / double(g.order());
    const auto mh = measure_fourier(GroupMeasure(g, atoms));
    for (std::size_t k = 0; k < g.order(); ++k) CHECK(std::abs(mh[k] - (k == chi ? 1.0 : 0.0)) < 1e-14);
  }
}

TEST_CASE("convolution") {
  std::mt19937_64 gen(8);
  for (const char* spec : kGroups) {
    const auto g = FiniteAbelianGroup::parse(spec);
    const GroupFunction f(g, oracle::random_vector(g.order(), gen));
    const GroupMeasure mu(g, oracle::random_vector(g.order(), gen));

    CHECK(max_gap(convolve(f, GroupMeasure::dirac(g, 0)).values, f.values) < 1e-15);
    CHECK(convolve(f, mu).sup_norm() <= f.sup_norm() * mu.variation() * (1 + 1e-12));

    const auto mh = measure_fourier(mu);
    for (std::size_t chi = 0; chi < g.order(); ++chi) {
      const auto gamma = character_function(g, chi);
      auto want = gamma.values;
      for (auto& z : want) z *= mh[chi];
      CHECK(max_gap(convolve(gamma, mu).values, want) < 1e-12);
    }
    // Convolution theorem: (f * mu)^ = fhat muhat.
    const auto lhs = fourier(convolve(f, mu));
    const auto fh = fourier(f);
    for (std::size_t k = 0; k < g.order(); ++k) CHECK(std::abs(lhs[k] - fh[k] * mh[k]) < 1e-12);
  }
}

TEST_CASE("convolution matrix") {
  const auto z3 = enumerate_group({3});
  const GroupFunction f(z3, {1.0, 2.0, 3.0});
  const CMatrix m = conv_matrix(f);
  const CMatrix circ{{1, 3, 2}, {2, 1, 3}, {3, 2, 1}};
  CHECK(m == circ);
  CHECK(conv_matrix(GroupFunction(z3, {0, 0, 0})).max_abs() == 0.0);

  std::mt19937_64 gen(21);
  for (const char* spec : kGroups) {
    const auto g = FiniteAbelianGroup::parse(spec);
    const GroupFunction h(g, oracle::random_vector(g.order(), gen));
    const CMatrix mh = conv_matrix(h);
    const auto fh = fourier(h);
    // Eigen-pair law M gamma = |G| fhat(gamma) gamma.
    for (std::size_t chi = 0; chi < g.order(); ++chi) {
      const auto gamma = character_function(g, chi).values;
      const auto lhs = mh * std::span<const cplx>(gamma);
      for (std::size_t t = 0; t < g.order(); ++t)
        CHECK(std::abs(lhs[t] - double(g.order()) * fh[chi] * gamma[t]) < 1e-11);
    }
    // Singular values are |G| |fhat|.
    auto sv = oracle::singular_values(mh);
    std::vector<double> want;
    for (const auto& z : fh) want.push_back(double(g.order()) * std::abs(z));
    std::sort(want.begin(), want.end(), std::greater<>());
    for (std::size_t k = 0; k < sv.size(); ++k) CHECK(sv[k] == Approx(want[k]).epsilon(1e-10));
  }
}

TEST_CASE("shape mismatches are rejected") {
  const auto g = enumerate_group({4});
  CHECK_THROWS_AS(GroupFunction(g, {1, 2}), InputError);
  CHECK_THROWS_AS(GroupMeasure(g, {1}), InputError);
  CHECK_THROWS_AS(convolve(GroupFunction(g, {1, 2, 3, 4}), GroupMeasure::dirac(enumerate_group({2, 2}), 0)),
                  InputError);
}
