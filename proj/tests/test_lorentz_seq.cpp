#include <cmath>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "schlab/error.hpp"
#include "schlab/experiments.hpp"
#include "schlab/lorentz_seq.hpp"

using namespace schlab;
using doctest::Approx;

namespace {

std::vector<double> vals(const RealSeq& x) { return {x.rearranged().begin(), x.rearranged().end()}; }

}  // namespace

TEST_CASE("rearrange sorts absolute values") {
  CHECK(vals(rearrange(std::vector<double>{0.5, 2, 1})) == std::vector<double>{2, 1, 0.5});
  CHECK(vals(rearrange(std::vector<double>{1, 1, 1})) == std::vector<double>{1, 1, 1});
  CHECK(vals(rearrange(std::vector<double>{-3, 4, 0})) == std::vector<double>{4, 3, 0});
  const std::vector<std::complex<double>> z{{3, 4}, {0, -1}};
  CHECK(vals(rearrange(z)) == std::vector<double>{5, 1});
  const RealSeq x({0.5, 2});
  CHECK(x.approx_number(1) == 2);
  CHECK(x.approx_number(3) == 0);
}

TEST_CASE("lorentz quasi-norm on small sequences") {
  for (double p : {0.5, 1.0, 2.0})
    for (double q : {0.5, 1.0, 2.0, kInf}) CHECK(lorentz_quasinorm(RealSeq({1}), LorentzParams::make(p, q)) == Approx(1));
  CHECK(lorentz_quasinorm(RealSeq({1, 1}), LorentzParams::make(1, 2)) == Approx(std::sqrt(3.0)).epsilon(1e-14));
  CHECK(lorentz_quasinorm(RealSeq({1, 0.5, 0.25}), LorentzParams::make(1, 2)) ==
        Approx(std::sqrt(1.6875)).epsilon(1e-14));
  CHECK(lorentz_quasinorm(RealSeq({3, -4}), LorentzParams::make(2, 2)) == Approx(5));
  CHECK(lorentz_quasinorm(RealSeq({1, 1, 1, 1}), LorentzParams::make(1, kInf)) == Approx(4));
  CHECK(lorentz_quasinorm(RealSeq({0.3, -7, 2}), LorentzParams::make(kInf, kInf)) == Approx(7));
  CHECK(lorentz_quasinorm(RealSeq(std::vector<double>{}), LorentzParams::make(1, 2)) == 0);
  CHECK(lorentz_quasinorm(RealSeq({0, 0}), LorentzParams::make(0.5, 0.5)) == 0);
}

TEST_CASE("lorentz quasi-norm matches the defining sum on random data") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x(1 + gen() % 300);
    for (auto& v : x) v = u(gen) * std::pow(10.0, u(gen));
    for (auto [p, q] : {std::pair{1.0, 2.0}, {2.0, 1.0}, {0.5, 0.5}, {3.0, 1.5}, {1.0, kInf}}) {
      const double got = lorentz_quasinorm(RealSeq(x), LorentzParams::make(p, q));
      CHECK(got == Approx(oracle::lorentz(x, p, q)).epsilon(1e-12));
    }
  }
}

TEST_CASE("lorentz quasi-norm inclusions with constant one, and homogeneity") {
  std::mt19937_64 gen(5);
  std::exponential_distribution<double> e(1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(1 + gen() % 50);
    for (auto& v : x) v = e(gen);
    const RealSeq rx(x);
    // n a_n <= sum_{k<=n} a_k and n a_n^2 <= sum_{k<=n} a_k^2.
    CHECK(lorentz_quasinorm(rx, LorentzParams::make(1, 2)) <= lorentz_quasinorm(rx, LorentzParams::make(1, 1)) * (1 + 1e-12));
    CHECK(lorentz_quasinorm(rx, LorentzParams::make(2, kInf)) <= lorentz_quasinorm(rx, LorentzParams::make(2, 2)) * (1 + 1e-12));
    CHECK(lorentz_quasinorm(rx, LorentzParams::make(1, kInf)) <= lorentz_quasinorm(rx, LorentzParams::make(1, 1)) * (1 + 1e-12));
    std::vector<double> y = x;
    for (auto& v : y) v *= 3.5;
    CHECK(lorentz_quasinorm(RealSeq(y), LorentzParams::make(1, 2)) ==
          Approx(3.5 * lorentz_quasinorm(rx, LorentzParams::make(1, 2))).epsilon(1e-13));
  }
}

TEST_CASE("LorentzParams validation") {
  CHECK_THROWS_AS(LorentzParams::make(0, 1), InputError);
  CHECK_THROWS_AS(LorentzParams::make(1, -1), InputError);
  CHECK_THROWS_AS(LorentzParams::make(NAN, 1), InputError);
  CHECK_THROWS_AS(LorentzParams::make(kInf, 2), InputError);
  CHECK_NOTHROW(LorentzParams::make(kInf, kInf));
  CHECK_NOTHROW(LorentzParams::make(1, kInf));
}

TEST_CASE("quasi-geometric index sequences") {
  const auto d = QuasiGeoSeq::dyadic(20);
  CHECK(std::vector<std::size_t>(d.indices().begin(), d.indices().end()) == std::vector<std::size_t>{1, 2, 4, 8, 16});
  const auto l = QuasiGeoSeq::linear_dyadic(200);
  CHECK(std::vector<std::size_t>(l.indices().begin(), l.indices().end()) ==
        std::vector<std::size_t>{1, 4, 12, 32, 80, 192});
  CHECK_THROWS_AS(QuasiGeoSeq({1, 2, 3}, 1.6, 2.0), InputError);  // 3/2 < 1.6
  CHECK_THROWS_AS(QuasiGeoSeq({2, 4}, 1.5, 2.5), InputError);     // must start at 1
  CHECK_THROWS_AS(QuasiGeoSeq({1, 2}, 1.0, 2.0), InputError);     // a must exceed 1
}

TEST_CASE("subsampled quasi-norm") {
  CHECK(subsampled_quasinorm(RealSeq({1, 0, 0, 0, 0}), LorentzParams::make(1, 2), QuasiGeoSeq::dyadic(5)) == Approx(1));

  // Constant sequences: geometric sums give the factor 2^{1/p} band.
  for (double p : {0.5, 1.0, 2.0})
    for (std::size_t n : {1u, 7u, 64u, 1000u}) {
      const RealSeq c(std::vector<double>(n, 0.3));
      const auto params = LorentzParams::make(p, p);
      const double direct = lorentz_quasinorm(c, params);
      const double sub = subsampled_quasinorm(c, params, QuasiGeoSeq::dyadic(n));
      const double band = std::pow(2.0, 1.0 / p);
      CHECK(sub <= band * direct * (1 + 1e-12));
      CHECK(direct <= band * sub * (1 + 1e-12));
    }

  // Indices past the support contribute zero.
  const RealSeq x4 = counterexample_xm(4);
  const double sub = subsampled_quasinorm(x4, LorentzParams::make(1, 2), QuasiGeoSeq::linear_dyadic(200));
  const double direct = lorentz_quasinorm(x4, LorentzParams::make(1, 2));
  const double band = Calibration::load(SCHLAB_FIXTURE_DIR "/calibration.json").linear_dyadic_band.at("1,2");
  CHECK(sub > 0);
  CHECK(sub <= band * direct);
  CHECK(direct <= band * sub);
}

TEST_CASE("outer product") {
  CHECK(vals(outer_product(RealSeq({1, 0.5}), RealSeq({1, 0.5}))) == std::vector<double>{1, 0.5, 0.5, 0.25});
  const RealSeq x({0.2, 3, 1});
  CHECK(vals(outer_product(x, RealSeq({1}))) == vals(x));

  // x_2 (x) x_2 holds n_k = (k+1) 2^k copies of 2^{-k} for k <= 2.
  const auto t = outer_product(counterexample_xm(2), counterexample_xm(2));
  for (int k = 0; k <= 2; ++k) {
    const double v = std::ldexp(1.0, -k);
    const auto count = std::count(t.rearranged().begin(), t.rearranged().end(), v);
    CHECK(count == (k + 1) * (1 << k));
  }
}

TEST_CASE("counterexample sequences") {
  CHECK(vals(counterexample_xm(0)) == std::vector<double>{1});
  CHECK(vals(counterexample_xm(1)) == std::vector<double>{1, 0.5, 0.5});
  CHECK(lorentz_quasinorm(counterexample_xm(1), LorentzParams::make(1, 2)) == Approx(1.5).epsilon(1e-15));
  for (int m = 0; m <= 12; ++m) {
    CHECK(counterexample_xm(m).size() == (std::size_t{2} << m) - 1);
    const double closed = std::sqrt((3.0 * m + 1.0 + std::ldexp(1.0, -m)) / 2.0);
    CHECK(lorentz_quasinorm(counterexample_xm(m), LorentzParams::make(1, 2)) == Approx(closed).epsilon(1e-13));
  }
  CHECK_THROWS_AS(counterexample_xm(-1), InputError);
  CHECK_THROWS_AS(counterexample_xm(kMaxCounterexampleM + 1), InputError);
}

TEST_CASE("slope fit") {
  std::vector<std::pair<double, double>> a, b, c;
  for (double x : {1.0, 2.0, 3.0, 5.0, 8.0}) {
    a.emplace_back(x, std::sqrt(x));
    b.emplace_back(x, 7 * std::pow(x, 1.5));
  }
  CHECK(slope_fit(a) == Approx(0.5).epsilon(1e-13));
  CHECK(slope_fit(b) == Approx(1.5).epsilon(1e-13));
  for (int m = 4; m <= 11; ++m) c.emplace_back(m, lorentz_quasinorm(counterexample_xm(m), LorentzParams::make(1, 2)));
  const double s = slope_fit(c);
  CHECK(s >= 0.4);
  CHECK(s <= 0.6);
  CHECK_THROWS_AS(slope_fit(std::vector<std::pair<double, double>>{{1, 1}, {2, 2}}), InputError);
  CHECK_THROWS_AS(slope_fit(std::vector<std::pair<double, double>>{{1, 1}, {2, 0}, {3, 1}}), InputError);
}
