#pragma once

// Reference implementations used only by the tests. Written from the
// defining formulas, without reusing library code paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "schlab/cmatrix.hpp"

namespace oracle {

using cplx = std::complex<double>;

inline double lorentz(std::vector<double> x, double p, double q) {
  for (auto& v : x) v = std::abs(v);
  std::sort(x.begin(), x.end(), std::greater<>());
  if (std::isinf(q)) {
    double best = 0.0;
    for (std::size_t n = 1; n <= x.size(); ++n)
      best = std::max(best, (std::isinf(p) ? 1.0 : std::pow(double(n), 1.0 / p)) * x[n - 1]);
    return best;
  }
  double s = 0.0;
  for (std::size_t n = 1; n <= x.size(); ++n) s += std::pow(double(n), q / p - 1.0) * std::pow(x[n - 1], q);
  return std::pow(s, 1.0 / q);
}

inline Eigen::MatrixXcd to_eigen(const schlab::CMatrix& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
  return e;
}

inline std::vector<double> singular_values(const schlab::CMatrix& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
  const auto s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

inline std::vector<cplx> eigenvalues(const schlab::CMatrix& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(to_eigen(m), false);
  const auto e = es.eigenvalues();
  return {e.data(), e.data() + e.size()};
}

// Naive DFT over Z_n1 x ... x Z_nk with the 1/|G| weight.
inline std::vector<cplx> dft(const std::vector<int>& moduli, const std::vector<cplx>& f) {
  const std::size_t n = f.size();
  auto coords = [&](std::size_t idx) {
    std::vector<int> c(moduli.size());
    for (std::size_t j = moduli.size(); j-- > 0;) {
      c[j] = static_cast<int>(idx % moduli[j]);
      idx /= moduli[j];
    }
    return c;
  };
  std::vector<cplx> out(n);
  for (std::size_t chi = 0; chi < n; ++chi) {
    const auto a = coords(chi);
    cplx s{};
    for (std::size_t t = 0; t < n; ++t) {
      const auto b = coords(t);
      double phase = 0.0;
      for (std::size_t j = 0; j < moduli.size(); ++j) phase += double(a[j]) * b[j] / moduli[j];
      s += std::polar(1.0, -2.0 * std::numbers::pi * phase) * f[t];
    }
    out[chi] = s / double(n);
  }
  return out;
}

// Largest distance after optimal-ish matching: sort both by (real, imag) and
// fall back to greedy.
inline double multiset_gap(std::vector<cplx> a, std::vector<cplx> b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (const auto& z : a) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < b.size(); ++k)
      if (std::abs(b[k] - z) < std::abs(b[best] - z)) best = k;
    worst = std::max(worst, std::abs(b[best] - z));
    b.erase(b.begin() + static_cast<long>(best));
  }
  return worst;
}

inline schlab::CMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& gen) {
  std::normal_distribution<double> nd;
  schlab::CMatrix m(r, c);
  for (auto& z : m.data()) z = {nd(gen), nd(gen)};
  return m;
}

inline std::vector<cplx> random_vector(std::size_t n, std::mt19937_64& gen) {
  std::normal_distribution<double> nd;
  std::vector<cplx> v(n);
  for (auto& z : v) z = {nd(gen), nd(gen)};
  return v;
}

}  // namespace oracle
