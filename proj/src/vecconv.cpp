#include "schlab/vecconv.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "schlab/error.hpp"
#include "schlab/linalg.hpp"

namespace schlab {

VectorFunction::VectorFunction(FiniteAbelianGroup g, std::size_t d, std::vector<cplx> v)
    : group(std::move(g)), dim(d), values(std::move(v)) {
  require(dim >= 1, "VectorFunction: dimension must be >= 1");
  require(values.size() == group.order() * dim, "VectorFunction: expected |G| * d values");
  for (const auto& z : values)
    require(std::isfinite(z.real()) && std::isfinite(z.imag()), "VectorFunction: non-finite value");
}

std::vector<cplx> VectorFunction::at(std::size_t t) const {
  require(t < group.order(), "VectorFunction::at: element out of range");
  return {values.begin() + static_cast<std::ptrdiff_t>(t * dim),
          values.begin() + static_cast<std::ptrdiff_t>((t + 1) * dim)};
}

double VectorFunction::sup_norm() const {
  double m = 0.0;
  for (std::size_t t = 0; t < group.order(); ++t) m = std::max(m, norm2(at(t)));
  return m;
}

VectorMeasure::VectorMeasure(FiniteAbelianGroup g, std::size_t d, std::vector<cplx> a)
    : group(std::move(g)), dim(d), atoms(std::move(a)) {
  require(dim >= 1, "VectorMeasure: dimension must be >= 1");
  require(atoms.size() == group.order() * dim, "VectorMeasure: expected |G| * d atoms");
}

double VectorMeasure::variation() const {
  double s = 0.0;
  for (std::size_t t = 0; t < group.order(); ++t)
    s += norm2(std::span<const cplx>(atoms).subspan(t * dim, dim));
  return s;
}

VectorFunction tensor_function(const GroupFunction& f, std::span<const cplx> x) {
  std::vector<cplx> v;
  v.reserve(f.values.size() * x.size());
  for (const auto& ft : f.values)
    for (const auto& xi : x) v.push_back(ft * xi);
  return VectorFunction(f.group, x.size(), std::move(v));
}

CMatrix vec_conv_matrix(const VectorFunction& fbar) {
  const auto& g = fbar.group;
  const std::size_t n = g.order(), d = fbar.dim;
  CMatrix m(n * d, n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t u = g.sub(s, t);
      for (std::size_t i = 0; i < d; ++i) m(s * d + i, t) = fbar.values[u * d + i];
    }
  return m;
}

std::vector<std::vector<cplx>> vec_fourier(const VectorFunction& fbar) {
  const std::size_t n = fbar.group.order(), d = fbar.dim;
  std::vector<std::vector<cplx>> out(n, std::vector<cplx>(d));
  std::vector<cplx> comp(n);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t t = 0; t < n; ++t) comp[t] = fbar.values[t * d + i];
    const auto hat = fourier(GroupFunction(fbar.group, comp));
    for (std::size_t chi = 0; chi < n; ++chi) out[chi][i] = hat[chi];
  }
  return out;
}

VectorFunction inverse_vec_fourier(const FiniteAbelianGroup& g, const std::vector<std::vector<cplx>>& coeffs) {
  require(coeffs.size() == g.order() && !coeffs.empty(), "inverse_vec_fourier: one coefficient per character");
  const std::size_t n = g.order(), d = coeffs.front().size();
  std::vector<cplx> values(n * d);
  std::vector<cplx> comp(n);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t chi = 0; chi < n; ++chi) {
      require(coeffs[chi].size() == d, "inverse_vec_fourier: ragged coefficients");
      comp[chi] = coeffs[chi][i];
    }
    const auto f = inverse_fourier(g, comp);
    for (std::size_t t = 0; t < n; ++t) values[t * d + i] = f.values[t];
  }
  return VectorFunction(g, d, std::move(values));
}

double weak_l2_norm(const std::vector<std::vector<cplx>>& family) {
  require(!family.empty(), "weak_l2_norm: empty family");
  const std::size_t d = family.front().size();
  CMatrix m(d, family.size());
  for (std::size_t k = 0; k < family.size(); ++k) {
    require(family[k].size() == d, "weak_l2_norm: vectors differ in dimension");
    for (std::size_t i = 0; i < d; ++i) m(i, k) = family[k][i];
  }
  return singular_values(m).front();
}

LacunaryModel lacunary_operator(const FiniteAbelianGroup& g, const std::vector<cplx>& a,
                                const std::vector<std::vector<cplx>>& xs, const std::vector<std::size_t>& gammas) {
  const std::size_t k = xs.size();
  require(k >= 1, "lacunary_operator: need at least one vector");
  require(a.size() == k && gammas.size() == k, "lacunary_operator: a, xs and gammas must have equal length");
  require(std::set<std::size_t>(gammas.begin(), gammas.end()).size() == k,
          "lacunary_operator: characters must be distinct");
  const std::size_t n = g.order(), d = xs.front().size();
  for (const auto& x : xs) require(x.size() == d, "lacunary_operator: vectors differ in dimension");
  for (const auto chi : gammas) require(chi < n, "lacunary_operator: character out of range");

  CMatrix u(n * d, k), coeff(k, n);
  std::vector<cplx> fvals(n * d);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t t = 0; t < n; ++t) {
      const cplx gamma = g.character(gammas[j], t);
      coeff(j, t) = a[j] * std::conj(gamma);
      for (std::size_t i = 0; i < d; ++i) {
        u(t * d + i, j) = xs[j][i] * gamma;
        fvals[t * d + i] += a[j] * xs[j][i] * gamma;
      }
    }
  return LacunaryModel{std::move(u), std::move(coeff), VectorFunction(g, d, std::move(fvals))};
}

double sup_block_norm(const CMatrix& u, std::size_t block_rows) {
  require(block_rows >= 1 && u.rows() % block_rows == 0, "sup_block_norm: rows not divisible by block size");
  double best = 0.0;
  for (std::size_t r0 = 0; r0 < u.rows(); r0 += block_rows)
    best = std::max(best, singular_values(u.block(r0, 0, block_rows, u.cols())).front());
  return best;
}

double property_l_probe(const CMatrix& t, const VectorFunction& fbar, double s) {
  require(s > 0.0 && s <= 1.0, "property_l_probe: s must lie in (0, 1]");
  require(t.cols() == fbar.dim, "property_l_probe: T does not act on the values of fbar");
  double sum = 0.0;
  for (const auto& coeff : vec_fourier(fbar)) sum += std::pow(norm2(t * std::span<const cplx>(coeff)), s);
  return std::pow(sum, 1.0 / s);
}

CMatrix scalar_operator_convolution(const GroupFunction& f, const CMatrix& t) {
  const auto& g = f.group;
  const std::size_t n = g.order(), dy = t.rows(), dx = t.cols();
  CMatrix m(n * dy, n * dx);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t u = 0; u < n; ++u) {
      const cplx w = f.values[g.sub(s, u)];
      for (std::size_t i = 0; i < dy; ++i)
        for (std::size_t j = 0; j < dx; ++j) m(s * dy + i, u * dx + j) = w * t(i, j);
    }
  return m;
}

}  // namespace schlab
