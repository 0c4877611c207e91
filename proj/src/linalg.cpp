#include "schlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "schlab/error.hpp"

namespace schlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxJacobiSweeps = 80;

using Columns = std::vector<std::vector<cplx>>;

Columns to_columns(const CMatrix& m) {
  Columns cols(m.cols(), std::vector<cplx>(m.rows()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) cols[c][r] = m(r, c);
  return cols;
}

CMatrix from_columns(const Columns& cols, std::size_t rows) {
  CMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  return m;
}

cplx dot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  cplx s{};
  for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
  return s;
}

double sq_norm(const std::vector<cplx>& a) {
  double s = 0.0;
  for (const auto& z : a) s += std::norm(z);
  return s;
}

// Fill columns flagged in `missing` with unit vectors orthogonal to the rest,
// each time taking the coordinate vector with the largest residual.
void complete_orthonormal(Columns& cols, const std::vector<bool>& missing, std::size_t dim) {
  std::vector<std::size_t> done;
  for (std::size_t c = 0; c < cols.size(); ++c)
    if (!missing[c]) done.push_back(c);
  const auto residual = [&](std::size_t probe) {
    std::vector<cplx> v(dim);
    v[probe] = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (const std::size_t d : done) {
        const cplx proj = dot(cols[d], v);
        for (std::size_t k = 0; k < dim; ++k) v[k] -= proj * cols[d][k];
      }
    return v;
  };
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (!missing[c]) continue;
    std::vector<cplx> best;
    double best_norm = 0.0;
    for (std::size_t probe = 0; probe < dim; ++probe) {
      auto v = residual(probe);
      const double nv = std::sqrt(sq_norm(v));
      if (nv > best_norm) {
        best_norm = nv;
        best = std::move(v);
      }
      if (best_norm > 0.7) break;
    }
    require(best_norm > 0.0, "svd: cannot complete orthonormal basis");
    for (auto& z : best) z /= best_norm;
    cols[c] = std::move(best);
    done.push_back(c);
  }
}

// One-sided Jacobi on a tall matrix (rows >= cols).
SvdResult jacobi_tall(const CMatrix& a_in) {
  const std::size_t rows = a_in.rows();
  const std::size_t n = a_in.cols();
  Columns a = to_columns(a_in);
  Columns v(n, std::vector<cplx>(n));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

  const double tol = kEps * static_cast<double>(std::max<std::size_t>(rows, 1));
  int sweep = 0;
  for (;; ++sweep) {
    if (sweep == kMaxJacobiSweeps) throw NumericalError("svd: Jacobi sweeps did not converge");
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double alpha = sq_norm(a[i]);
        const double beta = sq_norm(a[j]);
        const cplx gamma = dot(a[i], a[j]);
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= tol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const cplx phase = std::conj(gamma / g);
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t k = 0; k < rows; ++k) {
          const cplx ai = a[i][k];
          const cplx aj = a[j][k] * phase;
          a[i][k] = c * ai - s * aj;
          a[j][k] = s * ai + c * aj;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vi = v[i][k];
          const cplx vj = v[j][k] * phase;
          v[i][k] = c * vi - s * vj;
          v[j][k] = s * vi + c * vj;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(n);
  for (std::size_t k = 0; k < n; ++k) sigma[k] = std::sqrt(sq_norm(a[k]));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return sigma[x] > sigma[y]; });

  Columns left(n), right(n);
  std::vector<double> sorted(n);
  const double smax = n ? sigma[order[0]] : 0.0;
  const double floor = smax * kEps * static_cast<double>(rows + n);
  std::vector<bool> missing(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    sorted[k] = sigma[src];
    right[k] = v[src];
    if (sigma[src] > floor && sigma[src] > 0.0) {
      left[k] = a[src];
      for (auto& z : left[k]) z /= sigma[src];
    } else {
      missing[k] = true;
      left[k].assign(rows, cplx{});
    }
  }
  complete_orthonormal(left, missing, rows);
  return SvdResult{from_columns(left, rows), RealSeq(std::move(sorted)), from_columns(right, n)};
}

void hessenberg(CMatrix& h) {
  const std::size_t n = h.rows();
  for (std::size_t k = 0; k + 2 < n; ++k) {
    std::vector<cplx> v(n - k - 1);
    double xnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i - k - 1] = h(i, k);
      xnorm += std::norm(h(i, k));
    }
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    const cplx x0 = v[0];
    const cplx ph = std::abs(x0) == 0.0 ? cplx{1.0} : x0 / std::abs(x0);
    v[0] += ph * xnorm;
    const double vn = norm2(v);
    if (vn == 0.0) continue;
    for (auto& z : v) z /= vn;
    // H <- (I - 2 v v^*) H
    for (std::size_t c = 0; c < n; ++c) {
      cplx s{};
      for (std::size_t i = 0; i < v.size(); ++i) s += std::conj(v[i]) * h(k + 1 + i, c);
      for (std::size_t i = 0; i < v.size(); ++i) h(k + 1 + i, c) -= 2.0 * v[i] * s;
    }
    // H <- H (I - 2 v v^*)
    for (std::size_t r = 0; r < n; ++r) {
      cplx s{};
      for (std::size_t i = 0; i < v.size(); ++i) s += h(r, k + 1 + i) * v[i];
      for (std::size_t i = 0; i < v.size(); ++i) h(r, k + 1 + i) -= 2.0 * s * std::conj(v[i]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

double vector_norm(std::span<const cplx> v, NormTag tag) {
  switch (tag) {
    case NormTag::L1: {
      double s = 0.0;
      for (const auto& z : v) s += std::abs(z);
      return s;
    }
    case NormTag::L2:
      return norm2(v);
    case NormTag::LInf: {
      double s = 0.0;
      for (const auto& z : v) s = std::max(s, std::abs(z));
      return s;
    }
  }
  return 0.0;
}

NormTag dual(NormTag t) {
  switch (t) {
    case NormTag::L1: return NormTag::LInf;
    case NormTag::LInf: return NormTag::L1;
    case NormTag::L2: return NormTag::L2;
  }
  return t;
}

// max ||M x||_to over unimodular x with phases on the grid; x_0 = 1.
double brute_linf(const CMatrix& m, NormTag to) {
  const std::size_t n = m.cols();
  require(n <= kMaxBruteForceDim, "mixed_norm: unsupported (dimension " + std::to_string(n) +
                                      " exceeds brute-force limit)");
  if (n == 0) return 0.0;
  std::vector<cplx> phases(kPhaseGrid);
  for (int k = 0; k < kPhaseGrid; ++k) {
    const double a = 2.0 * std::numbers::pi * k / kPhaseGrid;
    phases[static_cast<std::size_t>(k)] = {std::cos(a), std::sin(a)};
  }
  if (kPhaseGrid == 4) phases = {1.0, {0.0, 1.0}, -1.0, {0.0, -1.0}};
  std::vector<int> digit(n, 0);
  std::vector<cplx> y(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < n; ++c) y[r] += m(r, c);
  double best = vector_norm(y, to);
  for (;;) {
    std::size_t j = 1;
    for (; j < n; ++j) {
      const int old = digit[j];
      const int nxt = (old + 1) % kPhaseGrid;
      digit[j] = nxt;
      const cplx delta = phases[static_cast<std::size_t>(nxt)] - phases[static_cast<std::size_t>(old)];
      for (std::size_t r = 0; r < m.rows(); ++r) y[r] += delta * m(r, j);
      if (nxt != 0) break;
    }
    if (j >= n) break;
    best = std::max(best, vector_norm(y, to));
  }
  return best;
}

}  // namespace

CMatrix SvdResult::reconstruct() const {
  CMatrix scaled = left;
  const auto s = sigma.values();
  for (std::size_t r = 0; r < scaled.rows(); ++r)
    for (std::size_t c = 0; c < scaled.cols(); ++c) scaled(r, c) *= s[c];
  return scaled * right.adjoint();
}

SvdResult svd(const CMatrix& m) {
  require(m.all_finite(), "svd: non-finite entry");
  require(std::max(m.rows(), m.cols()) <= kMaxSvdDim, "svd: dimension exceeds 1024");
  if (m.rows() >= m.cols()) return jacobi_tall(m);
  SvdResult t = jacobi_tall(m.adjoint());
  return SvdResult{std::move(t.right), std::move(t.sigma), std::move(t.left)};
}

std::vector<double> singular_values(const CMatrix& m) {
  const SvdResult r = svd(m);
  const auto s = r.sigma.values();
  return {s.begin(), s.end()};
}

std::vector<cplx> eigenvalues(const CMatrix& m) {
  require(m.is_square(), "eigenvalues: matrix must be square");
  require(m.rows() <= kMaxEigDim, "eigenvalues: dimension exceeds 256");
  require(m.all_finite(), "eigenvalues: non-finite entry");
  const std::size_t n = m.rows();
  std::vector<cplx> eig(n);
  if (n == 0) return eig;

  CMatrix h = m;
  hessenberg(h);
  const double hnorm = h.frobenius();
  const std::size_t cap = 100 * n;
  std::size_t steps = 0;
  std::size_t since_deflation = 0;

  std::size_t hi = n - 1;
  while (true) {
    if (hi == 0) {
      eig[0] = h(0, 0);
      break;
    }
    std::size_t lo = hi;
    for (; lo > 0; --lo) {
      const double sub = std::abs(h(lo, lo - 1));
      if (sub <= kEps * (std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo))) || sub <= kEps * hnorm) {
        h(lo, lo - 1) = 0.0;
        break;
      }
    }
    if (lo == hi) {
      eig[hi] = h(hi, hi);
      --hi;
      since_deflation = 0;
      continue;
    }
    if (++steps > cap) throw NumericalError("eigenvalues: QR iteration exceeded 100 n steps");
    ++since_deflation;

    const cplx a = h(hi - 1, hi - 1), b = h(hi - 1, hi), c = h(hi, hi - 1), d = h(hi, hi);
    cplx mu;
    if (since_deflation % 11 == 10) {
      mu = d + 0.75 * std::abs(c);
    } else {
      const cplx half = 0.5 * (a - d);
      const cplx root = std::sqrt(half * half + b * c);
      const cplx l1 = 0.5 * (a + d) + root, l2 = 0.5 * (a + d) - root;
      mu = std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
    }

    for (std::size_t k = lo; k <= hi; ++k) h(k, k) -= mu;
    std::vector<std::pair<cplx, cplx>> rot;
    rot.reserve(hi - lo);
    for (std::size_t k = lo; k < hi; ++k) {
      const cplx x = h(k, k), y = h(k + 1, k);
      const double r = std::hypot(std::abs(x), std::abs(y));
      cplx cs{1.0}, sn{0.0};
      if (r > 0.0) {
        cs = x / r;
        sn = y / r;
      }
      rot.emplace_back(cs, sn);
      for (std::size_t j = k; j <= hi; ++j) {
        const cplx u = h(k, j), w = h(k + 1, j);
        h(k, j) = std::conj(cs) * u + std::conj(sn) * w;
        h(k + 1, j) = -sn * u + cs * w;
      }
    }
    for (std::size_t k = lo; k < hi; ++k) {
      const auto [cs, sn] = rot[k - lo];
      const std::size_t last = std::min(k + 2, hi);
      for (std::size_t i = lo; i <= last; ++i) {
        const cplx u = h(i, k), w = h(i, k + 1);
        h(i, k) = cs * u + sn * w;
        h(i, k + 1) = -std::conj(sn) * u + std::conj(cs) * w;
      }
    }
    for (std::size_t k = lo; k <= hi; ++k) h(k, k) += mu;
  }

  std::sort(eig.begin(), eig.end(), [](const cplx& x, const cplx& y) {
    const double ax = std::abs(x), ay = std::abs(y);
    if (ax != ay) return ax > ay;
    return std::arg(x) < std::arg(y);
  });
  return eig;
}

cplx determinant(const CMatrix& m) {
  require(m.is_square(), "determinant: matrix must be square");
  CMatrix a = m;
  const std::size_t n = a.rows();
  cplx det{1.0};
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (a(piv, k) == cplx{}) return cplx{};
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  require(rows * cols <= kMaxKronEntries, "kron: result exceeds 2^22 entries");
  CMatrix out(rows, cols);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

CMatrix range_basis(const CMatrix& m, double rel_tol) {
  const SvdResult s = svd(m);
  const auto sig = s.sigma.values();
  std::size_t rank = 0;
  const double cut = sig.empty() ? 0.0 : rel_tol * sig.front();
  while (rank < sig.size() && sig[rank] > cut && sig[rank] > 0.0) ++rank;
  return s.left.block(0, 0, s.left.rows(), rank);
}

std::string to_string(NormTag t) {
  switch (t) {
    case NormTag::L1: return "l1";
    case NormTag::L2: return "l2";
    case NormTag::LInf: return "linf";
  }
  return "?";
}

NormTag parse_norm_tag(const std::string& s) {
  if (s == "l1") return NormTag::L1;
  if (s == "l2") return NormTag::L2;
  if (s == "linf") return NormTag::LInf;
  throw InputError("unknown norm tag '" + s + "'");
}

MixedNorm mixed_norm(const CMatrix& m, NormTag from, NormTag to) {
  if (m.empty()) return {0.0, true};
  if (from == NormTag::L1) {
    double best = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) best = std::max(best, vector_norm(m.col(c), to));
    return {best, true};
  }
  if (to == NormTag::LInf) {
    double best = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) best = std::max(best, vector_norm(m.row_span(r), dual(from)));
    return {best, true};
  }
  if (from == NormTag::L2 && to == NormTag::L2) return {singular_values(m).front(), true};

  // Remaining: linf -> l2, linf -> l1, l2 -> l1.
  if (m.cols() == 1) return {vector_norm(m.col(0), to), true};
  if (m.rows() == 1) return {vector_norm(m.row_span(0), dual(from)), true};
  if (m.is_diagonal()) {
    const auto d = m.diag();
    const NormTag tag = (from == NormTag::LInf && to == NormTag::L1) ? NormTag::L1 : NormTag::L2;
    return {vector_norm(d, tag), true};
  }
  if (from == NormTag::LInf) return {brute_linf(m, to), false};
  // ||M : l2 -> l1|| = ||M^* : linf -> l2||
  return {brute_linf(m.adjoint(), NormTag::L2), false};
}

double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const auto& x : a) {
    std::size_t best = b.size();
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!used[j] && std::abs(x - b[j]) < bd) {
        bd = std::abs(x - b[j]);
        best = j;
      }
    used[best] = true;
    worst = std::max(worst, bd);
  }
  return worst;
}

}  // namespace schlab
