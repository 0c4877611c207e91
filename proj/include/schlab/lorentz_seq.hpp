#pragma once

// Lorentz sequence spaces l_{p,q} over finitely supported sequences.
//
// a_n(x) is the n-th entry (1-based) of the non-increasing rearrangement of
// |x|; entries past the stored length are zero. The quasi-norm is
//
//   ||x||_{p,q} = ( sum_n n^{q/p - 1} a_n(x)^q )^{1/q},   q < inf
//   ||x||_{p,inf} = sup_n n^{1/p} a_n(x)
//
// and ||x||_{p,p} is the plain l_p norm.

#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace schlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Finite non-negative sequence with its non-increasing rearrangement cached.
class RealSeq {
 public:
  RealSeq() = default;
  // Takes absolute values; ties in the rearrangement keep original order.
  explicit RealSeq(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  std::span<const double> values() const { return values_; }
  std::span<const double> rearranged() const { return rearranged_; }

  // a_n(x), 1-based; zero past the end.
  double approx_number(std::size_t n) const;

 private:
  std::vector<double> values_;
  std::vector<double> rearranged_;
};

RealSeq rearrange(std::span<const double> x);
RealSeq rearrange(std::span<const std::complex<double>> x);

struct LorentzParams {
  double p = 1.0;
  double q = 1.0;

  // Rejects p <= 0, q <= 0, NaN, and p = inf with finite q.
  static LorentzParams make(double p, double q);
  static LorentzParams schatten(double p) { return make(p, p); }

  friend bool operator==(const LorentzParams&, const LorentzParams&) = default;
};

double lorentz_quasinorm(const RealSeq& x, const LorentzParams& params);

// Indices n_0 = 1 < n_1 < ... with a <= n_{k+1}/n_k <= b.
class QuasiGeoSeq {
 public:
  QuasiGeoSeq(std::vector<std::size_t> indices, double ratio_lo, double ratio_hi);

  // 1, 2, 4, ... up to the last power of two <= max_index.
  static QuasiGeoSeq dyadic(std::size_t max_index);
  // n_k = (k+1) 2^k up to max_index.
  static QuasiGeoSeq linear_dyadic(std::size_t max_index);

  std::span<const std::size_t> indices() const { return indices_; }
  std::pair<double, double> ratio_bounds() const { return {lo_, hi_}; }

 private:
  std::vector<std::size_t> indices_;
  double lo_;
  double hi_;
};

// l_q norm of (n_k^{1/p} a_{n_k}(x)); equivalent to the direct quasi-norm.
double subsampled_quasinorm(const RealSeq& x, const LorentzParams& params, const QuasiGeoSeq& idx);

// All pairwise products x_i y_j, rearranged; length |x| |y|.
RealSeq outer_product(const RealSeq& x, const RealSeq& y);

// x_m: 2^i copies of 2^{-i} for i = 0..m, length 2^{m+1} - 1.
RealSeq counterexample_xm(int m);

inline constexpr int kMaxCounterexampleM = 25;

// Least-squares slope of log y against log x.
double slope_fit(std::span<const std::pair<double, double>> points);

}  // namespace schlab
