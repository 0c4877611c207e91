#include "schlab/lorentz_seq.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "schlab/error.hpp"

namespace schlab {

RealSeq::RealSeq(std::vector<double> values) : values_(std::move(values)) {
  for (auto& v : values_) {
    require(!std::isnan(v), "RealSeq: NaN entry");
    v = std::abs(v);
  }
  rearranged_ = values_;
  std::stable_sort(rearranged_.begin(), rearranged_.end(), std::greater<>());
}

double RealSeq::approx_number(std::size_t n) const {
  require(n >= 1, "approx_number: index is 1-based");
  return n <= rearranged_.size() ? rearranged_[n - 1] : 0.0;
}

RealSeq rearrange(std::span<const double> x) {
  return RealSeq(std::vector<double>(x.begin(), x.end()));
}

RealSeq rearrange(std::span<const std::complex<double>> x) {
  std::vector<double> v(x.size());
  std::transform(x.begin(), x.end(), v.begin(), [](const auto& z) { return std::abs(z); });
  return RealSeq(std::move(v));
}

LorentzParams LorentzParams::make(double p, double q) {
  require(!std::isnan(p) && !std::isnan(q), "LorentzParams: NaN exponent");
  require(p > 0.0 && q > 0.0, "LorentzParams: exponents must be positive");
  require(!(std::isinf(p) && !std::isinf(q)), "LorentzParams: p = inf requires q = inf");
  return LorentzParams{p, q};
}

double lorentz_quasinorm(const RealSeq& x, const LorentzParams& params) {
  const auto& [p, q] = LorentzParams::make(params.p, params.q);
  const auto a = x.rearranged();
  if (a.empty() || a.front() == 0.0) return 0.0;

  if (std::isinf(q)) {
    if (std::isinf(p)) return a.front();
    double best = 0.0;
    for (std::size_t n = 1; n <= a.size(); ++n)
      best = std::max(best, std::pow(static_cast<double>(n), 1.0 / p) * a[n - 1]);
    return best;
  }

  // Scale by a_1 so large q cannot overflow.
  const double top = a.front();
  const double weight_exp = q / p - 1.0;
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t n = 1; n <= a.size(); ++n) {
    if (a[n - 1] == 0.0) break;
    const double term = std::pow(static_cast<double>(n), weight_exp) * std::pow(a[n - 1] / top, q);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return top * std::pow(sum, 1.0 / q);
}

QuasiGeoSeq::QuasiGeoSeq(std::vector<std::size_t> indices, double ratio_lo, double ratio_hi)
    : indices_(std::move(indices)), lo_(ratio_lo), hi_(ratio_hi) {
  require(!indices_.empty() && indices_.front() == 1, "QuasiGeoSeq: must start at 1");
  require(lo_ > 1.0 && lo_ <= hi_, "QuasiGeoSeq: need 1 < a <= b");
  for (std::size_t k = 0; k + 1 < indices_.size(); ++k) {
    const double r = static_cast<double>(indices_[k + 1]) / static_cast<double>(indices_[k]);
    require(r >= lo_ && r <= hi_,
            "QuasiGeoSeq: ratio " + std::to_string(r) + " at k=" + std::to_string(k) +
                " outside [a, b]");
  }
}

QuasiGeoSeq QuasiGeoSeq::dyadic(std::size_t max_index) {
  std::vector<std::size_t> idx{1};
  while (idx.back() * 2 <= max_index) idx.push_back(idx.back() * 2);
  return QuasiGeoSeq(std::move(idx), 2.0, 2.0);
}

QuasiGeoSeq QuasiGeoSeq::linear_dyadic(std::size_t max_index) {
  std::vector<std::size_t> idx{1};
  for (std::size_t k = 1;; ++k) {
    const std::size_t n = (k + 1) << k;
    if (n > max_index) break;
    idx.push_back(n);
  }
  // n_{k+1}/n_k = 2 (k+2)/(k+1) lies in (2, 4].
  return QuasiGeoSeq(std::move(idx), 2.0, 4.0);
}

double subsampled_quasinorm(const RealSeq& x, const LorentzParams& params, const QuasiGeoSeq& idx) {
  const auto& [p, q] = LorentzParams::make(params.p, params.q);
  double best = 0.0;
  double sum = 0.0;
  for (const std::size_t n : idx.indices()) {
    const double a = x.approx_number(n);
    if (a == 0.0) break;
    const double term = (std::isinf(p) ? 1.0 : std::pow(static_cast<double>(n), 1.0 / p)) * a;
    if (std::isinf(q))
      best = std::max(best, term);
    else
      sum += std::pow(term, q);
  }
  return std::isinf(q) ? best : std::pow(sum, 1.0 / q);
}

RealSeq outer_product(const RealSeq& x, const RealSeq& y) {
  const auto xs = x.values();
  const auto ys = y.values();
  std::vector<double> out;
  out.reserve(xs.size() * ys.size());
  for (const double a : xs)
    for (const double b : ys) out.push_back(a * b);
  return RealSeq(std::move(out));
}

RealSeq counterexample_xm(int m) {
  require(m >= 0, "counterexample_xm: m must be non-negative");
  require(m <= kMaxCounterexampleM, "counterexample_xm: m exceeds memory guard");
  std::vector<double> v;
  v.reserve((std::size_t{1} << (m + 1)) - 1);
  for (int i = 0; i <= m; ++i) v.insert(v.end(), std::size_t{1} << i, std::ldexp(1.0, -i));
  return RealSeq(std::move(v));
}

double slope_fit(std::span<const std::pair<double, double>> points) {
  require(points.size() >= 3, "slope_fit: need at least 3 points");
  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : points) {
    require(x > 0.0 && y > 0.0, "slope_fit: coordinates must be positive");
    sx += std::log(x);
    sy += std::log(y);
  }
  const double n = static_cast<double>(points.size());
  const double mx = sx / n, my = sy / n;
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [x, y] : points) {
    const double dx = std::log(x) - mx;
    sxy += dx * (std::log(y) - my);
    sxx += dx * dx;
  }
  require(sxx > 0.0, "slope_fit: x coordinates are all equal");
  return sxy / sxx;
}

}  // namespace schlab
