#include "schlab/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "schlab/error.hpp"
#include "schlab/schatten.hpp"

namespace schlab {

namespace {

constexpr double kUnitTol = 1e-12;

double vec_norm(std::span<const cplx> v, NormTag tag) {
  return mixed_norm(CMatrix::column(v), NormTag::L1, tag).value;
}

NormTag dual_tag(NormTag t) {
  if (t == NormTag::L1) return NormTag::LInf;
  if (t == NormTag::LInf) return NormTag::L1;
  return NormTag::L2;
}

cplx phase_of(cplx z) { return z / std::abs(z); }

void require_three_stage(const FactorChain& c, const char* who) {
  require(c.size() == 3 && c.middle_index() == 1,
          std::string(who) + ": expected a three-stage chain with the middle factor in position 1");
}

}  // namespace

NuclearRep NuclearRep::make(std::vector<double> d, CMatrix functionals, CMatrix vectors, NormTag domain,
                            NormTag codomain) {
  const std::size_t n = d.size();
  require(functionals.rows() == n, "NuclearRep: functionals must have one row per coefficient");
  require(vectors.cols() == n, "NuclearRep: vectors must have one column per coefficient");
  for (const double x : d) require(x >= 0.0 && std::isfinite(x), "NuclearRep: coefficients must be finite and >= 0");
  for (std::size_t k = 0; k < n; ++k) {
    const double rn = vec_norm(functionals.row_span(k), dual_tag(domain));
    require(std::abs(rn - 1.0) <= kUnitTol, "NuclearRep: functional " + std::to_string(k) + " is not unit");
    const double cn = vec_norm(vectors.col(k), codomain);
    require(std::abs(cn - 1.0) <= kUnitTol, "NuclearRep: vector " + std::to_string(k) + " is not unit");
  }
  return NuclearRep{std::move(d), std::move(functionals), std::move(vectors), domain, codomain};
}

CMatrix NuclearRep::represented() const {
  return vectors * CMatrix::diagonal(std::span<const double>(d)) * functionals;
}

FactorChain::FactorChain(std::vector<ChainStage> stages, std::size_t middle_index)
    : stages_(std::move(stages)), middle_(middle_index) {
  require(!stages_.empty(), "FactorChain: no stages");
  require(middle_ < stages_.size(), "FactorChain: middle index out of range");
  for (std::size_t k = 0; k + 1 < stages_.size(); ++k)
    require(stages_[k + 1].matrix.cols() == stages_[k].matrix.rows(),
            "FactorChain: stage " + std::to_string(k + 1) + " does not compose with stage " + std::to_string(k));
}

CMatrix FactorChain::compose() const {
  CMatrix out = stages_.front().matrix;
  for (std::size_t k = 1; k < stages_.size(); ++k) out = stages_[k].matrix * out;
  return out;
}

double schatten_exponent_for(double r) {
  require(r > 0.0 && r <= 1.0, "exponent must lie in (0, 1]");
  return r == 1.0 ? kInf : r / (1.0 - r);
}

FactorChain five_factor(const NuclearRep& rep, double r) {
  require(r > 0.0 && r <= 1.0, "five_factor: r must lie in (0, 1]");
  const std::size_t n = rep.d.size();
  std::vector<double> outer(n), middle(n);
  for (std::size_t k = 0; k < n; ++k) {
    outer[k] = std::sqrt(std::pow(rep.d[k], r));
    middle[k] = std::pow(rep.d[k], 1.0 - r);
  }
  std::vector<ChainStage> stages;
  stages.push_back({rep.functionals, rep.domain, NormTag::LInf});
  stages.push_back({CMatrix::diagonal(std::span<const double>(outer)), NormTag::LInf, NormTag::L2});
  stages.push_back({CMatrix::diagonal(std::span<const double>(middle)), NormTag::L2, NormTag::L2});
  stages.push_back({CMatrix::diagonal(std::span<const double>(outer)), NormTag::L2, NormTag::L1});
  stages.push_back({rep.vectors, NormTag::L1, rep.codomain});
  return FactorChain(std::move(stages), 2);
}

std::vector<std::size_t> nonzero_characters(const std::vector<cplx>& fhat) {
  double top = 0.0;
  for (const auto& z : fhat) top = std::max(top, std::abs(z));
  std::vector<std::size_t> keep;
  if (top == 0.0) return keep;
  for (std::size_t k = 0; k < fhat.size(); ++k)
    if (std::abs(fhat[k]) > kZeroCoefficient * top) keep.push_back(k);
  return keep;
}

FactorChain conv_factor(const GroupFunction& f, double s) {
  require(s > 0.0 && s <= 1.0, "conv_factor: s must lie in (0, 1]");
  const auto fhat = fourier(f);
  const auto keep = nonzero_characters(fhat);
  require(!keep.empty(), "conv_factor: f is identically zero");
  const auto& g = f.group;
  const std::size_t n = g.order(), k = keep.size();

  CMatrix b(k, n), u(k, k), a(n, k);
  for (std::size_t i = 0; i < k; ++i) {
    const cplx coeff = fhat[keep[i]];
    const double c = std::abs(coeff);
    const double half = std::pow(c, s / 2.0);
    u(i, i) = std::pow(c, 1.0 - s);
    const cplx sign = phase_of(coeff);
    for (std::size_t t = 0; t < n; ++t) {
      const cplx gamma = g.character(keep[i], t);
      b(i, t) = half * std::conj(gamma);
      a(t, i) = sign * half * gamma;
    }
  }
  std::vector<ChainStage> stages;
  stages.push_back({std::move(b), NormTag::L1, NormTag::L2});
  stages.push_back({std::move(u), NormTag::L2, NormTag::L2});
  stages.push_back({std::move(a), NormTag::L2, NormTag::LInf});
  return FactorChain(std::move(stages), 1);
}

NuclearRep conv_nuclear_rep(const GroupFunction& f, double s) {
  require(s > 0.0 && s <= 1.0, "conv_nuclear_rep: s must lie in (0, 1]");
  const auto fhat = fourier(f);
  const auto keep = nonzero_characters(fhat);
  require(!keep.empty(), "conv_nuclear_rep: f is identically zero");
  const auto& g = f.group;
  const std::size_t n = g.order(), k = keep.size();
  std::vector<double> d(k);
  CMatrix functionals(k, n), vectors(n, k);
  for (std::size_t i = 0; i < k; ++i) {
    const cplx coeff = fhat[keep[i]];
    d[i] = std::abs(coeff);
    const cplx sign = phase_of(coeff);
    for (std::size_t t = 0; t < n; ++t) {
      const cplx gamma = g.character(keep[i], t);
      functionals(i, t) = std::conj(gamma);
      vectors(t, i) = sign * gamma;
    }
  }
  return NuclearRep::make(std::move(d), std::move(functionals), std::move(vectors), NormTag::L1, NormTag::LInf);
}

CMatrix natural_injection(const FiniteAbelianGroup& g) {
  CMatrix j = CMatrix::identity(g.order());
  j *= 1.0 / static_cast<double>(g.order());
  return j;
}

FactorChain tensor_factor(const FactorChain& c1, const FactorChain& c2) {
  require_three_stage(c1, "tensor_factor");
  require_three_stage(c2, "tensor_factor");
  std::vector<ChainStage> stages;
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& s1 = c1.stages()[k];
    const auto& s2 = c2.stages()[k];
    stages.push_back({kron(s1.matrix, s2.matrix), s1.from, s1.to});
  }
  return FactorChain(std::move(stages), 1);
}

FactorChain svd_chain(const CMatrix& t) {
  const SvdResult s = svd(t);
  std::vector<ChainStage> stages;
  stages.push_back({s.right.adjoint(), NormTag::L2, NormTag::L2});
  stages.push_back({CMatrix::diagonal(s.sigma.values()), NormTag::L2, NormTag::L2});
  stages.push_back({s.left, NormTag::L2, NormTag::L2});
  return FactorChain(std::move(stages), 1);
}

ExtractedChains extract_scalar_factors(const FactorChain& tf_chain, const GroupFunction& f, const CMatrix& t) {
  require_three_stage(tf_chain, "extract_scalar_factors");
  require(f.sup_norm() > 0.0, "extract_scalar_factors: f is identically zero");
  require(t.max_abs() > 0.0, "extract_scalar_factors: T is zero");

  const CMatrix conv = conv_matrix(f);
  const CMatrix target = kron(conv, t);
  const CMatrix composed = tf_chain.compose();
  require(composed.rows() == target.rows() && composed.cols() == target.cols(),
          "extract_scalar_factors: chain shape does not match kron(conv_matrix(f), T)");
  require(max_abs_diff(composed, target) <= 1e-10 * std::max(1.0, target.max_abs()),
          "extract_scalar_factors: chain does not compose to kron(conv_matrix(f), T)");

  const auto& g = f.group;
  const std::size_t n = g.order(), dx = t.cols(), dy = t.rows();
  const auto& a = tf_chain.stages()[0];
  const auto& u = tf_chain.stages()[1];
  const auto& b = tf_chain.stages()[2];

  ExtractedChains out{tf_chain, tf_chain, 0, {}, {}};
  out.s0 = static_cast<std::size_t>(
      std::max_element(f.values.begin(), f.values.end(),
                       [](const cplx& x, const cplx& y) { return std::abs(x) < std::abs(y); }) -
      f.values.begin());

  // i x = delta_e (x) x,  j h = h(s0) / f(s0)
  CMatrix e0(n, 1);
  e0(0, 0) = 1.0;
  const CMatrix embed = kron(e0, CMatrix::identity(dx));
  CMatrix es0(1, n);
  es0(0, out.s0) = 1.0 / f.values[out.s0];
  const CMatrix evaluate = kron(es0, CMatrix::identity(dy));
  out.for_operator = FactorChain({{a.matrix * embed, NormTag::L2, a.to},
                                  {u.matrix, u.from, u.to},
                                  {evaluate * b.matrix, b.from, NormTag::L2}},
                                 1);

  // k mu = mu (x) x0 with ||T x0|| = 1; V(h (x) y) = h <y', y> with y' = T x0.
  const SvdResult ts = svd(t);
  const double top = ts.sigma.values().front();
  out.x0 = ts.right.col(0);
  for (auto& z : out.x0) z /= top;
  out.y_prime = t * std::span<const cplx>(out.x0);
  const CMatrix lift = kron(CMatrix::identity(n), CMatrix::column(out.x0));
  CMatrix yrow(1, dy);
  for (std::size_t i = 0; i < dy; ++i) yrow(0, i) = std::conj(out.y_prime[i]);
  const CMatrix functional = kron(CMatrix::identity(n), yrow);

  const CMatrix first = a.matrix * lift;
  const CMatrix q = range_basis(u.matrix * first);
  const CMatrix qh = q.adjoint();
  out.for_conv = FactorChain({{first, NormTag::L1, a.to},
                              {qh * u.matrix, u.from, u.to},
                              {functional * b.matrix * q, b.from, NormTag::LInf}},
                             1);
  return out;
}

ChainReport verify_chain(const FactorChain& chain, const CMatrix& target, const LorentzParams& params,
                         std::optional<double> tolerance) {
  const CMatrix composed = chain.compose();
  require(composed.rows() == target.rows() && composed.cols() == target.cols(),
          "verify_chain: chain shape does not match target");
  ChainReport rep;
  rep.residual = max_abs_diff(composed, target);
  rep.tolerance = tolerance.value_or(1e-10 * std::max(1.0, target.max_abs()));
  rep.residual_ok = rep.residual <= rep.tolerance;
  rep.product_of_norms = 1.0;
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const auto& st = chain.stages()[k];
    double value = 0.0;
    bool exact = true;
    if (k == chain.middle_index()) {
      value = schatten_quasinorm(st.matrix, params);
      rep.middle_sigma_pq = value;
    } else {
      try {
        const MixedNorm mn = mixed_norm(st.matrix, st.from, st.to);
        value = mn.value;
        exact = mn.exact;
      } catch (const InputError&) {
        value = std::nan("");
        exact = false;
      }
    }
    rep.stage_norms.push_back(value);
    rep.stage_norm_exact.push_back(exact);
    rep.product_of_norms *= value;
  }
  return rep;
}

}  // namespace schlab
