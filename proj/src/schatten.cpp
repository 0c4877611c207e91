#include "schlab/schatten.hpp"

#include <cmath>

#include "schlab/error.hpp"
#include "schlab/linalg.hpp"

namespace schlab {

namespace {

double reciprocal(double x) { return std::isinf(x) ? 0.0 : 1.0 / x; }

double from_reciprocal(double r) { return r == 0.0 ? kInf : 1.0 / r; }

}  // namespace

SingularSpectrum spectrum(const CMatrix& m) { return SingularSpectrum{svd(m).sigma}; }

double schatten_quasinorm(const CMatrix& m, const LorentzParams& params) {
  const auto checked = LorentzParams::make(params.p, params.q);
  if (m.empty()) return 0.0;
  return lorentz_quasinorm(spectrum(m).sigma, checked);
}

CompositionReport composition_check(const CMatrix& u, const CMatrix& v, const LorentzParams& u_params,
                                    const LorentzParams& v_params) {
  require(u.cols() == v.rows(), "composition_check: U and V are not composable");
  CompositionReport rep;
  rep.u = LorentzParams::make(u_params.p, u_params.q);
  rep.v = LorentzParams::make(v_params.p, v_params.q);
  const double s = from_reciprocal(reciprocal(rep.u.p) + reciprocal(rep.v.p));
  const double r = from_reciprocal(reciprocal(rep.u.q) + reciprocal(rep.v.q));
  rep.product = LorentzParams::make(s, r);
  const bool plain = rep.u.p == rep.u.q && rep.v.p == rep.v.q;
  rep.constant = plain ? 1.0 : std::pow(2.0, reciprocal(s));
  rep.lhs = schatten_quasinorm(u * v, rep.product);
  rep.rhs = rep.constant * schatten_quasinorm(u, rep.u) * schatten_quasinorm(v, rep.v);
  rep.holds = rep.lhs <= rep.rhs * (1.0 + kCheckSlack);
  return rep;
}

void require_inclusion(const LorentzParams& from, const LorentzParams& to) {
  LorentzParams::make(from.p, from.q);
  LorentzParams::make(to.p, to.q);
  const bool same_p = from.p == to.p && from.q <= to.q;
  require(same_p || from.p < to.p, "inclusion_check: need (p = p', q <= q') or p < p'");
}

InclusionReport inclusion_check(const CMatrix& m, const LorentzParams& from, const LorentzParams& to,
                                double constant) {
  require_inclusion(from, to);
  require(constant > 0.0, "inclusion_check: constant must be positive");
  InclusionReport rep;
  rep.from = from;
  rep.to = to;
  rep.constant = constant;
  const auto sig = spectrum(m).sigma;
  rep.large_norm = lorentz_quasinorm(sig, from);
  rep.small_norm = lorentz_quasinorm(sig, to);
  rep.ratio = rep.large_norm > 0.0 ? rep.small_norm / rep.large_norm : 0.0;
  rep.holds = rep.small_norm <= constant * rep.large_norm * (1.0 + kCheckSlack);
  return rep;
}

}  // namespace schlab
