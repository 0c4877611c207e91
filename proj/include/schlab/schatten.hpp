#pragma once

// Lorentz-Schatten quasi-norms sigma_{p,q}(M) = ||s(M)||_{p,q}, where s(M)
// is the singular spectrum from svd(). M is in S_{p,q} iff s(M) is in
// l_{p,q}; (p, p) gives the Schatten-p quasi-norm and (inf, inf) the
// operator norm.

#include <string>

#include "schlab/cmatrix.hpp"
#include "schlab/lorentz_seq.hpp"

namespace schlab {

struct SingularSpectrum {
  RealSeq sigma;
};

SingularSpectrum spectrum(const CMatrix& m);

double schatten_quasinorm(const CMatrix& m, const LorentzParams& params);

// Relative slack applied to every "lhs <= rhs" verdict below.
inline constexpr double kCheckSlack = 1e-12;

// sigma_{s,r}(U V) <= C sigma_{pU,qU}(U) sigma_{pV,qV}(V) with
// 1/s = 1/pU + 1/pV and 1/r = 1/qU + 1/qV; C = 2^{1/s}, or 1 when both
// factors are plain Schatten (pU = qU and pV = qV).
struct CompositionReport {
  LorentzParams u;
  LorentzParams v;
  LorentzParams product;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 1.0;
  bool holds = false;
};

CompositionReport composition_check(const CMatrix& u, const CMatrix& v, const LorentzParams& u_params,
                                    const LorentzParams& v_params);

// sigma_{p',q'}(M) <= C sigma_{p,q}(M) for (p = p', q <= q') or p < p'.
struct InclusionReport {
  LorentzParams from;
  LorentzParams to;
  double small_norm = 0.0;  // sigma_{p',q'}
  double large_norm = 0.0;  // sigma_{p,q}
  double ratio = 0.0;
  double constant = 1.0;
  bool holds = false;
};

// Throws InputError when the exponent pair is not an inclusion.
void require_inclusion(const LorentzParams& from, const LorentzParams& to);

InclusionReport inclusion_check(const CMatrix& m, const LorentzParams& from, const LorentzParams& to,
                                double constant);

}  // namespace schlab
