#pragma once

// Explicit factorizations of finite operators through Schatten-class middle
// factors:
//
//   five_factor      T = V D2 D0 D1 W from a nuclear representation
//   conv_factor      conv_matrix(f) = A U B built from Fourier coefficients
//   conv_nuclear_rep the diagonal linf -> l1 representation of conv_matrix(f)
//   tensor_factor    Kronecker product of two three-stage chains
//   extract_scalar_factors
//                    recover chains for conv_matrix(f) and T from a chain of
//                    kron(conv_matrix(f), T)
//
// Chains are stored in application order: stages[0] acts first, so the
// composed operator is stages[n-1] * ... * stages[0].

#include <cstddef>
#include <optional>
#include <vector>

#include "schlab/cmatrix.hpp"
#include "schlab/finite_group.hpp"
#include "schlab/linalg.hpp"
#include "schlab/lorentz_seq.hpp"

namespace schlab {

// T x = sum_n d_n <row_n, x> col_n, i.e. T = vectors * diag(d) * functionals.
// Rows have unit norm dual to `domain`; columns unit norm in `codomain`.
struct NuclearRep {
  std::vector<double> d;
  CMatrix functionals;  // N x dim X
  CMatrix vectors;      // dim Y x N
  NormTag domain = NormTag::L2;
  NormTag codomain = NormTag::L2;

  // Validates shapes, d >= 0 and the unit-norm invariant to 1e-12.
  static NuclearRep make(std::vector<double> d, CMatrix functionals, CMatrix vectors,
                         NormTag domain = NormTag::L2, NormTag codomain = NormTag::L2);

  CMatrix represented() const;
};

struct ChainStage {
  CMatrix matrix;
  NormTag from;
  NormTag to;
};

class FactorChain {
 public:
  FactorChain(std::vector<ChainStage> stages, std::size_t middle_index);

  const std::vector<ChainStage>& stages() const { return stages_; }
  std::size_t middle_index() const { return middle_; }
  const ChainStage& middle() const { return stages_[middle_]; }
  std::size_t size() const { return stages_.size(); }

  CMatrix compose() const;

 private:
  std::vector<ChainStage> stages_;
  std::size_t middle_;
};

// v with 1/v = 1/r - 1 for r in (0, 1]; r = 1 gives inf.
double schatten_exponent_for(double r);

// Stages W, D1, D0, D2, V; middle D0 in S_v.
FactorChain five_factor(const NuclearRep& rep, double r);

// Characters with |fhat| above this fraction of max |fhat| are kept.
inline constexpr double kZeroCoefficient = 1e-14;

std::vector<std::size_t> nonzero_characters(const std::vector<cplx>& fhat);

// Stages B (l1 -> l2), U (l2 -> l2, middle), A (l2 -> linf) over the nonzero
// characters, with sign fhat = fhat / |fhat|.
FactorChain conv_factor(const GroupFunction& f, double s);

NuclearRep conv_nuclear_rep(const GroupFunction& f, double s);

// j: C(G) -> M(G), phi -> phi dm.
CMatrix natural_injection(const FiniteAbelianGroup& g);

FactorChain tensor_factor(const FactorChain& c1, const FactorChain& c2);

// Stages right^*, diag(sigma), left.
FactorChain svd_chain(const CMatrix& t);

struct ExtractedChains {
  FactorChain for_conv;
  FactorChain for_operator;
  std::size_t s0 = 0;
  std::vector<cplx> x0;
  std::vector<cplx> y_prime;
};

ExtractedChains extract_scalar_factors(const FactorChain& tf_chain, const GroupFunction& f,
                                       const CMatrix& t);

struct ChainReport {
  double residual = 0.0;
  double tolerance = 0.0;
  bool residual_ok = false;
  std::vector<double> stage_norms;  // middle entry is sigma_{p,q}
  std::vector<bool> stage_norm_exact;
  double middle_sigma_pq = 0.0;
  double product_of_norms = 0.0;
};

// Default tolerance: 1e-10 * max(1, max|target|).
ChainReport verify_chain(const FactorChain& chain, const CMatrix& target, const LorentzParams& params,
                         std::optional<double> tolerance = std::nullopt);

}  // namespace schlab
