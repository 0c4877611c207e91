#pragma once

// Vector-valued convolution with X = C^d (Euclidean). Values of a
// VectorFunction are stored element-major: values[t * d + i] is component i
// of fbar(t). The same stacking is used for C(G, X) and M(G, X) vectors, so
// the scalar-times-operator map T_f equals kron(conv_matrix(f), T).

#include <cstddef>
#include <vector>

#include "schlab/cmatrix.hpp"
#include "schlab/finite_group.hpp"

namespace schlab {

struct VectorFunction {
  FiniteAbelianGroup group;
  std::size_t dim = 0;
  std::vector<cplx> values;

  VectorFunction(FiniteAbelianGroup g, std::size_t d, std::vector<cplx> v);

  std::vector<cplx> at(std::size_t t) const;
  double sup_norm() const;  // max_t ||fbar(t)||_2
};

struct VectorMeasure {
  FiniteAbelianGroup group;
  std::size_t dim = 0;
  std::vector<cplx> atoms;

  VectorMeasure(FiniteAbelianGroup g, std::size_t d, std::vector<cplx> a);
  double variation() const;  // sum_t ||atoms[t]||_2
};

// f (x) x
VectorFunction tensor_function(const GroupFunction& f, std::span<const cplx> x);

// (|G| d) x |G|: row (s, i), column t holds fbar(s - t)_i.
CMatrix vec_conv_matrix(const VectorFunction& fbar);

// fhat-bar(gamma) in C^d for every character, 1/|G| normalization.
std::vector<std::vector<cplx>> vec_fourier(const VectorFunction& fbar);
VectorFunction inverse_vec_fourier(const FiniteAbelianGroup& g, const std::vector<std::vector<cplx>>& coeffs);

// sup_{||x'|| <= 1} (sum_k |<x_k, x'>|^2)^{1/2}: top singular value of the
// d x K matrix with the x_k as columns.
double weak_l2_norm(const std::vector<std::vector<cplx>>& family);

// u : l2^K -> C(G, X), u b = sum_k b_k x_k gamma_k, together with the
// coefficient map A mu = (a_k muhat(gamma_k)) and fbar = sum_k a_k x_k gamma_k,
// so that u A = vec_conv_matrix(fbar).
struct LacunaryModel {
  CMatrix u;             // (|G| d) x K
  CMatrix coefficients;  // K x |G|
  VectorFunction fbar;
};

LacunaryModel lacunary_operator(const FiniteAbelianGroup& g, const std::vector<cplx>& a,
                                const std::vector<std::vector<cplx>>& xs, const std::vector<std::size_t>& gammas);

// ||u : l2 -> C(G, X)|| = max_s ||u_s||_{2 -> 2} over the d-row blocks u_s.
double sup_block_norm(const CMatrix& u, std::size_t block_rows);

// (sum_gamma ||T fhat-bar(gamma)||_2^s)^{1/s}
double property_l_probe(const CMatrix& t, const VectorFunction& fbar, double s);

// T_f(mubar)(s) = sum_t f(s - t) T mubar_t, assembled entry by entry.
CMatrix scalar_operator_convolution(const GroupFunction& f, const CMatrix& t);

}  // namespace schlab
