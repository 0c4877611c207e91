#pragma once

// Dense kernels on CMatrix: one-sided Jacobi SVD, Hessenberg + shifted QR
// eigenvalues, Kronecker products, and the mixed l_p -> l_q operator norms
// used to size the legs of a factorization.

#include <cstddef>
#include <string>
#include <vector>

#include "schlab/cmatrix.hpp"
#include "schlab/lorentz_seq.hpp"

namespace schlab {

inline constexpr std::size_t kMaxSvdDim = 1024;
inline constexpr std::size_t kMaxEigDim = 256;
inline constexpr std::size_t kMaxKronEntries = std::size_t{1} << 22;

// Thin SVD: M = left * diag(sigma) * right^*, k = min(rows, cols) columns.
struct SvdResult {
  CMatrix left;
  RealSeq sigma;
  CMatrix right;

  CMatrix reconstruct() const;
};

SvdResult svd(const CMatrix& m);
std::vector<double> singular_values(const CMatrix& m);

// Eigenvalues with algebraic multiplicity, sorted by decreasing modulus and
// then by argument. Throws NumericalError past 100 n QR steps.
std::vector<cplx> eigenvalues(const CMatrix& m);

// Partial-pivot LU determinant.
cplx determinant(const CMatrix& m);

CMatrix kron(const CMatrix& a, const CMatrix& b);

// Orthonormal basis (as columns) of range(m), rank by sigma > rel_tol * sigma_max.
CMatrix range_basis(const CMatrix& m, double rel_tol = 1e-12);

// Domain/codomain norm of a factor stage. M(G) is l1, C(G) is linf, Hilbert
// legs are l2.
enum class NormTag { L1, L2, LInf };

std::string to_string(NormTag t);
NormTag parse_norm_tag(const std::string& s);

struct MixedNorm {
  double value = 0.0;
  bool exact = true;  // false: brute-force lower bound over a phase grid
};

inline constexpr std::size_t kMaxBruteForceDim = 12;
inline constexpr int kPhaseGrid = 4;  // phases {1, i, -1, -i}

// ||M : l_from -> l_to||. Closed forms: l1 -> any (max column norm),
// any -> linf (max row dual norm), l2 -> l2 (top singular value), and
// linf -> l2 / l2 -> l1 / linf -> l1 for diagonal or single row/column M.
// Remaining cases with at most kMaxBruteForceDim free coordinates are
// maximised over unimodular vectors on the kPhaseGrid grid and reported as a
// lower bound. Anything larger throws InputError.
MixedNorm mixed_norm(const CMatrix& m, NormTag from, NormTag to);

// Greedy nearest matching between two multisets of complex numbers; returns
// the largest matched distance (inf when sizes differ).
double multiset_distance(std::vector<cplx> a, std::vector<cplx> b);

}  // namespace schlab
