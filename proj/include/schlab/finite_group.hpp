#pragma once

// Harmonic analysis on finite abelian groups G = Z_{n1} x ... x Z_{nk}.
//
// Normalization: the function transform carries the Haar probability weight,
//   fhat(g) = (1/|G|) sum_t conj(g(t)) f(t),
// while the measure transform does not,
//   muhat(g) = sum_t conj(g(t)) mu_t.
// Consequently conv_matrix(f) * g = |G| fhat(g) g for every character g.
//
// Elements and characters are enumerated lexicographically over coordinate
// tuples, first coordinate most significant; the same index space serves
// both G and its dual.

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "schlab/cmatrix.hpp"

namespace schlab {

inline constexpr std::size_t kMaxGroupOrder = std::size_t{1} << 20;

class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<int> moduli);

  // "Z4xZ3xZ5"; whitespace is ignored.
  static FiniteAbelianGroup parse(std::string_view spec);
  std::string to_string() const;

  const std::vector<int>& moduli() const { return moduli_; }
  std::size_t order() const { return order_; }

  std::vector<int> coords(std::size_t index) const;
  std::size_t index(const std::vector<int>& coords) const;

  std::size_t add(std::size_t a, std::size_t b) const;
  std::size_t sub(std::size_t a, std::size_t b) const;
  std::size_t neg(std::size_t a) const;

  // gamma_chi(t) = exp(2 pi i sum_j chi_j t_j / n_j)
  cplx character(std::size_t chi, std::size_t t) const;
  // (1/sqrt|G|) [gamma_chi(t)]_{chi, t}
  CMatrix character_table() const;

  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;

 private:
  std::vector<int> moduli_;
  std::vector<std::size_t> strides_;
  std::size_t order_ = 0;
};

struct GroupFunction {
  FiniteAbelianGroup group;
  std::vector<cplx> values;

  GroupFunction(FiniteAbelianGroup g, std::vector<cplx> v);
  double sup_norm() const;
};

struct GroupMeasure {
  FiniteAbelianGroup group;
  std::vector<cplx> atoms;

  GroupMeasure(FiniteAbelianGroup g, std::vector<cplx> a);
  static GroupMeasure dirac(const FiniteAbelianGroup& g, std::size_t at);
  double variation() const;
};

FiniteAbelianGroup enumerate_group(std::vector<int> moduli);

// The character gamma_chi as a function on G.
GroupFunction character_function(const FiniteAbelianGroup& g, std::size_t chi);

std::vector<cplx> fourier(const GroupFunction& f);
GroupFunction inverse_fourier(const FiniteAbelianGroup& g, const std::vector<cplx>& fhat);
std::vector<cplx> measure_fourier(const GroupMeasure& mu);

// (f * mu)(s) = sum_t f(s - t) mu_t
GroupFunction convolve(const GroupFunction& f, const GroupMeasure& mu);

// M[s, t] = f(s - t)
CMatrix conv_matrix(const GroupFunction& f);

}  // namespace schlab
