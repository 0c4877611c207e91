#pragma once

// Seeded experiment drivers shared by the command-line tool and the
// acceptance suite. Every randomized case derives its generator from
// (seed, suite id, case index) via CounterRng::split, so verdicts do not
// depend on evaluation order.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "schlab/cmatrix.hpp"
#include "schlab/factorization.hpp"
#include "schlab/finite_group.hpp"
#include "schlab/lorentz_seq.hpp"
#include "schlab/rng.hpp"

namespace schlab {

using nlohmann::json;

// ---- random instances ------------------------------------------------------

GroupFunction random_function(const FiniteAbelianGroup& g, CounterRng& rng);
CMatrix random_matrix(std::size_t rows, std::size_t cols, CounterRng& rng);
CMatrix random_unitary(std::size_t n, CounterRng& rng);
NuclearRep random_nuclear_rep(std::size_t terms, std::size_t dim_x, std::size_t dim_y, CounterRng& rng);
// Non-negative sequence of random length in [1, max_len] drawn from a mix of
// uniform, power-law, and sparse profiles.
RealSeq random_sequence(std::size_t max_len, CounterRng& rng);

// ---- calibrated constants --------------------------------------------------

// Empirical constants pinned by a calibration run (schlab_calibrate).
// Keys are "p,q" (and "p,q->p',q'" for inclusions); inf is written "inf".
struct Calibration {
  std::uint64_t seed = 0;
  double margin = 1.0;
  std::map<std::string, double> dyadic_band;
  std::map<std::string, double> linear_dyadic_band;
  std::map<std::string, double> quasi_triangle;
  std::map<std::string, double> inclusion;
  std::map<std::string, double> tensor_closure;
  std::pair<double, double> oneil_band_2_1{0.0, 0.0};

  json to_json() const;
  static Calibration from_json(const json& j);
  static Calibration load(const std::filesystem::path& path);
};

std::string params_key(const LorentzParams& p);
LorentzParams params_from_key(const std::string& key);

// Configurations calibrated and checked.
std::vector<LorentzParams> band_configs();
std::vector<LorentzParams> triangle_configs();
std::vector<std::pair<LorentzParams, LorentzParams>> inclusion_configs();
std::vector<LorentzParams> tensor_closure_configs();

inline constexpr int kOneilCalibrationHi = 6;

Calibration calibrate(std::uint64_t seed, std::size_t trials, double margin);

// ---- counterexample x_m ---------------------------------------------------

inline constexpr int kMaxTensorM = 11;

struct CounterexampleRow {
  int m = 0;
  double norm_xm = 0.0;
  double norm_tensor = 0.0;
  double ratio = 0.0;  // norm_tensor / norm_xm^2
};

struct CounterexampleTable {
  std::vector<CounterexampleRow> rows;
  std::optional<double> slope_xm;
  std::optional<double> slope_tensor;
};

double tensor_norm_xm(int m, const LorentzParams& params);
CounterexampleTable run_counterexample(int m_lo, int m_hi, const LorentzParams& params);

// ---- property suites -------------------------------------------------------

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double worst = 0.0;  // largest normalized error seen (1 = at tolerance)
  std::optional<json> first_failure;

  bool passed() const { return failures == 0 && cases > 0; }
  json to_json() const;
};

struct Tolerances {
  double abs = 1e-10;
  double rel = 1e-9;
};

std::vector<FiniteAbelianGroup> eigen_test_groups();

SuiteResult conv_factor_suite(std::uint64_t seed, const std::vector<FiniteAbelianGroup>& groups,
                              const std::vector<double>& s_values, std::size_t count, Tolerances tol);
SuiteResult eigen_reproduction_suite(std::uint64_t seed, const std::vector<FiniteAbelianGroup>& groups,
                                     std::size_t count, double tol);
SuiteResult five_factor_suite(std::uint64_t seed, std::size_t count, const std::vector<double>& r_values,
                              Tolerances tol);
SuiteResult composition_suite(std::uint64_t seed, std::size_t pairs);
SuiteResult kron_law_suite(std::uint64_t seed, std::size_t count, std::size_t max_dim, double tol);
SuiteResult weak_l2_suite(std::uint64_t seed, std::size_t count, double tol);
SuiteResult svd_eig_suite(std::uint64_t seed, std::size_t count);
SuiteResult weyl_suite(std::uint64_t seed, std::size_t count, std::size_t max_dim, double slack);
SuiteResult oneil_suite(const Calibration& cal);
SuiteResult lorentz_constants_suite(std::uint64_t seed, std::size_t trials, const Calibration& cal);

}  // namespace schlab
