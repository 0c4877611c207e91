// schlab: deterministic experiment driver.
//
// Exit codes: 0 pass, 2 tolerance failure, 3 input error, 1 internal error.

#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "schlab/error.hpp"
#include "schlab/experiments.hpp"
#include "schlab/io.hpp"
#include "schlab/linalg.hpp"
#include "schlab/schatten.hpp"
#include "schlab/vecconv.hpp"

#ifndef SCHLAB_DEFAULT_CALIBRATION
#define SCHLAB_DEFAULT_CALIBRATION ""
#endif

namespace fs = std::filesystem;
using namespace schlab;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitTolerance = 2;
constexpr int kExitInput = 3;

// Slope bands for the (1,2) counterexample; tensor slope is fitted on m <= 10.
constexpr double kXmSlope = 0.5, kXmSlopeTol = 0.1;
constexpr double kTensorSlope = 1.5, kTensorSlopeTol = 0.15;
constexpr int kTensorSlopeHi = 10;

struct Config {
  std::uint64_t seed = 20261016;
  std::string group = "Z64";
  double s = 0.5;
  double r = 0.5;
  double p = 1.0;
  double q = 2.0;
  int m_lo = 4;
  int m_hi = 11;
  std::string out;
  double tol_abs = 1e-10;
  double tol_rel = 1e-9;
  std::string f_file;
  std::string fixtures = SCHLAB_DEFAULT_CALIBRATION;
  std::size_t dim = 3;
  std::size_t terms = 4;
};

double parse_exponent(const std::string& text, const char* what) {
  if (text == "inf") return kInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(v > 0.0)) throw InputError(std::string(what) + ": expected a positive number or inf");
  return v;
}

// Writes `text` to <out>/<name>, or stdout when no output directory is set.
void emit(const Config& cfg, const std::string& name, const std::string& text) {
  if (cfg.out.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  io::write_text(fs::path(cfg.out) / name, text);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json exp_json(double x) { return io::exponent_json(x); }

// ---- counterexample --------------------------------------------------------

int cmd_counterexample(const Config& cfg) {
  require(cfg.m_lo >= 1 && cfg.m_lo <= cfg.m_hi, "--m-lo must satisfy 1 <= m-lo <= m-hi");
  require(cfg.m_hi <= kMaxTensorM, "--m-hi exceeds the tensor memory guard (11)");
  const auto params = LorentzParams::make(cfg.p, cfg.q);
  const auto table = run_counterexample(cfg.m_lo, cfg.m_hi, params);

  std::ostringstream csv;
  csv << "m,norm_xm,norm_tensor,ratio\n";
  std::vector<std::pair<double, double>> xm, tensor;
  for (const auto& row : table.rows) {
    csv << row.m << ',' << io::format_double(row.norm_xm) << ',' << io::format_double(row.norm_tensor) << ','
        << io::format_double(row.ratio) << '\n';
    xm.emplace_back(row.m, row.norm_xm);
    if (row.m <= kTensorSlopeHi) tensor.emplace_back(row.m, row.norm_tensor);
  }

  json summary = {{"p", exp_json(cfg.p)}, {"q", exp_json(cfg.q)}, {"m_lo", cfg.m_lo}, {"m_hi", cfg.m_hi}};
  bool pass = true;
  const bool banded = params == LorentzParams::make(1, 2);
  if (xm.size() >= 3) {
    const double sx = slope_fit(xm);
    summary["slope_xm"] = sx;
    if (banded) {
      const bool ok = std::abs(sx - kXmSlope) <= kXmSlopeTol;
      summary["slope_xm_band"] = {kXmSlope - kXmSlopeTol, kXmSlope + kXmSlopeTol};
      summary["slope_xm_ok"] = ok;
      pass = pass && ok;
    }
  }
  if (tensor.size() >= 3) {
    const double st = slope_fit(tensor);
    summary["slope_tensor"] = st;
    summary["slope_tensor_m_hi"] = std::min(cfg.m_hi, kTensorSlopeHi);
    if (banded) {
      const bool ok = std::abs(st - kTensorSlope) <= kTensorSlopeTol;
      summary["slope_tensor_band"] = {kTensorSlope - kTensorSlopeTol, kTensorSlope + kTensorSlopeTol};
      summary["slope_tensor_ok"] = ok;
      pass = pass && ok;
    }
  }
  summary["passed"] = pass;

  if (cfg.out.empty()) {
    std::fputs(csv.str().c_str(), stdout);
    std::fputs(dump(summary).c_str(), stderr);
  } else {
    emit(cfg, "counterexample.csv", csv.str());
    emit(cfg, "counterexample.json", dump(summary));
  }
  return pass ? kExitPass : kExitTolerance;
}

// ---- conv-factor -----------------------------------------------------------

GroupFunction load_or_draw(const Config& cfg, const FiniteAbelianGroup& g) {
  if (cfg.f_file.empty()) {
    CounterRng rng(cfg.seed, 0);
    return random_function(g, rng);
  }
  std::ifstream is(cfg.f_file);
  require(static_cast<bool>(is), "cannot open --f-file " + cfg.f_file);
  return GroupFunction(g, io::read_function_csv(is, g.order()));
}

int cmd_conv_factor(const Config& cfg) {
  require(cfg.s > 0.0 && cfg.s <= 1.0, "--s must lie in (0, 1]");
  const auto g = FiniteAbelianGroup::parse(cfg.group);
  const auto f = load_or_draw(cfg, g);
  require(f.sup_norm() > 0.0, "conv-factor: f is identically zero");

  const auto chain = conv_factor(f, cfg.s);
  const double r = schatten_exponent_for(cfg.s);
  const auto target = conv_matrix(f);
  const double tol = cfg.tol_abs * f.sup_norm();
  const auto rep = verify_chain(chain, target, LorentzParams::make(r, r), tol);
  const double fhat_s = lorentz_quasinorm(rearrange(fourier(f)), LorentzParams::make(cfg.s, cfg.s));
  const double rel = std::abs(rep.product_of_norms - fhat_s) / fhat_s;
  const bool pass = rep.residual_ok && rel <= cfg.tol_rel;

  json report = io::to_json(rep);
  report["group"] = g.to_string();
  report["s"] = cfg.s;
  report["r"] = exp_json(r);
  report["source"] = cfg.f_file.empty() ? json{{"seed", cfg.seed}} : json{{"file", cfg.f_file}};
  report["fhat_s_norm"] = fhat_s;
  report["product_relative_error"] = rel;
  report["middle_operator_norm"] = singular_values(chain.middle().matrix).front();
  report["tol_abs"] = cfg.tol_abs;
  report["tol_rel"] = cfg.tol_rel;
  report["passed"] = pass;

  if (!cfg.out.empty()) {
    io::write_chain(fs::path(cfg.out) / "chain", chain, {{"s", cfg.s}, {"r", exp_json(r)}});
    std::ostringstream fcsv;
    io::write_function_csv(fcsv, f.values);
    emit(cfg, "f.csv", fcsv.str());
  }
  emit(cfg, "conv_factor.json", dump(report));
  return pass ? kExitPass : kExitTolerance;
}

// ---- five-factor -----------------------------------------------------------

int cmd_five_factor(const Config& cfg) {
  require(cfg.r > 0.0 && cfg.r <= 1.0, "--r must lie in (0, 1]");
  CounterRng rng(cfg.seed, 0);
  const auto rep = random_nuclear_rep(std::max<std::size_t>(cfg.terms, 1), std::max<std::size_t>(cfg.dim, 1),
                                      std::max<std::size_t>(cfg.dim, 1), rng);
  const auto chain = five_factor(rep, cfg.r);
  const CMatrix t = rep.represented();
  const double v = schatten_exponent_for(cfg.r);
  const double residual = max_abs_diff(chain.compose(), t);

  double sum_dr = 0.0;
  for (const double d : rep.d) sum_dr += std::pow(d, cfg.r);
  const double sigma_v = schatten_quasinorm(chain.middle().matrix, LorentzParams::make(v, v));
  const double want_sigma_v = std::isinf(v) ? 1.0 : std::pow(sum_dr, 1.0 / v);
  const double d1 = mixed_norm(chain.stages()[1].matrix, NormTag::LInf, NormTag::L2).value;
  const double err_sigma = std::abs(sigma_v - want_sigma_v) / want_sigma_v;
  const double err_d1 = std::abs(d1 - std::sqrt(sum_dr)) / std::sqrt(sum_dr);
  const bool pass =
      residual <= cfg.tol_abs * std::max(1.0, t.max_abs()) && err_sigma <= cfg.tol_abs && err_d1 <= cfg.tol_abs;

  json report = {{"seed", cfg.seed},
                 {"r", cfg.r},
                 {"v", exp_json(v)},
                 {"terms", rep.d.size()},
                 {"residual", residual},
                 {"sum_d_r", sum_dr},
                 {"sigma_v_middle", sigma_v},
                 {"sigma_v_expected", want_sigma_v},
                 {"d1_linf_l2", d1},
                 {"d1_expected", std::sqrt(sum_dr)},
                 {"passed", pass}};
  if (!cfg.out.empty()) io::write_chain(fs::path(cfg.out) / "chain", chain, {{"r", cfg.r}, {"v", exp_json(v)}});
  emit(cfg, "five_factor.json", dump(report));
  return pass ? kExitPass : kExitTolerance;
}

// ---- tensor ----------------------------------------------------------------

int cmd_tensor(const Config& cfg) {
  const auto params = LorentzParams::make(cfg.p, cfg.q);
  require(cfg.dim >= 1 && cfg.dim <= 32, "--dim must lie in [1, 32]");
  CounterRng rng(cfg.seed, 0);
  const CMatrix a = random_matrix(cfg.dim, cfg.dim, rng);
  const CMatrix b = random_matrix(cfg.dim, cfg.dim, rng);
  const auto chain = tensor_factor(svd_chain(a), svd_chain(b));
  const CMatrix ab = kron(a, b);

  const RealSeq outer = outer_product(svd(a).sigma, svd(b).sigma);
  const auto want = outer.rearranged();
  const auto got = singular_values(ab);
  double law = 0.0;
  for (std::size_t k = 0; k < got.size(); ++k) law = std::max(law, std::abs(got[k] - want[k]));
  const double scale = std::max(1.0, got.front());
  const double residual = max_abs_diff(chain.compose(), ab);
  const bool pass = law <= cfg.tol_rel * scale && residual <= cfg.tol_abs * scale;

  std::ostringstream csv;
  csv << "index,sigma_kron,sigma_outer\n";
  for (std::size_t k = 0; k < got.size(); ++k)
    csv << k + 1 << ',' << io::format_double(got[k]) << ',' << io::format_double(want[k]) << '\n';

  const double na = schatten_quasinorm(a, params), nb = schatten_quasinorm(b, params);
  json report = {{"seed", cfg.seed},
                 {"dim", cfg.dim},
                 {"p", exp_json(cfg.p)},
                 {"q", exp_json(cfg.q)},
                 {"spectrum_law_error", law},
                 {"chain_residual", residual},
                 {"sigma_pq_a", na},
                 {"sigma_pq_b", nb},
                 {"sigma_pq_kron", schatten_quasinorm(ab, params)},
                 {"passed", pass}};
  if (!cfg.out.empty()) emit(cfg, "tensor_spectrum.csv", csv.str());
  emit(cfg, "tensor.json", dump(report));
  return pass ? kExitPass : kExitTolerance;
}

// ---- vecconv ---------------------------------------------------------------

int cmd_vecconv(const Config& cfg) {
  const auto g = FiniteAbelianGroup::parse(cfg.group);
  require(cfg.dim >= 1 && cfg.dim <= 64, "--dim must lie in [1, 64]");
  require(cfg.terms >= 1 && cfg.terms <= g.order(), "--terms must lie in [1, |G|]");
  CounterRng rng(cfg.seed, 0);
  std::vector<std::size_t> chars(g.order());
  for (std::size_t i = 0; i < chars.size(); ++i) chars[i] = i;
  for (std::size_t j = 0; j < cfg.terms; ++j) std::swap(chars[j], chars[j + rng.below(g.order() - j)]);
  chars.resize(cfg.terms);
  std::vector<std::vector<cplx>> xs(cfg.terms, std::vector<cplx>(cfg.dim));
  std::vector<cplx> a(cfg.terms);
  for (auto& x : xs)
    for (auto& z : x) z = rng.complex_normal();
  for (auto& z : a) z = rng.complex_normal();

  const auto model = lacunary_operator(g, a, xs, chars);
  const double weak = weak_l2_norm(xs);
  const double unorm = sup_block_norm(model.u, cfg.dim);
  const CMatrix conv = vec_conv_matrix(model.fbar);
  const double ua = max_abs_diff(model.u * model.coefficients, conv);
  const CMatrix t = random_matrix(cfg.dim, cfg.dim, rng);
  const double probe = property_l_probe(t, model.fbar, cfg.s);
  const double weak_err = std::abs(unorm - weak) / weak;
  const bool pass = weak_err <= cfg.tol_rel && ua <= cfg.tol_abs * std::max(1.0, conv.max_abs());

  json report = {{"group", g.to_string()},
                 {"seed", cfg.seed},
                 {"dim", cfg.dim},
                 {"terms", cfg.terms},
                 {"characters", chars},
                 {"weak_l2", weak},
                 {"u_norm", unorm},
                 {"weak_l2_relative_error", weak_err},
                 {"uA_residual", ua},
                 {"property_l_probe", {{"s", cfg.s}, {"value", probe}}},
                 {"passed", pass}};
  if (!cfg.out.empty()) {
    std::ostringstream csv;
    io::write_vector_function_csv(csv, model.fbar);
    emit(cfg, "fbar.csv", csv.str());
  }
  emit(cfg, "vecconv.json", dump(report));
  return pass ? kExitPass : kExitTolerance;
}

// ---- suite -----------------------------------------------------------------

int cmd_suite(const Config& cfg) {
  require(!cfg.fixtures.empty(), "suite: --fixtures is required");
  const Calibration cal = Calibration::load(cfg.fixtures);
  const Tolerances tol{cfg.tol_abs, cfg.tol_rel};
  const std::uint64_t seed = cfg.seed;

  std::vector<std::function<SuiteResult()>> jobs = {
      [=] { return eigen_reproduction_suite(seed, eigen_test_groups(), 5, 1e-8); },
      [=] { return composition_suite(seed, 500); },
      [=] { return kron_law_suite(seed, 100, 12, 1e-8); },
      [=] { return weak_l2_suite(seed, 50, 1e-8); },
      [=] { return five_factor_suite(seed, 20, {1.0 / 3.0, 0.5, 1.0}, tol); },
      [=] {
        return conv_factor_suite(seed, {FiniteAbelianGroup::parse("Z64"), FiniteAbelianGroup::parse("Z4xZ3xZ5")},
                                 {1.0, 2.0 / 3.0, 0.5}, 20, tol);
      },
      [=] { return svd_eig_suite(seed, 100); },
      [=] { return weyl_suite(seed, 100, 32, 1e-8); },
      [=] { return oneil_suite(cal); },
      [=] { return lorentz_constants_suite(seed, 500, cal); },
  };
  // Suites are independent; results are merged in the order above.
  std::vector<std::future<SuiteResult>> running;
  for (auto& job : jobs) running.push_back(std::async(std::launch::async, job));

  json out = {{"seed", seed}, {"fixtures", cfg.fixtures}, {"suites", json::array()}};
  bool pass = true;
  for (auto& fut : running) {
    const SuiteResult r = fut.get();
    pass = pass && r.passed();
    out["suites"].push_back(r.to_json());
  }
  out["passed"] = pass;
  emit(cfg, "suite.json", dump(out));
  return pass ? kExitPass : kExitTolerance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"schlab: Lorentz-Schatten factorization experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value configuration file; flags override it");

  Config cfg;
  std::string s_text = "0.5", r_text = "0.5", p_text = "1", q_text = "2";
  app.add_option("--seed", cfg.seed, "64-bit seed for all randomness");
  app.add_option("--group", cfg.group, "group spec, e.g. Z4xZ3xZ5");
  app.add_option("--s", s_text, "summability exponent in (0, 1]");
  app.add_option("--r", r_text, "nuclear exponent in (0, 1]");
  app.add_option("--p", p_text, "Lorentz exponent p (or inf)");
  app.add_option("--q", q_text, "Lorentz exponent q (or inf)");
  app.add_option("--m-lo", cfg.m_lo, "first m of the counterexample range");
  app.add_option("--m-hi", cfg.m_hi, "last m of the counterexample range (<= 11)");
  app.add_option("--out", cfg.out, "output directory (stdout when omitted)");
  app.add_option("--tol-abs", cfg.tol_abs, "absolute tolerance")->check(CLI::PositiveNumber);
  app.add_option("--tol-rel", cfg.tol_rel, "relative tolerance")->check(CLI::PositiveNumber);
  app.add_option("--f-file", cfg.f_file, "function CSV (element,re,im) for conv-factor");
  app.add_option("--fixtures", cfg.fixtures, "calibration JSON for the suite");
  app.add_option("--dim", cfg.dim, "vector/matrix dimension");
  app.add_option("--terms", cfg.terms, "number of terms or characters");

  auto* counterexample = app.add_subcommand("counterexample", "norms of x_m and x_m (x) x_m with log-log slopes");
  auto* conv = app.add_subcommand("conv-factor", "factor conv_matrix(f) through a Schatten middle factor");
  auto* five = app.add_subcommand("five-factor", "five-stage chain of a random r-nuclear representation");
  auto* tensor = app.add_subcommand("tensor", "Kronecker product of two SVD chains");
  auto* vecconv = app.add_subcommand("vecconv", "lacunary vector-valued convolution and weak-l2 identity");
  auto* suite = app.add_subcommand("suite", "run every property suite and report JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    cfg.s = parse_exponent(s_text, "--s");
    cfg.r = parse_exponent(r_text, "--r");
    cfg.p = parse_exponent(p_text, "--p");
    cfg.q = parse_exponent(q_text, "--q");
    if (counterexample->parsed()) return cmd_counterexample(cfg);
    if (conv->parsed()) return cmd_conv_factor(cfg);
    if (five->parsed()) return cmd_five_factor(cfg);
    if (tensor->parsed()) return cmd_tensor(cfg);
    if (vecconv->parsed()) return cmd_vecconv(cfg);
    if (suite->parsed()) return cmd_suite(cfg);
  } catch (const InputError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kExitInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return kExitInput;
}
