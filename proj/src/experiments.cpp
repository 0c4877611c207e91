#include "schlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>

#include "schlab/error.hpp"
#include "schlab/io.hpp"
#include "schlab/linalg.hpp"
#include "schlab/schatten.hpp"
#include "schlab/vecconv.hpp"

namespace schlab {

namespace {

// Stream ids keep the suites' random draws disjoint.
enum SuiteStream : std::uint64_t {
  kConvStream = 1,
  kEigenStream,
  kFiveStream,
  kCompositionStream,
  kKronStream,
  kWeakStream,
  kSvdStream,
  kWeylStream,
  kLorentzStream,
  kCalibrationStream,
};

json cvec_json(std::span<const cplx> v) {
  json out = json::array();
  for (const auto& z : v) out.push_back({z.real(), z.imag()});
  return out;
}

json rvec_json(std::span<const double> v) { return json(std::vector<double>(v.begin(), v.end())); }

json matrix_json(const CMatrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", cvec_json(m.data())}};
}

class Recorder {
 public:
  explicit Recorder(std::string name) { result_.name = std::move(name); }

  // err is normalized so that err <= 1 passes.
  void record(double err, const std::function<json()>& replay, const std::string& message) {
    ++result_.cases;
    if (std::isnan(err)) err = std::numeric_limits<double>::infinity();
    result_.worst = std::max(result_.worst, err);
    if (err <= 1.0) return;
    ++result_.failures;
    if (!result_.first_failure) {
      json j = replay();
      j["suite"] = result_.name;
      j["message"] = message;
      j["normalized_error"] = std::isinf(err) ? json("inf") : json(err);
      result_.first_failure = std::move(j);
    }
  }

  void check(bool ok, const std::function<json()>& replay, const std::string& message) {
    record(ok ? 0.0 : std::numeric_limits<double>::infinity(), replay, message);
  }

  SuiteResult take() { return std::move(result_); }

 private:
  SuiteResult result_;
};

double rel_err(double got, double want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

std::vector<double> shuffled(std::vector<double> v, CounterRng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
  return v;
}

std::string fmt_exp(double x) {
  if (std::isinf(x)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

double three_digits(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return std::stod(buf);
}

// Three significant digits, rounded away from the measured value.
double round_up(double x) {
  if (x <= 0.0) return x;
  const double scale = std::pow(10.0, std::floor(std::log10(x)) - 2.0);
  return three_digits(std::ceil(x / scale - 1e-9) * scale);
}

double round_down(double x) {
  if (x <= 0.0) return x;
  const double scale = std::pow(10.0, std::floor(std::log10(x)) - 2.0);
  return three_digits(std::floor(x / scale + 1e-9) * scale);
}

std::vector<cplx> random_signed(std::size_t n, CounterRng& rng) {
  std::vector<cplx> v(n);
  for (auto& z : v) z = rng.normal();
  return v;
}

// Metrics shared by calibration and the constants suite. Each returns the
// quantity that must stay below the pinned constant.
double band_metric(const RealSeq& x, const LorentzParams& p, const QuasiGeoSeq& idx) {
  const double direct = lorentz_quasinorm(x, p);
  const double sub = subsampled_quasinorm(x, p, idx);
  if (direct == 0.0 && sub == 0.0) return 1.0;
  return std::max(sub / direct, direct / sub);
}

double triangle_metric(std::span<const cplx> x, std::span<const cplx> y, const LorentzParams& p) {
  std::vector<cplx> s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] + y[i];
  const double denom = lorentz_quasinorm(rearrange(x), p) + lorentz_quasinorm(rearrange(y), p);
  return denom == 0.0 ? 0.0 : lorentz_quasinorm(rearrange(std::span<const cplx>(s)), p) / denom;
}

double inclusion_metric(const RealSeq& x, const LorentzParams& from, const LorentzParams& to) {
  const double big = lorentz_quasinorm(x, from);
  return big == 0.0 ? 0.0 : lorentz_quasinorm(x, to) / big;
}

double tensor_metric(const RealSeq& x, const RealSeq& y, const LorentzParams& p) {
  const double denom = lorentz_quasinorm(x, p) * lorentz_quasinorm(y, p);
  return denom == 0.0 ? 0.0 : lorentz_quasinorm(outer_product(x, y), p) / denom;
}

// Pair of signed vectors for the quasi-triangle probe; half the time with
// disjoint supports.
std::pair<std::vector<cplx>, std::vector<cplx>> triangle_pair(CounterRng& rng) {
  const std::size_t n = 1 + rng.below(128);
  auto x = random_signed(n, rng);
  auto y = random_signed(n, rng);
  if (rng.uniform() < 0.5) {
    for (std::size_t i = 0; i < n; ++i) (i % 2 ? x[i] : y[i]) = 0.0;
  }
  if (rng.uniform() < 0.3) {
    const double decay = rng.uniform(0.2, 2.0);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] *= std::pow(static_cast<double>(i + 1), -decay);
      y[i] *= std::pow(static_cast<double>(n - i), -decay);
    }
  }
  return {std::move(x), std::move(y)};
}

std::vector<RealSeq> structured_sequences() {
  std::vector<RealSeq> out;
  for (int m = 0; m <= 12; ++m) out.push_back(counterexample_xm(m));
  for (std::size_t n : {1, 2, 3, 5, 17, 100, 300}) out.emplace_back(std::vector<double>(n, 1.0));
  for (double a : {0.5, 1.0, 2.0}) {
    std::vector<double> v(256);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(static_cast<double>(i + 1), -a);
    out.emplace_back(std::move(v));
  }
  return out;
}

double oneil_ratio(int m) {
  const auto p = LorentzParams::make(2, 1);
  return tensor_norm_xm(m, p) / std::pow(lorentz_quasinorm(counterexample_xm(m), p), 2.0);
}

}  // namespace

// ---- random instances ------------------------------------------------------

GroupFunction random_function(const FiniteAbelianGroup& g, CounterRng& rng) {
  std::vector<cplx> v(g.order());
  for (auto& z : v) z = rng.complex_normal();
  return GroupFunction(g, std::move(v));
}

CMatrix random_matrix(std::size_t rows, std::size_t cols, CounterRng& rng) {
  CMatrix m(rows, cols);
  for (auto& z : m.data()) z = rng.complex_normal();
  return m;
}

CMatrix random_unitary(std::size_t n, CounterRng& rng) {
  const CMatrix g = random_matrix(n, n, rng);
  CMatrix q(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<cplx> v = g.col(c);
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < c; ++k) {
        cplx proj{};
        for (std::size_t r = 0; r < n; ++r) proj += std::conj(q(r, k)) * v[r];
        for (std::size_t r = 0; r < n; ++r) v[r] -= proj * q(r, k);
      }
    const double nv = norm2(v);
    for (std::size_t r = 0; r < n; ++r) q(r, c) = v[r] / nv;
  }
  return q;
}

NuclearRep random_nuclear_rep(std::size_t terms, std::size_t dim_x, std::size_t dim_y, CounterRng& rng) {
  std::vector<double> d(terms);
  for (auto& x : d) x = std::exp(-rng.uniform(0.0, 5.0));
  CMatrix rows = random_matrix(terms, dim_x, rng);
  CMatrix cols = random_matrix(dim_y, terms, rng);
  for (std::size_t k = 0; k < terms; ++k) {
    const double rn = norm2(rows.row_span(k));
    for (std::size_t j = 0; j < dim_x; ++j) rows(k, j) /= rn;
    const double cn = norm2(cols.col(k));
    for (std::size_t i = 0; i < dim_y; ++i) cols(i, k) /= cn;
  }
  return NuclearRep::make(std::move(d), std::move(rows), std::move(cols));
}

RealSeq random_sequence(std::size_t max_len, CounterRng& rng) {
  const std::size_t n = 1 + rng.below(max_len);
  std::vector<double> v(n);
  switch (rng.below(4)) {
    case 0:
      for (auto& x : v) x = rng.uniform();
      break;
    case 1: {
      const double a = rng.uniform(0.2, 2.0);
      for (std::size_t i = 0; i < n; ++i) v[i] = std::pow(static_cast<double>(i + 1), -a);
      v = shuffled(std::move(v), rng);
      break;
    }
    case 2:
      for (auto& x : v) x = rng.uniform() < 0.7 ? 0.0 : std::exp(rng.normal());
      break;
    default:
      for (std::size_t i = 0; i < n; ++i)
        v[i] = std::ldexp(1.0, -static_cast<int>(std::log2(static_cast<double>(i + 1)))) * rng.uniform(0.5, 1.5);
      break;
  }
  if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) v[0] = 1.0;
  return RealSeq(std::move(v));
}

// ---- calibration -----------------------------------------------------------

std::string params_key(const LorentzParams& p) { return fmt_exp(p.p) + "," + fmt_exp(p.q); }

LorentzParams params_from_key(const std::string& key) {
  const auto comma = key.find(',');
  require(comma != std::string::npos, "bad exponent key '" + key + "'");
  auto parse = [](const std::string& s) { return s == "inf" ? kInf : std::stod(s); };
  return LorentzParams::make(parse(key.substr(0, comma)), parse(key.substr(comma + 1)));
}

std::vector<LorentzParams> band_configs() {
  return {LorentzParams::make(1, 2),   LorentzParams::make(1, 1),   LorentzParams::make(2, 2),
          LorentzParams::make(2, 1),   LorentzParams::make(0.5, 1), LorentzParams::make(1, 0.5),
          LorentzParams::make(1, kInf), LorentzParams::make(2, kInf)};
}

std::vector<LorentzParams> triangle_configs() {
  return {LorentzParams::make(1, 2), LorentzParams::make(2, 1), LorentzParams::make(1, 1),
          LorentzParams::make(0.5, 1), LorentzParams::make(1, 0.5), LorentzParams::make(0.5, 0.5)};
}

std::vector<std::pair<LorentzParams, LorentzParams>> inclusion_configs() {
  using L = LorentzParams;
  return {{L::make(1, 1), L::make(1, 2)},     {L::make(1, 2), L::make(1, kInf)}, {L::make(1, 1), L::make(2, 2)},
          {L::make(1, 2), L::make(2, 2)},     {L::make(0.5, 0.5), L::make(1, 1)}, {L::make(2, 1), L::make(4, 4)}};
}

std::vector<LorentzParams> tensor_closure_configs() {
  return {LorentzParams::make(2, 1), LorentzParams::make(1, 1), LorentzParams::make(2, 2),
          LorentzParams::make(1, 0.5)};
}

Calibration calibrate(std::uint64_t seed, std::size_t trials, double margin) {
  require(margin >= 1.0, "calibrate: margin must be >= 1");
  Calibration cal;
  cal.seed = seed;
  cal.margin = margin;
  const CounterRng root(seed, kCalibrationStream);
  const auto structured = structured_sequences();

  for (const auto& p : band_configs()) {
    double dy = 1.0, lin = 1.0;
    auto probe = [&](const RealSeq& x) {
      dy = std::max(dy, band_metric(x, p, QuasiGeoSeq::dyadic(std::max<std::size_t>(x.size(), 1))));
      lin = std::max(lin, band_metric(x, p, QuasiGeoSeq::linear_dyadic(std::max<std::size_t>(x.size(), 1))));
    };
    for (const auto& x : structured) probe(x);
    for (std::size_t t = 0; t < trials; ++t) {
      CounterRng rng = root.split(t);
      probe(random_sequence(256, rng));
    }
    cal.dyadic_band[params_key(p)] = round_up(dy * margin);
    cal.linear_dyadic_band[params_key(p)] = round_up(lin * margin);
  }

  for (const auto& p : triangle_configs()) {
    double k = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      CounterRng rng = root.split(trials + t);
      const auto [x, y] = triangle_pair(rng);
      k = std::max(k, triangle_metric(x, y, p));
    }
    cal.quasi_triangle[params_key(p)] = round_up(k * margin);
  }

  for (const auto& [from, to] : inclusion_configs()) {
    double c = 0.0;
    for (const auto& x : structured) c = std::max(c, inclusion_metric(x, from, to));
    for (std::size_t t = 0; t < trials; ++t) {
      CounterRng rng = root.split(2 * trials + t);
      c = std::max(c, inclusion_metric(random_sequence(256, rng), from, to));
    }
    cal.inclusion[params_key(from) + "->" + params_key(to)] = round_up(c * margin);
  }

  for (const auto& p : tensor_closure_configs()) {
    double c = 0.0;
    for (int m = 0; m <= 8; ++m) {
      const auto x = counterexample_xm(m);
      c = std::max(c, tensor_metric(x, x, p));
    }
    for (std::size_t t = 0; t < trials; ++t) {
      CounterRng rng = root.split(3 * trials + t);
      const auto x = random_sequence(64, rng);
      const auto y = random_sequence(64, rng);
      c = std::max(c, tensor_metric(x, y, p));
    }
    cal.tensor_closure[params_key(p)] = round_up(c * margin);
  }

  double lo = kInf, hi = 0.0;
  for (int m = 2; m <= kOneilCalibrationHi; ++m) {
    const double r = oneil_ratio(m);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  cal.oneil_band_2_1 = {round_down(lo / margin), round_up(hi * margin)};
  return cal;
}

json Calibration::to_json() const {
  return {{"seed", seed},
          {"margin", margin},
          {"dyadic_band", dyadic_band},
          {"linear_dyadic_band", linear_dyadic_band},
          {"quasi_triangle", quasi_triangle},
          {"inclusion", inclusion},
          {"tensor_closure", tensor_closure},
          {"oneil_band_2_1", {oneil_band_2_1.first, oneil_band_2_1.second}}};
}

Calibration Calibration::from_json(const json& j) {
  Calibration c;
  try {
    c.seed = j.at("seed").get<std::uint64_t>();
    c.margin = j.at("margin").get<double>();
    c.dyadic_band = j.at("dyadic_band").get<std::map<std::string, double>>();
    c.linear_dyadic_band = j.at("linear_dyadic_band").get<std::map<std::string, double>>();
    c.quasi_triangle = j.at("quasi_triangle").get<std::map<std::string, double>>();
    c.inclusion = j.at("inclusion").get<std::map<std::string, double>>();
    c.tensor_closure = j.at("tensor_closure").get<std::map<std::string, double>>();
    const auto band = j.at("oneil_band_2_1");
    c.oneil_band_2_1 = {band.at(0).get<double>(), band.at(1).get<double>()};
  } catch (const json::exception& e) {
    throw InputError(std::string("calibration: ") + e.what());
  }
  require(c.oneil_band_2_1.first > 0.0 && c.oneil_band_2_1.first <= c.oneil_band_2_1.second,
          "calibration: O'Neil band must satisfy 0 < lo <= hi");
  return c;
}

Calibration Calibration::load(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(io::read_text(path));
  } catch (const json::parse_error& e) {
    throw InputError("calibration: cannot parse " + path.string() + ": " + e.what());
  }
  return from_json(j);
}

// ---- counterexample --------------------------------------------------------

double tensor_norm_xm(int m, const LorentzParams& params) {
  require(m >= 0 && m <= kMaxTensorM, "tensor_norm_xm: m must lie in [0, 11] (memory guard)");
  const auto x = counterexample_xm(m);
  return lorentz_quasinorm(outer_product(x, x), params);
}

CounterexampleTable run_counterexample(int m_lo, int m_hi, const LorentzParams& params) {
  require(m_lo >= 1 && m_lo <= m_hi, "counterexample: need 1 <= m_lo <= m_hi");
  require(m_hi <= kMaxTensorM, "counterexample: m_hi exceeds the tensor memory guard (11)");
  CounterexampleTable table;
  std::vector<std::pair<double, double>> xm_pts, tensor_pts;
  for (int m = m_lo; m <= m_hi; ++m) {
    CounterexampleRow row;
    row.m = m;
    row.norm_xm = lorentz_quasinorm(counterexample_xm(m), params);
    row.norm_tensor = tensor_norm_xm(m, params);
    row.ratio = row.norm_tensor / (row.norm_xm * row.norm_xm);
    table.rows.push_back(row);
    xm_pts.emplace_back(m, row.norm_xm);
    tensor_pts.emplace_back(m, row.norm_tensor);
  }
  if (xm_pts.size() >= 3) {
    table.slope_xm = slope_fit(xm_pts);
    table.slope_tensor = slope_fit(tensor_pts);
  }
  return table;
}

// ---- suites ----------------------------------------------------------------

json SuiteResult::to_json() const {
  json j = {{"name", name},
            {"cases", cases},
            {"failures", failures},
            {"worst", std::isinf(worst) ? json("inf") : json(worst)},
            {"passed", passed()}};
  if (first_failure) j["first_failure"] = *first_failure;
  return j;
}

std::vector<FiniteAbelianGroup> eigen_test_groups() {
  std::vector<FiniteAbelianGroup> gs;
  for (const char* spec : {"Z2", "Z3", "Z4", "Z6", "Z8", "Z2xZ2", "Z2xZ3", "Z16", "Z4xZ4", "Z2xZ2xZ2", "Z3xZ7",
                           "Z5xZ5", "Z32", "Z4xZ3xZ5", "Z64", "Z8xZ8", "Z2xZ2xZ2xZ2xZ2xZ2"})
    gs.push_back(FiniteAbelianGroup::parse(spec));
  return gs;
}

SuiteResult conv_factor_suite(std::uint64_t seed, const std::vector<FiniteAbelianGroup>& groups,
                              const std::vector<double>& s_values, std::size_t count, Tolerances tol) {
  Recorder rec("conv_factor");
  const CounterRng root(seed, kConvStream);
  std::uint64_t cell = 0;
  for (const auto& g : groups)
    for (const double s : s_values)
      for (std::size_t i = 0; i < count; ++i, ++cell) {
        CounterRng rng = root.split(cell);
        const auto f = random_function(g, rng);
        const auto replay = [&] {
          return json{{"seed", seed}, {"cell", cell}, {"group", g.to_string()}, {"s", s}, {"f", cvec_json(f.values)}};
        };
        const auto chain = conv_factor(f, s);
        const double r = schatten_exponent_for(s);
        const auto rep = verify_chain(chain, conv_matrix(f), LorentzParams::make(r, r));
        rec.record(rep.residual / (tol.abs * f.sup_norm()), replay, "A U B differs from conv_matrix(f)");
        const double target = lorentz_quasinorm(rearrange(fourier(f)), LorentzParams::make(s, s));
        rec.record(rel_err(rep.product_of_norms, target) / tol.rel, replay,
                   "stage-norm product differs from ||fhat||_s");
      }
  return rec.take();
}

SuiteResult eigen_reproduction_suite(std::uint64_t seed, const std::vector<FiniteAbelianGroup>& groups,
                                     std::size_t count, double tol) {
  Recorder rec("eigen_reproduction");
  const CounterRng root(seed, kEigenStream);
  std::uint64_t cell = 0;
  for (const auto& g : groups)
    for (std::size_t i = 0; i < count; ++i, ++cell) {
      CounterRng rng = root.split(cell);
      const auto f = random_function(g, rng);
      CMatrix m = conv_matrix(f);
      m *= 1.0 / static_cast<double>(g.order());
      const double err = multiset_distance(eigenvalues(m), fourier(f));
      rec.record(err / tol,
                 [&] { return json{{"seed", seed}, {"cell", cell}, {"group", g.to_string()}, {"f", cvec_json(f.values)}}; },
                 "eigenvalues of conv_matrix(f)/|G| differ from fhat");
    }
  return rec.take();
}

SuiteResult five_factor_suite(std::uint64_t seed, std::size_t count, const std::vector<double>& r_values,
                              Tolerances tol) {
  Recorder rec("five_factor");
  const CounterRng root(seed, kFiveStream);
  std::uint64_t cell = 0;
  for (const double r : r_values)
    for (std::size_t i = 0; i < count; ++i, ++cell) {
      CounterRng rng = root.split(cell);
      const auto rep = random_nuclear_rep(8, 6, 6, rng);
      const auto replay = [&] {
        return json{{"seed", seed}, {"cell", cell}, {"r", r}, {"d", rvec_json(rep.d)},
                    {"functionals", matrix_json(rep.functionals)}, {"vectors", matrix_json(rep.vectors)}};
      };
      const auto chain = five_factor(rep, r);
      const CMatrix t = rep.represented();
      rec.record(max_abs_diff(chain.compose(), t) / (tol.abs * std::max(1.0, t.max_abs())), replay,
                 "five-factor chain does not reconstruct T");
      double sum_dr = 0.0;
      for (const double d : rep.d) sum_dr += std::pow(d, r);
      const double v = schatten_exponent_for(r);
      const double sigma_v = schatten_quasinorm(chain.stages()[2].matrix, LorentzParams::make(v, v));
      const double want_sigma = std::isinf(v) ? 1.0 : std::pow(sum_dr, 1.0 / v);
      rec.record(rel_err(sigma_v, want_sigma) / tol.abs, replay, "sigma_v(D0) != (sum d^r)^{1/v}");
      const auto d1 = mixed_norm(chain.stages()[1].matrix, NormTag::LInf, NormTag::L2);
      rec.record(d1.exact ? rel_err(d1.value, std::sqrt(sum_dr)) / tol.abs : kInf, replay,
                 "||D1||_{linf->l2} != (sum d^r)^{1/2}");
    }
  return rec.take();
}

SuiteResult composition_suite(std::uint64_t seed, std::size_t pairs) {
  using L = LorentzParams;
  const std::vector<std::pair<L, L>> configs = {
      {L::make(2, 2), L::make(2, 2)},   {L::make(1, 1), L::make(2, 2)},   {L::make(0.5, 0.5), L::make(1, 1)},
      {L::make(1, 2), L::make(2, 1)},   {L::make(2, 0.5), L::make(1, 3)}, {L::make(3, 1), L::make(1.5, 4)},
  };
  Recorder rec("composition");
  const CounterRng root(seed, kCompositionStream);
  for (std::size_t i = 0; i < pairs; ++i) {
    CounterRng rng = root.split(i);
    const std::size_t n = 1 + rng.below(24);
    const double spread = rng.uniform(0.1, 3.0);
    std::vector<cplx> u(n), v(n);
    for (auto& z : u) z = std::polar(std::exp(spread * rng.normal()), rng.uniform(0.0, 6.283185307179586));
    for (auto& z : v) z = std::polar(std::exp(spread * rng.normal()), rng.uniform(0.0, 6.283185307179586));
    const CMatrix um = CMatrix::diagonal(std::span<const cplx>(u));
    const CMatrix vm = CMatrix::diagonal(std::span<const cplx>(v));
    for (std::size_t c = 0; c < configs.size(); ++c) {
      const auto rep = composition_check(um, vm, configs[c].first, configs[c].second);
      rec.check(rep.holds,
                [&] {
                  json j = io::to_json(rep);
                  j["seed"] = seed;
                  j["pair"] = i;
                  j["u"] = cvec_json(u);
                  j["v"] = cvec_json(v);
                  return j;
                },
                "composition inequality violated");
    }
  }
  return rec.take();
}

SuiteResult kron_law_suite(std::uint64_t seed, std::size_t count, std::size_t max_dim, double tol) {
  Recorder rec("kron_law");
  const CounterRng root(seed, kKronStream);
  for (std::size_t i = 0; i < count; ++i) {
    CounterRng rng = root.split(i);
    const auto dim = [&] { return 1 + rng.below(max_dim); };
    const std::size_t r1 = dim(), c1 = dim(), r2 = dim(), c2 = dim();
    const CMatrix a = random_matrix(r1, c1, rng);
    const CMatrix b = random_matrix(r2, c2, rng);
    const auto replay = [&] { return json{{"seed", seed}, {"case", i}, {"a", matrix_json(a)}, {"b", matrix_json(b)}}; };

    const RealSeq outer = outer_product(svd(a).sigma, svd(b).sigma);
    const auto want = outer.rearranged();
    const auto got = singular_values(kron(a, b));
    const double scale = std::max(1.0, got.front());
    double err = 0.0;
    for (std::size_t k = 0; k < got.size(); ++k) err = std::max(err, std::abs(got[k] - (k < want.size() ? want[k] : 0.0)));
    rec.record(err / (tol * scale), replay, "sigma(kron(A, B)) != sigma(A) (x) sigma(B)");

    // Middle spectrum of the tensor chain equals the outer product of the
    // middle spectra.
    const auto chain = tensor_factor(svd_chain(a), svd_chain(b));
    const auto mid = singular_values(chain.middle().matrix);
    double mid_err = 0.0;
    for (std::size_t k = 0; k < want.size(); ++k) mid_err = std::max(mid_err, std::abs(mid[k] - want[k]));
    rec.record(mid_err / (tol * scale), replay, "tensor_factor middle spectrum mismatch");
    rec.record(max_abs_diff(chain.compose(), kron(a, b)) / (tol * scale), replay,
               "tensor_factor chain does not compose to kron(A, B)");
  }
  return rec.take();
}

SuiteResult weak_l2_suite(std::uint64_t seed, std::size_t count, double tol) {
  Recorder rec("weak_l2");
  const CounterRng root(seed, kWeakStream);
  const std::vector<std::vector<int>> shapes = {{2}, {3}, {4}, {5}, {6}, {7}, {8}, {9}, {10}, {12}, {16},
                                                {2, 2}, {2, 3}, {2, 4}, {4, 4}, {2, 2, 2}, {2, 2, 2, 2}, {3, 5}};
  for (std::size_t i = 0; i < count; ++i) {
    CounterRng rng = root.split(i);
    const FiniteAbelianGroup g(shapes[rng.below(shapes.size())]);
    const std::size_t d = 1 + rng.below(4);
    const std::size_t k = 1 + rng.below(std::min<std::size_t>(8, g.order()));
    std::vector<std::size_t> chars(g.order());
    std::iota(chars.begin(), chars.end(), 0);
    for (std::size_t j = 0; j < k; ++j) std::swap(chars[j], chars[j + rng.below(g.order() - j)]);
    chars.resize(k);
    std::vector<std::vector<cplx>> xs(k, std::vector<cplx>(d));
    std::vector<cplx> a(k);
    for (auto& x : xs)
      for (auto& z : x) z = rng.complex_normal();
    for (auto& z : a) z = rng.complex_normal();
    const auto replay = [&] {
      json j = {{"seed", seed}, {"case", i}, {"group", g.to_string()}, {"characters", chars}, {"a", cvec_json(a)}};
      j["xs"] = json::array();
      for (const auto& x : xs) j["xs"].push_back(cvec_json(x));
      return j;
    };
    const auto model = lacunary_operator(g, a, xs, chars);
    const double weak = weak_l2_norm(xs);
    const double unorm = sup_block_norm(model.u, d);
    rec.record(rel_err(unorm, weak) / tol, replay, "||u|| != weak l2 norm of (x_k)");
    const CMatrix conv = vec_conv_matrix(model.fbar);
    rec.record(max_abs_diff(model.u * model.coefficients, conv) / (1e-12 * std::max(1.0, conv.max_abs())), replay,
               "u A != vec_conv_matrix(fbar)");
  }
  return rec.take();
}

SuiteResult svd_eig_suite(std::uint64_t seed, std::size_t count) {
  Recorder rec("svd_eig");
  const CounterRng root(seed, kSvdStream);
  for (std::size_t i = 0; i < count; ++i) {
    CounterRng rng = root.split(i);
    const std::size_t rows = 1 + rng.below(32), cols = 1 + rng.below(32);
    CMatrix m = random_matrix(rows, cols, rng);
    if (rng.uniform() < 0.3) {
      const std::size_t rank = 1 + rng.below(std::min(rows, cols));
      m = random_matrix(rows, rank, rng) * random_matrix(rank, cols, rng);
    }
    const auto replay_m = [&] { return json{{"seed", seed}, {"case", i}, {"m", matrix_json(m)}}; };
    const auto s = svd(m);
    rec.record(max_abs_diff(s.reconstruct(), m) / (1e-10 * m.max_abs()), replay_m, "SVD reconstruction residual");

    // Normal matrices against the DFT oracle.
    const FiniteAbelianGroup g(std::vector<int>{2 + static_cast<int>(rng.below(31))});
    const auto f = random_function(g, rng);
    const auto fhat = fourier(f);
    std::vector<cplx> oracle(fhat.size());
    for (std::size_t k = 0; k < fhat.size(); ++k) oracle[k] = static_cast<double>(g.order()) * fhat[k];
    const auto eig_conv = eigenvalues(conv_matrix(f));
    double scale = 1.0;
    for (const auto& z : oracle) scale = std::max(scale, std::abs(z));
    rec.record(multiset_distance(eig_conv, oracle) / (1e-8 * scale),
               [&] { return json{{"seed", seed}, {"case", i}, {"group", g.to_string()}, {"f", cvec_json(f.values)}}; },
               "eigenvalues of normal matrix differ from DFT oracle");

    // Trace and determinant consistency.
    const std::size_t n = 1 + rng.below(32);
    const CMatrix sq = random_matrix(n, n, rng);
    const auto lam = eigenvalues(sq);
    cplx sum{};
    double logprod = 0.0;
    for (const auto& z : lam) {
      sum += z;
      logprod += std::log(std::abs(z));
    }
    const auto replay_sq = [&] { return json{{"seed", seed}, {"case", i}, {"m", matrix_json(sq)}}; };
    rec.record(std::abs(sum - sq.trace()) / (1e-8 * std::max(1.0, sq.frobenius())), replay_sq, "sum of eigenvalues != trace");
    const double logdet = std::log(std::abs(determinant(sq)));
    rec.record(std::abs(std::expm1(logprod - logdet)) / 1e-6, replay_sq, "product of |eigenvalues| != |det|");

    // eig(AB) and eig(BA) agree on the nonzero part.
    const std::size_t p = 1 + rng.below(16), q = 1 + rng.below(16);
    const CMatrix a = random_matrix(p, q, rng), b = random_matrix(q, p, rng);
    auto ab = eigenvalues(a * b), ba = eigenvalues(b * a);
    const std::size_t k = std::min(p, q);
    ab.resize(k);
    ba.resize(k);
    double es = 1.0;
    for (const auto& z : ab) es = std::max(es, std::abs(z));
    rec.record(multiset_distance(ab, ba) / (1e-7 * es),
               [&] { return json{{"seed", seed}, {"case", i}, {"a", matrix_json(a)}, {"b", matrix_json(b)}}; },
               "nonzero eigenvalues of AB and BA differ");
  }
  return rec.take();
}

SuiteResult weyl_suite(std::uint64_t seed, std::size_t count, std::size_t max_dim, double slack) {
  Recorder rec("weyl");
  const CounterRng root(seed, kWeylStream);
  for (std::size_t i = 0; i < count; ++i) {
    CounterRng rng = root.split(i);
    const std::size_t n = 1 + rng.below(max_dim);
    CMatrix m = random_matrix(n, n, rng);
    switch (rng.below(3)) {
      case 1:  // upper triangular
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < r; ++c) m(r, c) = 0.0;
        break;
      case 2: {  // graded similarity D M D^{-1}, strongly non-normal
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c) m(r, c) *= std::pow(3.0, static_cast<double>(r) - static_cast<double>(c));
        break;
      }
      default:
        break;
    }
    const auto lam = eigenvalues(m);
    const auto sig = singular_values(m);
    for (const double r : {0.5, 1.0, 2.0}) {
      double le = 0.0, ls = 0.0;
      for (const auto& z : lam) le += std::pow(std::abs(z), r);
      for (const double s : sig) ls += std::pow(s, r);
      rec.check(le <= ls + slack,
                [&] { return json{{"seed", seed}, {"case", i}, {"r", r}, {"sum_abs_eig", le}, {"sum_sigma", ls}, {"m", matrix_json(m)}}; },
                "Weyl inequality violated");
    }
  }
  return rec.take();
}

SuiteResult oneil_suite(const Calibration& cal) {
  Recorder rec("oneil");
  const auto p12 = LorentzParams::make(1, 2);
  double prev = 0.0;
  for (int m = 2; m <= 10; ++m) {
    const double ratio = tensor_norm_xm(m, p12) / std::pow(lorentz_quasinorm(counterexample_xm(m), p12), 2.0);
    rec.check(ratio > prev, [&] { return json{{"m", m}, {"ratio", ratio}, {"previous", prev}}; },
              "(1,2) tensor ratio is not increasing");
    prev = ratio;
  }
  const auto [lo, hi] = cal.oneil_band_2_1;
  for (int m = 2; m <= 10; ++m) {
    const double ratio = oneil_ratio(m);
    rec.check(ratio >= lo && ratio <= hi,
              [&] { return json{{"m", m}, {"ratio", ratio}, {"band", {lo, hi}}}; },
              "(2,1) tensor ratio left the calibrated band");
  }
  return rec.take();
}

SuiteResult lorentz_constants_suite(std::uint64_t seed, std::size_t trials, const Calibration& cal) {
  Recorder rec("lorentz_constants");
  const CounterRng root(seed, kLorentzStream);
  const auto pinned = [](const std::map<std::string, double>& table, const std::string& key) {
    const auto it = table.find(key);
    require(it != table.end(), "calibration: missing constant for " + key);
    return it->second;
  };
  for (std::size_t t = 0; t < trials; ++t) {
    CounterRng rng = root.split(t);
    const auto x = random_sequence(256, rng);
    const auto replay = [&] { return json{{"seed", seed}, {"trial", t}, {"x", rvec_json(x.values())}}; };
    for (const auto& p : band_configs()) {
      const auto key = params_key(p);
      rec.record(band_metric(x, p, QuasiGeoSeq::dyadic(x.size())) / pinned(cal.dyadic_band, key), replay,
                 "dyadic equivalence band exceeded for " + key);
      rec.record(band_metric(x, p, QuasiGeoSeq::linear_dyadic(x.size())) / pinned(cal.linear_dyadic_band, key),
                 replay, "quasi-geometric equivalence band exceeded for " + key);
    }
    for (const auto& [from, to] : inclusion_configs()) {
      const auto key = params_key(from) + "->" + params_key(to);
      rec.record(inclusion_metric(x, from, to) / pinned(cal.inclusion, key), replay, "inclusion constant exceeded for " + key);
    }
    const auto [u, v] = triangle_pair(rng);
    for (const auto& p : triangle_configs()) {
      const auto key = params_key(p);
      rec.record(triangle_metric(u, v, p) / pinned(cal.quasi_triangle, key),
                 [&] { return json{{"seed", seed}, {"trial", t}, {"x", cvec_json(u)}, {"y", cvec_json(v)}}; },
                 "quasi-triangle constant exceeded for " + key);
    }
    const auto y = random_sequence(64, rng);
    const auto z = random_sequence(64, rng);
    for (const auto& p : tensor_closure_configs()) {
      const auto key = params_key(p);
      rec.record(tensor_metric(y, z, p) / pinned(cal.tensor_closure, key),
                 [&] { return json{{"seed", seed}, {"trial", t}, {"x", rvec_json(y.values())}, {"y", rvec_json(z.values())}}; },
                 "tensor closure constant exceeded for " + key);
    }
  }
  return rec.take();
}

}  // namespace schlab
