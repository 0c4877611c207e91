#include "schlab/finite_group.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>

#include "schlab/error.hpp"

namespace schlab {

namespace {

cplx unit_root(long long k, long long n) {
  k %= n;
  if (k < 0) k += n;
  if ((4 * k) % n == 0) {
    static constexpr cplx kQuarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return kQuarter[(4 * k) / n];
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

void require_same_group(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
  require(a == b, "group mismatch: " + a.to_string() + " vs " + b.to_string());
}

// In-place transform along every axis with kernel exp(sign * 2 pi i chi t / n).
void axis_transform(const FiniteAbelianGroup& g, std::vector<cplx>& data, int sign) {
  const auto& mod = g.moduli();
  std::size_t stride = g.order();
  std::vector<cplx> fiber, out;
  for (const int n : mod) {
    const std::size_t block = stride;
    stride /= static_cast<std::size_t>(n);
    std::vector<cplx> roots(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) roots[static_cast<std::size_t>(k)] = unit_root(sign * k, n);
    fiber.assign(static_cast<std::size_t>(n), cplx{});
    out.assign(static_cast<std::size_t>(n), cplx{});
    for (std::size_t base = 0; base < g.order(); base += block) {
      for (std::size_t inner = 0; inner < stride; ++inner) {
        for (int t = 0; t < n; ++t) fiber[static_cast<std::size_t>(t)] = data[base + inner + static_cast<std::size_t>(t) * stride];
        for (int chi = 0; chi < n; ++chi) {
          cplx s{};
          for (int t = 0; t < n; ++t)
            s += roots[static_cast<std::size_t>((static_cast<long long>(chi) * t) % n)] * fiber[static_cast<std::size_t>(t)];
          out[static_cast<std::size_t>(chi)] = s;
        }
        for (int chi = 0; chi < n; ++chi) data[base + inner + static_cast<std::size_t>(chi) * stride] = out[static_cast<std::size_t>(chi)];
      }
    }
  }
}

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int> moduli) : moduli_(std::move(moduli)) {
  require(!moduli_.empty(), "group: need at least one cyclic factor");
  order_ = 1;
  for (const int n : moduli_) {
    require(n >= 2, "group: every modulus must be >= 2");
    order_ *= static_cast<std::size_t>(n);
    require(order_ <= kMaxGroupOrder, "group: order exceeds 2^20");
  }
  strides_.assign(moduli_.size(), 1);
  for (std::size_t j = moduli_.size(); j-- > 1;)
    strides_[j - 1] = strides_[j] * static_cast<std::size_t>(moduli_[j]);
}

FiniteAbelianGroup FiniteAbelianGroup::parse(std::string_view spec) {
  std::string s;
  for (const char c : spec)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  require(!s.empty(), "group spec is empty");
  std::vector<int> moduli;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t next = std::min(s.find_first_of("xX", pos), s.size());
    const std::string tok = s.substr(pos, next - pos);
    require(tok.size() >= 2 && (tok[0] == 'Z' || tok[0] == 'z'),
            "group spec: expected Z<n>, got '" + tok + "'");
    const std::string digits = tok.substr(1);
    require(std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) &&
                digits.size() <= 8,
            "group spec: bad modulus '" + tok + "'");
    moduli.push_back(std::stoi(digits));
    pos = next + 1;
  }
  return FiniteAbelianGroup(std::move(moduli));
}

std::string FiniteAbelianGroup::to_string() const {
  std::string out;
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    if (j) out += 'x';
    out += 'Z' + std::to_string(moduli_[j]);
  }
  return out;
}

std::vector<int> FiniteAbelianGroup::coords(std::size_t index) const {
  require(index < order_, "group: element index out of range");
  std::vector<int> c(moduli_.size());
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    c[j] = static_cast<int>(index / strides_[j]);
    index %= strides_[j];
  }
  return c;
}

std::size_t FiniteAbelianGroup::index(const std::vector<int>& coords) const {
  require(coords.size() == moduli_.size(), "group: coordinate rank mismatch");
  std::size_t idx = 0;
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    int c = coords[j] % moduli_[j];
    if (c < 0) c += moduli_[j];
    idx += static_cast<std::size_t>(c) * strides_[j];
  }
  return idx;
}

std::size_t FiniteAbelianGroup::add(std::size_t a, std::size_t b) const {
  std::size_t out = 0;
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    const std::size_t n = static_cast<std::size_t>(moduli_[j]);
    const std::size_t aj = (a / strides_[j]) % n, bj = (b / strides_[j]) % n;
    out += ((aj + bj) % n) * strides_[j];
  }
  return out;
}

std::size_t FiniteAbelianGroup::neg(std::size_t a) const {
  std::size_t out = 0;
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    const std::size_t n = static_cast<std::size_t>(moduli_[j]);
    const std::size_t aj = (a / strides_[j]) % n;
    out += ((n - aj) % n) * strides_[j];
  }
  return out;
}

std::size_t FiniteAbelianGroup::sub(std::size_t a, std::size_t b) const { return add(a, neg(b)); }

cplx FiniteAbelianGroup::character(std::size_t chi, std::size_t t) const {
  require(chi < order_ && t < order_, "character: index out of range");
  if (moduli_.size() == 1) {
    const auto n = static_cast<std::size_t>(moduli_[0]);
    return unit_root(static_cast<long long>((chi * t) % n), static_cast<long long>(n));
  }
  // Exact phase numerator over the lcm of the moduli.
  long long l = 1;
  for (const int n : moduli_) l = std::lcm(l, static_cast<long long>(n));
  long long num = 0;
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    const long long n = moduli_[j];
    const long long cj = static_cast<long long>((chi / strides_[j]) % static_cast<std::size_t>(n));
    const long long tj = static_cast<long long>((t / strides_[j]) % static_cast<std::size_t>(n));
    num = (num + (cj * tj) % n * (l / n)) % l;
  }
  return unit_root(num, l);
}

CMatrix FiniteAbelianGroup::character_table() const {
  CMatrix m(order_, order_);
  const double scale = 1.0 / std::sqrt(static_cast<double>(order_));
  for (std::size_t chi = 0; chi < order_; ++chi)
    for (std::size_t t = 0; t < order_; ++t) m(chi, t) = scale * character(chi, t);
  return m;
}

GroupFunction::GroupFunction(FiniteAbelianGroup g, std::vector<cplx> v)
    : group(std::move(g)), values(std::move(v)) {
  require(values.size() == group.order(), "GroupFunction: length must equal group order");
}

double GroupFunction::sup_norm() const {
  double m = 0.0;
  for (const auto& z : values) m = std::max(m, std::abs(z));
  return m;
}

GroupMeasure::GroupMeasure(FiniteAbelianGroup g, std::vector<cplx> a)
    : group(std::move(g)), atoms(std::move(a)) {
  require(atoms.size() == group.order(), "GroupMeasure: length must equal group order");
}

GroupMeasure GroupMeasure::dirac(const FiniteAbelianGroup& g, std::size_t at) {
  std::vector<cplx> a(g.order());
  require(at < g.order(), "dirac: element out of range");
  a[at] = 1.0;
  return GroupMeasure(g, std::move(a));
}

double GroupMeasure::variation() const {
  double s = 0.0;
  for (const auto& z : atoms) s += std::abs(z);
  return s;
}

FiniteAbelianGroup enumerate_group(std::vector<int> moduli) {
  return FiniteAbelianGroup(std::move(moduli));
}

GroupFunction character_function(const FiniteAbelianGroup& g, std::size_t chi) {
  std::vector<cplx> v(g.order());
  for (std::size_t t = 0; t < g.order(); ++t) v[t] = g.character(chi, t);
  return GroupFunction(g, std::move(v));
}

std::vector<cplx> fourier(const GroupFunction& f) {
  std::vector<cplx> out = f.values;
  axis_transform(f.group, out, -1);
  const double inv = 1.0 / static_cast<double>(f.group.order());
  for (auto& z : out) z *= inv;
  return out;
}

GroupFunction inverse_fourier(const FiniteAbelianGroup& g, const std::vector<cplx>& fhat) {
  require(fhat.size() == g.order(), "inverse_fourier: length must equal group order");
  std::vector<cplx> out = fhat;
  axis_transform(g, out, +1);
  return GroupFunction(g, std::move(out));
}

std::vector<cplx> measure_fourier(const GroupMeasure& mu) {
  std::vector<cplx> out = mu.atoms;
  axis_transform(mu.group, out, -1);
  return out;
}

GroupFunction convolve(const GroupFunction& f, const GroupMeasure& mu) {
  require_same_group(f.group, mu.group);
  const auto& g = f.group;
  std::vector<cplx> out(g.order());
  for (std::size_t s = 0; s < g.order(); ++s) {
    cplx acc{};
    for (std::size_t t = 0; t < g.order(); ++t)
      if (mu.atoms[t] != cplx{}) acc += f.values[g.sub(s, t)] * mu.atoms[t];
    out[s] = acc;
  }
  return GroupFunction(g, std::move(out));
}

CMatrix conv_matrix(const GroupFunction& f) {
  const auto& g = f.group;
  CMatrix m(g.order(), g.order());
  for (std::size_t s = 0; s < g.order(); ++s)
    for (std::size_t t = 0; t < g.order(); ++t) m(s, t) = f.values[g.sub(s, t)];
  return m;
}

}  // namespace schlab
