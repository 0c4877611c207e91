#include "schlab/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "schlab/error.hpp"

namespace schlab::io {

namespace {

constexpr char kMagic[8] = {'S', 'C', 'H', 'L', 'A', 'B', 'M', '1'};

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InputError("csv: bad number '" + s + "'");
  }
  require(used == s.size() || s.find_first_not_of(" \t\r", used) == std::string::npos,
          "csv: trailing characters in '" + s + "'");
  return v;
}

long long parse_index(const std::string& s) {
  const double v = parse_double(s);
  require(v >= 0 && v == std::floor(v), "csv: bad index '" + s + "'");
  return static_cast<long long>(v);
}

// Rows of a CSV body with the expected header and column count.
std::vector<std::vector<std::string>> read_rows(std::istream& is, const std::string& header, std::size_t columns) {
  std::string line;
  require(static_cast<bool>(std::getline(is, line)), "csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  require(line == header, "csv: expected header '" + header + "', got '" + line + "'");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_csv(line);
    require(cells.size() == columns, "csv: expected " + std::to_string(columns) + " columns in '" + line + "'");
    rows.push_back(std::move(cells));
  }
  return rows;
}

void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  require(is.gcount() == 8, "matrix binary: truncated header");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

void put_double(std::ostream& os, double x) { put_u64(os, std::bit_cast<std::uint64_t>(x)); }

double get_double(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  require(is.gcount() == 8, "matrix binary: truncated data");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(v);
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json exponent_json(double x) { return std::isinf(x) ? json("inf") : json(x); }

double exponent_from_json(const json& j) {
  if (j.is_string()) {
    require(j.get<std::string>() == "inf", "json: bad exponent");
    return kInf;
  }
  return j.get<double>();
}

void write_sequence_csv(std::ostream& os, const RealSeq& x) {
  os << "index,value\n";
  const auto v = x.values();
  for (std::size_t i = 0; i < v.size(); ++i) os << (i + 1) << ',' << format_double(v[i]) << '\n';
}

RealSeq read_sequence_csv(std::istream& is) {
  const auto rows = read_rows(is, "index,value", 2);
  std::vector<double> v(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(parse_index(rows[i][0]) == static_cast<long long>(i + 1), "sequence csv: indices must be 1, 2, ...");
    v[i] = parse_double(rows[i][1]);
  }
  return RealSeq(std::move(v));
}

void write_function_csv(std::ostream& os, std::span<const cplx> values) {
  os << "element,re,im\n";
  for (std::size_t t = 0; t < values.size(); ++t)
    os << t << ',' << format_double(values[t].real()) << ',' << format_double(values[t].imag()) << '\n';
}

std::vector<cplx> read_function_csv(std::istream& is, std::size_t expected_length) {
  const auto rows = read_rows(is, "element,re,im", 3);
  std::vector<cplx> v(expected_length);
  std::vector<bool> seen(expected_length, false);
  for (const auto& r : rows) {
    const auto t = static_cast<std::size_t>(parse_index(r[0]));
    require(t < expected_length, "function csv: element index out of range");
    require(!seen[t], "function csv: duplicate element " + std::to_string(t));
    seen[t] = true;
    v[t] = {parse_double(r[1]), parse_double(r[2])};
  }
  require(rows.size() == expected_length, "function csv: expected one row per group element");
  return v;
}

void write_vector_function_csv(std::ostream& os, const VectorFunction& f) {
  os << "element,component,re,im\n";
  for (std::size_t t = 0; t < f.group.order(); ++t)
    for (std::size_t i = 0; i < f.dim; ++i) {
      const cplx z = f.values[t * f.dim + i];
      os << t << ',' << i << ',' << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
    }
}

VectorFunction read_vector_function_csv(std::istream& is, const FiniteAbelianGroup& g) {
  const auto rows = read_rows(is, "element,component,re,im", 4);
  require(!rows.empty() && rows.size() % g.order() == 0, "vector function csv: row count must be |G| * d");
  const std::size_t d = rows.size() / g.order();
  std::vector<cplx> v(rows.size());
  std::vector<bool> seen(rows.size(), false);
  for (const auto& r : rows) {
    const auto t = static_cast<std::size_t>(parse_index(r[0]));
    const auto i = static_cast<std::size_t>(parse_index(r[1]));
    require(t < g.order() && i < d, "vector function csv: index out of range");
    require(!seen[t * d + i], "vector function csv: duplicate entry");
    seen[t * d + i] = true;
    v[t * d + i] = {parse_double(r[2]), parse_double(r[3])};
  }
  return VectorFunction(g, d, std::move(v));
}

void write_matrix_csv(std::ostream& os, const CMatrix& m) {
  os << "row,col,re,im\n";
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      os << r << ',' << c << ',' << format_double(m(r, c).real()) << ',' << format_double(m(r, c).imag()) << '\n';
}

CMatrix read_matrix_csv(std::istream& is) {
  const auto rows = read_rows(is, "row,col,re,im", 4);
  std::size_t nr = 0, nc = 0;
  for (const auto& r : rows) {
    nr = std::max(nr, static_cast<std::size_t>(parse_index(r[0])) + 1);
    nc = std::max(nc, static_cast<std::size_t>(parse_index(r[1])) + 1);
  }
  require(rows.size() == nr * nc, "matrix csv: every entry must be listed exactly once");
  CMatrix m(nr, nc);
  std::vector<bool> seen(nr * nc, false);
  for (const auto& r : rows) {
    const auto i = static_cast<std::size_t>(parse_index(r[0]));
    const auto j = static_cast<std::size_t>(parse_index(r[1]));
    require(!seen[i * nc + j], "matrix csv: duplicate entry");
    seen[i * nc + j] = true;
    m(i, j) = {parse_double(r[2]), parse_double(r[3])};
  }
  return m;
}

void write_matrix_binary(std::ostream& os, const CMatrix& m) {
  os.write(kMagic, sizeof kMagic);
  put_u64(os, m.rows());
  put_u64(os, m.cols());
  for (const auto& z : m.data()) {
    put_double(os, z.real());
    put_double(os, z.imag());
  }
}

CMatrix read_matrix_binary(std::istream& is) {
  char magic[8];
  is.read(magic, sizeof magic);
  require(is.gcount() == 8 && std::memcmp(magic, kMagic, 8) == 0, "matrix binary: bad magic");
  const std::uint64_t rows = get_u64(is);
  const std::uint64_t cols = get_u64(is);
  require(rows <= (1u << 24) && cols <= (1u << 24) && rows * cols <= (std::uint64_t{1} << 26),
          "matrix binary: implausible dimensions");
  CMatrix m(rows, cols);
  for (auto& z : m.data()) {
    const double re = get_double(is);
    const double im = get_double(is);
    z = {re, im};
  }
  return m;
}

void write_chain(const std::filesystem::path& dir, const FactorChain& chain, const json& exponents) {
  std::filesystem::create_directories(dir);
  json manifest;
  manifest["middle_index"] = chain.middle_index();
  manifest["exponents"] = exponents;
  manifest["stages"] = json::array();
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const auto& st = chain.stages()[k];
    const std::string file = "stage_" + std::to_string(k) + ".bin";
    std::ofstream os(dir / file, std::ios::binary);
    require(static_cast<bool>(os), "write_chain: cannot open " + (dir / file).string());
    write_matrix_binary(os, st.matrix);
    manifest["stages"].push_back({{"file", file},
                                  {"rows", st.matrix.rows()},
                                  {"cols", st.matrix.cols()},
                                  {"from", to_string(st.from)},
                                  {"to", to_string(st.to)}});
  }
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
}

FactorChain read_chain(const std::filesystem::path& dir) {
  json manifest;
  try {
    manifest = json::parse(read_text(dir / "manifest.json"));
  } catch (const json::exception& e) {
    throw InputError(std::string("read_chain: bad manifest: ") + e.what());
  }
  std::vector<ChainStage> stages;
  for (const auto& st : manifest.at("stages")) {
    std::ifstream is(dir / st.at("file").get<std::string>(), std::ios::binary);
    require(static_cast<bool>(is), "read_chain: missing stage file");
    CMatrix m = read_matrix_binary(is);
    require(m.rows() == st.at("rows").get<std::size_t>() && m.cols() == st.at("cols").get<std::size_t>(),
            "read_chain: stage shape disagrees with manifest");
    stages.push_back({std::move(m), parse_norm_tag(st.at("from")), parse_norm_tag(st.at("to"))});
  }
  return FactorChain(std::move(stages), manifest.at("middle_index").get<std::size_t>());
}

json quasinorm_report(const LorentzParams& params, double norm, const std::string& variant) {
  return {{"p", exponent_json(params.p)}, {"q", exponent_json(params.q)}, {"norm", norm}, {"variant", variant}};
}

json to_json(const CompositionReport& r) {
  return {{"exponents",
           {{"u", {exponent_json(r.u.p), exponent_json(r.u.q)}},
            {"v", {exponent_json(r.v.p), exponent_json(r.v.q)}},
            {"product", {exponent_json(r.product.p), exponent_json(r.product.q)}}}},
          {"lhs", r.lhs},
          {"rhs", r.rhs},
          {"constant", r.constant},
          {"holds", r.holds}};
}

json to_json(const InclusionReport& r) {
  return {{"exponents",
           {{"from", {exponent_json(r.from.p), exponent_json(r.from.q)}},
            {"to", {exponent_json(r.to.p), exponent_json(r.to.q)}}}},
          {"lhs", r.small_norm},
          {"rhs", r.constant * r.large_norm},
          {"constant", r.constant},
          {"holds", r.holds}};
}

json to_json(const ChainReport& r) {
  json norms = json::array();
  for (std::size_t k = 0; k < r.stage_norms.size(); ++k)
    norms.push_back({{"norm", std::isnan(r.stage_norms[k]) ? json(nullptr) : json(r.stage_norms[k])},
                     {"exact", static_cast<bool>(r.stage_norm_exact[k])}});
  return {{"residual", r.residual},
          {"tolerance", r.tolerance},
          {"residual_ok", r.residual_ok},
          {"stage_norms", norms},
          {"middle_sigma_pq", r.middle_sigma_pq},
          {"product_of_norms", r.product_of_norms}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  require(static_cast<bool>(os), "cannot write " + path.string());
  os << text;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  require(static_cast<bool>(is), "cannot read " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace schlab::io
