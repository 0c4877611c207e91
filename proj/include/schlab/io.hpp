#pragma once

// File formats.
//
//   sequence CSV        index,value            (index 1-based)
//   function CSV        element,re,im          (GroupFunction / GroupMeasure)
//   vector function CSV element,component,re,im
//   matrix CSV          row,col,re,im          (every entry listed)
//   matrix binary       "SCHLABM1" | u64 rows | u64 cols | rows*cols*(re, im)
//                       all little-endian, doubles as IEEE-754 binary64
//   chain directory     manifest.json + stage_<k>.bin
//
// CSV files carry a header row, '.' decimal separator and 17 significant
// digits, so doubles round-trip exactly.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "schlab/cmatrix.hpp"
#include "schlab/factorization.hpp"
#include "schlab/finite_group.hpp"
#include "schlab/lorentz_seq.hpp"
#include "schlab/schatten.hpp"
#include "schlab/vecconv.hpp"

namespace schlab::io {

using nlohmann::json;

std::string format_double(double x);

// inf is written as the string "inf".
json exponent_json(double x);
double exponent_from_json(const json& j);

void write_sequence_csv(std::ostream& os, const RealSeq& x);
RealSeq read_sequence_csv(std::istream& is);

void write_function_csv(std::ostream& os, std::span<const cplx> values);
std::vector<cplx> read_function_csv(std::istream& is, std::size_t expected_length);

void write_vector_function_csv(std::ostream& os, const VectorFunction& f);
VectorFunction read_vector_function_csv(std::istream& is, const FiniteAbelianGroup& g);

void write_matrix_csv(std::ostream& os, const CMatrix& m);
CMatrix read_matrix_csv(std::istream& is);

void write_matrix_binary(std::ostream& os, const CMatrix& m);
CMatrix read_matrix_binary(std::istream& is);

void write_chain(const std::filesystem::path& dir, const FactorChain& chain, const json& exponents);
FactorChain read_chain(const std::filesystem::path& dir);

json quasinorm_report(const LorentzParams& params, double norm, const std::string& variant);
json to_json(const CompositionReport& r);
json to_json(const InclusionReport& r);
json to_json(const ChainReport& r);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace schlab::io
