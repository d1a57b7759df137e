#include "qres/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <system_error>
#include <vector>

#include "qres/errors.hpp"

namespace qres {
namespace io {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

double clean_zero(double v) {
  return v == 0.0 ? 0.0 : v;
}

double number_field(const json& j, const std::string& what) {
  if (!j.is_number()) {
    throw ParseError(what + " must be a number");
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    throw ParseError(what + " must be finite");
  }
  return v;
}

std::size_t positive_field(const json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() <= 0) {
    throw ParseError(what + " must be a positive integer");
  }
  return static_cast<std::size_t>(j.get<long long>());
}

const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(where + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

// Real nested array, e.g. a probability table.
ComplexMatrix real_table(const json& j, std::size_t rows, std::size_t cols,
                         const std::string& what) {
  if (!j.is_array() || j.size() != rows) {
    throw ParseError(what + " must be an array of " + std::to_string(rows) + " rows");
  }
  ComplexMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = j.at(i);
    if (!row.is_array() || row.size() != cols) {
      throw ParseError(what + " row " + std::to_string(i) + " must have " + std::to_string(cols) +
                       " entries");
    }
    for (std::size_t k = 0; k < cols; ++k) {
      out(i, k) = number_field(row.at(k), what + " entry");
    }
  }
  return out;
}

ComplexMatrix sized_matrix(const json& j, std::size_t rows, std::size_t cols,
                           const std::string& what) {
  const ComplexMatrix m = matrix_from_json(j);
  if (m.rows() != rows || m.cols() != cols) {
    throw ParseError(what + " must be " + std::to_string(rows) + "x" + std::to_string(cols) +
                     ", got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  return m;
}

}  // namespace

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open \"" + path + "\"");
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) {
    throw ParseError("matrix document must be an object");
  }
  const std::size_t rows = positive_field(member(j, "rows", "matrix"), "\"rows\"");
  const std::size_t cols = positive_field(member(j, "cols", "matrix"), "\"cols\"");
  const json& data = member(j, "data", "matrix");
  if (!data.is_array() || data.size() != rows) {
    throw ParseError("matrix \"data\" must be an array of " + std::to_string(rows) + " rows");
  }
  ComplexMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = data.at(i);
    if (!row.is_array() || row.size() != cols) {
      throw ParseError("matrix row " + std::to_string(i) + " must have " + std::to_string(cols) +
                       " entries");
    }
    for (std::size_t k = 0; k < cols; ++k) {
      const json& cell = row.at(k);
      if (!cell.is_array() || cell.size() != 2) {
        throw ParseError("matrix entries must be [re, im] pairs");
      }
      out(i, k) = cplx(number_field(cell.at(0), "matrix entry"),
                       number_field(cell.at(1), "matrix entry"));
    }
  }
  return out;
}

ordered_json matrix_to_json(const ComplexMatrix& m) {
  ordered_json doc;
  doc["rows"] = m.rows();
  doc["cols"] = m.cols();
  ordered_json data = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) {
      const cplx& v = m(i, k);
      row.push_back({clean_zero(v.real()), clean_zero(v.imag())});
    }
    data.push_back(std::move(row));
  }
  doc["data"] = std::move(data);
  return doc;
}

ComplexMatrix load_matrix(const std::string& path) {
  json j;
  try {
    j = json::parse(read_input(path));
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid matrix document: ") + e.what());
  }
  return matrix_from_json(j);
}

std::string format_double(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof(buf), clean_zero(v));
  return std::string(buf, r.ptr);
}

std::string plain_text(const ComplexMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t k = 0; k < m.cols(); ++k) {
      if (k > 0) out += ' ';
      const double re = clean_zero(m(i, k).real());
      const double im = clean_zero(m(i, k).imag());
      out += format_double(re);
      out += im < 0.0 ? "-" : "+";
      out += format_double(std::abs(im));
      out += 'i';
    }
    out += '\n';
  }
  return out;
}

ChannelSpec channel_spec_from_json(const json& j) {
  if (!j.is_object()) {
    throw ParseError("channel document must be an object");
  }
  const json& kind_field = member(j, "kind", "channel");
  if (!kind_field.is_string()) {
    throw ParseError("channel \"kind\" must be a string");
  }
  const std::string kind = kind_field.get<std::string>();
  const std::size_t dim = positive_field(member(j, "dim", "channel"), "\"dim\"");

  try {
    if (kind == "depolarizing") {
      const double p = number_field(member(j, "p", "channel"), "\"p\"");
      return {kind, dim, depolarizing_channel(dim, p), false};
    }
    if (kind == "generalized-pauli") {
      const ComplexMatrix probs = real_table(member(j, "probs", "channel"), dim, dim, "\"probs\"");
      return {kind, dim, generalized_pauli_channel(dim, probs), true};
    }
    if (kind == "random-unitary") {
      const json& pj = member(j, "probs", "channel");
      const json& uj = member(j, "unitaries", "channel");
      if (!pj.is_array() || !uj.is_array() || pj.empty() || pj.size() != uj.size()) {
        throw ParseError("channel needs equally many \"probs\" and \"unitaries\"");
      }
      std::vector<double> probs;
      std::vector<ComplexMatrix> unitaries;
      for (std::size_t i = 0; i < pj.size(); ++i) {
        probs.push_back(number_field(pj.at(i), "\"probs\" entry"));
        unitaries.push_back(sized_matrix(uj.at(i), dim, dim, "unitary"));
      }
      return {kind, dim, random_unitary_channel(unitaries, probs), true};
    }
    if (kind == "kraus") {
      const json& ops_field = member(j, "operators", "channel");
      if (!ops_field.is_array() || ops_field.empty()) {
        throw ParseError("channel \"operators\" must be a non-empty array");
      }
      std::vector<ComplexMatrix> ops;
      for (const json& op : ops_field) {
        ops.push_back(sized_matrix(op, dim, dim, "operator"));
      }
      return {kind, dim, KrausSet(std::move(ops)), true};
    }
    if (kind == "superoperator") {
      ComplexMatrix m = sized_matrix(member(j, "matrix", "channel"), dim * dim, dim * dim,
                                     "\"matrix\"");
      return {kind, dim, Superoperator(std::move(m), dim, dim), false};
    }
  } catch (const ContractViolation& e) {
    throw ParseError(std::string("invalid channel payload: ") + e.what());
  }
  throw ParseError("unknown channel kind \"" + kind + "\"");
}

ChannelSpec load_channel_spec(const std::string& path) {
  json j;
  try {
    j = json::parse(read_input(path));
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid channel document: ") + e.what());
  }
  return channel_spec_from_json(j);
}

}  // namespace io
}  // namespace qres
