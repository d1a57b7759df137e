#ifndef QRES_IO_HPP
#define QRES_IO_HPP

#include <cstddef>
#include <string>

#include <json.hpp>

#include "qres/channels.hpp"
#include "qres/matrix.hpp"

namespace qres {
namespace io {

// Reads a whole file, or standard input when path is "-".
std::string read_input(const std::string& path);

// Matrix document: {"rows": R, "cols": C, "data": [[[re, im], ...], ...]}.
ComplexMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::ordered_json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix load_matrix(const std::string& path);

// Bare text rendering: one line per row, entries as re+imi.
std::string plain_text(const ComplexMatrix& m);

// Channel document: {"kind": ..., "dim": ..., <kind-dependent payload>}.
// Kinds: depolarizing (p), generalized-pauli (probs), random-unitary
// (probs, unitaries), kraus (operators), superoperator (matrix).
struct ChannelSpec {
  std::string kind;
  std::size_t dim;
  ChannelRep rep;
  // True when the document carries explicit operators, so operator-based
  // checks can bypass the dynamical-matrix route.
  bool kraus_backed;
};

ChannelSpec channel_spec_from_json(const nlohmann::json& j);
ChannelSpec load_channel_spec(const std::string& path);

// Shortest round-trip decimal form; -0 is folded into 0.
std::string format_double(double v);

}  // namespace io
}  // namespace qres

#endif  // QRES_IO_HPP
