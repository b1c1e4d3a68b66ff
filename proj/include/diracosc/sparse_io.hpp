#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "diracosc/fock.hpp"

/// Line-oriented sparse text export of Fock operators.
///
///   # diracosc sparse export
///   # modes: M
///   # mode k: <label> E=<energy>
///   # operator: <name>
///   # dimension: D
///   # nnz: K
///   row col re im
///
/// Several operators may follow one mode header; each starts at its own
/// "# operator:" line. Numbers use 17 significant digits.
namespace diracosc::fock {

struct NamedOperator {
  std::string name;
  FockOperator op;
};

void write_operators(std::ostream& os, const ModeSet& modes,
                     const std::vector<NamedOperator>& ops);

struct SparseImport {
  std::vector<std::string> mode_lines;  // the "mode k: ..." header payloads
  std::vector<NamedOperator> operators;
};

/// Parses the output of write_operators. Throws DomainError on malformed
/// input or when an operator's entry count disagrees with its header.
SparseImport read_operators(std::istream& is);

}  // namespace diracosc::fock
