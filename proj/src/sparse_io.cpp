#include "diracosc/sparse_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace diracosc::fock {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.compare(0, prefix.size(), prefix) == 0;
}

long parse_count(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(text, &used);
    if (used == text.size() && v >= 0) return v;
  } catch (const std::exception&) {
  }
  throw DomainError("sparse import: bad " + what + " '" + text + "'");
}

}  // namespace

void write_operators(std::ostream& os, const ModeSet& modes,
                     const std::vector<NamedOperator>& ops) {
  os << "# diracosc sparse export\n";
  os << "# ordering: ascending (energy, label); bit k of a basis index is mode k\n";
  os << "# modes: " << modes.size() << "\n";
  for (int k = 0; k < modes.size(); ++k)
    os << "# mode " << k << ": " << label_string(modes[k].label) << " E=" << fmt(modes[k].energy)
       << "\n";
  for (const auto& named : ops) {
    os << "# operator: " << named.name << "\n";
    os << "# dimension: " << named.op.rows() << "\n";
    os << "# nnz: " << named.op.nonZeros() << "\n";
    for (int col = 0; col < named.op.outerSize(); ++col)
      for (FockOperator::InnerIterator it(named.op, col); it; ++it)
        os << it.row() << " " << it.col() << " " << fmt(it.value().real()) << " "
           << fmt(it.value().imag()) << "\n";
  }
}

SparseImport read_operators(std::istream& is) {
  SparseImport out;
  struct Pending {
    std::string name;
    long dimension = -1;
    long nnz = -1;
    std::vector<Eigen::Triplet<Complex>> entries;
  };
  std::vector<Pending> blocks;

  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string body = line.substr(line.find_first_not_of("# "));
      if (starts_with(body, "operator: ")) {
        blocks.push_back(Pending{body.substr(10), -1, -1, {}});
      } else if (starts_with(body, "dimension: ")) {
        if (blocks.empty()) throw DomainError("sparse import: dimension before operator");
        blocks.back().dimension = parse_count(body.substr(11), "dimension");
      } else if (starts_with(body, "nnz: ")) {
        if (blocks.empty()) throw DomainError("sparse import: nnz before operator");
        blocks.back().nnz = parse_count(body.substr(5), "nnz");
      } else if (starts_with(body, "mode ")) {
        out.mode_lines.push_back(body.substr(5));
      }
      continue;
    }
    if (blocks.empty() || blocks.back().dimension < 0)
      throw DomainError("sparse import: entry before an operator header");
    std::istringstream ls(line);
    long row = 0, col = 0;
    double re = 0.0, im = 0.0;
    if (!(ls >> row >> col >> re >> im))
      throw DomainError("sparse import: malformed entry '" + line + "'");
    const long dim = blocks.back().dimension;
    if (row < 0 || col < 0 || row >= dim || col >= dim)
      throw DomainError("sparse import: entry outside dimension: '" + line + "'");
    blocks.back().entries.emplace_back(row, col, Complex(re, im));
  }

  for (auto& b : blocks) {
    if (b.dimension < 0) throw DomainError("sparse import: operator " + b.name + " lacks a dimension");
    if (b.nnz >= 0 && b.nnz != static_cast<long>(b.entries.size()))
      throw DomainError("sparse import: operator " + b.name + " declares " + std::to_string(b.nnz) +
                        " entries, found " + std::to_string(b.entries.size()));
    FockOperator op(b.dimension, b.dimension);
    op.setFromTriplets(b.entries.begin(), b.entries.end());
    out.operators.push_back(NamedOperator{b.name, std::move(op)});
  }
  return out;
}

}  // namespace diracosc::fock
