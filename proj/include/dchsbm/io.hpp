#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dchsbm/hypergraph.hpp"

namespace dchsbm {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Hyperedge list: one edge per line as comma-separated 1-based node ids;
/// with `weighted` the first column is the edge weight. Blank lines and lines
/// starting with '#' are skipped. Throws ParseError with the line number.
std::vector<EdgeInput> read_hyperedges(std::istream& in, bool weighted = false);
std::vector<EdgeInput> read_hyperedges(const std::filesystem::path& path, bool weighted = false);

Hypergraph load_hypergraph(const std::filesystem::path& path, bool weighted = false);

/// Writes edges in the hypergraph's canonical order. Unweighted output
/// repeats an edge of weight w on w lines, so reading it back merges to the
/// same hypergraph; this needs integer weights.
void write_hyperedges(std::ostream& out, const Hypergraph& h, bool weighted = false);
void write_hyperedges(const std::filesystem::path& path, const Hypergraph& h, bool weighted = false);

/// Label file: line i holds the label of node i. Integer tokens keep their
/// value; if any token is not an integer, tokens are numbered 1, 2, ... by
/// first occurrence.
std::vector<int> read_labels(std::istream& in);
std::vector<int> read_labels(const std::filesystem::path& path);

/// Writes labels + offset, one per line (offset 1 gives 1-based files).
void write_labels(std::ostream& out, const std::vector<int>& labels, int offset = 1);
void write_labels(const std::filesystem::path& path, const std::vector<int>& labels, int offset = 1);

/// Line-oriented "key = value" records, written in key order.
using KeyValues = std::map<std::string, std::string>;
void write_key_values(std::ostream& out, const KeyValues& values);
KeyValues read_key_values(std::istream& in);

}  // namespace dchsbm
