#include "dchsbm/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace dchsbm {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_int(std::string_view token, long long& value) {
  token = trim(token);
  if (token.empty()) return false;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  return ec == std::errc() && ptr == token.data() + token.size();
}

bool parse_double(std::string_view token, double& value) {
  token = trim(token);
  if (token.empty()) return false;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  return ec == std::errc() && ptr == token.data() + token.size();
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

std::vector<EdgeInput> read_hyperedges(std::istream& in, bool weighted) {
  std::vector<EdgeInput> edges;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    EdgeInput edge;
    std::size_t start = 0;
    bool first = true;
    while (start <= body.size()) {
      auto comma = body.find(',', start);
      if (comma == std::string_view::npos) comma = body.size();
      const auto token = body.substr(start, comma - start);
      if (weighted && first) {
        if (!parse_double(token, edge.weight) || !(edge.weight > 0.0))
          throw ParseError("line " + std::to_string(line_no) + ": bad weight '" + std::string(token) + "'");
      } else {
        long long id = 0;
        if (!parse_int(token, id) || id <= 0 || id > std::numeric_limits<int>::max())
          throw ParseError("line " + std::to_string(line_no) + ": bad node id '" + std::string(token) + "'");
        edge.nodes.push_back(static_cast<int>(id));
      }
      first = false;
      start = comma + 1;
    }
    if (edge.nodes.empty()) throw ParseError("line " + std::to_string(line_no) + ": edge has no nodes");
    edges.push_back(std::move(edge));
  }
  return edges;
}

std::vector<EdgeInput> read_hyperedges(const std::filesystem::path& path, bool weighted) {
  auto in = open_input(path);
  return read_hyperedges(in, weighted);
}

Hypergraph load_hypergraph(const std::filesystem::path& path, bool weighted) {
  const auto edges = read_hyperedges(path, weighted);
  BuildOptions options;
  options.real_weights = weighted;
  return build_hypergraph(edges, options);
}

void write_hyperedges(std::ostream& out, const Hypergraph& h, bool weighted) {
  out.precision(17);
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    std::string line;
    for (int v : h.edge(e)) {
      if (!line.empty()) line += ',';
      line += std::to_string(v + 1);
    }
    const double w = h.weight(e);
    if (weighted) {
      out << w << ',' << line << '\n';
      continue;
    }
    if (w != std::floor(w)) throw std::invalid_argument("unweighted output needs integer weights");
    for (double r = 0; r < w; ++r) out << line << '\n';
  }
}

void write_hyperedges(const std::filesystem::path& path, const Hypergraph& h, bool weighted) {
  auto out = open_output(path);
  write_hyperedges(out, h, weighted);
}

std::vector<int> read_labels(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    const auto body = trim(line);
    if (body.empty()) throw ParseError("label line " + std::to_string(tokens.size() + 1) + " is empty");
    tokens.emplace_back(body);
  }
  std::vector<int> labels;
  labels.reserve(tokens.size());
  bool numeric = true;
  for (const auto& t : tokens) {
    long long v = 0;
    if (!parse_int(t, v) || v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
      numeric = false;
      break;
    }
    labels.push_back(static_cast<int>(v));
  }
  if (numeric) return labels;
  labels.clear();
  std::unordered_map<std::string, int> ids;
  for (const auto& t : tokens) labels.push_back(ids.try_emplace(t, static_cast<int>(ids.size()) + 1).first->second);
  return labels;
}

std::vector<int> read_labels(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_labels(in);
}

void write_labels(std::ostream& out, const std::vector<int>& labels, int offset) {
  for (int l : labels) out << l + offset << '\n';
}

void write_labels(const std::filesystem::path& path, const std::vector<int>& labels, int offset) {
  auto out = open_output(path);
  write_labels(out, labels, offset);
}

void write_key_values(std::ostream& out, const KeyValues& values) {
  for (const auto& [key, value] : values) out << key << " = " << value << '\n';
}

KeyValues read_key_values(std::istream& in) {
  KeyValues values;
  std::string line;
  while (std::getline(in, line)) {
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value': " + std::string(body));
    values[std::string(trim(body.substr(0, eq)))] = std::string(trim(body.substr(eq + 1)));
  }
  return values;
}

}  // namespace dchsbm
