#include "ehc/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ehc {

std::string tournament_to_text(const Tournament& t) {
  std::string bits;
  for (int i = 0; i < t.size(); ++i)
    for (int j = i + 1; j < t.size(); ++j) bits += t.has_arc(i, j) ? '1' : '0';
  return std::to_string(t.size()) + "\n" + bits + "\n";
}

Tournament tournament_from_text(const std::string& text) {
  std::istringstream in(text);
  int n = 0;
  if (!(in >> n)) throw std::invalid_argument("tournament text: missing vertex count");
  std::string bits;
  in >> bits;
  const size_t expected = static_cast<size_t>(n) * (n - 1) / 2;
  if (bits.size() != expected && n > 1)
    throw std::invalid_argument("tournament text: expected " + std::to_string(expected) +
                                " bits, got " + std::to_string(bits.size()));
  Tournament t(n);
  size_t k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      char c = bits[k++];
      if (c == '1')
        t.set_arc(i, j);
      else if (c == '0')
        t.set_arc(j, i);
      else
        throw std::invalid_argument("tournament text: bad bit character");
    }
  return t;
}

std::string digraph_to_text(const PartialDigraph& d) {
  auto arcs = d.arcs();
  std::ostringstream out;
  out << d.size() << " " << arcs.size() << "\n";
  for (auto [u, v] : arcs) out << (u + 1) << " " << (v + 1) << "\n";
  return out.str();
}

PartialDigraph digraph_from_text(const std::string& text) {
  std::istringstream in(text);
  int n = 0, m = 0;
  if (!(in >> n >> m)) throw std::invalid_argument("digraph text: missing header");
  PartialDigraph d(n);
  for (int k = 0; k < m; ++k) {
    int u = 0, v = 0;
    if (!(in >> u >> v)) throw std::invalid_argument("digraph text: missing arc");
    if (u < 1 || u > n || v < 1 || v > n)
      throw std::invalid_argument("digraph text: vertex out of range");
    d.add_arc(u - 1, v - 1);
  }
  return d;
}

std::vector<std::vector<int>> partition_from_text(const std::string& text) {
  std::vector<std::vector<int>> sets;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<int> set;
    int v;
    while (ls >> v) {
      if (v < 1) throw std::invalid_argument("partition: vertex indices are 1-based");
      set.push_back(v - 1);
    }
    if (!set.empty()) sets.push_back(std::move(set));
  }
  return sets;
}

Ordering ordering_from_string(const std::string& s) {
  std::vector<int> perm;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    perm.push_back(std::stoi(tok) - 1);
  }
  return Ordering(std::move(perm));
}

std::string ordering_to_string(const Ordering& theta) {
  std::string s;
  for (int i = 0; i < theta.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(theta.vertex_at(i) + 1);
  }
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace ehc
