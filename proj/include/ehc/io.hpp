#ifndef EHC_IO_HPP
#define EHC_IO_HPP

#include <string>
#include <vector>

#include "ehc/tournament.hpp"

namespace ehc {

// Tournament text format: line 1 is n, line 2 the n(n-1)/2 upper-triangle
// bits row by row; bit for pair (i,j), i<j, is 1 iff i -> j. Round trips
// bit-exact.
std::string tournament_to_text(const Tournament& t);
Tournament tournament_from_text(const std::string& text);

// Partial digraph text format: "n m" then m lines "u v" (1-based, u -> v).
std::string digraph_to_text(const PartialDigraph& d);
PartialDigraph digraph_from_text(const std::string& text);

// One vertex set per line, whitespace-separated 1-based indices.
std::vector<std::vector<int>> partition_from_text(const std::string& text);

// Comma-separated 1-based vertex list, e.g. "3,1,2".
Ordering ordering_from_string(const std::string& s);
std::string ordering_to_string(const Ordering& theta);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace ehc

#endif
