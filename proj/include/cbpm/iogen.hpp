#pragma once

// Balanced-colouring generation and the two text formats.
//
// Colouring file:            Matching file:
//   n k                        u v      (one pair per line, u < v)
//   c_0 c_1 ... c_{E-1}        ...
//
// Colours follow lexicographic edge order. Parsing is locale-independent,
// tolerant of runs of spaces/tabs between tokens, and accepts LF or CRLF.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "cbpm/core.hpp"

namespace cbpm {

/// Seeded shuffle of the multiset holding each colour n(2nk-1) times,
/// assigned in lexicographic edge order.
ColouredClique random_balanced(int n, int k, std::uint64_t seed);

/// Throws ParseError (with line and token position) on a malformed header,
/// a bad token, a colour outside 1..k, or a wrong colour count.
ColouredClique parse_colouring(std::string_view text);
std::string format_colouring(const ColouredClique& clique);
ColouredClique read_colouring(const std::filesystem::path& path);
void write_colouring(const std::filesystem::path& path,
                     const ColouredClique& clique);

/// Throws ParseError on malformed lines and ValidationError when the pairs
/// are not a perfect matching of K_{num_vertices} or a pair has u >= v.
PerfectMatching parse_matching(std::string_view text, int num_vertices);
std::string format_matching(const PerfectMatching& matching);
PerfectMatching read_matching(const std::filesystem::path& path,
                              int num_vertices);
void write_matching(const std::filesystem::path& path,
                    const PerfectMatching& matching);

/// Whole-file helpers; throw cbpm::Error on I/O failure.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace cbpm
