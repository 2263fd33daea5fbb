#include "cbpm/iogen.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "cbpm/error.hpp"

namespace cbpm {

namespace {

struct Token {
  std::string_view text;
  std::size_t line;      // 1-based
  std::size_t position;  // 1-based within the line
};

std::vector<std::vector<Token>> tokenize(std::string_view text) {
  std::vector<std::vector<Token>> lines;
  std::size_t line_no = 0;
  while (!text.empty() || line_no == 0) {
    ++line_no;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      const std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
      if (i > start) {
        tokens.push_back({line.substr(start, i - start), line_no, tokens.size() + 1});
      }
    }
    lines.push_back(std::move(tokens));
    if (nl == std::string_view::npos) break;
  }
  return lines;
}

std::int64_t to_int(const Token& t, std::string_view what) {
  std::int64_t value = 0;
  const char* begin = t.text.data();
  const char* end = begin + t.text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError("expected " + std::string(what) + ", got '" +
                         std::string(t.text) + "'",
                     t.line, t.position);
  }
  return value;
}

}  // namespace

ColouredClique random_balanced(int n, int k, std::uint64_t seed) {
  if (n < 1 || k < 1) throw InstanceError("n and k must be positive");
  const std::int64_t nv = 2LL * n * k;
  const std::int64_t per_colour = static_cast<std::int64_t>(n) * (nv - 1);
  std::vector<Colour> colours;
  colours.reserve(clique_edge_count(nv));
  for (Colour c = 1; c <= k; ++c) colours.insert(colours.end(), per_colour, c);
  std::mt19937_64 rng(seed);
  std::shuffle(colours.begin(), colours.end(), rng);
  return ColouredClique(n, k, std::move(colours));
}

ColouredClique parse_colouring(std::string_view text) {
  const auto lines = tokenize(text);
  std::size_t li = 0;
  while (li < lines.size() && lines[li].empty()) ++li;
  if (li == lines.size()) throw ParseError("missing header 'n k'", 1, 1);
  const auto& header = lines[li];
  if (header.size() != 2) {
    throw ParseError("header must be exactly 'n k', found " +
                         std::to_string(header.size()) + " tokens",
                     header.front().line, 1);
  }
  const std::int64_t n = to_int(header[0], "positive integer n");
  const std::int64_t k = to_int(header[1], "positive integer k");
  if (n < 1 || k < 1 || n > (1 << 20) || k > (1 << 20)) {
    throw ParseError("header values out of range (n=" + std::to_string(n) +
                         ", k=" + std::to_string(k) + ")",
                     header[0].line, 1);
  }
  const std::int64_t nv = 2 * n * k;
  if (nv > 16384) {
    throw ParseError("2nk=" + std::to_string(nv) + " is too large", header[0].line, 1);
  }
  const std::size_t expected = clique_edge_count(nv);

  std::vector<Colour> colours;
  colours.reserve(expected);
  std::size_t last_line = header[0].line;
  for (++li; li < lines.size(); ++li) {
    for (const Token& t : lines[li]) {
      const std::int64_t c = to_int(t, "colour index");
      if (c < 1 || c > k) {
        throw ParseError("colour " + std::to_string(c) + " outside 1.." +
                             std::to_string(k),
                         t.line, t.position);
      }
      if (colours.size() == expected) {
        throw ParseError("more than the expected " + std::to_string(expected) +
                             " colours for K_" + std::to_string(nv),
                         t.line, t.position);
      }
      colours.push_back(static_cast<Colour>(c));
      last_line = t.line;
    }
  }
  if (colours.size() != expected) {
    throw ParseError("expected " + std::to_string(expected) + " colours for K_" +
                         std::to_string(nv) + ", found " +
                         std::to_string(colours.size()),
                     last_line, colours.size());
  }
  return ColouredClique(static_cast<int>(n), static_cast<int>(k), std::move(colours));
}

std::string format_colouring(const ColouredClique& clique) {
  std::string out;
  out.reserve(clique.num_edges() * 3 + 16);
  out += std::to_string(clique.n());
  out += ' ';
  out += std::to_string(clique.k());
  out += '\n';
  bool first = true;
  for (Colour c : clique.colours()) {
    if (!first) out += ' ';
    out += std::to_string(c);
    first = false;
  }
  out += '\n';
  return out;
}

PerfectMatching parse_matching(std::string_view text, int num_vertices) {
  std::vector<VertexPair> pairs;
  for (const auto& line : tokenize(text)) {
    if (line.empty()) continue;
    if (line.size() != 2) {
      throw ParseError("expected 'u v', found " + std::to_string(line.size()) +
                           " tokens",
                       line.front().line, 1);
    }
    const std::int64_t u = to_int(line[0], "vertex");
    const std::int64_t v = to_int(line[1], "vertex");
    if (u >= v) {
      throw ValidationError("line " + std::to_string(line[0].line) + ": pair " +
                            std::to_string(u) + " " + std::to_string(v) +
                            " must satisfy u < v");
    }
    if (u < 0 || v >= num_vertices) {
      throw ValidationError("line " + std::to_string(line[0].line) +
                            ": vertex outside 0.." +
                            std::to_string(num_vertices - 1));
    }
    pairs.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  return PerfectMatching(num_vertices, std::move(pairs));
}

std::string format_matching(const PerfectMatching& matching) {
  std::string out;
  for (const auto& p : matching.pairs()) {
    out += std::to_string(p.u);
    out += ' ';
    out += std::to_string(p.v);
    out += '\n';
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("write failed for " + path.string());
}

ColouredClique read_colouring(const std::filesystem::path& path) {
  return parse_colouring(read_text_file(path));
}

void write_colouring(const std::filesystem::path& path,
                     const ColouredClique& clique) {
  write_text_file(path, format_colouring(clique));
}

PerfectMatching read_matching(const std::filesystem::path& path,
                              int num_vertices) {
  return parse_matching(read_text_file(path), num_vertices);
}

void write_matching(const std::filesystem::path& path,
                    const PerfectMatching& matching) {
  write_text_file(path, format_matching(matching));
}

}  // namespace cbpm
