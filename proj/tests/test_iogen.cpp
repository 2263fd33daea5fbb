#include <doctest.h>

#include <filesystem>

#include "cbpm/error.hpp"
#include "cbpm/iogen.hpp"
#include "cbpm/local_search.hpp"
#include "support.hpp"

using namespace cbpm;

TEST_CASE("random balanced colourings") {
  const auto k4 = random_balanced(1, 2, 0);
  CHECK(k4.num_vertices() == 4);
  CHECK(k4.colour_counts()[0] == 3);
  CHECK(k4.colour_counts()[1] == 3);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int n = 1 + static_cast<int>(seed % 4);
    const int k = 1 + static_cast<int>(seed % 6);
    const auto c = random_balanced(n, k, seed);
    CHECK(c.balanced());
    for (auto count : c.colour_counts()) CHECK(count == n * (2LL * n * k - 1));
    CHECK(c == random_balanced(n, k, seed));
  }
  CHECK_FALSE(random_balanced(2, 3, 1) == random_balanced(2, 3, 2));
}

TEST_CASE("colouring round trip is byte-identical") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto c = random_balanced(1 + static_cast<int>(seed % 3), 2 + static_cast<int>(seed % 4), seed);
    const auto text = format_colouring(c);
    const auto back = parse_colouring(text);
    CHECK(back == c);
    CHECK(format_colouring(back) == text);
  }
}

TEST_CASE("colouring parse errors") {
  CHECK_THROWS_AS(parse_colouring("1 2\n1 1 2 2 1 3\n"), ParseError);
  try {
    parse_colouring("1 2\n1 1 2 2 1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("expected 6") != std::string::npos);
  }
  try {
    parse_colouring("1 2\n1 1 2 x 1 2\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_colouring(""), ParseError);
  CHECK_THROWS_AS(parse_colouring("1 2\n1 1 2 2 1 2 1\n"), ParseError);
  CHECK(parse_colouring("1 2\r\n1 1 2 2 1 2\r\n") == testing::k4_instance());
}

TEST_CASE("matching round trip and validation") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto m = random_matching(12, seed);
    const auto text = format_matching(m);
    CHECK(parse_matching(text, 12) == m);
  }
  CHECK_THROWS_AS(parse_matching("3 3\n0 1\n", 4), ValidationError);
  CHECK_THROWS_AS(parse_matching("1 0\n2 3\n", 4), ValidationError);
  CHECK_THROWS_AS(parse_matching("0 1\n2 5\n", 4), ValidationError);
  CHECK_THROWS_AS(parse_matching("0 1\n", 4), ValidationError);
  CHECK_THROWS_AS(parse_matching("0 1 2\n2 3\n", 4), ParseError);
  CHECK_THROWS_AS(parse_matching("0 a\n2 3\n", 4), ParseError);
}

TEST_CASE("file helpers") {
  const auto dir = std::filesystem::temp_directory_path() / "cbpm_iogen_test";
  std::filesystem::create_directories(dir);
  const auto c = random_balanced(2, 3, 9);
  write_colouring(dir / "c.txt", c);
  CHECK(read_colouring(dir / "c.txt") == c);
  const auto m = random_matching(c, 9);
  write_matching(dir / "m.txt", m);
  CHECK(read_matching(dir / "m.txt", c.num_vertices()) == m);
  CHECK_THROWS_AS(read_colouring(dir / "missing.txt"), Error);
  std::filesystem::remove_all(dir);
}
