#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "cyberops/common/errors.hpp"
#include "cyberops/common/log.hpp"
#include "cyberops/common/rng.hpp"
#include "cyberops/common/text.hpp"

using namespace cyberops;

TEST_CASE("rng uniform01 stays in [0, 1) and is deterministic per seed") {
  Rng a(42), b(42), c(43);
  bool diverged = false;
  for (int i = 0; i < 10000; ++i) {
    const double x = a.uniform01();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    CHECK(x == b.uniform01());
    if (x != c.uniform01()) diverged = true;
  }
  CHECK(diverged);
}

TEST_CASE("rng uniform_int covers the whole inclusive range roughly evenly") {
  Rng rng(7);
  std::vector<int> counts(6, 0);
  for (int i = 0; i < 60000; ++i) {
    const int v = rng.uniform_int(0, 5);
    REQUIRE(v >= 0);
    REQUIRE(v <= 5);
    counts[static_cast<std::size_t>(v)] += 1;
  }
  for (const int c : counts) {
    CHECK(c > 9000);
    CHECK(c < 11000);
  }
}

TEST_CASE("rng pick returns elements of the container") {
  Rng rng(11);
  const std::vector<int> items = {3, 1, 4, 1, 5};
  for (int i = 0; i < 100; ++i) {
    const int v = rng.pick(items);
    CHECK(std::count(items.begin(), items.end(), v) > 0);
  }
}

TEST_CASE("rng mix separates streams") {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t s = 0; s < 100; ++s) firsts.insert(Rng(Rng::mix(1, s)).next_u64());
  CHECK(firsts.size() == 100);
}

TEST_CASE("text helpers") {
  CHECK(to_lower("AbC") == "abc");
  CHECK(trim("  x \t\n") == "x");
  CHECK(trim("") == "");
  CHECK(split("a,b,,c", ',') == std::vector<std::string>{"a", "b", "", "c"});
  CHECK(split_on("a | b | c", " | ") == std::vector<std::string>{"a", "b", "c"});
  CHECK(join(std::vector<std::string>{"a", "b"}, "-") == "a-b");
  CHECK(contains_ci("Sample Text Here", "text h"));
  CHECK_FALSE(contains_ci("sample", "xyz"));
}

TEST_CASE("format_double round-trips exactly") {
  for (const double v : {0.1, 1.0 / 3.0, 39.605, -0.089, 0.0, 1e-17, 123456789.123456}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("file helpers write, create directories, and read back") {
  const auto dir = std::filesystem::temp_directory_path() / "cyberops_text_test";
  std::filesystem::remove_all(dir);
  const auto path = (dir / "a" / "b.txt").string();
  write_text_file(path, "hello\n");
  CHECK(read_text_file(path) == "hello\n");
  CHECK_THROWS_AS(read_text_file((dir / "missing.txt").string()), IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("log sink capture and level filtering") {
  std::vector<std::string> captured;
  set_log_sink([&](LogLevel level, const std::string& message) {
    if (level == LogLevel::Warn) captured.push_back(message);
  });
  set_log_level(LogLevel::Warn);
  log_info("should be filtered");
  log_warn("kept");
  set_log_level(LogLevel::Info);
  set_log_sink({});
  REQUIRE(captured.size() == 1);
  CHECK(captured[0] == "kept");
}
