#include <doctest.h>

#include "otsclust/core.hpp"

using namespace otsclust;

TEST_SUITE("core") {

TEST_CASE("validate_series accepts well-formed input") {
  const auto s = validate_series("a", {0, 1, 2}, 2);
  CHECK(s.length() == 3);
  CHECK(s.n() == 2);
  CHECK(s.id == "a");
}

TEST_CASE("validate_series rejects out-of-range states") {
  CHECK_THROWS_AS(validate_series("b", {0, 3}, 2), Error);
  try {
    validate_series("b", {0, 3}, 2);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::out_of_range_state);
  }
  CHECK_THROWS_AS(validate_series("neg", {0, -1}, 2), Error);
}

TEST_CASE("validate_series rejects short series and empty ranges") {
  try {
    validate_series("c", {1}, 5);
    FAIL("expected too_short");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::too_short);
  }
  try {
    validate_series("d", {0, 0}, 0);
    FAIL("expected empty_range");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::empty_range);
  }
}

TEST_CASE("validate_series accepts exactly the in-range sequences") {
  // Exhaustive over short sequences on a small range.
  const int n = 2;
  for (int a = -1; a <= n + 1; ++a) {
    for (int b = -1; b <= n + 1; ++b) {
      const bool should_pass = a >= 0 && a <= n && b >= 0 && b <= n;
      if (should_pass)
        CHECK_NOTHROW(validate_series("x", {a, b}, n));
      else
        CHECK_THROWS_AS(validate_series("x", {a, b}, n), Error);
    }
  }
}

TEST_CASE("encode_labels is positional") {
  const std::vector<std::string> ratings = {"D", "SD", "R", "CC"};
  const auto s = encode_labels("cr", {"D", "SD"}, ratings);
  CHECK(s.states == std::vector<int>{0, 1});

  // Highest label maps to the last index.
  std::vector<std::string> wide(23);
  for (int i = 0; i < 23; ++i) wide[static_cast<std::size_t>(i)] = "r" + std::to_string(i);
  const auto top = encode_labels("top", {"r22", "r0"}, wide);
  CHECK(top.states == std::vector<int>{22, 0});
}

TEST_CASE("encode_labels rejects unknown symbols") {
  try {
    encode_labels("x", {"X", "D"}, {"D", "SD"});
    FAIL("expected unknown_label");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unknown_label);
  }
}

TEST_CASE("decode after encode is the identity") {
  const std::vector<std::string> labels = {"low", "mid", "high"};
  const std::vector<std::string> symbols = {"mid", "low", "high", "high", "mid"};
  const auto series = encode_labels("rt", symbols, labels);
  CHECK(decode_labels(series) == symbols);
}

TEST_CASE("lag sets must be strictly increasing and positive") {
  CHECK_NOTHROW(LagSet({1, 2, 5}));
  CHECK_THROWS_AS(LagSet({0, 1}), Error);
  CHECK_THROWS_AS(LagSet({2, 2}), Error);
  CHECK_THROWS_AS(LagSet({3, 1}), Error);
  CHECK_THROWS_AS(LagSet(std::vector<int>{}), Error);
  CHECK(LagSet::contiguous(3).lags() == std::vector<int>{1, 2, 3});
}

TEST_CASE("ordinal range validates labels") {
  CHECK_THROWS_AS(OrdinalRange(2, std::vector<std::string>{"a", "b"}), Error);
  CHECK_THROWS_AS(OrdinalRange(1, std::vector<std::string>{"a", "a"}), Error);
  CHECK_NOTHROW(OrdinalRange(1, std::vector<std::string>{"a", "b"}));
}

}  // TEST_SUITE
