#include "doctest.h"

#include "lookupdb/csv.hpp"
#include "lookupdb/error.hpp"
#include "lookupdb/value.hpp"
#include "test_support.hpp"

using namespace lookupdb;
using namespace lookupdb::testing;

TEST_SUITE("value_csv") {

TEST_CASE("parse_value per type") {
  CHECK(parse_value("110", ValueType::Integer) == Value{std::int64_t{110}});
  CHECK(parse_value("", ValueType::Integer) == Value{});
  CHECK(parse_value("4.5", ValueType::Decimal) == Value{*Decimal::parse("4.5")});
  CHECK(parse_value("Regulator System", ValueType::Text) == Value{std::string("Regulator System")});
  CHECK(parse_value("1988-04-12", ValueType::Date) == Value{Date{1988, 4, 12}});
  CHECK_THROWS_AS(parse_value("abc", ValueType::Integer), Error);
  CHECK_THROWS_AS(parse_value("1.5", ValueType::Integer), Error);
  CHECK_THROWS_AS(parse_value("2021-02-30", ValueType::Date), Error);
  CHECK_THROWS_AS(parse_value("12/04/1988", ValueType::Date), Error);
}

TEST_CASE("dates") {
  CHECK(Date::parse("2024-02-29"));
  CHECK_FALSE(Date::parse("2023-02-29"));
  CHECK_FALSE(Date::parse("1900-02-29"));
  CHECK(Date::parse("2000-02-29"));
  CHECK(Date{1988, 4, 2}.to_string() == "1988-04-02");
}

TEST_CASE("value ordering and keys") {
  CHECK(compare_values(Value{}, Value{std::int64_t{0}}) == std::strong_ordering::less);
  CHECK(compare_values(Value{std::int64_t{2}}, Value{std::int64_t{10}}) == std::strong_ordering::less);
  Key a{std::int64_t{1003}, std::int64_t{3}};
  Key b{std::int64_t{1003}, std::int64_t{10}};
  CHECK(compare_keys(a, b) == std::strong_ordering::less);
  CHECK(key_to_string(a) == "(1003,3)");
}

TEST_CASE("csv quoting round trip") {
  std::string out;
  csv::append_record(out, {"a", "b,c", "say \"hi\"", "line\nbreak", ""});
  CHECK(out == "a,\"b,c\",\"say \"\"hi\"\"\",\"line\nbreak\",\n");
  auto records = csv::parse(out);
  REQUIRE(records.size() == 1);
  CHECK(records[0] == csv::Record{"a", "b,c", "say \"hi\"", "line\nbreak", ""});
}

TEST_CASE("csv accepts CRLF and skips blank lines") {
  auto records = csv::parse("x,y\r\n\r\n1,2\r\n");
  REQUIRE(records.size() == 2);
  CHECK(records[1] == csv::Record{"1", "2"});
  CHECK_THROWS_AS(csv::parse("\"open"), Error);
}

TEST_CASE("csv random round trip") {
  Rng rng(3);
  const std::string alphabet = "ab,\"\n xyz";
  for (int i = 0; i < 500; ++i) {
    std::vector<csv::Record> records(static_cast<std::size_t>(uniform(rng, 1, 5)));
    std::string text;
    for (auto& r : records) {
      r.resize(static_cast<std::size_t>(uniform(rng, 2, 4)));
      for (auto& cell : r) {
        auto len = uniform(rng, 1, 6);
        for (int k = 0; k < len; ++k) cell += alphabet[static_cast<std::size_t>(uniform(rng, 0, 8))];
      }
      csv::append_record(text, r);
    }
    CHECK(csv::parse(text) == records);
  }
}

}
