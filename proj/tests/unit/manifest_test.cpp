#include "doctest.h"

#include "lookupdb/error.hpp"
#include "lookupdb/seed.hpp"
#include "test_support.hpp"

using namespace lookupdb;
using namespace lookupdb::testing;

namespace {

std::string seed_text() {
  for (const auto& [name, content] : seed_files()) {
    if (name == kSeedManifestFile) return content;
  }
  return {};
}

std::string replaced(std::string text, const std::string& from, const std::string& to) {
  auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

// Message of the ManifestError raised for `text`, or "" when it loads.
std::string manifest_error(const std::string& text) {
  try {
    parse_manifest(text, "/tmp");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ManifestError);
    return e.what();
  }
  return {};
}

bool mentions(const std::string& message, const std::string& word) {
  return message.find(word) != std::string::npos;
}

}  // namespace

TEST_SUITE("manifest") {

TEST_CASE("seed manifest contents") {
  SchemaManifest m = seed_manifest();
  CHECK(m.tables.size() == 6);
  CHECK(m.bindings.size() == 4);
  REQUIRE(m.links.size() == 1);
  CHECK(m.links[0].field_pairs[0].master_field == "OrderNo");
  CHECK(m.locale == LocaleSpec::indonesian());
  const LookupBinding& emp = m.binding("emp");
  CHECK(emp.list_fields == std::vector<std::string>{"EmpNo", "FirstName", "LastName"});
  CHECK(emp.display_field() == "LastName");
  CHECK(m.binding("parts").display_field() == "Description");
  REQUIRE(m.calc_fields.size() == 1);
  CHECK(m.calc_fields[0].expr != nullptr);
  const FieldDef& harga = m.table("Items").field("Harga");
  CHECK(harga.kind == FieldKind::Calculated);
  CHECK_FALSE(harga.persisted());
  REQUIRE(harga.pattern);
  CHECK(harga.pattern->prefix == "US$ ");
  CHECK(m.table("Orders").field("TaxRate").pattern->grouping == false);
}

TEST_CASE("list fields as a semicolon string") {
  auto text = replaced(seed_text(), "list_fields: [EmpNo, FirstName, LastName]",
                       "list_fields: \"EmpNo; FirstName; LastName\"");
  auto m = parse_manifest(text, "/tmp");
  CHECK(m.binding("emp").list_fields == std::vector<std::string>{"EmpNo", "FirstName", "LastName"});
}

TEST_CASE("locale forms") {
  auto us = parse_manifest(replaced(seed_text(), "locale: id", "locale: us"), "/tmp");
  CHECK(us.locale == LocaleSpec::us());
  auto custom = parse_manifest(replaced(seed_text(), "locale: id", "locale: {group: \" \", decimal: \",\"}"), "/tmp");
  CHECK(custom.locale.group_symbol == ' ');
  CHECK(mentions(manifest_error(replaced(seed_text(), "locale: id", "locale: {group: \",\", decimal: \",\"}")),
                 "locale"));
  CHECK(mentions(manifest_error(replaced(seed_text(), "locale: id", "locale: fr")), "locale"));
}

TEST_CASE("relative data_dir resolves against the manifest directory") {
  auto m = parse_manifest(replaced(seed_text(), "data_dir: .", "data_dir: data"), "/srv/app");
  CHECK(m.data_dir == std::filesystem::path("/srv/app/data"));
}

TEST_CASE("dangling binding is named") {
  auto msg = manifest_error(replaced(seed_text(), "list_source: Employee", "list_source: Staff"));
  CHECK(mentions(msg, "emp"));
  msg = manifest_error(replaced(seed_text(), "list_fields: [CustNo, Company]", "list_fields: [CustNo, Name]"));
  CHECK(mentions(msg, "cust"));
}

TEST_CASE("lookup key must be the parent's whole primary key") {
  auto msg = manifest_error(replaced(seed_text(), "key_field: CustNo", "key_field: Company"));
  CHECK(mentions(msg, "cust"));
  // Items has a composite key; a binding onto it cannot be single-field.
  std::string text = seed_text();
  text = replaced(text, "links:", "  - name: item\n    data_source: Parts\n    data_field: OnHand\n"
                                   "    list_source: Items\n    list_fields: [Qty]\n    key_field: ItemNo\n\nlinks:");
  CHECK(mentions(manifest_error(text), "item"));
}

TEST_CASE("binding field types must agree") {
  auto msg = manifest_error(replaced(seed_text(), "data_field: EmpNo", "data_field: Terms"));
  CHECK(mentions(msg, "emp"));
}

TEST_CASE("link rules") {
  CHECK(mentions(manifest_error(replaced(seed_text(), "master_fields: [OrderNo]", "master_fields: [CustNo]")),
                 "Items"));
  std::string twice = seed_text() + "";
  twice = replaced(twice, "calc_fields:",
                   "  - detail_table: Items\n    master_table: Parts\n    master_fields: [PartNo]\n\ncalc_fields:");
  CHECK(mentions(manifest_error(twice), "Items"));
}

TEST_CASE("bad display pattern is rejected") {
  auto msg = manifest_error(replaced(seed_text(), "display_format: \"#,#\"}", "display_format: \"#,#,#\"}"));
  CHECK(mentions(msg, "TaxRate"));
}

TEST_CASE("calc expressions are checked") {
  const std::string expr = "((1 - Discount/100) * lookup(Parts, PartNo, ListPrice)) * Qty";
  CHECK(mentions(manifest_error(replaced(seed_text(), expr, "Harga * 2")), "Harga"));
  CHECK(mentions(manifest_error(replaced(seed_text(), expr, "Qty * Price")), "Price"));
  CHECK(mentions(manifest_error(replaced(seed_text(), expr, "Qty * lookup(Vendors, PartNo, City)")), "Vendors"));
  CHECK(mentions(manifest_error(replaced(seed_text(), expr, "Qty * lookup(Parts, PartNo, Nope)")), "Nope"));
  CHECK(mentions(manifest_error(replaced(seed_text(), expr, "Qty *")), "Harga"));
  // Text leaves cannot take part in arithmetic.
  CHECK_FALSE(manifest_error(replaced(seed_text(), expr, "Qty * lookup(Parts, PartNo, Description)")).empty());
  // Reading another Calculated field is chaining.
  std::string chained = replaced(seed_text(), "      - {name: Harga, kind: Calculated",
                                 "      - {name: Net, kind: Calculated, type: Decimal}\n"
                                 "      - {name: Harga, kind: Calculated");
  chained = replaced(chained, "    target_field: Harga\n",
                     "    target_field: Harga\n    expression: \"Net * 2\"\n  - table: Items\n    target_field: Net\n");
  CHECK_FALSE(manifest_error(chained).empty());
}

TEST_CASE("calc through the master link") {
  auto m = parse_manifest(replaced(seed_text(), "((1 - Discount/100) * lookup(Parts, PartNo, ListPrice)) * Qty",
                                   "Qty * lookup(Orders, OrderNo, TaxRate)"),
                          "/tmp");
  CHECK(m.calc_fields[0].expr != nullptr);
}

TEST_CASE("structural errors") {
  CHECK_FALSE(manifest_error("tables: 3").empty());
  CHECK_FALSE(manifest_error(replaced(seed_text(), "primary_key: [CustNo]", "primary_key: [Nope]")).empty());
  CHECK_FALSE(manifest_error(replaced(seed_text(), "type: Date}", "type: Timestamp}")).empty());
  CHECK_FALSE(manifest_error("tables: [\n").empty());
}

TEST_CASE("empty manifest is valid") {
  auto m = parse_manifest("data_dir: .\ntables: []\n", "/tmp");
  CHECK(m.tables.empty());
  CHECK(m.bindings.empty());
}

TEST_CASE("missing manifest file") {
  try {
    load_manifest("/nonexistent/manifest.yaml");
    FAIL("expected MissingFile");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingFile);
  }
}

}
