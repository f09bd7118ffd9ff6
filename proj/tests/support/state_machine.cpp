#include "state_machine.hpp"

#include <map>
#include <sstream>

#include "lookupdb/calc.hpp"
#include "lookupdb/dataset.hpp"
#include "lookupdb/error.hpp"

namespace lookupdb::testing {

namespace {

enum class Op { Open, Close, First, Prior, Next, Last, Edit, Insert, Set, Post, Cancel, Remove, Refresh };
constexpr int kOpCount = 13;

const char* op_name(Op op) {
  static const char* names[] = {"open", "close", "first", "prior", "next", "last", "begin_edit",
                                "begin_insert", "set_field", "post", "cancel", "remove", "refresh"};
  return names[static_cast<int>(op)];
}

// Candidate values per field: a mix of valid keys, orphans, nulls and
// wrongly typed values.
Value random_value(Rng& rng, const FieldDef& f) {
  switch (uniform(rng, 0, 9)) {
    case 0: return Null{};
    case 1: return f.value_type == ValueType::Text ? Value{std::int64_t{7}} : Value{std::string("abc")};
    default: break;
  }
  static const std::map<std::string, std::vector<std::int64_t>> pools = {
      {"OrderNo", {1003, 1004, 1005, 1006, 1010}},
      {"ItemNo", {1, 2, 3}},
      {"PartNo", {1313, 1314, 1316, 9999}},
      {"CustNo", {1221, 1231, 1351, 9999}},
      {"EmpNo", {110, 118, 127, 999}},
      {"VendorNo", {2014, 3511, 4000}},
  };
  switch (f.value_type) {
    case ValueType::Integer: {
      auto it = pools.find(f.name);
      if (it == pools.end()) return uniform(rng, 0, 20);
      return it->second[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(it->second.size()) - 1))];
    }
    case ValueType::Decimal: return random_decimal(rng, 3);
    case ValueType::Text: return std::string(1, static_cast<char>('a' + uniform(rng, 0, 25)));
    case ValueType::Date: return Date{1990, static_cast<unsigned>(uniform(rng, 1, 12)), 1};
  }
  return Null{};
}

std::map<std::string, std::vector<Row>> snapshot(const Database& db) {
  std::map<std::string, std::vector<Row>> out;
  for (const auto& t : db.manifest().tables) out[t.name] = db.store(t.name).rows;
  return out;
}

bool is_editing(DatasetState s) { return s == DatasetState::Edit || s == DatasetState::Insert; }

}  // namespace

std::vector<std::string> run_state_machine(Rng& rng, Database& db, const std::string& table, int ops) {
  std::vector<std::string> problems;
  Dataset ds(db, table);
  const TableDef& def = ds.def();

  for (int step = 0; step < ops; ++step) {
    Op op = static_cast<Op>(uniform(rng, 0, kOpCount - 1));
    // Keep the machine in the editing states often enough to matter.
    if (ds.editing() && uniform(rng, 0, 1)) op = Op::Set;

    const DatasetState before = ds.state();
    const bool was_empty = ds.empty();
    const auto stores_before = snapshot(db);

    bool threw = false;
    std::optional<ErrorCode> code;
    std::string field;
    try {
      switch (op) {
        case Op::Open: ds.open(); break;
        case Op::Close: ds.close(); break;
        case Op::First: ds.navigate(NavAction::First); break;
        case Op::Prior: ds.navigate(NavAction::Prior); break;
        case Op::Next: ds.navigate(NavAction::Next); break;
        case Op::Last: ds.navigate(NavAction::Last); break;
        case Op::Edit: ds.begin_edit(); break;
        case Op::Insert: ds.begin_insert(); break;
        case Op::Set: {
          const FieldDef& f = def.fields[static_cast<std::size_t>(
              uniform(rng, 0, static_cast<std::int64_t>(def.fields.size()) - 1))];
          field = f.name;
          ds.set_field(f.name, random_value(rng, f));
          break;
        }
        case Op::Post: ds.post(); break;
        case Op::Cancel: ds.cancel(); break;
        case Op::Remove: ds.remove(); break;
        case Op::Refresh: ds.refresh(); break;
      }
    } catch (const Error& e) {
      threw = true;
      code = e.code();
    }

    std::ostringstream where;
    where << table << " step " << step << " " << op_name(op) << (field.empty() ? "" : " " + field)
          << " from " << to_string(before);
    auto fail = [&](const std::string& what) { problems.push_back(where.str() + ": " + what); };

    // Which outcomes the model allows.
    std::optional<DatasetState> expected;
    bool must_throw = false;
    bool may_throw = false;
    switch (op) {
      case Op::Open:
        expected = before == DatasetState::Inactive ? DatasetState::Browse : before;
        break;
      case Op::Close:
        if (is_editing(before)) must_throw = true;
        else expected = DatasetState::Inactive;
        break;
      case Op::First: case Op::Prior: case Op::Next: case Op::Last:
        if (before == DatasetState::Inactive) must_throw = true;
        else if (is_editing(before)) may_throw = true, expected = DatasetState::Browse;
        else expected = DatasetState::Browse;
        break;
      case Op::Edit:
        if (before != DatasetState::Browse || was_empty) must_throw = true;
        else expected = DatasetState::Edit;
        break;
      case Op::Insert:
        if (before != DatasetState::Browse) must_throw = true;
        else expected = DatasetState::Insert;
        break;
      case Op::Set:
        if (!is_editing(before)) must_throw = true;
        else may_throw = true, expected = before;
        break;
      case Op::Post:
        if (!is_editing(before)) must_throw = true;
        else may_throw = true, expected = DatasetState::Browse;
        break;
      case Op::Cancel:
        if (!is_editing(before)) must_throw = true;
        else expected = DatasetState::Browse;
        break;
      case Op::Remove:
        if (before != DatasetState::Browse || was_empty) must_throw = true;
        else may_throw = true, expected = DatasetState::Browse;
        break;
      case Op::Refresh:
        expected = before;
        break;
    }

    if (must_throw && !threw) fail("illegal operation was accepted");
    if (!must_throw && !may_throw && threw) fail("legal operation threw " + std::string(to_string(*code)));
    if (threw) {
      if (ds.state() != before) fail("state changed on error to " + std::string(to_string(ds.state())));
      if (snapshot(db) != stores_before) fail("store changed by a rejected operation");
    } else if (expected && ds.state() != *expected) {
      fail("ended in " + std::string(to_string(ds.state())));
    }
    if (op == Op::Cancel && !threw && snapshot(db) != stores_before) fail("cancel changed the store");

    if (ds.active()) {
      if (ds.cursor().has_value() == ds.empty()) fail("cursor presence disagrees with row count");
      if (ds.cursor() && *ds.cursor() >= ds.record_count()) fail("cursor out of range");
      if (ds.empty() != db.store(table).rows.empty()) fail("visible rows disagree with the store");
      if (const Row* cur = ds.current()) {
        Row fresh = db.store(table).rows[ds.visible_rows()[*ds.cursor()]];
        recalc(db, def, fresh);
        if (fresh != *cur) fail("current row is stale");
      }
    } else if (ds.cursor()) {
      fail("inactive dataset has a cursor");
    }
    if (ds.editing()) {
      Row fresh = ds.buffer();
      recalc(db, def, fresh);
      if (fresh != ds.buffer()) fail("edit buffer is stale");
    }
    if (problems.size() > 20) break;
  }
  return problems;
}

}  // namespace lookupdb::testing
