#include "lookupdb/dataset.hpp"

#include <algorithm>

#include "lookupdb/calc.hpp"
#include "lookupdb/error.hpp"
#include "lookupdb/lookup.hpp"
#include "lookupdb/master_detail.hpp"

namespace lookupdb {

std::string_view to_string(DatasetState state) {
  switch (state) {
    case DatasetState::Inactive: return "Inactive";
    case DatasetState::Browse: return "Browse";
    case DatasetState::Edit: return "Edit";
    case DatasetState::Insert: return "Insert";
  }
  return "Inactive";
}

namespace {

bool same_key(const std::optional<Key>& a, const std::optional<Key>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || compare_keys(*a, *b) == 0;
}

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ';';
    out += names[i];
  }
  return out;
}

}  // namespace

Dataset::Dataset(Database& db, std::string table) : db_(&db), table_(std::move(table)) {
  db_->store(table_);
}

Dataset::~Dataset() {
  unlink_master();
  for (Dataset* d : details_) {
    d->master_ = nullptr;
    d->link_ = nullptr;
  }
}

const TableDef& Dataset::def() const { return db_->store(table_).def; }

std::optional<Key> Dataset::current_key() const {
  if (!cursor_) return std::nullopt;
  return def().key_of(current_);
}

const Row& Dataset::buffer() const {
  if (!buffer_) throw Error(ErrorCode::NotEditing, table_ + " is not in Edit or Insert state");
  return *buffer_;
}

Value Dataset::value(std::string_view field) const {
  auto idx = def().field_index(field);
  if (buffer_) return (*buffer_)[idx];
  if (cursor_) return current_[idx];
  return Null{};
}

void Dataset::require_active() const {
  if (!active()) throw Error(ErrorCode::NotActive, table_ + " is not open");
}

void Dataset::require_editing() const {
  if (!editing()) throw Error(ErrorCode::NotEditing, table_ + " is not in Edit or Insert state");
}

void Dataset::sync() {
  if (db_->version(table_) == seen_version_) return;
  rebuild_visible(current_key());
  load_current();
}

void Dataset::rebuild_visible(const std::optional<Key>& keep) {
  const TableStore& store = db_->store(table_);
  auto old_cursor = cursor_;
  seen_version_ = db_->version(table_);

  if (master_ && link_) {
    visible_ = detail_view(*link_, *master_, store);
  } else {
    visible_.resize(store.rows.size());
    for (std::size_t i = 0; i < visible_.size(); ++i) visible_[i] = i;
  }

  if (visible_.empty()) {
    cursor_.reset();
    return;
  }
  if (keep) {
    for (std::size_t p = 0; p < visible_.size(); ++p) {
      if (compare_keys(store.def.key_of(store.rows[visible_[p]]), *keep) == 0) {
        cursor_ = p;
        return;
      }
    }
  }
  cursor_ = old_cursor ? std::min(*old_cursor, visible_.size() - 1) : 0;
}

void Dataset::load_current() {
  if (!cursor_) {
    current_.clear();
    return;
  }
  const TableStore& store = db_->store(table_);
  current_ = store.rows[visible_[*cursor_]];
  recalc(*db_, store.def, current_);
}

void Dataset::recalc_buffer() {
  if (buffer_) recalc(*db_, def(), *buffer_);
}

void Dataset::notify_details() {
  auto details = details_;
  for (Dataset* d : details) {
    if (d->active()) on_master_move(*d->link_, *this, *d);
  }
}

void Dataset::open() {
  if (active()) return;
  state_ = DatasetState::Browse;
  cursor_.reset();
  rebuild_visible(std::nullopt);
  load_current();
  notify_details();
}

void Dataset::close() {
  if (!active()) return;
  if (editing()) {
    throw Error(ErrorCode::InvalidState, "cannot close " + table_ + " while editing");
  }
  state_ = DatasetState::Inactive;
  visible_.clear();
  cursor_.reset();
  current_.clear();
  notify_details();
}

void Dataset::navigate(NavAction action) {
  require_active();
  if (editing()) post();
  sync();
  if (!cursor_) return;
  auto before = current_key();
  std::size_t last = visible_.size() - 1;
  switch (action) {
    case NavAction::First: cursor_ = 0; break;
    case NavAction::Prior: cursor_ = *cursor_ == 0 ? 0 : *cursor_ - 1; break;
    case NavAction::Next: cursor_ = std::min(*cursor_ + 1, last); break;
    case NavAction::Last: cursor_ = last; break;
  }
  load_current();
  if (!same_key(before, current_key())) notify_details();
}

bool Dataset::locate(const Key& key) {
  require_active();
  if (editing()) post();
  sync();
  const TableStore& store = db_->store(table_);
  for (std::size_t p = 0; p < visible_.size(); ++p) {
    if (compare_keys(store.def.key_of(store.rows[visible_[p]]), key) == 0) {
      auto before = current_key();
      cursor_ = p;
      load_current();
      if (!same_key(before, current_key())) notify_details();
      return true;
    }
  }
  return false;
}

void Dataset::refresh() {
  if (!active()) return;
  auto before = current_key();
  rebuild_visible(before);
  load_current();
  if (!same_key(before, current_key())) notify_details();
}

void Dataset::begin_edit() {
  require_active();
  if (editing()) throw Error(ErrorCode::AlreadyEditing, table_ + " is already editing");
  sync();
  if (!cursor_) throw Error(ErrorCode::EmptyDataset, table_ + " has no current row");
  buffer_ = current_;
  edit_key_ = current_key();
  stamped_.assign(def().fields.size(), false);
  state_ = DatasetState::Edit;
}

void Dataset::begin_insert() {
  require_active();
  if (editing()) throw Error(ErrorCode::AlreadyEditing, table_ + " is already editing");
  sync();
  const TableDef& d = def();
  Row row = d.empty_row();
  std::vector<bool> stamped(d.fields.size(), false);
  if (master_ && link_) {
    stamp_link_fields(*link_, d, row, master_->def(), master_->current());
    for (const auto& pair : link_->field_pairs) stamped[d.field_index(pair.detail_field)] = true;
  }
  buffer_ = std::move(row);
  stamped_ = std::move(stamped);
  edit_key_.reset();
  state_ = DatasetState::Insert;
  recalc_buffer();
}

void Dataset::set_field(std::string_view field, Value value) {
  require_editing();
  const TableDef& d = def();
  auto idx = d.field_index(field);
  const FieldDef& f = d.fields[idx];
  if (f.kind != FieldKind::Data) {
    throw Error(ErrorCode::ReadOnlyField, table_ + "." + f.name + " is a " +
                                              std::string(to_string(f.kind)) + " field");
  }
  if (idx < stamped_.size() && stamped_[idx]) {
    throw Error(ErrorCode::ReadOnlyField, table_ + "." + f.name + " is set by the master link");
  }
  if (auto s = std::get_if<std::string>(&value); s && s->empty()) value = Null{};
  if (f.value_type == ValueType::Decimal) {
    if (auto i = std::get_if<std::int64_t>(&value)) {
      auto d = Decimal::from_integer(*i);
      if (!d) throw Error(ErrorCode::TypeError, "value out of range for " + f.name);
      value = *d;
    }
  }
  if (!matches_type(value, f.value_type)) {
    throw Error(ErrorCode::TypeError, table_ + "." + f.name + " expects " +
                                          std::string(to_string(f.value_type)));
  }
  (*buffer_)[idx] = std::move(value);
  recalc_buffer();
}

void Dataset::set_field_text(std::string_view field, std::string_view text) {
  require_editing();
  const FieldDef& f = def().field(field);
  if (f.kind != FieldKind::Data) {
    throw Error(ErrorCode::ReadOnlyField, table_ + "." + f.name + " is a " +
                                              std::string(to_string(f.kind)) + " field");
  }
  set_field(field, parse_value(text, f.value_type));
}

std::vector<FieldError> Dataset::check_restrict(const Row& row, const Row* replacement) const {
  std::vector<FieldError> errors;
  const TableDef& d = def();
  for (const auto& fk : foreign_keys(db_->manifest())) {
    if (fk.parent_table != table_) continue;
    if (replacement) {
      bool changed = false;
      for (const auto& f : fk.parent_fields) {
        auto i = d.field_index(f);
        changed = changed || compare_values(row[i], (*replacement)[i]) != 0;
      }
      if (!changed) continue;
    }
    if (auto n = count_referencing_rows(*db_, fk, row); n > 0) {
      errors.push_back({join_names(fk.parent_fields), std::string(field_code::kRestrict),
                        std::to_string(n) + " row(s) in " + fk.child_table + " reference " +
                            key_to_string(d.key_of(row))});
    }
  }
  return errors;
}

std::vector<FieldError> Dataset::check_post(const Row& row) const {
  std::vector<FieldError> errors;
  const TableDef& d = def();
  auto key_idx = d.key_indices();

  for (std::size_t i = 0; i < d.fields.size(); ++i) {
    const FieldDef& f = d.fields[i];
    if (!f.persisted()) continue;
    bool is_key = std::find(key_idx.begin(), key_idx.end(), i) != key_idx.end();
    if ((f.required || is_key) && is_null(row[i])) {
      errors.push_back({f.name, std::string(field_code::kRequired), f.name + " is required"});
    }
  }

  Key key = d.key_of(row);
  bool key_complete = std::none_of(key.begin(), key.end(), [](const Value& v) { return is_null(v); });
  if (key_complete) {
    bool own_key = state_ == DatasetState::Edit && edit_key_ && compare_keys(*edit_key_, key) == 0;
    if (!own_key && db_->store(table_).find(key)) {
      errors.push_back({join_names(d.primary_key), std::string(field_code::kDuplicateKey),
                        "key " + key_to_string(key) + " already exists in " + table_});
    }
  }

  for (const auto& fk : foreign_keys(db_->manifest())) {
    if (fk.child_table != table_ || fk_satisfied(*db_, fk, row)) continue;
    std::string shown;
    for (const auto& f : fk.child_fields) {
      if (!shown.empty()) shown += ';';
      shown += to_text(row[d.field_index(f)]);
    }
    errors.push_back({fk.child_label(), std::string(field_code::kFkViolation),
                      shown + " is not a value of " + fk.parent_label()});
  }

  if (state_ == DatasetState::Edit && edit_key_) {
    const TableStore& store = db_->store(table_);
    if (auto pos = store.find(*edit_key_)) {
      auto restrict_errors = check_restrict(store.rows[*pos], &row);
      errors.insert(errors.end(), restrict_errors.begin(), restrict_errors.end());
    }
  }
  return errors;
}

void Dataset::post() {
  require_editing();
  sync();
  const TableDef& d = def();
  Row row = *buffer_;
  for (std::size_t i = 0; i < d.fields.size(); ++i) {
    if (!d.fields[i].persisted()) row[i] = Null{};
  }

  auto errors = check_post(row);
  if (!errors.empty()) throw ValidationFailed(std::move(errors));

  TableStore& store = db_->mutable_store(table_);
  if (state_ == DatasetState::Insert) {
    store.rows.push_back(row);
    try {
      db_->persist(table_);
    } catch (...) {
      store.rows.pop_back();
      throw;
    }
  } else {
    auto pos = store.find(*edit_key_);
    if (!pos) {
      throw Error(ErrorCode::NotFound,
                  "row " + key_to_string(*edit_key_) + " of " + table_ + " no longer exists");
    }
    Row old = std::exchange(store.rows[*pos], row);
    try {
      db_->persist(table_);
    } catch (...) {
      store.rows[*pos] = std::move(old);
      throw;
    }
  }
  db_->touch(table_);

  state_ = DatasetState::Browse;
  buffer_.reset();
  edit_key_.reset();
  stamped_.clear();
  rebuild_visible(d.key_of(row));
  load_current();
  notify_details();
}

void Dataset::cancel() {
  require_editing();
  state_ = DatasetState::Browse;
  buffer_.reset();
  edit_key_.reset();
  stamped_.clear();
  auto before = current_key();
  rebuild_visible(before);
  load_current();
  if (!same_key(before, current_key())) notify_details();
}

void Dataset::remove() {
  require_active();
  if (editing()) {
    throw Error(ErrorCode::InvalidState, "cannot delete from " + table_ + " while editing");
  }
  sync();
  if (!cursor_) throw Error(ErrorCode::EmptyDataset, table_ + " has no current row");

  TableStore& store = db_->mutable_store(table_);
  std::size_t pos = visible_[*cursor_];
  auto errors = check_restrict(store.rows[pos], nullptr);
  if (!errors.empty()) throw ValidationFailed(std::move(errors));

  Row removed = std::move(store.rows[pos]);
  store.rows.erase(store.rows.begin() + static_cast<std::ptrdiff_t>(pos));
  try {
    db_->persist(table_);
  } catch (...) {
    store.rows.insert(store.rows.begin() + static_cast<std::ptrdiff_t>(pos), std::move(removed));
    throw;
  }
  db_->touch(table_);
  rebuild_visible(std::nullopt);
  load_current();
  notify_details();
}

void Dataset::link_to_master(Dataset& master) {
  const MasterLink* link = db_->manifest().link_for_detail(table_);
  if (!link || link->master_table != master.table()) {
    throw Error(ErrorCode::ManifestError,
                "no master link from " + master.table() + " to " + table_);
  }
  unlink_master();
  master_ = &master;
  link_ = link;
  master.details_.push_back(this);
  if (active()) master_moved();
}

void Dataset::unlink_master() {
  if (!master_) return;
  auto& siblings = master_->details_;
  siblings.erase(std::remove(siblings.begin(), siblings.end(), this), siblings.end());
  master_ = nullptr;
  link_ = nullptr;
  if (active() && !editing()) refresh();
}

bool Dataset::is_stamped(std::string_view field) const {
  auto idx = def().find_field(field);
  return idx && *idx < stamped_.size() && stamped_[*idx];
}

void Dataset::master_moved() {
  if (!active()) return;
  if (editing()) post();
  cursor_.reset();
  rebuild_visible(std::nullopt);
  load_current();
  notify_details();
}

}  // namespace lookupdb
