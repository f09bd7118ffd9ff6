#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lookupdb/database.hpp"
#include "lookupdb/error.hpp"

namespace lookupdb {

enum class DatasetState { Inactive, Browse, Edit, Insert };
enum class NavAction { First, Prior, Next, Last };

std::string_view to_string(DatasetState state);

// Cursor over one table with the Inactive/Browse/Edit/Insert edit machine.
//
// Legal transitions are Inactive<->Browse (open/close), Browse->Edit,
// Browse->Insert and Edit|Insert->Browse (post/cancel). Anything else
// throws. Moving the cursor while editing posts first; a failed post leaves
// the cursor, buffer and store untouched.
//
// A dataset linked to a master only sees detail rows of the master's
// current row, and re-cursors whenever the master moves.
class Dataset {
 public:
  Dataset(Database& db, std::string table);
  ~Dataset();

  Dataset(const Dataset&) = delete;
  Dataset& operator=(const Dataset&) = delete;

  const TableDef& def() const;
  const std::string& table() const { return table_; }
  Database& database() const { return *db_; }

  DatasetState state() const { return state_; }
  bool active() const { return state_ != DatasetState::Inactive; }
  bool editing() const { return state_ == DatasetState::Edit || state_ == DatasetState::Insert; }

  // Index into the visible row sequence; std::nullopt when it is empty.
  std::optional<std::size_t> cursor() const { return cursor_; }
  std::size_t record_count() const { return visible_.size(); }
  bool empty() const { return visible_.empty(); }

  // Current row with Lookup and Calculated fields evaluated.
  const Row* current() const { return cursor_ ? &current_ : nullptr; }
  std::optional<Key> current_key() const;
  // Throws Error(NotEditing).
  const Row& buffer() const;
  // Buffer value while editing, otherwise the current row's value.
  Value value(std::string_view field) const;
  // Visible rows in order, as store indices.
  const std::vector<std::size_t>& visible_rows() const { return visible_; }

  void open();
  void close();
  void navigate(NavAction action);
  // Moves to the visible row with `key`; false if there is none.
  bool locate(const Key& key);
  // Picks up changes committed through other datasets.
  void refresh();

  void begin_edit();
  void begin_insert();
  void set_field(std::string_view field, Value value);
  void set_field_text(std::string_view field, std::string_view text);
  void post();
  void cancel();
  void remove();

  // Attaches to `master` through the manifest link whose detail is this
  // table. Throws Error(ManifestError) when no such link exists.
  void link_to_master(Dataset& master);
  void unlink_master();
  const Dataset* master() const { return master_; }
  const MasterLink* link() const { return link_; }
  bool is_stamped(std::string_view field) const;

  // Re-cursors after the master moved. Posts first when editing.
  void master_moved();

 private:
  void require_active() const;
  void require_editing() const;
  void sync();
  void rebuild_visible(const std::optional<Key>& keep);
  void load_current();
  void recalc_buffer();
  void notify_details();
  std::vector<FieldError> check_post(const Row& row) const;
  std::vector<FieldError> check_restrict(const Row& row, const Row* replacement) const;

  Database* db_;
  std::string table_;
  DatasetState state_ = DatasetState::Inactive;
  std::vector<std::size_t> visible_;
  std::optional<std::size_t> cursor_;
  Row current_;
  std::optional<Row> buffer_;
  std::optional<Key> edit_key_;
  std::vector<bool> stamped_;
  std::uint64_t seen_version_ = 0;

  Dataset* master_ = nullptr;
  const MasterLink* link_ = nullptr;
  std::vector<Dataset*> details_;
};

}  // namespace lookupdb
