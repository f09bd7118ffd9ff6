#include "lookupdb/master_detail.hpp"

#include "lookupdb/error.hpp"

namespace lookupdb {

std::vector<std::size_t> detail_view(const MasterLink& link, const TableDef& master_def,
                                     const Row* master_row, const TableStore& detail) {
  std::vector<std::size_t> out;
  if (!master_row) return out;

  std::vector<std::size_t> detail_idx;
  std::vector<Value> wanted;
  for (const auto& pair : link.field_pairs) {
    const Value& v = (*master_row)[master_def.field_index(pair.master_field)];
    if (is_null(v)) return out;
    wanted.push_back(v);
    detail_idx.push_back(detail.def.field_index(pair.detail_field));
  }
  for (std::size_t r = 0; r < detail.rows.size(); ++r) {
    bool match = true;
    for (std::size_t k = 0; k < wanted.size() && match; ++k) {
      match = compare_values(detail.rows[r][detail_idx[k]], wanted[k]) == 0;
    }
    if (match) out.push_back(r);
  }
  return out;
}

std::vector<std::size_t> detail_view(const MasterLink& link, const Dataset& master,
                                     const TableStore& detail) {
  return detail_view(link, master.def(), master.current(), detail);
}

void on_master_move(const MasterLink& link, Dataset& master, Dataset& detail) {
  if (detail.master() != &master || detail.link() != &link) {
    throw Error(ErrorCode::InvalidState, detail.table() + " is not linked to " + master.table());
  }
  detail.master_moved();
}

void stamp_link_fields(const MasterLink& link, const TableDef& detail_def, Row& buffer,
                       const TableDef& master_def, const Row* master_row) {
  if (!master_row) {
    throw Error(ErrorCode::NoMasterRow,
                "cannot insert into " + detail_def.name + ": " + master_def.name +
                    " has no current row");
  }
  for (const auto& pair : link.field_pairs) {
    buffer[detail_def.field_index(pair.detail_field)] =
        (*master_row)[master_def.field_index(pair.master_field)];
  }
}

}  // namespace lookupdb
