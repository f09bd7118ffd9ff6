#pragma once

#include <cstddef>
#include <vector>

#include "lookupdb/dataset.hpp"

namespace lookupdb {

// Store indices of detail rows whose link fields equal the master row's,
// in store order. Empty when `master_row` is null.
std::vector<std::size_t> detail_view(const MasterLink& link, const TableDef& master_def,
                                     const Row* master_row, const TableStore& detail);

std::vector<std::size_t> detail_view(const MasterLink& link, const Dataset& master,
                                     const TableStore& detail);

// Re-cursors `detail` to index 0 of its new view. Propagates a failed
// implicit post of the detail; the master has already moved by then.
void on_master_move(const MasterLink& link, Dataset& master, Dataset& detail);

// Copies the master's link values into a detail insert buffer. Throws
// Error(NoMasterRow) when the master has no current row.
void stamp_link_fields(const MasterLink& link, const TableDef& detail_def, Row& buffer,
                       const TableDef& master_def, const Row* master_row);

}  // namespace lookupdb
