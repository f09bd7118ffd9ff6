#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace lookupdb {

inline constexpr const char* kSeedManifestFile = "manifest.yaml";

// The order-entry demo database: manifest plus six CSV tables, as
// (file name, content) pairs in a fixed order.
std::vector<std::pair<std::string, std::string>> seed_files();

// Writes seed_files() into `out_dir`, creating it if needed. Output is
// byte-identical across runs. Throws Error(IoError).
void write_seed(const std::filesystem::path& out_dir);

}  // namespace lookupdb
