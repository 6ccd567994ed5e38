#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "divforge/common.hpp"
#include "divforge/criteria.hpp"

namespace divforge::io {

// FNV-1a, 64-bit.
uint64_t fnv1a64(std::string_view data);

// Resolves the bundled data directory: the DIVFORGE_DATA_DIR environment
// variable when set, otherwise the directory baked in at build time.
std::filesystem::path data_dir();

// Reads a bundled data file, verifies the trailing "# fnv1a64 <hex>" line
// against the preceding content, and returns the non-comment, non-empty
// lines.  Throws on a missing file, empty content, or checksum mismatch.
std::vector<std::string> read_checked_lines(const std::filesystem::path& file);

// One row of the small-class-number reference table.
struct HTableRow {
  Int q = 0;
  int g = 0;
  Int h = 0;
  std::string equation;
  std::vector<Int> B;           // B_1.. as far as recorded
  std::string curve_id;         // bundled curve name, may be empty
};

// Loaders for the two bundled reference tables.
std::vector<criteria::DefectRow> load_defect_rows();
std::vector<criteria::DefectRow> load_defect_rows(
    const std::filesystem::path& file);
std::vector<HTableRow> load_h_rows();
std::vector<HTableRow> load_h_rows(const std::filesystem::path& file);

// Writes content to path via a sibling temp file and rename, so readers
// never observe a half-written file.
void atomic_write(const std::filesystem::path& path, std::string_view content);

// Splits one CSV record on commas (no quoting; the bundled data and all
// emitted CSV stay comma-free per field).
std::vector<std::string> split_csv(const std::string& line);

}  // namespace divforge::io
