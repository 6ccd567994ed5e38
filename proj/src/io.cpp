#include "divforge/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace divforge::io {
namespace {

constexpr std::string_view kChecksumPrefix = "# fnv1a64 ";

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  require(in.good(), "cannot open data file: " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

Int parse_int(const std::string& s) {
  require(!s.empty(), "empty numeric field");
  return Int(s);
}

}  // namespace

uint64_t fnv1a64(std::string_view data) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("DIVFORGE_DATA_DIR"))
    return std::filesystem::path(env);
#ifdef DIVFORGE_DATA_DIR
  return std::filesystem::path(DIVFORGE_DATA_DIR);
#else
  return std::filesystem::path("data");
#endif
}

std::vector<std::string> read_checked_lines(
    const std::filesystem::path& file) {
  std::string content = read_file(file);
  require(!content.empty(), "data file is empty: " + file.string());

  // Separate the checksum line (if any) from the content it covers.
  std::string body;
  std::string recorded;
  std::vector<std::string> lines;
  size_t pos = 0;
  while (pos < content.size()) {
    size_t nl = content.find('\n', pos);
    size_t end = nl == std::string::npos ? content.size() : nl;
    std::string line = content.substr(pos, end - pos);
    pos = nl == std::string::npos ? content.size() : nl + 1;
    if (line.rfind(kChecksumPrefix, 0) == 0) {
      recorded = line.substr(kChecksumPrefix.size());
      continue;
    }
    body += line;
    body += '\n';
    if (!line.empty() && line[0] != '#') lines.push_back(std::move(line));
  }
  require(!recorded.empty(),
          "data file has no checksum line: " + file.string());
  char actual[17];
  std::snprintf(actual, sizeof actual, "%016llx",
                static_cast<unsigned long long>(fnv1a64(body)));
  require(recorded == actual, "checksum mismatch in " + file.string());
  require(!lines.empty(), "data file has no rows: " + file.string());
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (true) {
    size_t comma = line.find(',', pos);
    if (comma == std::string::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
}

std::vector<criteria::DefectRow> load_defect_rows() {
  return load_defect_rows(data_dir() / "defect_tables.csv");
}

std::vector<criteria::DefectRow> load_defect_rows(
    const std::filesystem::path& file) {
  std::vector<criteria::DefectRow> rows;
  bool header = true;
  for (const std::string& line : read_checked_lines(file)) {
    if (header) {
      require(line == "q,g,k,case,n,expected",
              "unexpected defect table header: " + line);
      header = false;
      continue;
    }
    auto f = split_csv(line);
    require(f.size() == 6, "malformed defect row: " + line);
    criteria::DefectRow row;
    row.q = parse_int(f[0]);
    row.g = int(parse_int(f[1]));
    row.k = int(parse_int(f[2]));
    require(f[3] == "A" || f[3] == "B", "unknown case tag: " + f[3]);
    row.kase = f[3] == "A" ? criteria::DefectCase::A : criteria::DefectCase::B;
    if (row.kase == criteria::DefectCase::B) row.n = parse_int(f[4]);
    else require(f[4].empty(), "case A rows carry no norm parameter");
    require(f[5] == "True" || f[5] == "False", "unknown verdict: " + f[5]);
    row.expected = f[5] == "True";
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<HTableRow> load_h_rows() {
  return load_h_rows(data_dir() / "h_small_tables.csv");
}

std::vector<HTableRow> load_h_rows(const std::filesystem::path& file) {
  std::vector<HTableRow> rows;
  bool header = true;
  for (const std::string& line : read_checked_lines(file)) {
    if (header) {
      require(line == "q,g,h,equation,B1,B2,B3,B4,curve_id",
              "unexpected h table header: " + line);
      header = false;
      continue;
    }
    auto f = split_csv(line);
    require(f.size() == 9, "malformed h table row: " + line);
    HTableRow row;
    row.q = parse_int(f[0]);
    row.g = int(parse_int(f[1]));
    row.h = parse_int(f[2]);
    row.equation = f[3];
    for (size_t i = 4; i < 8; ++i)
      if (!f[i].empty()) row.B.push_back(parse_int(f[i]));
    row.curve_id = f[8];
    rows.push_back(std::move(row));
  }
  return rows;
}

void atomic_write(const std::filesystem::path& path,
                  std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(out.good(), "cannot write to " + tmp.string());
    out.write(content.data(), std::streamsize(content.size()));
    out.flush();
    check(out.good(), "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace divforge::io
