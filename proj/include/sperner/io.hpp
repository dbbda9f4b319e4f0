#pragma once

#include "sperner/bounds.hpp"
#include "sperner/system.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace sperner {

/// Malformed input. `where` is a JSON pointer ("/partitions/2/0/1") or a
/// "line L, column C" location for syntax errors.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string where, const std::string& msg)
      : std::runtime_error(where + ": " + msg), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// {"n": .., "k": .., "partitions": [[[..], ..], ..]}, one partition per line.
std::string system_to_json(const PartitionSystem& sys);

/// Parses and structurally checks a system file (shape only: counts,
/// element range, sorted classes). Throws ParseError.
PartitionSystem system_from_json(const std::string& text);

PartitionSystem read_system_file(const std::string& path);
void write_system_file(const std::string& path, const PartitionSystem& sys);

struct TableRow {
  int n = 0;
  int k = 0;
  BigNat lower;
  std::string lower_source;
  BigNat upper;
  BigNat upper_gap;
  BigNat nlb;
  BigNat mms_floor;
};

/// One row per (k, n), k in [k_min, k_max], n in [2k+2, n_max], sorted by (k, n).
std::vector<TableRow> bounds_table(int k_min, int k_max, int n_max);

struct FigureRow {
  int n = 0;
  BigNat nlb;
  BigNat best_lower;
  BigNat best_upper;
  BigNat mms_floor;
};

/// Rows for n in [2k+2, n_max].
std::vector<FigureRow> figure_rows(int k, int n_max);

/// RFC 4180 field: quoted when it holds a comma, quote or line break.
std::string csv_field(const std::string& s);

extern const char* const kTableHeader;
extern const char* const kFigureHeader;

void write_table_csv(std::ostream& out, const std::vector<TableRow>& rows);
void write_figure_csv(std::ostream& out, const std::vector<FigureRow>& rows);

/// Log-scale line chart of the figure rows as a standalone SVG document.
std::string figure_svg(int k, const std::vector<FigureRow>& rows);

/// Writes `content` to `path`; throws std::runtime_error on failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace sperner
