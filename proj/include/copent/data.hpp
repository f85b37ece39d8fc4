#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <iterator>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "copent/error.hpp"

namespace copent {

/// Non-owning row-major view of `rows` points in `dim` dimensions.
struct PointsView {
  std::span<const double> values;
  std::size_t rows = 0;
  std::size_t dim = 0;

  double operator()(std::size_t t, std::size_t i) const { return values[t * dim + i]; }
  std::span<const double> row(std::size_t t) const { return values.subspan(t * dim, dim); }
};

/// T joint observations of N real variables, stored row-major.
///
/// The constructor enforces the shape (T >= 2, N >= 1). Finiteness is
/// reported by validate() and enforced by the estimators, so that
/// programmatically built matrices can still be inspected.
class SampleMatrix {
 public:
  SampleMatrix(std::size_t rows, std::size_t cols, std::vector<double> values,
               std::vector<std::string> names = {})
      : rows_(rows), cols_(cols), values_(std::move(values)), names_(std::move(names)) {
    if (rows_ < 2) throw DataError("sample matrix needs at least 2 rows, got " + std::to_string(rows_));
    if (cols_ < 1) throw DataError("sample matrix needs at least 1 column");
    if (values_.size() != rows_ * cols_) {
      throw DataError("sample matrix size mismatch: " + std::to_string(values_.size()) +
                      " values for " + std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    if (!names_.empty() && names_.size() != cols_) {
      throw DataError("column name count does not match column count");
    }
  }

  /// Builds from a list of equally long columns.
  static SampleMatrix from_columns(const std::vector<std::vector<double>>& columns) {
    if (columns.empty()) throw DataError("sample matrix needs at least 1 column");
    const std::size_t rows = columns.front().size();
    std::vector<double> values(rows * columns.size());
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (columns[i].size() != rows) throw DataError("columns differ in length");
      for (std::size_t t = 0; t < rows; ++t) values[t * columns.size() + i] = columns[i][t];
    }
    return SampleMatrix(rows, columns.size(), std::move(values));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double operator()(std::size_t t, std::size_t i) const { return values_[t * cols_ + i]; }
  double& operator()(std::size_t t, std::size_t i) { return values_[t * cols_ + i]; }

  std::span<const double> row(std::size_t t) const {
    return std::span<const double>(values_).subspan(t * cols_, cols_);
  }

  std::vector<double> column(std::size_t i) const {
    std::vector<double> out(rows_);
    for (std::size_t t = 0; t < rows_; ++t) out[t] = (*this)(t, i);
    return out;
  }

  std::span<const double> values() const noexcept { return values_; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  PointsView view() const { return {values_, rows_, cols_}; }

  /// Copy of selected columns, in the given order (repeats allowed).
  SampleMatrix select(std::span<const std::size_t> columns) const {
    if (columns.empty()) throw DataError("empty column selection");
    std::vector<double> out;
    out.reserve(rows_ * columns.size());
    std::vector<std::string> names;
    for (auto c : columns) {
      if (c >= cols_) {
        throw DataError("column index " + std::to_string(c) + " out of range (N=" +
                        std::to_string(cols_) + ")");
      }
      if (!names_.empty()) names.push_back(names_[c]);
    }
    for (std::size_t t = 0; t < rows_; ++t)
      for (auto c : columns) out.push_back((*this)(t, c));
    return SampleMatrix(rows_, columns.size(), std::move(out), std::move(names));
  }

  friend bool operator==(const SampleMatrix& a, const SampleMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.values_ == b.values_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
  std::vector<std::string> names_;
};

struct ColumnSpec {
  std::size_t index = 0;
  std::optional<std::string> name;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    cells.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

inline std::optional<double> parse_number(std::string_view cell) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  if (cell.empty()) return std::nullopt;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

}  // namespace detail

/// Parses comma-delimited numeric text. Blank lines and lines whose first
/// non-space character is '#' are skipped. With `has_header`, the first
/// remaining line supplies column names. `columns`, when given, selects and
/// orders the output columns.
inline SampleMatrix parse_csv(std::string_view text, bool has_header,
                              const std::optional<std::vector<ColumnSpec>>& columns = std::nullopt) {
  if (columns && columns->empty()) throw DataError("empty column selection");

  std::vector<std::string> header;
  std::vector<double> values;
  std::size_t width = 0;
  std::size_t data_rows = 0;
  bool header_pending = has_header;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = detail::trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    auto cells = detail::split_commas(line);
    if (header_pending) {
      header_pending = false;
      width = cells.size();
      for (auto c : cells) header.emplace_back(c);
      continue;
    }
    if (width == 0) width = cells.size();
    if (cells.size() != width) {
      throw ParseError("ragged row " + std::to_string(line_no) + ": expected " +
                           std::to_string(width) + " columns, found " + std::to_string(cells.size()),
                       line_no, cells.size());
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      auto v = detail::parse_number(cells[c]);
      if (!v) {
        throw ParseError("non-numeric cell '" + std::string(cells[c]) + "' at row " +
                             std::to_string(line_no) + ", column " + std::to_string(c + 1),
                         line_no, c + 1);
      }
      values.push_back(*v);
    }
    ++data_rows;
  }

  if (data_rows < 2) {
    throw DataError("need at least 2 data rows, found " + std::to_string(data_rows));
  }

  SampleMatrix all(data_rows, width, std::move(values), std::move(header));
  if (!columns) return all;

  std::vector<std::size_t> idx;
  for (const auto& spec : *columns) idx.push_back(spec.index);
  return all.select(idx);
}

inline SampleMatrix parse_csv(std::istream& in, bool has_header,
                              const std::optional<std::vector<ColumnSpec>>& columns = std::nullopt) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_csv(text, has_header, columns);
}

/// Shortest decimal representation that parses back to the same double.
inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

/// Writes the matrix as CSV; a header is emitted when the matrix has names.
inline std::string to_csv(const SampleMatrix& m) {
  std::string out;
  if (!m.names().empty()) {
    for (std::size_t i = 0; i < m.cols(); ++i) {
      if (i) out += ',';
      out += m.names()[i];
    }
    out += '\n';
  }
  for (std::size_t t = 0; t < m.rows(); ++t) {
    for (std::size_t i = 0; i < m.cols(); ++i) {
      if (i) out += ',';
      out += format_double(m(t, i));
    }
    out += '\n';
  }
  return out;
}

struct Finding {
  enum class Kind { non_finite, constant_column, duplicate_rows };
  Kind kind;
  std::vector<std::size_t> indices;  // rows or columns, 0-based
  std::string message;
};

/// Data-quality findings. An empty result means the matrix is clean.
inline std::vector<Finding> validate(const SampleMatrix& m) {
  std::vector<Finding> findings;

  std::vector<std::size_t> bad_rows;
  for (std::size_t t = 0; t < m.rows(); ++t) {
    auto r = m.row(t);
    if (!std::all_of(r.begin(), r.end(), [](double v) { return std::isfinite(v); })) {
      bad_rows.push_back(t);
    }
  }
  if (!bad_rows.empty()) {
    findings.push_back({Finding::Kind::non_finite, bad_rows,
                        std::to_string(bad_rows.size()) + " row(s) contain non-finite values"});
  }

  for (std::size_t i = 0; i < m.cols(); ++i) {
    bool constant = true;
    for (std::size_t t = 1; t < m.rows() && constant; ++t) constant = m(t, i) == m(0, i);
    if (constant) {
      findings.push_back({Finding::Kind::constant_column, {i},
                          "column " + std::to_string(i) + " is constant"});
    }
  }

  std::vector<std::size_t> order;
  for (std::size_t t = 0; t < m.rows(); ++t)
    if (!std::binary_search(bad_rows.begin(), bad_rows.end(), t)) order.push_back(t);
  auto row_less = [&](std::size_t a, std::size_t b) {
    auto ra = m.row(a), rb = m.row(b);
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
  };
  auto row_equal = [&](std::size_t a, std::size_t b) {
    auto ra = m.row(a), rb = m.row(b);
    return std::equal(ra.begin(), ra.end(), rb.begin());
  };
  std::stable_sort(order.begin(), order.end(), row_less);
  for (std::size_t g = 0; g < order.size();) {
    std::size_t e = g + 1;
    while (e < order.size() && row_equal(order[g], order[e])) ++e;
    if (e - g > 1) {
      std::vector<std::size_t> group(order.begin() + g, order.begin() + e);
      std::sort(group.begin(), group.end());
      std::string msg = "duplicate rows {";
      for (std::size_t j = 0; j < group.size(); ++j) msg += (j ? "," : "") + std::to_string(group[j]);
      findings.push_back({Finding::Kind::duplicate_rows, std::move(group), msg + "}"});
    }
    g = e;
  }
  return findings;
}

}  // namespace copent
