#pragma once

#include "rumorlab/analytics.hpp"
#include "rumorlab/harness.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rumorlab {

/// Shortest decimal text that parses back to exactly `x`.
std::string format_double(double x);
double parse_double(const std::string& text);

/// One line of the report table.
struct ReportRow {
  std::string protocol;
  std::string estimator;
  std::string adversary;
  std::optional<int> d;
  double theta = 0.0;
  /// "t=<time>", "K=<count>", "t=<time>;K=<count>" or "inf".
  std::string t_or_K;
  std::optional<double> p;
  std::size_t trials = 0;
  std::size_t hits = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::optional<double> strict_win_rate;
  std::optional<double> theory;
  std::uint64_t seed = 0;

  bool operator==(const ReportRow&) const = default;
};

ReportRow to_row(const DetectionReport& report);

struct TheoryRow {
  std::string formula_id;
  std::optional<double> d;
  std::optional<double> theta;
  std::optional<double> t;
  std::optional<double> p;
  double value = 0.0;

  bool operator==(const TheoryRow&) const = default;
};

TheoryRow to_row(const TheoryValue& value);

/// Long-format row for plotting one protocol/estimator curve over an axis.
struct CompareRow {
  std::string protocol;
  std::string estimator;
  std::string axis;
  double axis_value = 0.0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::optional<double> strict_win_rate;
  std::optional<double> theory;

  bool operator==(const CompareRow&) const = default;
};

/// Tables are written as CSV whose first line is "# " followed by
/// `config_json` (a single-line JSON object), or as one JSON document
/// {"config": ..., "rows": [...]} with the same fields per row.
void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows,
                      const std::string& config_json);
void write_report_json(std::ostream& out, const std::vector<ReportRow>& rows,
                       const std::string& config_json);
void write_theory_csv(std::ostream& out, const std::vector<TheoryRow>& rows,
                      const std::string& config_json);
void write_theory_json(std::ostream& out, const std::vector<TheoryRow>& rows,
                       const std::string& config_json);
void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows,
                       const std::string& config_json);
void write_compare_json(std::ostream& out, const std::vector<CompareRow>& rows,
                        const std::string& config_json);

template <class Row>
struct Table {
  std::string config_json;
  std::vector<Row> rows;
};

/// Parsers for the formats above; throw std::runtime_error on malformed input.
Table<ReportRow> read_report_csv(std::istream& in);
Table<ReportRow> read_report_json(std::istream& in);
Table<TheoryRow> read_theory_csv(std::istream& in);
Table<CompareRow> read_compare_csv(std::istream& in);

}  // namespace rumorlab
