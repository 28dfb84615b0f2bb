#include "rumorlab/report_io.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rumorlab {

using nlohmann::json;

std::string format_double(double x) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw std::runtime_error("cannot format number");
  return std::string(buf.data(), end);
}

double parse_double(const std::string& text) {
  double x = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || end != text.data() + text.size())
    throw std::runtime_error("not a number: '" + text + "'");
  return x;
}

namespace {

std::uint64_t parse_uint(const std::string& text) {
  std::uint64_t x = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || end != text.data() + text.size())
    throw std::runtime_error("not an unsigned integer: '" + text + "'");
  return x;
}

enum class Kind { text, number, integer };

using Cell = std::optional<std::string>;

template <class Row>
struct Column {
  const char* name;
  Kind kind;
  std::function<Cell(const Row&)> get;
  std::function<void(Row&, const Cell&)> set;
};

template <class Row>
Column<Row> text(const char* name, std::string Row::*field) {
  return {name, Kind::text, [field](const Row& r) -> Cell { return r.*field; },
          [field, name](Row& r, const Cell& c) {
            if (!c) throw std::runtime_error(std::string("missing ") + name);
            r.*field = *c;
          }};
}

template <class Row>
Column<Row> number(const char* name, double Row::*field) {
  return {name, Kind::number, [field](const Row& r) -> Cell { return format_double(r.*field); },
          [field, name](Row& r, const Cell& c) {
            if (!c) throw std::runtime_error(std::string("missing ") + name);
            r.*field = parse_double(*c);
          }};
}

template <class Row>
Column<Row> number(const char* name, std::optional<double> Row::*field) {
  return {name, Kind::number,
          [field](const Row& r) -> Cell {
            if (!(r.*field)) return std::nullopt;
            return format_double(*(r.*field));
          },
          [field](Row& r, const Cell& c) {
            r.*field = c ? std::optional<double>(parse_double(*c)) : std::nullopt;
          }};
}

template <class Row, class Int>
Column<Row> integer(const char* name, Int Row::*field) {
  return {name, Kind::integer,
          [field](const Row& r) -> Cell { return std::to_string(r.*field); },
          [field, name](Row& r, const Cell& c) {
            if (!c) throw std::runtime_error(std::string("missing ") + name);
            r.*field = static_cast<Int>(parse_uint(*c));
          }};
}

template <class Row>
Column<Row> integer(const char* name, std::optional<int> Row::*field) {
  return {name, Kind::integer,
          [field](const Row& r) -> Cell {
            if (!(r.*field)) return std::nullopt;
            return std::to_string(*(r.*field));
          },
          [field](Row& r, const Cell& c) {
            r.*field = c ? std::optional<int>(static_cast<int>(parse_uint(*c))) : std::nullopt;
          }};
}

const std::vector<Column<ReportRow>>& report_columns() {
  using R = ReportRow;
  static const std::vector<Column<R>> cols{
      text("protocol", &R::protocol),
      text("estimator", &R::estimator),
      text("adversary", &R::adversary),
      integer("d", &R::d),
      number("theta", &R::theta),
      text("t_or_K", &R::t_or_K),
      number("p", &R::p),
      integer("trials", &R::trials),
      integer("hits", &R::hits),
      number("p_hat", &R::p_hat),
      number("ci_low", &R::ci_low),
      number("ci_high", &R::ci_high),
      number("strict_win_rate", &R::strict_win_rate),
      number("theory", &R::theory),
      integer("seed", &R::seed),
  };
  return cols;
}

const std::vector<Column<TheoryRow>>& theory_columns() {
  using R = TheoryRow;
  static const std::vector<Column<R>> cols{
      text("formula_id", &R::formula_id), number("d", &R::d), number("theta", &R::theta),
      number("t", &R::t),                 number("p", &R::p), number("value", &R::value),
  };
  return cols;
}

const std::vector<Column<CompareRow>>& compare_columns() {
  using R = CompareRow;
  static const std::vector<Column<R>> cols{
      text("protocol", &R::protocol),
      text("estimator", &R::estimator),
      text("axis", &R::axis),
      number("axis_value", &R::axis_value),
      number("p_hat", &R::p_hat),
      number("ci_low", &R::ci_low),
      number("ci_high", &R::ci_high),
      number("strict_win_rate", &R::strict_win_rate),
      number("theory", &R::theory),
  };
  return cols;
}

std::string one_line_config(const std::string& config_json) {
  if (config_json.empty()) return "{}";
  if (config_json.find('\n') != std::string::npos)
    throw std::invalid_argument("config JSON must be a single line");
  return config_json;
}

template <class Row>
void write_csv(std::ostream& out, const std::vector<Column<Row>>& cols,
               const std::vector<Row>& rows, const std::string& config_json) {
  out << "# " << one_line_config(config_json) << '\n';
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i].name;
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      Cell c = cols[i].get(row);
      if (c && c->find_first_of(",\n\"") != std::string::npos)
        throw std::invalid_argument(std::string("CSV cell for ") + cols[i].name +
                                    " contains a separator");
      out << (i ? "," : "") << c.value_or("");
    }
    out << '\n';
  }
}

template <class Row>
void write_json(std::ostream& out, const std::vector<Column<Row>>& cols,
                const std::vector<Row>& rows, const std::string& config_json) {
  json doc;
  doc["config"] = json::parse(one_line_config(config_json));
  doc["rows"] = json::array();
  for (const auto& row : rows) {
    json obj = json::object();
    for (const auto& col : cols) {
      Cell c = col.get(row);
      if (!c) {
        obj[col.name] = nullptr;
      } else if (col.kind == Kind::text) {
        obj[col.name] = *c;
      } else if (col.kind == Kind::integer) {
        obj[col.name] = json::parse(*c);
      } else {
        double x = parse_double(*c);
        obj[col.name] = std::isfinite(x) ? json(x) : json(*c);
      }
    }
    doc["rows"].push_back(std::move(obj));
  }
  out << doc.dump(2) << '\n';
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <class Row>
Table<Row> read_csv(std::istream& in, const std::vector<Column<Row>>& cols) {
  Table<Row> table;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
    throw std::runtime_error("missing '# {config}' header line");
  table.config_json = line.substr(2);
  if (!std::getline(in, line)) throw std::runtime_error("missing column header");
  auto header = split(line);
  if (header.size() != cols.size()) throw std::runtime_error("unexpected column count");
  for (std::size_t i = 0; i < cols.size(); ++i)
    if (header[i] != cols[i].name)
      throw std::runtime_error("unexpected column '" + header[i] + "'");
  std::size_t line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != cols.size())
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected " +
                               std::to_string(cols.size()) + " cells");
    Row row{};
    for (std::size_t i = 0; i < cols.size(); ++i)
      cols[i].set(row, cells[i].empty() ? Cell{} : Cell{cells[i]});
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string horizon_label(const ExperimentSpec& spec) {
  std::string out;
  if (spec.adversary.t)
    out = "t=" + format_double(*spec.adversary.t);
  else if (spec.spread.horizon.max_time)
    out = "t=" + format_double(*spec.spread.horizon.max_time);
  if (spec.spread.horizon.max_infections)
    out += (out.empty() ? "K=" : ";K=") + std::to_string(*spec.spread.horizon.max_infections);
  return out.empty() ? "inf" : out;
}

}  // namespace

ReportRow to_row(const DetectionReport& report) {
  const auto& spec = report.spec;
  ReportRow row;
  row.protocol = std::string(to_string(spec.spread.protocol));
  row.estimator = std::string(to_string(spec.estimator));
  row.adversary = std::string(to_string(spec.adversary.model));
  if (spec.graph.model != GraphModel::edge_list) row.d = spec.graph.d;
  row.theta = spec.spread.theta;
  row.t_or_K = horizon_label(spec);
  if (spec.adversary.model == AdversaryModel::spy) row.p = spec.adversary.p;
  row.trials = report.trials;
  row.hits = report.hits;
  row.p_hat = report.p_hat;
  row.ci_low = report.ci_low;
  row.ci_high = report.ci_high;
  row.strict_win_rate = report.strict_win_rate;
  if (report.theory) row.theory = report.theory->value;
  row.seed = spec.master_seed;
  return row;
}

TheoryRow to_row(const TheoryValue& value) {
  return {std::string(to_string(value.formula)), value.params.d, value.params.theta,
          value.params.t, value.params.p, value.value};
}

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows,
                      const std::string& config_json) {
  write_csv(out, report_columns(), rows, config_json);
}
void write_report_json(std::ostream& out, const std::vector<ReportRow>& rows,
                       const std::string& config_json) {
  write_json(out, report_columns(), rows, config_json);
}
void write_theory_csv(std::ostream& out, const std::vector<TheoryRow>& rows,
                      const std::string& config_json) {
  write_csv(out, theory_columns(), rows, config_json);
}
void write_theory_json(std::ostream& out, const std::vector<TheoryRow>& rows,
                       const std::string& config_json) {
  write_json(out, theory_columns(), rows, config_json);
}
void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows,
                       const std::string& config_json) {
  write_csv(out, compare_columns(), rows, config_json);
}
void write_compare_json(std::ostream& out, const std::vector<CompareRow>& rows,
                        const std::string& config_json) {
  write_json(out, compare_columns(), rows, config_json);
}

Table<ReportRow> read_report_csv(std::istream& in) { return read_csv(in, report_columns()); }
Table<TheoryRow> read_theory_csv(std::istream& in) { return read_csv(in, theory_columns()); }
Table<CompareRow> read_compare_csv(std::istream& in) { return read_csv(in, compare_columns()); }

Table<ReportRow> read_report_json(std::istream& in) {
  try {
    json doc = json::parse(in);
    Table<ReportRow> table;
    table.config_json = doc.at("config").dump();
    for (const auto& obj : doc.at("rows")) {
      ReportRow row{};
      for (const auto& col : report_columns()) {
        const auto& v = obj.at(col.name);
        Cell c;
        if (v.is_string()) c = v.get<std::string>();
        else if (v.is_number_unsigned()) c = std::to_string(v.get<std::uint64_t>());
        else if (v.is_number_integer()) c = std::to_string(v.get<std::int64_t>());
        else if (v.is_number()) c = format_double(v.get<double>());
        else if (!v.is_null()) throw std::runtime_error(std::string("bad value for ") + col.name);
        col.set(row, c);
      }
      table.rows.push_back(std::move(row));
    }
    return table;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed JSON report: ") + e.what());
  }
}

}  // namespace rumorlab
