#include "cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace stgc::cli {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string{} : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& text, const std::string& name, long line) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    throw Error(ErrorCode::ParseError, name + ":" + std::to_string(line) + ": not a finite number: '" + text + "'");
  }
  return v;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;
};

Table parse_table(std::istream& in, const std::string& name, std::size_t min_columns) {
  Table table;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::vector<std::string> fields = split(line);
    if (table.header.empty()) {
      if (fields.size() < min_columns) {
        throw Error(ErrorCode::ParseError, name + ":" + std::to_string(lineno) + ": expected at least " +
                                               std::to_string(min_columns) + " columns in header");
      }
      table.header = fields;
      table.columns.resize(fields.size());
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw Error(ErrorCode::ParseError, name + ":" + std::to_string(lineno) + ": expected " +
                                             std::to_string(table.header.size()) + " fields, found " +
                                             std::to_string(fields.size()));
    }
    for (std::size_t i = 0; i < fields.size(); ++i) table.columns[i].push_back(parse_number(fields[i], name, lineno));
  }
  if (table.header.empty()) throw Error(ErrorCode::ParseError, name + ": empty file");
  return table;
}

double dt_from(const std::vector<double>& t) {
  if (t.size() < 2) return 1.0;
  const double dt = t[1] - t[0];
  return dt > 0.0 ? dt : 1.0;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

TimeSeriesPair parse_pair_csv(std::istream& in, const std::string& name) {
  Table table = parse_table(in, name, 3);
  if (table.header.size() != 3) {
    throw Error(ErrorCode::ParseError, name + ":1: pair files have exactly three columns t,x,y");
  }
  const double dt = dt_from(table.columns[0]);
  return TimeSeriesPair(std::move(table.columns[1]), std::move(table.columns[2]), dt, table.header[1],
                        table.header[2]);
}

TimeSeriesPair read_pair_csv(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  return parse_pair_csv(in, path.string());
}

void write_pair_csv(const std::filesystem::path& path, const TimeSeriesPair& pair) {
  std::ofstream out = open_out(path);
  out << "t," << pair.label_x() << ',' << pair.label_y() << '\n';
  for (std::size_t i = 0; i < pair.size(); ++i) {
    out << format_double(static_cast<double>(i) * pair.dt()) << ',' << format_double(pair.x()[i]) << ','
        << format_double(pair.y()[i]) << '\n';
  }
  if (!out) throw Error(ErrorCode::IoError, "failed writing '" + path.string() + "'");
}

RoiMatrix parse_roi_csv(std::istream& in, const std::string& name) {
  Table table = parse_table(in, name, 2);
  std::vector<std::string> roi;
  std::vector<std::string> voxel;
  for (std::size_t i = 1; i < table.header.size(); ++i) {
    const std::string& h = table.header[i];
    const auto colon = h.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == h.size()) {
      throw Error(ErrorCode::ParseError, name + ":1: column '" + h + "' is not of the form ROI:voxel");
    }
    roi.push_back(h.substr(0, colon));
    voxel.push_back(h.substr(colon + 1));
  }
  const double dt = dt_from(table.columns[0]);
  std::vector<std::vector<double>> columns(std::make_move_iterator(table.columns.begin() + 1),
                                           std::make_move_iterator(table.columns.end()));
  return RoiMatrix(std::move(columns), std::move(roi), std::move(voxel), dt);
}

RoiMatrix read_roi_csv(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  return parse_roi_csv(in, path.string());
}

void write_roi_csv(const std::filesystem::path& path, const RoiMatrix& data) {
  std::ofstream out = open_out(path);
  out << 't';
  for (std::size_t v = 0; v < data.num_voxels(); ++v) out << ',' << data.roi_of(v) << ':' << data.voxel_id(v);
  out << '\n';
  for (std::size_t i = 0; i < data.num_samples(); ++i) {
    out << format_double(static_cast<double>(i) * data.dt());
    for (std::size_t v = 0; v < data.num_voxels(); ++v) out << ',' << format_double(data.column(v)[i]);
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::IoError, "failed writing '" + path.string() + "'");
}

}  // namespace stgc::cli
