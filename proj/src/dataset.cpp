#include "survbench/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace survbench {
namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (const char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_double(const std::string& s, std::size_t line_no) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw Error("csv: bad numeric field '" + s + "' at line " +
                std::to_string(line_no));
  }
  return v;
}

}  // namespace

bool Dataset::complete() const { return missing_count() == 0; }

std::size_t Dataset::missing_count() const {
  std::size_t c = 0;
  for (const auto m : mask) c += m != 0;
  return c;
}

void Dataset::poison_masked() {
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i] != 0) x.data[i] = kMaskedPoison;
  }
}

void Dataset::check() const {
  if (mask.size() != x.rows * x.cols) throw Error("dataset: mask shape mismatch");
  if (outcomes.size() != x.rows) throw Error("dataset: outcome count mismatch");
  if (!groups.empty() && groups.size() != x.rows) {
    throw Error("dataset: group label count mismatch");
  }
  for (const auto& o : outcomes) {
    if (!(o.time > 0.0)) throw Error("dataset: non-positive survival time");
  }
}

Dataset make_dataset(Matrix x, std::vector<std::uint8_t> mask,
                     std::vector<SurvivalOutcome> outcomes,
                     std::vector<int> groups) {
  Dataset ds{std::move(x), std::move(mask), std::move(outcomes), std::move(groups)};
  ds.check();
  ds.poison_masked();
  return ds;
}

Dataset dataset_split(const Dataset& ds, std::span<const std::size_t> indices) {
  const std::size_t d = ds.dim();
  Dataset out;
  out.x = Matrix(indices.size(), d);
  out.mask.resize(indices.size() * d);
  out.outcomes.reserve(indices.size());
  if (ds.has_groups()) out.groups.reserve(indices.size());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    const std::size_t i = indices[r];
    if (i >= ds.n()) {
      throw Error("dataset_split: row index " + std::to_string(i) +
                  " out of range (n=" + std::to_string(ds.n()) + ")");
    }
    std::copy_n(ds.x.row(i), d, out.x.row(r));
    std::copy_n(ds.mask.data() + i * d, d, out.mask.data() + r * d);
    out.outcomes.push_back(ds.outcomes[i]);
    if (ds.has_groups()) out.groups.push_back(ds.groups[i]);
  }
  return out;
}

Dataset dataset_concat(const Dataset& a, const Dataset& b) {
  if (a.dim() != b.dim()) throw Error("dataset_concat: column count mismatch");
  if (a.has_groups() != b.has_groups()) {
    throw Error("dataset_concat: group label presence mismatch");
  }
  Dataset out;
  out.x = Matrix(a.n() + b.n(), a.dim());
  std::copy(a.x.data.begin(), a.x.data.end(), out.x.data.begin());
  std::copy(b.x.data.begin(), b.x.data.end(), out.x.data.begin() + a.x.data.size());
  out.mask = a.mask;
  out.mask.insert(out.mask.end(), b.mask.begin(), b.mask.end());
  out.outcomes = a.outcomes;
  out.outcomes.insert(out.outcomes.end(), b.outcomes.begin(), b.outcomes.end());
  out.groups = a.groups;
  out.groups.insert(out.groups.end(), b.groups.begin(), b.groups.end());
  return out;
}

ColumnStats column_stats(const Dataset& ds, std::size_t j) {
  if (j >= ds.dim()) throw Error("column_stats: column out of range");
  double sum = 0.0;
  std::size_t n_obs = 0;
  for (std::size_t i = 0; i < ds.n(); ++i) {
    if (!ds.masked(i, j)) {
      sum += ds.x.at(i, j);
      ++n_obs;
    }
  }
  if (n_obs < 2) {
    throw Error("column_stats: degenerate column " + std::to_string(j) +
                " with " + std::to_string(n_obs) + " observed entries");
  }
  const double mean = sum / static_cast<double>(n_obs);
  double ss = 0.0;
  for (std::size_t i = 0; i < ds.n(); ++i) {
    if (!ds.masked(i, j)) {
      const double dv = ds.x.at(i, j) - mean;
      ss += dv * dv;
    }
  }
  return {mean, std::sqrt(ss / static_cast<double>(n_obs)), n_obs};
}

std::string to_csv(const Dataset& ds) {
  std::ostringstream out;
  const std::size_t d = ds.dim();
  for (std::size_t j = 0; j < d; ++j) out << 'x' << j << ',';
  out << "time,event";
  if (ds.has_groups()) out << ",group";
  out << '\n';
  for (std::size_t i = 0; i < ds.n(); ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (!ds.masked(i, j)) out << format_double(ds.x.at(i, j));
      out << ',';
    }
    out << format_double(ds.outcomes[i].time) << ','
        << (ds.outcomes[i].event ? '1' : '0');
    if (ds.has_groups()) out << ',' << ds.groups[i];
    out << '\n';
  }
  return out.str();
}

Dataset from_csv_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error("csv: empty input");
  const auto header = split_line(line);
  std::size_t d = 0;
  while (d < header.size() && header[d] == "x" + std::to_string(d)) ++d;
  if (d + 2 > header.size() || header[d] != "time" || header[d + 1] != "event") {
    throw Error("csv: malformed header, expected x0..x{d-1},time,event[,group]");
  }
  bool has_group = false;
  if (header.size() == d + 3) {
    if (header[d + 2] != "group") throw Error("csv: unexpected trailing column");
    has_group = true;
  } else if (header.size() != d + 2) {
    throw Error("csv: unexpected column count in header");
  }

  std::vector<double> values;
  std::vector<std::uint8_t> mask;
  std::vector<SurvivalOutcome> outcomes;
  std::vector<int> groups;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_line(line);
    if (fields.size() != header.size()) {
      throw Error("csv: wrong field count at line " + std::to_string(line_no));
    }
    for (std::size_t j = 0; j < d; ++j) {
      if (fields[j].empty()) {
        values.push_back(kMaskedPoison);
        mask.push_back(1);
      } else {
        values.push_back(parse_double(fields[j], line_no));
        mask.push_back(0);
      }
    }
    SurvivalOutcome o;
    o.time = parse_double(fields[d], line_no);
    const std::string& ev = fields[d + 1];
    if (ev != "0" && ev != "1") {
      throw Error("csv: event must be 0/1 at line " + std::to_string(line_no));
    }
    o.event = ev == "1";
    outcomes.push_back(o);
    if (has_group) {
      groups.push_back(static_cast<int>(parse_double(fields[d + 2], line_no)));
    }
  }
  Matrix x(outcomes.size(), d);
  x.data = std::move(values);
  return make_dataset(std::move(x), std::move(mask), std::move(outcomes),
                      std::move(groups));
}

void write_csv(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  out << to_csv(ds);
}

Dataset read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_csv_text(ss.str());
}

}  // namespace survbench
