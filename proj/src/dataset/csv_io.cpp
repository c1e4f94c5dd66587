#include "bpchess/dataset/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace bpchess::dataset {
namespace {

void put_float(std::string& out, float v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
  out.append(buf, r.ptr);
}

void put_double(std::string& out, double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, r.ptr);
}

void put_text(std::string& out, const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) {
    out += s;
    return;
  }
  out += '"';
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cells.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.emplace_back();
    } else {
      cells.back() += c;
    }
  }
  return cells;
}

template <typename T>
T parse_number(const std::string& s, std::size_t line) {
  T v{};
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw DatasetFormatError("line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

}  // namespace

void write_dataset(std::ostream& out, const Dataset& data) {
  std::string buf;
  buf += "# schema=" + data.schema_version + " advanced=" + (data.advanced ? "1" : "0") +
         " bucket=" + std::to_string(data.bucket) + "\n";
  buf += "game_id,ply,move";
  for (const char* prefix : {"before_", "after_"}) {
    for (const auto& n : data.feature_names) buf += std::string(",") + prefix + n;
  }
  buf += ",label\n";
  out << buf;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    buf.clear();
    put_text(buf, data.game_ids[data.game[i]]);
    buf += ',' + std::to_string(data.ply[i]) + ',';
    put_text(buf, data.move[i]);
    for (float v : data.row(i)) {
      buf += ',';
      put_float(buf, v);
    }
    buf += ',';
    put_double(buf, data.label[i]);
    buf += '\n';
    out << buf;
  }
}

void write_dataset(const std::string& path, const Dataset& data) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  write_dataset(f, data);
  if (!f) throw std::runtime_error("write failed: " + path);
}

Dataset read_dataset(std::istream& in, const std::optional<std::string>& expected_version) {
  Dataset d;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# schema=", 0) != 0) {
    throw DatasetFormatError("missing '# schema=' line");
  }
  {
    std::istringstream meta(line.substr(2));
    std::string field;
    while (meta >> field) {
      const auto eq = field.find('=');
      const std::string key = field.substr(0, eq), value = eq == std::string::npos ? "" : field.substr(eq + 1);
      if (key == "schema") {
        d.schema_version = value;
      } else if (key == "advanced") {
        d.advanced = value == "1";
      } else if (key == "bucket") {
        d.bucket = parse_number<int>(value, 1);
      }
    }
  }
  if (expected_version && d.schema_version != *expected_version) {
    throw DatasetFormatError("schema version mismatch: file has '" + d.schema_version + "', expected '" +
                             *expected_version + "'");
  }

  if (!std::getline(in, line)) throw DatasetFormatError("missing header row");
  const auto header = split_csv(line);
  if (header.size() < 4 || header[0] != "game_id" || header[1] != "ply" || header[2] != "move") {
    throw DatasetFormatError("header must start with game_id,ply,move");
  }
  if (header.back() != "label") throw DatasetFormatError("header must end with label");
  std::size_t c = 3;
  for (; c + 1 < header.size() && header[c].rfind("before_", 0) == 0; ++c) d.feature_names.push_back(header[c].substr(7));
  const std::size_t w = d.feature_names.size();
  for (std::size_t j = 0; j < w; ++j, ++c) {
    if (c + 1 >= header.size() || header[c] != "after_" + d.feature_names[j]) {
      throw DatasetFormatError("unknown column: 'before_" + d.feature_names[j] + "' has no matching after_ column (found '" +
                               (c + 1 < header.size() ? header[c] : std::string("<missing>")) + "')");
    }
  }
  if (c + 1 != header.size()) throw DatasetFormatError("unknown column '" + header[c] + "'");

  std::unordered_map<std::string, std::int32_t> games;
  std::size_t lineno = 2;
  std::vector<float> row(2 * w);
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size()) {
      throw DatasetFormatError("line " + std::to_string(lineno) + ": expected " + std::to_string(header.size()) +
                               " fields, got " + std::to_string(cells.size()));
    }
    auto [g, fresh] = games.try_emplace(cells[0], 0);
    if (fresh) g->second = d.add_game(cells[0]);
    for (std::size_t j = 0; j < 2 * w; ++j) row[j] = parse_number<float>(cells[3 + j], lineno);
    d.push_row(row, parse_number<double>(cells.back(), lineno), g->second,
               parse_number<std::int32_t>(cells[1], lineno), cells[2]);
  }
  return d;
}

Dataset read_dataset(const std::string& path, const std::optional<std::string>& expected_version) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  return read_dataset(f, expected_version);
}

}  // namespace bpchess::dataset
