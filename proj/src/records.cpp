#include "nnoma/records.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <type_traits>

#include <json.hpp>

#include "nnoma/errors.hpp"

namespace nnoma {

namespace {

template <class T>
struct is_optional : std::false_type {};
template <class T>
struct is_optional<std::optional<T>> : std::true_type {};

template <class T>
std::string number_text(T v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string quote_csv(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

template <class T>
std::string cell_text(const T& v) {
  if constexpr (std::is_same_v<T, std::string>) {
    return quote_csv(v);
  } else if constexpr (is_optional<T>::value) {
    return v ? number_text(*v) : std::string();
  } else {
    return number_text(v);
  }
}

template <class T>
void parse_number(std::string_view cell, T& out, const char* name) {
  const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
  if (ec != std::errc() || end != cell.data() + cell.size())
    throw ConfigError(std::string("bad CSV cell for ") + name + ": '" + std::string(cell) + "'");
}

template <class T>
void cell_parse(std::string_view cell, T& out, const char* name) {
  if constexpr (std::is_same_v<T, std::string>) {
    out = std::string(cell);
  } else if constexpr (is_optional<T>::value) {
    if (cell.empty()) {
      out.reset();
    } else {
      typename T::value_type v{};
      parse_number(cell, v, name);
      out = v;
    }
  } else {
    parse_number(cell, out, name);
  }
}

// Splits one CSV record starting at `pos`; advances pos past the line break.
std::vector<std::string> split_row(std::string_view text, std::size_t& pos) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  while (pos < text.size()) {
    const char c = text[pos++];
    if (quoted) {
      if (c == '"') {
        if (pos < text.size() && text[pos] == '"') {
          cells.back() += '"';
          ++pos;
        } else {
          quoted = false;
        }
      } else {
        cells.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.emplace_back();
    } else if (c == '\n') {
      return cells;
    } else if (c != '\r') {
      cells.back() += c;
    }
  }
  if (quoted) throw ConfigError("unterminated quote in CSV");
  return cells;
}

}  // namespace

std::vector<std::string> record_columns() {
  std::vector<std::string> names;
  SweepRecord r;
  for_each_field(r, [&](const char* name, auto&) { names.emplace_back(name); });
  return names;
}

Format parse_format(std::string_view text) {
  if (text == "csv") return Format::csv;
  if (text == "json") return Format::json;
  throw ConfigError("unknown format: '" + std::string(text) + "'");
}

std::string to_csv(const std::vector<SweepRecord>& records) {
  std::string out;
  const auto cols = record_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += '\n';
  for (const auto& r : records) {
    bool first = true;
    for_each_field(r, [&](const char*, const auto& v) {
      if (!first) out += ',';
      first = false;
      out += cell_text(v);
    });
    out += '\n';
  }
  return out;
}

std::string to_json(const std::vector<SweepRecord>& records) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for_each_field(r, [&](const char* name, const auto& v) {
      using T = std::decay_t<decltype(v)>;
      if constexpr (is_optional<T>::value) {
        obj[name] = v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
      } else {
        obj[name] = v;
      }
    });
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

std::vector<SweepRecord> parse_csv(std::string_view text) {
  std::size_t pos = 0;
  const auto header = split_row(text, pos);
  if (header != record_columns()) throw ConfigError("CSV header does not match the record schema");
  std::vector<SweepRecord> out;
  while (pos < text.size()) {
    const auto cells = split_row(text, pos);
    if (cells.size() != header.size())
      throw ConfigError("CSV row " + std::to_string(out.size() + 1) + " has " + std::to_string(cells.size()) +
                        " cells, expected " + std::to_string(header.size()));
    SweepRecord r;
    std::size_t i = 0;
    for_each_field(r, [&](const char* name, auto& v) { cell_parse(cells[i++], v, name); });
    out.push_back(std::move(r));
  }
  return out;
}

void emit(const std::vector<SweepRecord>& records, Format format, const std::string& path) {
  if (records.empty()) throw std::invalid_argument("emit: no records");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << (format == Format::csv ? to_csv(records) : to_json(records));
  if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

}  // namespace nnoma
