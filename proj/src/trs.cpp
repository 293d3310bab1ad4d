#include "mse/trs.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "mse/errors.hpp"

namespace mse {

namespace {

constexpr std::array<const char*, 7> kCellNames = {
    "x111", "x110", "x101", "x011", "x100", "x010", "x001"};

}  // namespace

double CellProbabilities::sum() const {
  return std::accumulate(p.begin(), p.end(), 0.0);
}

TrsTable validate_table(const std::array<std::int64_t, 7>& raw,
                        const std::string& label) {
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] < 0) {
      throw NegativeCount(std::string(kCellNames[i]) + " is negative: " +
                          std::to_string(raw[i]));
    }
  }
  TrsTable t{raw[0], raw[1], raw[2], raw[3], raw[4], raw[5], raw[6], label};
  if (t.x0() == 0) throw EmptyTable("all seven cell counts are zero");
  return t;
}

TrsTable parse_table_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("expected a JSON object");
  std::array<std::int64_t, 7> raw{};
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!j.contains(kCellNames[i])) {
      throw ParseError(std::string("missing field ") + kCellNames[i]);
    }
    const auto& v = j.at(kCellNames[i]);
    if (!v.is_number_integer()) {
      throw ParseError(std::string("field ") + kCellNames[i] +
                       " must be an integer");
    }
    raw[i] = v.get<std::int64_t>();
  }
  std::string label;
  if (j.contains("label")) {
    if (!j.at("label").is_string()) throw ParseError("label must be a string");
    label = j.at("label").get<std::string>();
  }
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool known = key == "label";
    for (const char* name : kCellNames) known = known || key == name;
    if (!known) throw ParseError("unknown field " + key);
  }
  return validate_table(raw, label);
}

TrsTable parse_table_csv(const std::string& text) {
  std::istringstream in(text);
  std::string header, row;
  if (!std::getline(in, header)) throw ParseError("empty CSV input");
  if (!header.empty() && header.back() == '\r') header.pop_back();
  bool has_label = false;
  if (header == "x111,x110,x101,x011,x100,x010,x001,label") {
    has_label = true;
  } else if (header != "x111,x110,x101,x011,x100,x010,x001") {
    throw ParseError("unexpected CSV header: " + header);
  }
  if (!std::getline(in, row)) throw ParseError("missing CSV data row");
  if (!row.empty() && row.back() == '\r') row.pop_back();

  std::vector<std::string> fields;
  std::istringstream rs(row);
  std::string field;
  while (std::getline(rs, field, ',')) fields.push_back(field);
  const std::size_t want = has_label ? 8 : 7;
  if (fields.size() != want) {
    throw ParseError("expected " + std::to_string(want) + " CSV fields, got " +
                     std::to_string(fields.size()));
  }
  std::array<std::int64_t, 7> raw{};
  for (std::size_t i = 0; i < 7; ++i) {
    try {
      std::size_t pos = 0;
      raw[i] = std::stoll(fields[i], &pos);
      if (pos != fields[i].size()) throw std::invalid_argument(fields[i]);
    } catch (const std::exception&) {
      throw ParseError(std::string(kCellNames[i]) + " is not an integer: " +
                       fields[i]);
    }
  }
  return validate_table(raw, has_label ? fields[7] : std::string{});
}

TrsTable load_table(const std::string& path, TableFormat format) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return format == TableFormat::json ? parse_table_json(buf.str())
                                     : parse_table_csv(buf.str());
}

std::string table_to_json(const TrsTable& table) {
  nlohmann::json j;
  const auto c = table.cells();
  for (std::size_t i = 0; i < 7; ++i) j[kCellNames[i]] = c[i];
  if (!table.label.empty()) j["label"] = table.label;
  return j.dump(2) + "\n";
}

std::string table_to_csv(const TrsTable& table) {
  std::ostringstream out;
  out << "x111,x110,x101,x011,x100,x010,x001";
  if (!table.label.empty()) out << ",label";
  out << "\n";
  const auto c = table.cells();
  for (std::size_t i = 0; i < 7; ++i) out << (i ? "," : "") << c[i];
  if (!table.label.empty()) out << "," << table.label;
  out << "\n";
  return out.str();
}

void save_table(const TrsTable& table, const std::string& path,
                TableFormat format) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << (format == TableFormat::json ? table_to_json(table)
                                      : table_to_csv(table));
}

TrsTable builtin_dataset(const std::string& name) {
  if (name == "als_all")
    return validate_table({24, 23, 19, 9, 10, 10, 12}, "als_all");
  if (name == "als_deployed")
    return validate_table({10, 2, 12, 4, 5, 2, 5}, "als_deployed");
  if (name == "als_nondeployed")
    return validate_table({14, 21, 7, 5, 5, 8, 7}, "als_nondeployed");
  if (name == "wtc")
    return validate_table({174, 88, 1658, 750, 1702, 270, 4323}, "wtc");
  throw UnknownDataset("unknown dataset: " + name);
}

}  // namespace mse
