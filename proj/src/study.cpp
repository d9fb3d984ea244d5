#include "vinemeta/study.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "vinemeta/error.hpp"

namespace vinemeta {

void validate(const StudyTable& s) {
  if (s.y00 < 0 || s.y10 < 0 || s.y20 < 0 || s.y01 < 0 || s.y11 < 0 || s.y21 < 0) {
    throw DomainError("study table has a negative cell");
  }
  if (s.diseased() + s.non_diseased() == 0) throw DomainError("study table has no subjects");
}

namespace {

constexpr std::array<const char*, 7> kColumns = {"study_id", "tn", "fp", "ne_neg", "fn", "tp", "ne_pos"};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int parse_count(const std::string& field, const char* column, std::size_t line) {
  int value = 0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw ParseError(line, std::string("column ") + column + ": '" + field + "' is not an integer");
  }
  if (value < 0) throw ParseError(line, std::string("column ") + column + ": negative count");
  return value;
}

}  // namespace

Dataset parse_dataset(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::array<std::size_t, 7> index{};

  bool have_header = false;
  while (!have_header && std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto header = split(line);
    for (std::size_t c = 0; c < kColumns.size(); ++c) {
      std::size_t k = 0;
      while (k < header.size() && header[k] != kColumns[c]) ++k;
      if (k == header.size()) throw ParseError(lineno, std::string("missing column ") + kColumns[c]);
      index[c] = k;
    }
    have_header = true;
  }
  if (!have_header) throw ParseError(lineno, "no header");

  Dataset data;
  std::unordered_set<std::string> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    for (std::size_t c = 0; c < kColumns.size(); ++c) {
      if (index[c] >= fields.size()) throw ParseError(lineno, std::string("missing column ") + kColumns[c]);
    }
    const std::string& id = fields[index[0]];
    if (id.empty()) throw ParseError(lineno, "empty study_id");
    if (!seen.insert(id).second) throw ParseError(lineno, "duplicate study_id '" + id + "'");

    StudyTable s;
    s.y00 = parse_count(fields[index[1]], kColumns[1], lineno);
    s.y10 = parse_count(fields[index[2]], kColumns[2], lineno);
    s.y20 = parse_count(fields[index[3]], kColumns[3], lineno);
    s.y01 = parse_count(fields[index[4]], kColumns[4], lineno);
    s.y11 = parse_count(fields[index[5]], kColumns[5], lineno);
    s.y21 = parse_count(fields[index[6]], kColumns[6], lineno);
    if (s.diseased() + s.non_diseased() == 0) throw ParseError(lineno, "study '" + id + "' has no subjects");
    data.ids.push_back(id);
    data.studies.push_back(s);
  }
  if (data.studies.empty()) throw ParseError(lineno, "no studies");
  return data;
}

Dataset read_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_dataset(in);
}

void write_dataset(std::ostream& out, const Dataset& data) {
  out << "study_id,tn,fp,ne_neg,fn,tp,ne_pos\n";
  for (std::size_t i = 0; i < data.studies.size(); ++i) {
    const auto& s = data.studies[i];
    const std::string id = i < data.ids.size() ? data.ids[i] : "s" + std::to_string(i + 1);
    out << id << ',' << s.y00 << ',' << s.y10 << ',' << s.y20 << ',' << s.y01 << ',' << s.y11 << ','
        << s.y21 << '\n';
  }
}

void write_dataset(std::ostream& out, const std::vector<StudyTable>& studies) {
  Dataset data;
  data.studies = studies;
  write_dataset(out, data);
}

}  // namespace vinemeta
