#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vinemeta {

/// One study's 3x2 table. First index: test result (0 negative, 1 positive,
/// 2 non-evaluable); second index: disease status (0 non-diseased, 1 diseased).
struct StudyTable {
  int y00 = 0;  // TN
  int y10 = 0;  // FP
  int y20 = 0;  // NE-
  int y01 = 0;  // FN
  int y11 = 0;  // TP
  int y21 = 0;  // NE+

  int diseased() const noexcept { return y01 + y11 + y21; }
  int non_diseased() const noexcept { return y00 + y10 + y20; }

  friend bool operator==(const StudyTable&, const StudyTable&) = default;
};

/// A dataset row: the table plus its identifier from the input file.
struct Dataset {
  std::vector<std::string> ids;
  std::vector<StudyTable> studies;

  std::size_t size() const noexcept { return studies.size(); }
};

/// Throws DomainError for negative cells or a study with no subjects.
void validate(const StudyTable& study);

/// CSV with header study_id,tn,fp,ne_neg,fn,tp,ne_pos (columns in any order,
/// extra columns ignored). Throws ParseError with the line number on a
/// missing column, a negative or non-integer cell, a duplicate id, or when
/// the file holds no studies.
Dataset parse_dataset(std::istream& in);
Dataset read_dataset(const std::string& path);

/// Writes the canonical header and one row per study. Ids default to s1..sN.
void write_dataset(std::ostream& out, const Dataset& data);
void write_dataset(std::ostream& out, const std::vector<StudyTable>& studies);

}  // namespace vinemeta
