#ifndef ENVSENT_CSV_HPP_
#define ENVSENT_CSV_HPP_

#include <istream>
#include <span>
#include <string>
#include <vector>

namespace envsent {

// RFC-4180-style reader: quoted fields, embedded commas/quotes/newlines.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Reads the next record into fields; returns false at end of input.
  bool next(std::vector<std::string>& fields);

  // 1-based line number where the last record started.
  std::size_t record_line() const { return record_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  std::size_t record_line_ = 0;
};

std::string csv_escape(std::string_view field);
std::string csv_join(std::span<const std::string> fields);

}  // namespace envsent

#endif  // ENVSENT_CSV_HPP_
