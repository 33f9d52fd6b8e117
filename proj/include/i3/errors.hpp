#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace i3 {

// Argument outside the mathematical domain of a metric.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed or inconsistent input file. `row()` is the 1-based line of the
// offending record (0 when the error is not tied to one row).
class LoadError : public std::runtime_error {
 public:
  LoadError(std::string source, std::size_t row, const std::string& what)
      : std::runtime_error(format(source, row, what)),
        source_(std::move(source)),
        row_(row) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t row() const noexcept { return row_; }

 private:
  static std::string format(const std::string& source, std::size_t row,
                            const std::string& what) {
    std::string out = source;
    if (row != 0) out += ":" + std::to_string(row);
    return out + ": " + what;
  }

  std::string source_;
  std::size_t row_;
};

// Unknown key (category, journal, article, year) in a loaded collection.
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// One or more journals referenced by citations or articles are missing from
// the catalog.
class ResolutionError : public std::runtime_error {
 public:
  explicit ResolutionError(std::vector<std::string> journals)
      : std::runtime_error(format(journals)), journals_(std::move(journals)) {}

  const std::vector<std::string>& journals() const noexcept { return journals_; }

 private:
  static std::string format(const std::vector<std::string>& journals) {
    std::string out = "unresolved journals:";
    for (const auto& j : journals) out += " \"" + j + "\"";
    return out;
  }

  std::vector<std::string> journals_;
};

}  // namespace i3
