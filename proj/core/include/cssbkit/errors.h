#ifndef CSSBKIT_ERRORS_H_
#define CSSBKIT_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cssbkit {

// Malformed input text: game files, path literals, SB files. `where`
// locates the problem (byte offset, line/column, or a JSON field).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::string where)
      : std::runtime_error(where.empty() ? message : where + ": " + message),
        where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// A universe enumeration would exceed the configured size cap.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::size_t requested, std::size_t cap)
      : std::runtime_error("universe size " + std::to_string(requested) +
                           " exceeds cap " + std::to_string(cap)),
        requested_(requested),
        cap_(cap) {}
  std::size_t requested() const { return requested_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t requested_;
  std::size_t cap_;
};

}  // namespace cssbkit

#endif  // CSSBKIT_ERRORS_H_
