#ifndef XMODKIT_REPORT_HPP
#define XMODKIT_REPORT_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace xmodkit {

// Structured failure: a stable code plus the witness morphisms (by name),
// so callers and tests can dispatch without parsing the message.
class xmod_error : public std::runtime_error {
public:
  xmod_error(std::string code, std::string message,
             std::vector<std::string> witness = {})
      : std::runtime_error(code + ": " + message),
        code_(std::move(code)),
        witness_(std::move(witness)) {}

  const std::string& code() const { return code_; }
  const std::vector<std::string>& witness() const { return witness_; }

private:
  std::string code_;
  std::vector<std::string> witness_;
};

// Result of a brute-force verification sweep. `witness` holds element ids of
// the first failing point (lexicographically first in sweep order); `note`
// carries the same information rendered with names.
struct OracleReport {
  bool ok = true;
  std::size_t checked = 0;
  std::optional<std::vector<int>> witness;
  std::string note;

  static OracleReport pass(std::size_t checked, std::string note = "") {
    return {true, checked, std::nullopt, std::move(note)};
  }
  static OracleReport fail(std::size_t checked, std::vector<int> witness,
                           std::string note) {
    return {false, checked, std::move(witness), std::move(note)};
  }
};

}  // namespace xmodkit

#endif
