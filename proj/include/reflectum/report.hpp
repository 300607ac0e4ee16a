#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reflectum/scalar.hpp"

namespace reflectum {

// First-failure evidence: the basis multi-index where a check broke and the
// leading entries of the discrepancy vector.
struct Witness {
  std::vector<std::size_t> index;
  std::vector<std::pair<std::size_t, Scalar>> discrepancy;
  std::string render() const;
};

enum class CheckStatus { Pass, Fail, Skipped };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::optional<Witness> witness;
  std::string note;
};

class VerificationReport {
 public:
  void pass(std::string name);
  void fail(std::string name, Witness w, std::string note = {});
  void skip(std::string name, std::string note);
  void merge(const VerificationReport& o, const std::string& prefix = {});

  bool all_passed() const;
  const std::vector<CheckResult>& checks() const { return checks_; }
  std::size_t count(CheckStatus s) const;
  std::string summary_line() const;
  std::string render_text() const;

 private:
  std::vector<CheckResult> checks_;
};

}  // namespace reflectum
