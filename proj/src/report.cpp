#include "reflectum/report.hpp"

#include <sstream>

namespace reflectum {

std::string Witness::render() const {
  std::ostringstream os;
  os << "at (";
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (i) os << ",";
    os << index[i];
  }
  os << ")";
  if (!discrepancy.empty()) {
    os << " diff";
    for (const auto& [k, v] : discrepancy) os << " [" << k << "]=" << v.str();
  }
  return os.str();
}

void VerificationReport::pass(std::string name) {
  checks_.push_back({std::move(name), CheckStatus::Pass, std::nullopt, {}});
}

void VerificationReport::fail(std::string name, Witness w, std::string note) {
  checks_.push_back({std::move(name), CheckStatus::Fail, std::move(w), std::move(note)});
}

void VerificationReport::skip(std::string name, std::string note) {
  checks_.push_back({std::move(name), CheckStatus::Skipped, std::nullopt, std::move(note)});
}

void VerificationReport::merge(const VerificationReport& o, const std::string& prefix) {
  for (const auto& c : o.checks_) {
    CheckResult r = c;
    if (!prefix.empty()) r.name = prefix + c.name;
    checks_.push_back(std::move(r));
  }
}

bool VerificationReport::all_passed() const {
  for (const auto& c : checks_)
    if (c.status == CheckStatus::Fail) return false;
  return true;
}

std::size_t VerificationReport::count(CheckStatus s) const {
  std::size_t n = 0;
  for (const auto& c : checks_)
    if (c.status == s) ++n;
  return n;
}

std::string VerificationReport::summary_line() const {
  std::ostringstream os;
  os << count(CheckStatus::Pass) << " passed, " << count(CheckStatus::Fail)
     << " failed, " << count(CheckStatus::Skipped) << " skipped";
  return os.str();
}

std::string VerificationReport::render_text() const {
  std::ostringstream os;
  for (const auto& c : checks_) {
    const char* s = c.status == CheckStatus::Pass   ? "PASS"
                    : c.status == CheckStatus::Fail ? "FAIL"
                                                    : "SKIPPED";
    os << "  [" << s << "] " << c.name;
    if (c.witness) os << "  " << c.witness->render();
    if (!c.note.empty()) os << "  (" << c.note << ")";
    os << "\n";
  }
  os << "  " << summary_line() << "\n";
  return os.str();
}

}  // namespace reflectum
