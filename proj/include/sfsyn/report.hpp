#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "sfsyn/dfa.hpp"
#include "sfsyn/sampling.hpp"

namespace sfsyn {

struct Assertion {
  std::string name;
  std::string claim;
  nlohmann::json expected;
  nlohmann::json actual;
  bool pass = false;
};

struct VerificationReport {
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  std::vector<Assertion> assertions;
  nlohmann::json details = nlohmann::json::object();
  std::map<std::string, double> timings;  // seconds

  /// Passes when actual equals expected.
  void check(std::string name, std::string claim, nlohmann::json expected, nlohmann::json actual);
  void add(std::string name, std::string claim, nlohmann::json expected, nlohmann::json actual, bool pass);
  bool passed() const;
};

/// timings are left out unless asked for, so reports compare byte for byte.
nlohmann::json to_json(const VerificationReport& report, bool with_timing = false);
std::string to_text(const VerificationReport& report, bool with_timing = false);

/// 4 <= n; n above 8 is allowed but slow.
VerificationReport verify_bound_report(int n);
/// Five-letter evidence for 5 <= n <= 7.
VerificationReport letters_report(int n);
VerificationReport suffix_free_report(const Dfa& dfa);
/// The DFA must have n >= 7; it is checked for suffix-freeness and
/// minimality before the mapping runs.
VerificationReport phi_report(const Dfa& dfa);
/// Mapping checks over a batch of sampled minimal suffix-free DFAs.
VerificationReport phi_sample_report(const SampleOptions& options);

}  // namespace sfsyn
