#include "sfsyn/report.hpp"

#include <chrono>
#include <limits>
#include <sstream>

#include "sfsyn/collision.hpp"
#include "sfsyn/phi.hpp"

namespace sfsyn {

void VerificationReport::check(std::string name, std::string claim, nlohmann::json expected, nlohmann::json actual) {
  const bool pass = expected == actual;
  add(std::move(name), std::move(claim), std::move(expected), std::move(actual), pass);
}

void VerificationReport::add(std::string name, std::string claim, nlohmann::json expected, nlohmann::json actual,
                             bool pass) {
  assertions.push_back({std::move(name), std::move(claim), std::move(expected), std::move(actual), pass});
}

bool VerificationReport::passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.pass; });
}

nlohmann::json to_json(const VerificationReport& r, bool with_timing) {
  nlohmann::json list = nlohmann::json::array();
  for (const Assertion& a : r.assertions)
    list.push_back({{"name", a.name}, {"claim", a.claim}, {"expected", a.expected}, {"actual", a.actual}, {"pass", a.pass}});
  nlohmann::json j = {{"command", r.command},
                      {"inputs", r.inputs},
                      {"assertions", std::move(list)},
                      {"details", r.details},
                      {"pass", r.passed()}};
  if (with_timing) j["timings"] = r.timings;
  return j;
}

std::string to_text(const VerificationReport& r, bool with_timing) {
  std::ostringstream out;
  out << r.command << ' ' << r.inputs.dump() << "\n";
  for (const Assertion& a : r.assertions)
    out << (a.pass ? "PASS " : "FAIL ") << a.name << ": expected " << a.expected.dump() << ", got " << a.actual.dump()
        << "\n     " << a.claim << "\n";
  if (!r.details.empty()) out << "details " << r.details.dump() << "\n";
  if (with_timing)
    for (const auto& [step, seconds] : r.timings) out << "time " << step << ' ' << seconds << "s\n";
  out << (r.passed() ? "overall PASS" : "overall FAIL") << "\n";
  return out.str();
}

namespace {

class Stopwatch {
 public:
  explicit Stopwatch(VerificationReport& r) : report_(r) {}
  void lap(const std::string& step) {
    const auto now = std::chrono::steady_clock::now();
    report_.timings[step] += std::chrono::duration<double>(now - last_).count();
    last_ = now;
  }

 private:
  VerificationReport& report_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

nlohmann::json big(unsigned __int128 v) {
  if (v <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(v);
  return to_string_u128(v);
}

std::size_t colliding_count(const TransitionSemigroup& t) { return collision_summary(t.elements()).colliding.count(); }

void add_injectivity(VerificationReport& r, const InjectivityReport& inj, const std::string& prefix) {
  r.check(prefix + "images_in_wsf", "every image of the mapping lies in Wsf(n)", true, inj.images_in_wsf);
  r.check(prefix + "images_distinct", "no two elements share an image, so the mapping is injective", true,
          inj.images_distinct);
  r.check(prefix + "round_trip", "the inverse recovers each element from its image", true, inj.round_trip);
  r.check(prefix + "images_outside_t", "images that moved focus a colliding pair, so they are not in T", true,
          inj.images_outside_t);
  r.add(prefix + "size_within_bound", "|T| does not exceed (n-1)^(n-2)+n-2", "<= " + to_string_u128(inj.bound),
        inj.size, inj.within_bound());
}

std::string strict_witness_expected(const TransitionSemigroup& t) { return colliding_count(t) ? "found" : "absent"; }

// "found" or "absent" when the strict witness behaves; otherwise the reason.
std::string strict_witness_status(const TransitionSemigroup& t) {
  const std::optional<Transformation> s = strict_bound_witness(t);
  if (colliding_count(t) == 0) return s ? "witness returned without colliding pairs" : "absent";
  if (!s) return "no witness although a pair collides";
  if (!in_wsf(*s)) return to_string(*s) + " is outside Wsf";
  if (t.contains(*s)) return to_string(*s) + " lies in T";
  try {
    phi_inverse(*s, PhiContext::from(t));
    return to_string(*s) + " has a preimage";
  } catch (const NotInImageError&) {
    return "found";
  }
}

}  // namespace

VerificationReport verify_bound_report(int n) {
  if (n < 4) throw ArgumentError("verify-bound needs n >= 4");
  VerificationReport r;
  r.command = "verify-bound";
  r.inputs = {{"n", n}};
  Stopwatch clock(r);
  const Dfa d = witness(n);
  const TransitionSemigroup t = transition_semigroup(d);
  clock.lap("closure");
  r.check("witness_size", "the witness DFA reaches (n-1)^(n-2)+n-2 transformations", big(wsf_bound(n)), t.size());
  r.check("suffix_free", "the witness accepts a suffix-free language", true, is_suffix_free(d));
  r.check("minimal", "the witness DFA is minimal", true, is_minimal(d));
  clock.lap("language checks");
  r.check("no_colliding_pairs", "no two interior states collide in the witness semigroup", 0, colliding_count(t));
  clock.lap("collisions");
  if (n >= 7) {
    const InjectivityReport inj = verify_injective(t);
    add_injectivity(r, inj, "phi_");
    r.details["phi_cases"] = inj.case_counts;
    clock.lap("phi");
  }
  return r;
}

VerificationReport letters_report(int n) {
  if (n < 5 || n > 7) throw ArgumentError("letters needs 5 <= n <= 7");
  VerificationReport r;
  r.command = "letters";
  r.inputs = {{"n", n}};
  Stopwatch clock(r);
  const Dfa d = witness(n);
  const unsigned __int128 bound = wsf_bound(n);
  for (std::size_t drop = 0; drop < d.delta.size(); ++drop) {
    std::vector<Transformation> rest;
    for (std::size_t i = 0; i < d.delta.size(); ++i)
      if (i != drop) rest.push_back(d.delta[i]);
    const std::size_t size = closure(rest).size();
    r.add("drop_" + d.alphabet[drop], "without letter " + d.alphabet[drop] + " the witness falls short of the bound",
          "< " + to_string_u128(bound), size, size < bound);
  }
  clock.lap("closures");
  return r;
}

VerificationReport suffix_free_report(const Dfa& dfa) {
  dfa.validate();
  VerificationReport r;
  r.command = "suffix-free";
  r.inputs = {{"n", dfa.n}, {"letters", dfa.alphabet.size()}};
  Stopwatch clock(r);
  const std::optional<SuffixViolation> v = find_suffix_violation(dfa);
  r.check("suffix_free", "no accepted word is a proper suffix of another accepted word", true, !v.has_value());
  if (v) r.details["counterexample"] = {{"longer", dfa.spell(v->longer)}, {"suffix", dfa.spell(v->suffix)}};
  clock.lap("product search");
  return r;
}

VerificationReport phi_report(const Dfa& input) {
  input.validate();
  VerificationReport r = suffix_free_report(input);
  r.command = "phi";
  if (!r.passed()) return r;
  Stopwatch clock(r);
  r.check("minimal", "the mapping is defined for minimal DFAs", true, is_minimal(input));
  if (!r.passed()) return r;
  if (input.n < 7) throw ArgumentError("phi needs n >= 7");
  const Dfa d = renumber_initial_empty(input);
  const TransitionSemigroup t = transition_semigroup(d);
  clock.lap("closure");
  const InjectivityReport inj = verify_injective(t);
  add_injectivity(r, inj, "");
  r.details["phi_cases"] = inj.case_counts;
  r.details["colliding_pairs"] = colliding_count(t);
  if (!inj.counterexamples.empty()) r.details["counterexamples"] = inj.counterexamples;
  clock.lap("phi");
  r.check("strict_witness", "with a colliding pair, some element of Wsf(n) is missed by the mapping",
          strict_witness_expected(t), strict_witness_status(t));
  if (const auto s = strict_bound_witness(t)) r.details["strict_witness"] = to_string(*s);
  clock.lap("strict witness");
  return r;
}

VerificationReport phi_sample_report(const SampleOptions& options) {
  VerificationReport r;
  r.command = "phi-sample";
  r.inputs = {{"n", options.n}, {"count", options.count}, {"seed", options.seed}};
  Stopwatch clock(r);
  SampleStats stats;
  const std::vector<Dfa> sample = sample_minimal_suffix_free(options, &stats);
  clock.lap("sampling");
  r.check("sample_size", "the sampler produced the requested number of DFAs", options.count, sample.size());
  std::size_t in_wsf = 0, distinct = 0, round_trip = 0, outside = 0, within = 0, strict_ok = 0, with_collisions = 0;
  std::size_t largest = 0;
  std::map<std::string, std::size_t> cases;
  std::vector<std::string> failures;
  for (const Dfa& d : sample) {
    const TransitionSemigroup t = transition_semigroup(d);
    largest = std::max(largest, t.size());
    const InjectivityReport inj = verify_injective(t);
    in_wsf += inj.images_in_wsf;
    distinct += inj.images_distinct;
    round_trip += inj.round_trip;
    outside += inj.images_outside_t;
    within += inj.within_bound();
    for (const auto& [k, v] : inj.case_counts) cases[k] += v;
    if (colliding_count(t) > 0) ++with_collisions;
    const std::string status = strict_witness_status(t);
    const bool strict_good = status == strict_witness_expected(t);
    strict_ok += strict_good;
    if ((!inj.passed() || !strict_good) && failures.size() < 10) failures.push_back(to_text(d) + status);
  }
  clock.lap("phi");
  const std::size_t k = sample.size();
  r.check("images_in_wsf", "every image of the mapping lies in Wsf(n), for every sample", k, in_wsf);
  r.check("images_distinct", "the mapping is injective on every sample", k, distinct);
  r.check("round_trip", "the inverse recovers every element of every sample", k, round_trip);
  r.check("images_outside_t", "moved images focus a colliding pair of their own semigroup", k, outside);
  r.check("size_within_bound", "no sample exceeds (n-1)^(n-2)+n-2 transformations", k, within);
  r.check("strict_witness", "samples with a colliding pair miss an element of Wsf(n)", k, strict_ok);
  r.details = {{"phi_cases", cases},
               {"samples_with_colliding_pairs", with_collisions},
               {"largest_semigroup", largest},
               {"tries", stats.tries},
               {"rejected_outside_bsf", stats.outside_bsf},
               {"rejected_not_minimal", stats.not_minimal},
               {"rejected_not_suffix_free", stats.not_suffix_free}};
  if (!failures.empty()) r.details["failures"] = failures;
  return r;
}

}  // namespace sfsyn
