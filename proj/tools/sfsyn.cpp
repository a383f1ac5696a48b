#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "sfsyn/dfa.hpp"
#include "sfsyn/report.hpp"
#include "sfsyn/search.hpp"
#include "sfsyn/semigroup.hpp"

using namespace sfsyn;

namespace {

struct Globals {
  bool json = false;
  int threads = 1;
  std::uint64_t seed = 1;
};

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

Dfa read_dfa(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  return parse_dfa(text);
}

void print_timings(const VerificationReport& r) {
  for (const auto& [step, seconds] : r.timings) std::cerr << r.command << " time " << step << ' ' << seconds << "s\n";
}

int emit(const Globals& g, const std::vector<VerificationReport>& reports) {
  bool ok = true;
  if (g.json) {
    nlohmann::json all = nlohmann::json::array();
    for (const VerificationReport& r : reports) all.push_back(to_json(r));
    std::cout << (all.size() == 1 ? all[0] : all).dump(2) << "\n";
  }
  for (const VerificationReport& r : reports) {
    if (!g.json) std::cout << to_text(r);
    print_timings(r);
    ok = ok && r.passed();
  }
  return ok ? kPass : kFail;
}

Dfa family_dfa(const std::string& family, int n) {
  if (family == "vsf") return vsf_dfa(n);
  return witness(n);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Syntactic complexity toolkit for suffix-free languages"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--threads", g.threads, "Worker threads for the search")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for sampled verification");

  int n = 0;
  std::string format = "dfa", family = "wsf", path;

  auto* witness_cmd = app.add_subcommand("witness", "Print the witness DFA (or the Vsf generator DFA)");
  witness_cmd->add_option("--n", n, "Number of states")->required();
  witness_cmd->add_option("--format", format, "dfa or dot")->check(CLI::IsMember({"dfa", "dot"}));
  witness_cmd->add_option("--family", family, "wsf or vsf")->check(CLI::IsMember({"wsf", "vsf"}));

  std::vector<int> bound_ns;
  auto* bound_cmd = app.add_subcommand("verify-bound", "Check the witness against (n-1)^(n-2)+n-2");
  bound_cmd->add_option("--n", bound_ns, "State counts (default 4..8)");

  auto* phi_cmd = app.add_subcommand("phi", "Run the injective mapping on a DFA file");
  phi_cmd->add_option("file", path, "DFA file, - for stdin")->required();

  std::size_t count = 100;
  int sample_n = 7;
  auto* sample_cmd = app.add_subcommand("phi-sample", "Run the mapping on random minimal suffix-free DFAs");
  sample_cmd->add_option("--n", sample_n, "Number of states")->check(CLI::Range(7, 7));
  sample_cmd->add_option("--count", count, "Number of DFAs");

  SearchOptions search;
  std::optional<std::size_t> target;
  std::string resume;
  auto* search_cmd = app.add_subcommand("search", "Search for large semigroups other than Vsf(n) and Wsf(n)");
  search_cmd->add_option("--n", search.n, "Number of states")->required()->check(CLI::Range(4, 6));
  search_cmd->add_option("--target", target, "Size to beat (default: the maximum for n)");
  search_cmd->add_option("--max-letters", search.max_letters, "Letter cap")->check(CLI::PositiveNumber);
  search_cmd->add_option("--resume", resume, "Checkpoint directory to resume from");
  bool quiet = false;
  search_cmd->add_flag("--quiet", quiet, "No progress lines");

  auto* letters_cmd = app.add_subcommand("letters", "Drop each witness letter and re-close");
  letters_cmd->add_option("--n", n, "Number of states")->required();

  auto* sf_cmd = app.add_subcommand("suffix-free", "Decide whether a DFA accepts a suffix-free language");
  sf_cmd->add_option("file", path, "DFA file, - for stdin")->required();

  auto* sg_cmd = app.add_subcommand("semigroup", "List the transition semigroup of the witness or Vsf DFA");
  sg_cmd->add_option("--n", n, "Number of states")->required();
  sg_cmd->add_option("--family", family, "wsf or vsf")->check(CLI::IsMember({"wsf", "vsf"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*witness_cmd) {
      if (n < 4) throw ArgumentError("witness needs n >= 4");
      const Dfa d = family_dfa(family, n);
      std::cout << (format == "dot" ? to_dot(d) : to_text(d));
      return kPass;
    }
    if (*sg_cmd) {
      if (n < 4) throw ArgumentError("semigroup needs n >= 4");
      std::cout << to_text(transition_semigroup(family_dfa(family, n)));
      return kPass;
    }
    if (*bound_cmd) {
      if (bound_ns.empty()) bound_ns = {4, 5, 6, 7, 8};
      std::vector<VerificationReport> reports;
      for (int k : bound_ns) {
        if (k > 8) std::cerr << "warning: n=" << k << " closes a very large semigroup and may take long\n";
        reports.push_back(verify_bound_report(k));
      }
      return emit(g, reports);
    }
    if (*letters_cmd) return emit(g, {letters_report(n)});
    if (*sf_cmd) return emit(g, {suffix_free_report(read_dfa(path))});
    if (*phi_cmd) return emit(g, {phi_report(read_dfa(path))});
    if (*sample_cmd) {
      SampleOptions o;
      o.n = sample_n;
      o.count = count;
      o.seed = g.seed;
      return emit(g, {phi_sample_report(o)});
    }
    if (*search_cmd) {
      search.threads = g.threads;
      if (!resume.empty()) {
        search.checkpoint_dir = resume;
        search.resume = true;
      } else if (const char* dir = std::getenv("SFSYN_CHECKPOINT_DIR"); dir && *dir) {
        search.checkpoint_dir = dir;
      }
      search.target = target ? *target
                              : search.n <= 5 ? closure(vsf_generators(search.n)).size()
                                              : static_cast<std::size_t>(wsf_bound(search.n));
      if (!quiet) search.log = [](const std::string& line) { std::cerr << line << "\n"; };
      const SearchResult r = search_max(search);
      if (g.json) {
        std::cout << to_json(r, false).dump(2) << "\n";
      } else {
        std::cout << "n=" << r.n << " target=" << r.target << " maximal=" << r.reference << "(" << r.n
                  << ") size=" << r.reference_size << "\n";
        for (const FoundSemigroup& f : r.others)
          std::cout << "other size=" << f.size << " realizable=" << f.realizable << " letters=" << f.fingerprint << "\n";
        std::cout << "visited=" << r.visited << " largest_other=" << r.largest_other << " exhausted=" << r.exhausted
                  << " cap_reached=" << r.cap_reached << "\n"
                  << (r.unique() ? "unique PASS" : "unique FAIL") << "\n";
      }
      std::cerr << "search time " << r.seconds << "s\n";
      return r.unique() ? kPass : kFail;
    }
  } catch (const ArgumentError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnsupportedError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
