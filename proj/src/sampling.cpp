#include "sfsyn/sampling.hpp"

#include <random>

#include "sfsyn/semigroup.hpp"

namespace sfsyn {

std::vector<Dfa> sample_minimal_suffix_free(const SampleOptions& o, SampleStats* stats) {
  if (o.n < 4 || o.n > 7) throw ArgumentError("sampling supports 4 <= n <= 7");
  if (o.min_letters < 1 || o.max_letters < o.min_letters) throw ArgumentError("bad letter range");
  const std::vector<Transformation> bsf = bsf_elements(o.n);
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<std::size_t> pick(0, bsf.size() - 1);
  std::uniform_int_distribution<int> letter_count(o.min_letters, o.max_letters);
  std::uniform_int_distribution<std::uint32_t> final_bits(0, (1u << (o.n - 2)) - 1);
  SampleStats local;
  std::vector<Dfa> out;
  while (out.size() < o.count && local.tries < o.max_tries) {
    ++local.tries;
    Dfa d;
    d.n = o.n;
    const int k = letter_count(rng);
    for (int i = 0; i < k; ++i) {
      d.delta.push_back(bsf[pick(rng)]);
      d.alphabet.push_back(std::string(1, static_cast<char>('a' + i)));
    }
    d.finals = StateSet((final_bits(rng) << 1) | 2u);
    const TransitionSemigroup t = closure(d.delta);
    bool inside = true;
    for (const Transformation& e : t.elements())
      if (!in_bsf(e)) {
        inside = false;
        break;
      }
    if (!inside) {
      ++local.outside_bsf;
      continue;
    }
    if (!is_minimal(d)) {
      ++local.not_minimal;
      continue;
    }
    if (!is_suffix_free(d)) {
      ++local.not_suffix_free;
      continue;
    }
    out.push_back(std::move(d));
  }
  if (stats) *stats = local;
  return out;
}

}  // namespace sfsyn
