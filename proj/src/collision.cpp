#include "sfsyn/collision.hpp"

#include <algorithm>

namespace sfsyn {

int pair_count(int n) { return n < 4 ? 0 : (n - 2) * (n - 3) / 2; }

int pair_index(int n, State p, State q) {
  if (p > q) std::swap(p, q);
  if (p < 1 || q > n - 2 || p == q) throw ArgumentError("not an interior pair");
  // Row-major over p < q with states shifted to 0..n-3.
  const int m = n - 2, a = p - 1, b = q - 1;
  return a * m - a * (a + 1) / 2 + (b - a - 1);
}

std::pair<State, State> pair_at(int n, int index) {
  for (State p = 1; p < n - 1; ++p)
    for (State q = p + 1; q < n - 1; ++q)
      if (pair_index(n, p, q) == index) return {p, q};
  throw ArgumentError("pair index out of range");
}

PairSet all_pairs(int n) {
  PairSet s;
  for (int i = 0; i < pair_count(n); ++i) s.set(static_cast<std::size_t>(i));
  return s;
}

PairSet colliding_pairs_of(const Transformation& t) {
  const int n = t.size();
  PairSet out;
  const State sink = n - 1;
  const State p = t[0];
  if (p == 0 || p == sink) return out;
  for (State r = 1; r < sink; ++r) {
    const State q = t[r];
    if (q != p && q != 0 && q != sink) out.set(static_cast<std::size_t>(pair_index(n, p, q)));
  }
  return out;
}

PairSet focused_pairs_of(const Transformation& t) {
  const int n = t.size();
  PairSet out;
  const State sink = n - 1;
  for (State p = 1; p < sink; ++p)
    for (State q = p + 1; q < sink; ++q)
      if (t[p] == t[q] && t[p] != 0 && t[p] != sink) out.set(static_cast<std::size_t>(pair_index(n, p, q)));
  return out;
}

CollisionSummary collision_summary(std::span<const Transformation> elements) {
  CollisionSummary s;
  for (const Transformation& t : elements) {
    s.colliding |= colliding_pairs_of(t);
    s.focused |= focused_pairs_of(t);
  }
  return s;
}

std::vector<PairStatus> pair_statuses(const TransitionSemigroup& semigroup) {
  const int n = semigroup.state_count();
  if (n < 4) throw ArgumentError("pair analysis needs n >= 4");
  const State sink = n - 1;
  std::vector<PairStatus> out(static_cast<std::size_t>(pair_count(n)));
  for (State p = 1; p < sink; ++p)
    for (State q = p + 1; q < sink; ++q) {
      PairStatus& s = out[pair_index(n, p, q)];
      s.p = p;
      s.q = q;
    }
  for (std::size_t i = 0; i < semigroup.size(); ++i) {
    const Transformation& t = semigroup[i];
    if (t[sink] != sink)
      throw StructureError("element " + to_string(t) + " does not fix state " + std::to_string(sink));
    const PairSet coll = colliding_pairs_of(t);
    for (int k = 0; k < pair_count(n); ++k) {
      PairStatus& s = out[k];
      if (coll.test(k) && !s.colliding_by) {
        s.colliding_by = t;
        s.colliding_element = i;
      }
      const State z = t[s.p];
      if (z == t[s.q] && z != 0 && z != sink &&
          std::none_of(s.focused_by.begin(), s.focused_by.end(), [z](const FocusRecord& f) { return f.target == z; }))
        s.focused_by.push_back({z, t, i});
    }
  }
  for (PairStatus& s : out)
    std::sort(s.focused_by.begin(), s.focused_by.end(),
              [](const FocusRecord& a, const FocusRecord& b) { return a.target < b.target; });
  return out;
}

bool verify_suffix_free_consistency(const TransitionSemigroup& semigroup) {
  for (const PairStatus& s : pair_statuses(semigroup))
    if (s.colliding() && s.focused()) return false;
  return true;
}

NoCollisionBoundReport check_no_collision_bound(const TransitionSemigroup& semigroup) {
  NoCollisionBoundReport r;
  const std::vector<PairStatus> statuses = pair_statuses(semigroup);
  r.size = semigroup.size();
  r.bound = wsf_bound(semigroup.state_count());
  r.applicable = std::none_of(statuses.begin(), statuses.end(), [](const PairStatus& s) { return s.colliding(); });
  if (!r.applicable) return r;
  r.within_bound = r.size <= r.bound;
  for (const Transformation& t : semigroup.elements())
    if (!in_wsf(t)) {
      r.outside_wsf = t;
      break;
    }
  return r;
}

namespace {

nlohmann::json word_json(const TransitionSemigroup& semigroup, std::size_t element) {
  if (!semigroup.has_words()) return nullptr;
  return semigroup.word(element);
}

}  // namespace

nlohmann::json pair_report_json(const TransitionSemigroup& semigroup, const std::vector<PairStatus>& statuses) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const PairStatus& s : statuses) {
    nlohmann::json j;
    j["pair"] = {s.p, s.q};
    j["colliding"] = s.colliding();
    if (s.colliding()) {
      j["colliding_by"] = to_string(*s.colliding_by);
      j["colliding_word"] = word_json(semigroup, s.colliding_element);
    }
    nlohmann::json focus = nlohmann::json::array();
    for (const FocusRecord& f : s.focused_by)
      focus.push_back({{"target", f.target}, {"by", to_string(f.by)}, {"word", word_json(semigroup, f.element)}});
    j["focused"] = std::move(focus);
    pairs.push_back(std::move(j));
  }
  return {{"n", semigroup.state_count()}, {"size", semigroup.size()}, {"pairs", std::move(pairs)}};
}

}  // namespace sfsyn
