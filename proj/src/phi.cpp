#include "sfsyn/phi.hpp"

#include <algorithm>
#include <unordered_map>

namespace sfsyn {

std::string to_string(PhiCase c) {
  std::string out = std::to_string(c.number);
  switch (c.sub) {
    case SubCase::none:
      break;
    case SubCase::p_below_r:
      out += "(p<r)";
      break;
    case SubCase::p_above_r:
      out += "(p>r)";
      break;
    case SubCase::i:
      out += "(i)";
      break;
    case SubCase::ii:
      out += "(ii)";
      break;
  }
  return out;
}

PhiContext PhiContext::from(const TransitionSemigroup& semigroup) {
  PhiContext ctx;
  ctx.n = semigroup.state_count();
  ctx.colliding = collision_summary(semigroup.elements()).colliding;
  ctx.semigroup = &semigroup;
  return ctx;
}

bool PhiContext::collides(State a, State b) const {
  if (a == b || a < 1 || b < 1 || a > n - 2 || b > n - 2) return false;
  return colliding.test(static_cast<std::size_t>(pair_index(n, a, b)));
}

namespace {

struct Analysis {
  PhiCase kase;
  Transformation image;
};

std::vector<State> interior_fixed(const Transformation& t) {
  std::vector<State> out;
  for (State q = 1; q < t.size() - 1; ++q)
    if (t[q] == q) out.push_back(q);
  return out;
}

// The two smallest states outside the excluded set.
std::pair<State, State> two_smallest_except(int n, StateSet excluded) {
  std::vector<State> free;
  for (State q = 0; q < n; ++q)
    if (!excluded.contains(q)) free.push_back(q);
  if (free.size() < 2) throw StructureError("fewer than two spare states");
  return {free[0], free[1]};
}

Analysis analyze(const Transformation& t) {
  const int n = t.size();
  if (n < 7) throw UnsupportedError("the mapping is defined for n >= 7");
  const State N = n - 1;
  if (t[N] != N) throw PreconditionError(to_string(t) + ": state n-1 is not fixed");
  if (in_degree(t, 0) > 0) throw PreconditionError(to_string(t) + ": state 0 has a preimage");
  const ZeroPath zp = zero_path(t);
  if (!zp.aperiodic() || zp.last() != N)
    throw PreconditionError(to_string(t) + ": the 0-path does not end aperiodically in n-1");

  if (in_wsf(t)) return {{1, SubCase::none}, t};

  const State p = t[0];
  std::vector<State> chain{p};
  while (t[chain.back()] != N) chain.push_back(t[chain.back()]);
  const std::size_t k = chain.size() - 1;

  Transformation s = t;
  s.set(0, N);

  if (has_cycle(t)) {
    State r = N;
    for (const auto& cycle : cycles(t)) r = std::min(r, cycle.front());
    s.set(p, r);
    for (std::size_t i = 1; i <= k; ++i) s.set(chain[i], chain[i - 1]);
    return {{2, SubCase::none}, s};
  }

  if (t[p] != N) {
    s.set(p, p);
    for (std::size_t i = 1; i <= k; ++i) s.set(chain[i], chain[i - 1]);
    return {{3, SubCase::none}, s};
  }

  const std::vector<State> fixed = interior_fixed(t);
  for (State r : fixed)
    if (in_degree(t, r) >= 2) {
      s.set(p, r);
      return {{4, SubCase::none}, s};
    }

  bool case5_shape = false;
  for (State r = 1; r < N; ++r) {
    if (t[r] == r || t[r] == N || in_degree(t, r) < 1) continue;
    case5_shape = true;
    if (t[t[r]] == N) {
      s.set(p, t[r]);
      return {{5, SubCase::none}, s};
    }
  }
  if (case5_shape) throw StructureError(to_string(t) + ": Case 5 applies but no state r has rt^2 = n-1");

  for (State r = 1; r < N; ++r) {
    if (in_degree(t, r) < 2) continue;
    const std::vector<State> R = preimage(t, r).to_vector();
    const bool below = p < r;
    const State q1 = below ? R[0] : R[1];
    const State q2 = below ? R[1] : R[0];
    s.set(p, q1);
    s.set(r, q1);
    s.set(q1, q2);
    s.set(q2, N);
    return {{6, below ? SubCase::p_below_r : SubCase::p_above_r}, s};
  }

  std::vector<State> moving;  // interior, not fixed, not sent to n-1
  for (State q = 1; q < N; ++q)
    if (t[q] != q && t[q] != N) moving.push_back(q);

  if (moving.size() >= 2) {
    const State q1 = moving[0], q2 = moving[1], r1 = t[q1];
    if (p == r1) throw StructureError(to_string(t) + ": p coincides with q1 t");
    s.set(p, q1);
    s.set(r1, q1);
    s.set(q1, p < r1 ? N : q2);
    return {{7, p < r1 ? SubCase::i : SubCase::ii}, s};
  }

  std::vector<State> lonely;  // interior fixed points of in-degree 1
  for (State f : fixed)
    if (in_degree(t, f) == 1) lonely.push_back(f);
  if (lonely.size() >= 2) {
    const State r1 = lonely[0], r2 = lonely[1];
    s.set(p, r2);
    s.set(r1, r2);
    s.set(r2, r1);
    return {{8, SubCase::none}, s};
  }

  if (moving.size() == 1) {
    const State q = moving[0], r = t[q];
    if (p == r) throw StructureError(to_string(t) + ": p coincides with qt");
    if (!fixed.empty() && p < r) {
      const State f = fixed[0];
      s.set(p, r);
      s.set(r, q);
      s.set(q, p);
      s.set(f, r);
      return {{9, SubCase::none}, s};
    }
    if (!fixed.empty()) {
      s.set(p, q);
      s.set(r, q);
      s.set(q, N);
      return {{10, SubCase::none}, s};
    }
    s.set(p, q);
    s.set(r, q);
    s.set(q, N);
    if (p < r) return {{11, SubCase::i}, s};
    const auto [r1, r2] = two_smallest_except(n, StateSet{0, p, q, r, N});
    s.set(r1, r2);
    s.set(r2, r1);
    return {{11, SubCase::ii}, s};
  }

  if (fixed.size() != 1) throw StructureError(to_string(t) + ": matches no case");
  const State f = fixed[0];
  for (State q = 1; q < N; ++q)
    if (q != f && t[q] != N) throw StructureError(to_string(t) + ": matches no case");
  const auto [r1, r2] = two_smallest_except(n, StateSet{0, p, f, N});
  s.set(p, f);
  s.set(r1, r2);
  s.set(r2, r1);
  return {{12, SubCase::none}, s};
}

struct Focused {
  State a, b, target;  // a < b
};

[[noreturn]] void not_in_image(const Transformation& s, const std::string& why) {
  throw NotInImageError(to_string(s) + " is not an image: " + why);
}

// Rebuilds the chain p = c0, c1, ..., ck.
std::vector<State> rebuild_chain(const Transformation& s, const PhiContext& ctx, State c0, std::optional<State> c1) {
  std::vector<State> chain{c0};
  if (!c1) return chain;
  chain.push_back(*c1);
  while (chain.size() <= static_cast<std::size_t>(ctx.n)) {
    const State prev = chain[chain.size() - 2], cur = chain.back();
    std::optional<State> next;
    for (State q = 1; q < ctx.n - 1; ++q) {
      if (s[q] != cur || !ctx.collides(q, prev)) continue;
      if (next) not_in_image(s, "chain continuation is ambiguous");
      next = q;
    }
    if (!next) return chain;
    chain.push_back(*next);
  }
  not_in_image(s, "chain does not terminate");
}

Transformation unwind_chain(Transformation t, const std::vector<State>& chain, State N) {
  t.set(0, chain[0]);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) t.set(chain[i], chain[i + 1]);
  t.set(chain.back(), N);
  return t;
}

std::pair<Transformation, PhiCase> candidate(const Transformation& s, const PhiContext& ctx) {
  const int n = s.size();
  const State N = n - 1;
  std::vector<Focused> fc;
  for (State a = 1; a < N; ++a)
    for (State b = a + 1; b < N; ++b)
      if (s[a] == s[b] && s[a] != 0 && s[a] != N && ctx.collides(a, b)) fc.push_back({a, b, s[a]});

  if (fc.empty()) {
    if (!in_wsf(s)) not_in_image(s, "outside Wsf");
    return {s, {1, SubCase::none}};
  }

  Transformation t = s;
  const auto single = [&]() -> const Focused& {
    if (fc.size() != 1) not_in_image(s, "expected exactly one focused colliding pair");
    return fc.front();
  };

  if (has_cycle(s)) {
    const std::vector<std::vector<State>> cyc = cycles(s);
    std::vector<int> cycle_len(static_cast<std::size_t>(n), 0);
    State min_cyclic = N;
    for (const auto& c : cyc) {
      for (State q : c) cycle_len[q] = static_cast<int>(c.size());
      min_cyclic = std::min(min_cyclic, c.front());
    }
    std::vector<Focused> on_cycle;
    for (const Focused& f : fc)
      if (cycle_len[f.target] > 0) on_cycle.push_back(f);

    if (!on_cycle.empty()) {
      std::optional<State> p_found;
      for (const Focused& f : on_cycle) {
        const bool a_on = cycle_len[f.a] > 0, b_on = cycle_len[f.b] > 0;
        if (f.target != min_cyclic || a_on == b_on) continue;
        if (p_found) not_in_image(s, "several pairs straddle the cycle at its least state");
        p_found = a_on ? f.b : f.a;
      }
      if (p_found) {
        const State p = *p_found;
        const std::vector<State> pre = preimage(s, p).to_vector();
        if (pre.size() > 1) not_in_image(s, "p has several preimages");
        const std::vector<State> chain =
            rebuild_chain(s, ctx, p, pre.empty() ? std::nullopt : std::optional<State>(pre[0]));
        return {unwind_chain(t, chain, N), {2, SubCase::none}};
      }
      const Focused& f = single();
      if (cycle_len[f.target] == 2) {
        const State r2 = f.target, r1 = s[r2];
        if (r1 > r2) not_in_image(s, "focus lands on the smaller state of the 2-cycle");
        if (f.a != r1 && f.b != r1) not_in_image(s, "pair misses the 2-cycle");
        const State p = f.a == r1 ? f.b : f.a;
        t.set(0, p);
        t.set(p, N);
        t.set(r1, r1);
        t.set(r2, r2);
        return {t, {8, SubCase::none}};
      }
      if (cycle_len[f.target] == 3) {
        const State r = f.target;
        const bool a_on = cycle_len[f.a] > 0, b_on = cycle_len[f.b] > 0;
        if (a_on == b_on) not_in_image(s, "pair focused into the 3-cycle is not split by it");
        const State p = a_on ? f.a : f.b, fp = a_on ? f.b : f.a;
        const State q = s[r];
        if (s[p] != r || s[q] != p) not_in_image(s, "3-cycle has the wrong orientation");
        t.set(0, p);
        t.set(p, N);
        t.set(r, N);
        t.set(q, r);
        t.set(fp, fp);
        return {t, {9, SubCase::none}};
      }
      not_in_image(s, "focus lands on a long cycle");
    }

    const Focused& f = single();
    std::vector<State> two_cycle;
    for (const auto& c : cyc)
      if (c.size() == 2) two_cycle = c;
    if (cyc.size() != 1 || two_cycle.empty()) not_in_image(s, "expected a single 2-cycle");
    t.set(two_cycle[0], N);
    t.set(two_cycle[1], N);
    if (s[f.target] == f.target) {
      if (f.target != f.a && f.target != f.b) not_in_image(s, "fixed focus outside the pair");
      const State p = f.target == f.a ? f.b : f.a;
      t.set(0, p);
      t.set(p, N);
      return {t, {12, SubCase::none}};
    }
    if (s[f.target] != N) not_in_image(s, "focus target does not fall into n-1");
    const State r = f.a, p = f.b, q = f.target;
    t.set(0, p);
    t.set(p, N);
    t.set(r, N);
    t.set(q, r);
    return {t, {11, SubCase::ii}};
  }

  // No cycles from here on.
  for (const Focused& f : fc) {
    if (s[f.target] != f.target || (f.target != f.a && f.target != f.b)) continue;
    const State z = f.target, other = z == f.a ? f.b : f.a;
    if (in_degree(s, z) == 2) {
      const std::vector<State> chain = rebuild_chain(s, ctx, z, other);
      return {unwind_chain(t, chain, N), {3, SubCase::none}};
    }
    t.set(0, other);
    t.set(other, N);
    return {t, {4, SubCase::none}};
  }

  const State z = fc.front().target;
  for (const Focused& f : fc)
    if (f.target != z) not_in_image(s, "focused colliding pairs have different targets");

  if (s[z] != N) {
    const Focused& f = single();
    const State q1 = z, q2 = s[z];
    if (s[q2] == N) {
      const bool below = q1 < q2;
      const State p = below ? f.a : f.b, r = below ? f.b : f.a;
      t.set(0, p);
      t.set(p, N);
      t.set(q1, r);
      t.set(q2, r);
      t.set(r, N);
      return {t, {6, below ? SubCase::p_below_r : SubCase::p_above_r}};
    }
    const State p = f.b, r1 = f.a;
    t.set(0, p);
    t.set(p, N);
    t.set(r1, N);
    t.set(q1, r1);
    return {t, {7, SubCase::ii}};
  }

  StateSet members;
  for (const Focused& f : fc) {
    members.insert(f.a);
    members.insert(f.b);
  }
  bool member_has_preimage = false;
  for (State m : members.to_vector())
    if (in_degree(s, m) >= 1) member_has_preimage = true;

  if (member_has_preimage) {
    State p = -1;
    if (fc.size() >= 2) {
      StateSet common{fc[0].a, fc[0].b};
      for (const Focused& f : fc) common = StateSet(common.bits() & StateSet{f.a, f.b}.bits());
      if (common.size() != 1) not_in_image(s, "focused pairs share no single state");
      p = common.to_vector().front();
    } else {
      const Focused& f = fc.front();
      const int da = in_degree(s, f.a), db = in_degree(s, f.b);
      if ((da == 0) == (db == 0)) not_in_image(s, "cannot tell p from r by in-degree");
      p = da == 0 ? f.a : f.b;
    }
    t.set(0, p);
    t.set(p, N);
    return {t, {5, SubCase::none}};
  }

  const Focused& f = single();
  bool other_mover = false;
  for (State q = 1; q < N; ++q)
    if (!members.contains(q) && s[q] != q && s[q] != N) other_mover = true;
  bool interior_fixed_point = false;
  for (State q = 1; q < N; ++q)
    if (s[q] == q) interior_fixed_point = true;

  PhiCase c;
  State p, r;
  if (other_mover) {
    c = {7, SubCase::i};
    p = f.a;
    r = f.b;
  } else if (interior_fixed_point) {
    c = {10, SubCase::none};
    p = f.b;
    r = f.a;
  } else {
    c = {11, SubCase::i};
    p = f.a;
    r = f.b;
  }
  t.set(0, p);
  t.set(p, N);
  t.set(r, N);
  t.set(z, r);
  return {t, c};
}

}  // namespace

PhiCase classify(const Transformation& t, const PhiContext&) { return analyze(t).kase; }

Transformation phi_image(const Transformation& t, const PhiContext&) { return analyze(t).image; }

PhiOutcome phi(const Transformation& t, const PhiContext& ctx) {
  const Analysis a = analyze(t);
  PhiOutcome out{t, a.kase, a.image, std::nullopt};
  try {
    out.reconstruction = phi_inverse(a.image, ctx);
  } catch (const NotInImageError&) {
  }
  return out;
}

namespace {

std::pair<Transformation, PhiCase> checked_candidate(const Transformation& s, const PhiContext& ctx) {
  if (s.size() < 7) throw UnsupportedError("the mapping is defined for n >= 7");
  if (s.size() != ctx.n) throw DimensionError("context and transformation differ in size");
  auto [t, c] = candidate(s, ctx);
  Analysis back;
  try {
    back = analyze(t);
  } catch (const PreconditionError&) {
    not_in_image(s, "candidate preimage " + to_string(t) + " is inadmissible");
  } catch (const StructureError&) {
    not_in_image(s, "candidate preimage " + to_string(t) + " matches no case");
  }
  if (back.image != s || back.kase.number != c.number)
    not_in_image(s, "candidate preimage " + to_string(t) + " maps elsewhere");
  if (ctx.semigroup && !ctx.semigroup->contains(t)) not_in_image(s, "candidate preimage " + to_string(t) + " is not in T");
  return {t, back.kase};
}

}  // namespace

Transformation phi_inverse(const Transformation& s, const PhiContext& ctx, InverseCheck check) {
  std::optional<Transformation> direct;
  try {
    direct = checked_candidate(s, ctx).first;
  } catch (const NotInImageError&) {
    if (check == InverseCheck::direct) throw;
  }
  if (check == InverseCheck::brute_force) {
    if (!ctx.semigroup) throw PreconditionError("brute-force inverse needs the semigroup in the context");
    std::optional<Transformation> found;
    for (const Transformation& t : ctx.semigroup->elements())
      if (analyze(t).image == s) {
        if (found) throw StructureError("two elements share the image " + to_string(s));
        found = t;
      }
    if (found != direct)
      throw StructureError("inverse of " + to_string(s) + " disagrees with the exhaustive scan");
    if (!found) not_in_image(s, "no element maps to it");
  }
  return *direct;
}

PhiCase inverse_case(const Transformation& s, const PhiContext& ctx) { return checked_candidate(s, ctx).second; }

InjectivityReport verify_injective(const TransitionSemigroup& semigroup) {
  InjectivityReport r;
  r.n = semigroup.state_count();
  r.size = semigroup.size();
  r.bound = wsf_bound(r.n);
  const PhiContext ctx = PhiContext::from(semigroup);
  const auto note = [&](std::string text) {
    if (r.counterexamples.size() < 20) r.counterexamples.push_back(std::move(text));
  };
  std::unordered_map<Transformation, Transformation, TransformationHash> seen;
  for (const Transformation& t : semigroup.elements()) {
    PhiOutcome o;
    try {
      o = phi(t, ctx);
    } catch (const Error& e) {
      r.round_trip = false;
      note(std::string("classification failed: ") + e.what());
      continue;
    }
    ++r.case_counts[to_string(o.kase)];
    if (!in_wsf(o.image)) {
      r.images_in_wsf = false;
      note("image outside Wsf: " + to_string(t) + " -> " + to_string(o.image));
    }
    const auto [it, fresh] = seen.emplace(o.image, t);
    if (!fresh) {
      r.images_distinct = false;
      note("shared image " + to_string(o.image) + " of " + to_string(it->second) + " and " + to_string(t));
    }
    if (!o.reconstruction || *o.reconstruction != t) {
      r.round_trip = false;
      note("round trip failed for " + to_string(t) + " (case " + to_string(o.kase) + ")");
    }
    if (o.kase.number != 1) {
      const PairSet focus = focused_pairs_of(o.image);
      if ((focus & ctx.colliding).none()) {
        r.images_outside_t = false;
        note("image " + to_string(o.image) + " focuses no colliding pair");
      }
    }
  }
  return r;
}

nlohmann::json to_json(const InjectivityReport& report) {
  nlohmann::json cases = nlohmann::json::object();
  for (const auto& [name, count] : report.case_counts) cases[name] = count;
  return {{"n", report.n},
          {"size", report.size},
          {"bound", to_string_u128(report.bound)},
          {"within_bound", report.within_bound()},
          {"images_in_wsf", report.images_in_wsf},
          {"images_distinct", report.images_distinct},
          {"round_trip", report.round_trip},
          {"non_identity_images_focus_colliding_pair", report.images_outside_t},
          {"case_counts", std::move(cases)},
          {"counterexamples", report.counterexamples},
          {"pass", report.passed()}};
}

std::optional<Transformation> strict_bound_witness(const TransitionSemigroup& semigroup) {
  const int n = semigroup.state_count();
  if (n < 7) throw UnsupportedError("the strict witness needs n >= 7");
  const PairSet coll = collision_summary(semigroup.elements()).colliding;
  for (int k = 0; k < pair_count(n); ++k) {
    if (!coll.test(static_cast<std::size_t>(k))) continue;
    const auto [p, r] = pair_at(n, k);
    const State N = n - 1;
    std::vector<State> rest;
    for (State q = 1; q < N; ++q)
      if (q != p && q != r) rest.push_back(q);
    Transformation s = Transformation::constant(n, N);
    s.set(p, r);
    s.set(r, r);
    s.set(rest[0], rest[1]);
    s.set(rest[1], rest[2]);
    s.set(rest[2], rest[0]);
    return s;
  }
  return std::nullopt;
}

}  // namespace sfsyn
