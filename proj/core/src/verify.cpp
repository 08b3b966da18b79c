#include "polarx/verify.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <set>

#include "polarx/errors.hpp"
#include "polarx/params.hpp"
#include "polarx/io.hpp"

namespace polarx::verify {

using families::CrossPair;
using families::Family;
using qarith::c1_exact;
using qarith::c2_exact;
using qarith::gauss_binom;
using qarith::n_prime;
using qarith::polar_count;
using qarith::trivial_product;
using symplectic::Subspace;
using symplectic::intersection_dim;

namespace {

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  std::int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Seeded 64-bit Mersenne twister; uniform draws via modulo so streams are
// identical across platforms and standard library implementations.
struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  std::uint64_t below(std::uint64_t n) { return n ? gen() % n : 0; }
};

json subspace_json(const Subspace& s) {
  json rows = json::array();
  for (std::uint32_t r = 0; r < s.rank; ++r) {
    json row = json::array();
    for (auto v : s.row(r)) row.push_back(v);
    rows.push_back(std::move(row));
  }
  return json{{"dim", s.rank}, {"rows", std::move(rows)}};
}

json family_json(const Family& f, std::size_t full_limit = 512) {
  json j{{"m", f.m}, {"size", f.size()}};
  if (f.size() <= full_limit) {
    json members = json::array();
    for (const auto& s : f.members) members.push_back(subspace_json(s));
    j["members"] = std::move(members);
  }
  return j;
}

json pair_json(const CrossPair& p) {
  return json{{"t", p.t},
              {"f1", family_json(p.f1)},
              {"f2", family_json(p.f2)}};
}

CheckResult finish(CheckResult r, const Timer& timer) {
  r.runtime_ms = timer.ms();
  return r;
}

CheckResult infeasible_result(std::string check_id, json params,
                              const FeasibilityError& e, const Timer& timer) {
  CheckResult r{std::move(check_id), std::move(params), Status::kInfeasible};
  r.details = json{{"reason", e.what()},
                   {"predicted", e.predicted()},
                   {"cap", e.cap()}};
  return finish(std::move(r), timer);
}

std::vector<Subspace> load_universe(const VerifyOptions& opts,
                                    const SymplecticSpace& space,
                                    std::uint32_t m) {
  return io::load_or_build(opts.cache_dir, space, m, opts.enumeration_cap);
}

// Byte table of pairwise intersection dimensions between two universes.
struct PairTable {
  std::uint32_t n1 = 0, n2 = 0;
  std::vector<std::uint8_t> d;

  std::uint8_t dim(std::uint32_t i, std::uint32_t j) const {
    return d[static_cast<std::size_t>(i) * n2 + j];
  }
};

PairTable build_pair_table(const SymplecticSpace& space,
                           const std::vector<Subspace>& u1,
                           const std::vector<Subspace>& u2,
                           std::uint64_t table_cap) {
  PairTable tab;
  tab.n1 = static_cast<std::uint32_t>(u1.size());
  tab.n2 = static_cast<std::uint32_t>(u2.size());
  const std::uint64_t bytes =
      static_cast<std::uint64_t>(tab.n1) * tab.n2;
  if (bytes > table_cap)
    throw FeasibilityError("cross-intersection table exceeds cap",
                           std::to_string(bytes), table_cap);
  tab.d.resize(bytes);
  const bool symmetric = &u1 == &u2;
  for (std::uint32_t i = 0; i < tab.n1; ++i) {
    for (std::uint32_t j = symmetric ? i : 0; j < tab.n2; ++j) {
      const std::uint8_t dim = static_cast<std::uint8_t>(
          intersection_dim(space.field, u1[i], u2[j]));
      tab.d[static_cast<std::size_t>(i) * tab.n2 + j] = dim;
      if (symmetric) tab.d[static_cast<std::size_t>(j) * tab.n2 + i] = dim;
    }
  }
  return tab;
}

using IndexSet = std::vector<std::uint32_t>;

IndexSet closure_right(const PairTable& tab, const IndexSet& f1,
                       std::uint32_t t) {
  IndexSet out;
  for (std::uint32_t j = 0; j < tab.n2; ++j) {
    bool ok = true;
    for (auto i : f1) {
      if (tab.dim(i, j) < t) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(j);
  }
  return out;
}

IndexSet closure_left(const PairTable& tab, const IndexSet& f2,
                      std::uint32_t t) {
  IndexSet out;
  for (std::uint32_t i = 0; i < tab.n1; ++i) {
    bool ok = true;
    for (auto j : f2) {
      if (tab.dim(i, j) < t) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(i);
  }
  return out;
}

Family materialize(const std::vector<Subspace>& universe, const IndexSet& idx,
                   std::uint32_t m) {
  Family f{m, {}};
  f.members.reserve(idx.size());
  for (auto i : idx) f.members.push_back(universe[i]);
  return f;
}

struct SearchContext {
  const SymplecticSpace& space;
  const std::vector<Subspace>& u1;
  const std::vector<Subspace>& u2;
  const PairTable& tab;
  std::uint32_t m1, m2, t;

  CrossPair make_pair(const IndexSet& f1, const IndexSet& f2) const {
    return CrossPair{materialize(u1, f1, m1), materialize(u2, f2, m2), t};
  }

  bool pair_trivial(const IndexSet& f1, const IndexSet& f2) const {
    return families::is_trivial_pair(space, make_pair(f1, f2)).trivial;
  }
};

// Branch and bound over subsets of u1 in canonical order. The partner of
// any candidate family is its closure, so the admissible bound at a node
// is (|included| + |candidates|) * |closure(included)|. Include branches
// are explored first.
struct BranchAndBound {
  const SearchContext& ctx;
  std::uint64_t budget;
  bool only_nontrivial = false;

  std::uint64_t nodes = 0;
  bool exhausted = false;
  std::uint64_t best = 0;
  IndexSet best_f1, best_f2;

  explicit BranchAndBound(const SearchContext& c, std::uint64_t b)
      : ctx(c), budget(b) {}

  void run() {
    IndexSet all1(ctx.tab.n1);
    for (std::uint32_t i = 0; i < ctx.tab.n1; ++i) all1[i] = i;
    IndexSet all2(ctx.tab.n2);
    for (std::uint32_t j = 0; j < ctx.tab.n2; ++j) all2[j] = j;
    dfs({}, std::move(all1), std::move(all2));
  }

  void consider(const IndexSet& f1, const IndexSet& f2) {
    if (f1.empty() || f2.empty()) return;
    const std::uint64_t product =
        static_cast<std::uint64_t>(f1.size()) * f2.size();
    if (product <= best) return;
    if (only_nontrivial && ctx.pair_trivial(f1, f2)) return;
    best = product;
    best_f1 = f1;
    best_f2 = f2;
  }

  void dfs(IndexSet included, IndexSet candidates, IndexSet clo) {
    if (exhausted) return;
    if (++nodes > budget) {
      exhausted = true;
      return;
    }
    consider(included, clo);
    while (!candidates.empty() && !exhausted) {
      const std::uint64_t bound =
          static_cast<std::uint64_t>(included.size() + candidates.size()) *
          clo.size();
      if (bound <= best) return;
      const std::uint32_t c = candidates.front();
      candidates.erase(candidates.begin());
      IndexSet clo_inc;
      for (auto j : clo)
        if (ctx.tab.dim(c, j) >= ctx.t) clo_inc.push_back(j);
      if (!clo_inc.empty()) {
        IndexSet inc = included;
        inc.push_back(c);
        // drop candidates that would empty the closure outright
        IndexSet cand_inc;
        for (auto x : candidates) {
          for (auto j : clo_inc) {
            if (ctx.tab.dim(x, j) >= ctx.t) {
              cand_inc.push_back(x);
              break;
            }
          }
        }
        dfs(std::move(inc), std::move(cand_inc), std::move(clo_inc));
      }
      // exclude branch continues the loop with c dropped
    }
  }
};

// Enumerates every closed family attaining the proven optimum: forced
// members (the closed hull of the current node) are added eagerly, so the
// equality plateau collapses; nodes whose bound falls below the optimum
// are cut.
struct OptimalWitnessEnum {
  const SearchContext& ctx;
  std::uint64_t optimum;
  std::uint64_t budget;
  std::size_t max_witnesses;

  std::uint64_t nodes = 0;
  bool exhausted = false;
  bool truncated = false;
  std::set<IndexSet> seen;
  std::vector<std::pair<IndexSet, IndexSet>> found;

  OptimalWitnessEnum(const SearchContext& c, std::uint64_t opt,
                     std::uint64_t b, std::size_t maxw)
      : ctx(c), optimum(opt), budget(b), max_witnesses(maxw) {}

  void run() {
    if (optimum == 0) return;
    IndexSet all1(ctx.tab.n1);
    for (std::uint32_t i = 0; i < ctx.tab.n1; ++i) all1[i] = i;
    IndexSet all2(ctx.tab.n2);
    for (std::uint32_t j = 0; j < ctx.tab.n2; ++j) all2[j] = j;
    dfs({}, std::move(all1), std::move(all2));
  }

  void dfs(IndexSet included, IndexSet candidates, IndexSet clo) {
    if (exhausted || truncated) return;
    if (++nodes > budget) {
      exhausted = true;
      return;
    }
    // closed hull: every closed family above `included` contains it
    IndexSet hull = closure_left(ctx.tab, clo, ctx.t);
    if (!std::includes(hull.begin(), hull.end(), included.begin(),
                       included.end()))
      return;  // cannot happen for a true hull; defensive ordering only
    IndexSet extra;
    for (auto h : hull) {
      if (std::binary_search(included.begin(), included.end(), h)) continue;
      if (!std::binary_search(candidates.begin(), candidates.end(), h))
        return;  // a forced member was excluded: no closed set here
      extra.push_back(h);
    }
    if (!extra.empty()) {
      IndexSet merged;
      std::merge(included.begin(), included.end(), extra.begin(), extra.end(),
                 std::back_inserter(merged));
      included.swap(merged);
      IndexSet rest;
      for (auto x : candidates)
        if (!std::binary_search(extra.begin(), extra.end(), x))
          rest.push_back(x);
      candidates.swap(rest);
    }
    const std::uint64_t bound =
        static_cast<std::uint64_t>(included.size() + candidates.size()) *
        clo.size();
    if (bound < optimum) return;
    if (candidates.empty()) {
      if (!included.empty() && !clo.empty() &&
          static_cast<std::uint64_t>(included.size()) * clo.size() ==
              optimum &&
          seen.insert(included).second) {
        found.emplace_back(included, clo);
        if (found.size() >= max_witnesses) truncated = true;
      }
      return;
    }
    const std::uint32_t c = candidates.front();
    candidates.erase(candidates.begin());
    IndexSet clo_inc;
    for (auto j : clo)
      if (ctx.tab.dim(c, j) >= ctx.t) clo_inc.push_back(j);
    if (!clo_inc.empty()) {
      IndexSet inc = included;
      inc.insert(std::upper_bound(inc.begin(), inc.end(), c), c);
      dfs(std::move(inc), candidates, std::move(clo_inc));
    }
    dfs(std::move(included), std::move(candidates), std::move(clo));
  }
};

// Seeded hill climbing over maximal pairs: drop a random member of the
// left family, add a random compatible non-member, re-close both sides,
// accept when the product does not decrease; restart after 10^4
// non-improving steps. Restarts cycle through three seed shapes so both
// the common-core pairs and the non-trivial basins get visited.
struct Climber {
  const SearchContext& ctx;
  std::uint64_t budget;
  Rng rng;

  static constexpr std::uint64_t kRestartAfter = 10'000;

  IndexSet f1, f2;
  std::uint64_t product = 0;
  std::uint64_t iterations = 0;
  std::uint64_t restarts = 0;
  std::uint64_t non_improving = 0;

  std::uint64_t best = 0;
  IndexSet best_f1, best_f2;
  std::uint64_t best_nontrivial = 0;
  IndexSet best_nt_f1, best_nt_f2;

  Climber(const SearchContext& c, std::uint64_t b, std::uint64_t seed)
      : ctx(c), budget(b), rng(seed) {}

  void reclose() {
    f2 = closure_right(ctx.tab, f1, ctx.t);
    f1 = closure_left(ctx.tab, f2, ctx.t);
    product = f2.empty() ? 0
                         : static_cast<std::uint64_t>(f1.size()) * f2.size();
  }

  void track(const IndexSet& a, const IndexSet& b) {
    if (a.empty() || b.empty()) return;
    const std::uint64_t p = static_cast<std::uint64_t>(a.size()) * b.size();
    if (p > best) {
      best = p;
      best_f1 = a;
      best_f2 = b;
    }
    if (p > best_nontrivial && !ctx.pair_trivial(a, b)) {
      best_nontrivial = p;
      best_nt_f1 = a;
      best_nt_f2 = b;
    }
  }

  void restart() {
    const std::uint64_t shape = restarts % 3;
    ++restarts;
    const auto x = static_cast<std::uint32_t>(rng.below(ctx.tab.n1));
    f1 = {x};
    if (shape == 1) {
      // common-core seed: every member through a random t-subspace of x
      const auto cores =
          symplectic::subspaces_within(ctx.space, ctx.u1[x], ctx.t);
      const Subspace& core = cores[rng.below(cores.size())];
      f1.clear();
      for (std::uint32_t i = 0; i < ctx.tab.n1; ++i)
        if (symplectic::contains(ctx.space.field, ctx.u1[i], core))
          f1.push_back(i);
    } else if (shape == 2) {
      // two members meeting in exactly t dimensions with isotropic sum
      IndexSet mates;
      for (std::uint32_t i = 0; i < ctx.tab.n1; ++i) {
        if (i == x) continue;
        if (intersection_dim(ctx.space.field, ctx.u1[x], ctx.u1[i]) != ctx.t)
          continue;
        const Subspace s =
            symplectic::sum(ctx.space.field, ctx.u1[x], ctx.u1[i]);
        if (symplectic::is_isotropic(ctx.space, s)) mates.push_back(i);
      }
      if (!mates.empty()) {
        const auto y = mates[rng.below(mates.size())];
        f1.insert(std::upper_bound(f1.begin(), f1.end(), y), y);
      }
    }
    reclose();
    non_improving = 0;
    track(f1, f2);
  }

  void run() {
    if (ctx.tab.n1 == 0 || ctx.tab.n2 == 0) return;
    restart();
    while (iterations < budget) {
      ++iterations;
      step();
      if (non_improving >= kRestartAfter) restart();
    }
  }

  void step() {
    if (f1.empty()) {
      restart();
      return;
    }
    IndexSet g1 = f1;
    g1.erase(g1.begin() + static_cast<std::ptrdiff_t>(rng.below(g1.size())));
    IndexSet candidates;
    for (std::uint32_t x = 0; x < ctx.tab.n1; ++x) {
      if (std::binary_search(f1.begin(), f1.end(), x)) continue;
      bool ok = true;
      for (auto j : f2) {
        if (ctx.tab.dim(x, j) < ctx.t) {
          ok = false;
          break;
        }
      }
      if (ok) candidates.push_back(x);
    }
    if (!candidates.empty()) {
      const std::uint32_t add = candidates[rng.below(candidates.size())];
      g1.insert(std::upper_bound(g1.begin(), g1.end(), add), add);
    }
    IndexSet new_f2 = closure_right(ctx.tab, g1, ctx.t);
    IndexSet new_f1 = closure_left(ctx.tab, new_f2, ctx.t);
    const std::uint64_t new_product =
        new_f2.empty() ? 0
                       : static_cast<std::uint64_t>(new_f1.size()) *
                             new_f2.size();
    track(new_f1, new_f2);
    if (new_product > product) {
      non_improving = 0;
    } else {
      ++non_improving;
    }
    if (new_product >= product) {
      f1 = std::move(new_f1);
      f2 = std::move(new_f2);
      product = new_product;
    }
  }
};

json grid_json(const InequalityGrid& g) {
  return json{{"ratio_qs", g.ratio_qs}, {"ratio_max_m", g.ratio_max_m},
              {"mono_qs", g.mono_qs},   {"mono_max_nu", g.mono_max_nu},
              {"mono_max_b", g.mono_max_b}, {"qs", g.qs},
              {"max_nu", g.max_nu},     {"max_dim", g.max_dim},
              {"gap_qs", g.gap_qs},     {"gap_max_nu", g.gap_max_nu},
              {"gap_max_dim", g.gap_max_dim}};
}

}  // namespace

const char* to_string(Status s) {
  switch (s) {
    case Status::kPass: return "pass";
    case Status::kFail: return "fail";
    case Status::kInfeasible: return "infeasible";
  }
  return "unknown";
}

SearchMode parse_mode(const std::string& name) {
  if (name == "exact") return SearchMode::kExact;
  if (name == "stochastic") return SearchMode::kStochastic;
  throw ParameterError("unknown search mode: " + name);
}

CheckResult check_strictly_less(const std::string& check_id,
                                const ExactInt& lhs, const ExactInt& rhs,
                                json params) {
  Timer timer;
  CheckResult r{check_id, std::move(params)};
  if (lhs < rhs) {
    r.status = Status::kPass;
    r.details = json{{"lhs", to_decimal(lhs)}, {"rhs", to_decimal(rhs)}};
  } else {
    r.status = Status::kFail;
    r.details = json{{"violated", "lhs < rhs"},
                     {"lhs", to_decimal(lhs)},
                     {"rhs", to_decimal(rhs)}};
  }
  return finish(std::move(r), timer);
}

// --- counting oracles -------------------------------------------------------

std::vector<CheckResult> check_counts(std::int64_t nu, std::int64_t q,
                                      std::int64_t m_max,
                                      const VerifyOptions& opts) {
  std::vector<CheckResult> results;
  const SymplecticSpace space = symplectic::make_space(nu, q);
  std::vector<std::vector<Subspace>> levels(
      static_cast<std::size_t>(m_max) + 1);
  std::vector<bool> have(static_cast<std::size_t>(m_max) + 1, false);

  for (std::int64_t m = 0; m <= m_max; ++m) {
    Timer timer;
    json params{{"nu", nu}, {"q", q}, {"m", m}};
    CheckResult r{"counts-polar", params};
    try {
      levels[m] = load_universe(opts, space, static_cast<std::uint32_t>(m));
      have[m] = true;
      const ExactInt expected = polar_count(nu, m, q);
      const ExactInt actual = levels[m].size();
      r.details = json{{"enumerated", to_decimal(actual)},
                       {"formula", to_decimal(expected)}};
      r.status = actual == expected ? Status::kPass : Status::kFail;
      results.push_back(finish(std::move(r), timer));
    } catch (const FeasibilityError& e) {
      results.push_back(infeasible_result("counts-polar", params, e, timer));
    }
  }

  // Containing-counts against the closed formula, for up to 50 evenly
  // sampled fixed subspaces per dimension pair.
  for (std::int64_t m1 = 1; m1 < m_max; ++m1) {
    for (std::int64_t m = m1 + 1; m <= m_max; ++m) {
      if (!have[m1] || !have[m]) continue;
      Timer timer;
      json params{{"nu", nu}, {"q", q}, {"m1", m1}, {"m", m}};
      CheckResult r{"counts-containing", params};
      const auto& small = levels[m1];
      const auto& big = levels[m];
      const std::size_t samples = std::min<std::size_t>(50, small.size());
      const ExactInt expected = n_prime(m1, m, nu, q);
      bool ok = true;
      json witness;
      std::vector<std::size_t> picks;
      for (std::size_t k = 0; k < samples; ++k)
        picks.push_back(samples == 1 ? 0
                                     : k * (small.size() - 1) / (samples - 1));
      picks.erase(std::unique(picks.begin(), picks.end()), picks.end());
      for (auto pi : picks) {
        std::uint64_t count = 0;
        for (const auto& s : big)
          if (symplectic::contains(space.field, s, small[pi])) ++count;
        if (expected != count) {
          ok = false;
          witness = json{{"fixed", subspace_json(small[pi])},
                         {"count", count},
                         {"formula", to_decimal(expected)}};
          break;
        }
      }
      r.details = json{{"samples", picks.size()},
                       {"formula", to_decimal(expected)}};
      if (!ok) r.details["witness"] = witness;
      r.status = ok ? Status::kPass : Status::kFail;
      results.push_back(finish(std::move(r), timer));
    }
  }
  return results;
}

// --- inequality grids -------------------------------------------------------

namespace {

// Runs `body` over a grid; body returns nullopt or a violation witness.
template <typename Body>
CheckResult grid_check(const std::string& id, json params, Body&& body) {
  Timer timer;
  CheckResult r{id, std::move(params)};
  std::uint64_t points = 0;
  json witness;
  const bool ok = body(points, witness);
  r.details = json{{"points_checked", points}};
  if (!ok) {
    r.status = Status::kFail;
    r.details["witness"] = witness;
  }
  return finish(std::move(r), timer);
}

}  // namespace

std::vector<CheckResult> check_inequalities(const InequalityGrid& grid) {
  std::vector<CheckResult> results;
  const json gj = grid_json(grid);

  // q^{m-i} < (q^m - 1)/(q^i - 1) < q^{m-i+1}, cross-multiplied.
  results.push_back(grid_check(
      "gauss-ratio-bounds", gj, [&](std::uint64_t& points, json& witness) {
        for (auto q : grid.ratio_qs)
          for (std::int64_t m = 2; m <= grid.ratio_max_m; ++m)
            for (std::int64_t i = 1; i < m; ++i) {
              ++points;
              const ExactInt qm = exact_pow(q, m) - 1;
              const ExactInt qi = exact_pow(q, i) - 1;
              const ExactInt lo = exact_pow(q, m - i) * qi;
              const ExactInt hi = exact_pow(q, m - i + 1) * qi;
              if (!(lo < qm && qm < hi)) {
                witness = json{{"q", q}, {"m", m}, {"i", i},
                               {"lo", to_decimal(lo)},
                               {"mid", to_decimal(qm)},
                               {"hi", to_decimal(hi)}};
                return false;
              }
            }
        return true;
      }));

  // q^{i(m-i)} < [m choose i] < q^{i(m-i+1)}.
  results.push_back(grid_check(
      "gauss-binom-bounds", gj, [&](std::uint64_t& points, json& witness) {
        for (auto q : grid.ratio_qs)
          for (std::int64_t m = 2; m <= grid.ratio_max_m; ++m)
            for (std::int64_t i = 1; i < m; ++i) {
              ++points;
              const ExactInt mid = gauss_binom(m, i, q);
              const ExactInt lo = exact_pow(q, i * (m - i));
              const ExactInt hi = exact_pow(q, i * (m - i + 1));
              if (!(lo < mid && mid < hi)) {
                witness = json{{"q", q}, {"m", m}, {"i", i},
                               {"lo", to_decimal(lo)},
                               {"mid", to_decimal(mid)},
                               {"hi", to_decimal(hi)}};
                return false;
              }
            }
        return true;
      }));

  // Strict decrease of the cover-profile factor in the cover dimension.
  results.push_back(grid_check(
      "cover-bound-monotone", gj, [&](std::uint64_t& points, json& witness) {
        for (auto q : grid.mono_qs)
          for (std::int64_t b = 2; b <= grid.mono_max_b; ++b)
            for (std::int64_t t = 1; t < b; ++t)
              for (std::int64_t nu = b + 1; nu <= grid.mono_max_nu; ++nu)
                for (std::int64_t c = t; 2 * nu >= 2 * b + c + 1; ++c)
                  for (std::int64_t x = t; x < b; ++x) {
                    ++points;
                    const ExactInt g1 = qarith::g_func(b, c, x, nu, t, q);
                    const ExactInt g2 = qarith::g_func(b, c, x + 1, nu, t, q);
                    if (!(g2 < g1)) {
                      witness = json{{"q", q},   {"b", b}, {"t", t},
                                     {"nu", nu}, {"c", c}, {"x", x},
                                     {"g_x", to_decimal(g1)},
                                     {"g_x1", to_decimal(g2)}};
                      return false;
                    }
                  }
        return true;
      }));

  // c1 > s0(nu, m1, m2+1, t) * N'(t;m2;2nu), and the strengthened bound
  // when 2nu >= m1 + 2m2 - t + 4, both by exact cross-multiplication.
  results.push_back(grid_check(
      "c1-lower-bound", gj, [&](std::uint64_t& points, json& witness) {
        for (auto q : grid.qs)
          for (std::int64_t nu = 2; nu <= grid.max_nu; ++nu)
            for (std::int64_t t = 1; t <= grid.max_dim; ++t)
              for (std::int64_t m1 = t + 1;
                   m1 < nu && m1 <= grid.max_dim; ++m1)
                for (std::int64_t m2 = t + 1;
                     m2 < nu && m2 <= grid.max_dim; ++m2) {
                  ++points;
                  const ExactInt c1 = c1_exact(nu, m1, m2, t, q);
                  const ExactInt rhs =
                      qarith::s0(nu, m1, m2 + 1, t, q) *
                      n_prime(t, m2, nu, q);
                  if (!(c1 > rhs)) {
                    witness = json{{"q", q},   {"nu", nu}, {"m1", m1},
                                   {"m2", m2}, {"t", t},
                                   {"c1", to_decimal(c1)},
                                   {"rhs", to_decimal(rhs)}};
                    return false;
                  }
                  if (2 * nu >= m1 + 2 * m2 - t + 4) {
                    // c1 * q^2 > (q^2 * [m2-t+1 choose 1] - 1) * N' * N'
                    const ExactInt lhs = c1 * q * q;
                    const ExactInt rhs2 =
                        (q * q * gauss_binom(m2 - t + 1, 1, q) - 1) *
                        n_prime(t + 1, m1, nu, q) * n_prime(t, m2, nu, q);
                    if (!(lhs > rhs2)) {
                      witness = json{{"q", q},   {"nu", nu}, {"m1", m1},
                                     {"m2", m2}, {"t", t},
                                     {"bound", "strengthened"},
                                     {"lhs", to_decimal(lhs)},
                                     {"rhs", to_decimal(rhs2)}};
                      return false;
                    }
                  }
                }
        return true;
      }));

  // Sign of c2 - c1 matches the case split.
  results.push_back(grid_check(
      "c1-c2-ordering", gj, [&](std::uint64_t& points, json& witness) {
        for (auto q : grid.qs)
          for (std::int64_t nu = 2; nu <= grid.max_nu; ++nu)
            for (std::int64_t t = 1; t <= grid.max_dim; ++t)
              for (std::int64_t m1 = t + 1; m1 <= grid.max_dim; ++m1)
                for (std::int64_t m2 = t + 1; m2 <= m1; ++m2) {
                  if (2 * nu < 2 * m1 + m2 + t + 2) continue;
                  ++points;
                  const ExactInt c1 = c1_exact(nu, m1, m2, t, q);
                  const ExactInt c2 = c2_exact(nu, m1, m2, t, q);
                  const bool exceptional =
                      (m1 == 2 && m2 == 2 && t == 1) ||
                      (m1 == 3 && m2 == 2 && t == 1);
                  const bool expect_c1 = m2 > 2 * t || exceptional;
                  const bool got_c1 = c1 > c2;
                  if (expect_c1 != got_c1 || c1 == c2) {
                    witness = json{{"q", q},   {"nu", nu}, {"m1", m1},
                                   {"m2", m2}, {"t", t},
                                   {"c1", to_decimal(c1)},
                                   {"c2", to_decimal(c2)},
                                   {"expected", expect_c1 ? "c1 > c2"
                                                          : "c1 < c2"}};
                    return false;
                  }
                }
        return true;
      }));

  // Both products strictly decrease when the two dimensions are swapped.
  results.push_back(grid_check(
      "swap-monotone", gj, [&](std::uint64_t& points, json& witness) {
        for (auto q : grid.qs)
          for (std::int64_t nu = 2; nu <= grid.max_nu; ++nu)
            for (std::int64_t t = 1; t <= grid.max_dim; ++t)
              for (std::int64_t m1 = t + 2; m1 <= grid.max_dim; ++m1)
                for (std::int64_t m2 = t + 1; m2 < m1; ++m2) {
                  if (2 * nu < 2 * m1 + m2 + 2) continue;
                  ++points;
                  const ExactInt a1 = c1_exact(nu, m1, m2, t, q);
                  const ExactInt b1 = c1_exact(nu, m2, m1, t, q);
                  const ExactInt a2 = c2_exact(nu, m1, m2, t, q);
                  const ExactInt b2 = c2_exact(nu, m2, m1, t, q);
                  if (!(a1 > b1 && a2 > b2)) {
                    witness = json{{"q", q},   {"nu", nu}, {"m1", m1},
                                   {"m2", m2}, {"t", t},
                                   {"c1", to_decimal(a1)},
                                   {"c1_swapped", to_decimal(b1)},
                                   {"c2", to_decimal(a2)},
                                   {"c2_swapped", to_decimal(b2)}};
                    return false;
                  }
                }
        return true;
      }));

  // Product of the two cover-profile bounds is below the common-core
  // product for every profile other than (t, t).
  results.push_back(grid_check(
      "trivial-gap", gj, [&](std::uint64_t& points, json& witness) {
        for (auto q : grid.gap_qs)
          for (std::int64_t nu = 2; nu <= grid.gap_max_nu; ++nu)
            for (std::int64_t t = 1; t <= grid.gap_max_dim; ++t)
              for (std::int64_t m1 = t; m1 < nu && m1 <= grid.gap_max_dim;
                   ++m1)
                for (std::int64_t m2 = t; m2 <= m1; ++m2) {
                  if (2 * nu < 2 * m1 + m2 + 1) continue;
                  if (m2 >= nu) continue;
                  const ExactInt trivial =
                      trivial_product(nu, m1, m2, t, q);
                  for (std::int64_t tau1 = t; tau1 <= m2; ++tau1)
                    for (std::int64_t tau2 = t; tau2 <= m1; ++tau2) {
                      if (tau1 == t && tau2 == t) continue;
                      ++points;
                      const ExactInt lhs =
                          qarith::general_bound(tau1, tau2, nu, m1, m2, t,
                                                q) *
                          qarith::general_bound(tau2, tau1, nu, m2, m1, t,
                                                q);
                      if (!(lhs < trivial)) {
                        witness = json{{"q", q},     {"nu", nu},
                                       {"m1", m1},   {"m2", m2},
                                       {"t", t},     {"tau1", tau1},
                                       {"tau2", tau2},
                                       {"lhs", to_decimal(lhs)},
                                       {"trivial", to_decimal(trivial)}};
                        return false;
                      }
                    }
                }
        return true;
      }));

  return results;
}

// --- family identities ------------------------------------------------------

CheckResult check_family_identities(std::int64_t nu, std::int64_t q,
                                    std::int64_t m1, std::int64_t m2,
                                    std::int64_t t, std::uint64_t seed,
                                    int samples, const VerifyOptions& opts) {
  Timer timer;
  json params{{"nu", nu}, {"q", q},       {"m1", m1},
              {"m2", m2}, {"t", t},       {"seed", seed},
              {"samples", samples}};
  CheckResult r{"family-identities", params};
  try {
    const SymplecticSpace space = symplectic::make_space(nu, q);
    const auto u1 = load_universe(opts, space, static_cast<std::uint32_t>(m1));
    const auto u2 = load_universe(opts, space, static_cast<std::uint32_t>(m2));
    const auto hosts =
        load_universe(opts, space, static_cast<std::uint32_t>(m2 + 1));
    const auto cores =
        m2 == t + 1
            ? u2
            : load_universe(opts, space, static_cast<std::uint32_t>(t + 1));

    const ExactInt c1 = c1_exact(nu, m1, m2, t, q);
    const ExactInt c2 = c2_exact(nu, m1, m2, t, q);
    const auto [c1_s1, c1_s2] = qarith::c1_factors(nu, m1, m2, t, q);
    const auto [c2_s1, c2_s2] = qarith::c2_factors(nu, m1, m2, t, q);

    Rng rng(seed);
    json sampled = json::array();
    for (int k = 0; k < samples; ++k) {
      const Subspace& M = hosts[rng.below(hosts.size())];
      const auto t_subs = symplectic::subspaces_within(
          space, M, static_cast<std::uint32_t>(t));
      const Subspace& T = t_subs[rng.below(t_subs.size())];
      const Subspace& S = cores[rng.below(cores.size())];

      const Family fc1 = families::build_c1(
          space, M, T, static_cast<std::uint32_t>(m1),
          static_cast<std::uint32_t>(t), opts.enumeration_cap);
      const Family fc2 = families::build_c2(
          space, M, T, static_cast<std::uint32_t>(m2), opts.enumeration_cap);
      const Family fc3 = families::build_c3(
          space, S, static_cast<std::uint32_t>(m1), opts.enumeration_cap);
      const Family fc4 = families::build_c4(
          space, S, static_cast<std::uint32_t>(m2),
          static_cast<std::uint32_t>(t), opts.enumeration_cap);

      const CrossPair p12{fc1, fc2, static_cast<std::uint32_t>(t)};
      const CrossPair p34{fc3, fc4, static_cast<std::uint32_t>(t)};

      json entry{{"sample", k},
                 {"c1_sides", {fc1.size(), fc2.size()}},
                 {"c2_sides", {fc3.size(), fc4.size()}}};

      auto fail = [&](const std::string& why, json extra = {}) {
        r.status = Status::kFail;
        entry["why"] = why;
        if (!extra.empty()) entry["witness"] = std::move(extra);
        sampled.push_back(entry);
        r.details = json{{"samples", std::move(sampled)},
                         {"c1", to_decimal(c1)},
                         {"c2", to_decimal(c2)}};
      };

      if (ExactInt(fc1.size()) != c1_s1 || ExactInt(fc2.size()) != c1_s2 ||
          ExactInt(fc1.size()) * ExactInt(fc2.size()) != c1) {
        fail("c1 size identity",
             json{{"M", subspace_json(M)}, {"T", subspace_json(T)}});
        return finish(std::move(r), timer);
      }
      if (ExactInt(fc3.size()) != c2_s1 || ExactInt(fc4.size()) != c2_s2 ||
          ExactInt(fc3.size()) * ExactInt(fc4.size()) != c2) {
        fail("c2 size identity", json{{"S", subspace_json(S)}});
        return finish(std::move(r), timer);
      }

      const auto cc12 = families::cross_t_check(space, p12);
      const auto cc34 = families::cross_t_check(space, p34);
      if (!cc12.ok || !cc34.ok) {
        const auto& bad = cc12.ok ? cc34 : cc12;
        fail("cross-intersection",
             json{{"f1_member", subspace_json(bad.witness->first)},
                  {"f2_member", subspace_json(bad.witness->second)},
                  {"dim", bad.witness_dim}});
        return finish(std::move(r), timer);
      }

      const Family clo12 = families::closure_over(space, p12.f1, u2,
                                                  p12.t);
      const Family clo21 = families::closure_over(space, p12.f2, u1, p12.t);
      const Family clo34 = families::closure_over(space, p34.f1, u2, p34.t);
      const Family clo43 = families::closure_over(space, p34.f2, u1, p34.t);
      if (!(clo12 == p12.f2 && clo21 == p12.f1 && clo34 == p34.f2 &&
            clo43 == p34.f1)) {
        fail("maximality (closure fixpoint)");
        return finish(std::move(r), timer);
      }

      if (families::is_trivial_pair(space, p12).trivial ||
          families::is_trivial_pair(space, p34).trivial) {
        fail("pair is trivial");
        return finish(std::move(r), timer);
      }
      sampled.push_back(entry);
    }
    r.details = json{{"samples", std::move(sampled)},
                     {"c1", to_decimal(c1)},
                     {"c2", to_decimal(c2)}};
    return finish(std::move(r), timer);
  } catch (const FeasibilityError& e) {
    return infeasible_result("family-identities", params, e, timer);
  }
}

// --- searches ---------------------------------------------------------------

namespace {

struct LoadedSearch {
  SymplecticSpace space;
  std::vector<Subspace> u1, u2;
  PairTable tab;
};

LoadedSearch load_search(std::int64_t nu, std::int64_t q, std::int64_t m1,
                         std::int64_t m2, const VerifyOptions& opts) {
  LoadedSearch ls{symplectic::make_space(nu, q), {}, {}, {}};
  ls.u1 = load_universe(opts, ls.space, static_cast<std::uint32_t>(m1));
  ls.u2 = m1 == m2
              ? ls.u1
              : load_universe(opts, ls.space, static_cast<std::uint32_t>(m2));
  ls.tab = m1 == m2 ? build_pair_table(ls.space, ls.u1, ls.u1, opts.table_cap)
                    : build_pair_table(ls.space, ls.u1, ls.u2, opts.table_cap);
  return ls;
}

void require_search_params(std::int64_t nu, std::int64_t q, std::int64_t m1,
                           std::int64_t m2, std::int64_t t) {
  if (!factor_prime_power(q))
    throw ParameterError("search: q must be a prime power");
  if (!(t >= 1 && m2 >= t && m1 >= m2 && m1 <= nu))
    throw ParameterError("search: need 1 <= t <= m2 <= m1 <= nu");
  if (2 * nu < 2 * m1 + m2 + 1)
    throw ParameterError("search: need 2*nu >= 2*m1 + m2 + 1");
}

}  // namespace

SearchOutcome search_max_product(std::int64_t nu, std::int64_t q,
                                 std::int64_t m1, std::int64_t m2,
                                 std::int64_t t, SearchMode mode,
                                 std::uint64_t budget, std::uint64_t seed,
                                 const VerifyOptions& opts) {
  require_search_params(nu, q, m1, m2, t);
  Timer timer;
  const ExactInt trivial = trivial_product(nu, m1, m2, t, q);

  // The non-trivial optimum is asserted whenever the construction
  // products are evaluable; outside that range the non-trivial best is
  // reported, not asserted.
  ExactInt nontrivial_max = 0;
  bool have_prediction = false;
  try {
    const auto pred = qarith::predict_extremal(nu, m1, m2, t, q);
    nontrivial_max = pred.value;
    have_prediction = true;
  } catch (const ParameterError&) {
  }

  json params{{"nu", nu},     {"q", q},
              {"m1", m1},     {"m2", m2},
              {"t", t},       {"mode", mode == SearchMode::kExact
                                           ? "exact"
                                           : "stochastic"},
              {"budget", budget}, {"seed", seed}};

  if (mode == SearchMode::kExact) {
    // Feasibility: the ground-set product must stay under the cap.
    const ExactInt work =
        polar_count(nu, m1, q) * polar_count(nu, m2, q);
    if (work > opts.exact_search_cap)
      throw FeasibilityError("exact search ground set exceeds cap",
                             to_decimal(work), opts.exact_search_cap);
  }

  LoadedSearch ls = load_search(nu, q, m1, m2, opts);
  SearchContext ctx{ls.space,
                    ls.u1,
                    ls.u2,
                    ls.tab,
                    static_cast<std::uint32_t>(m1),
                    static_cast<std::uint32_t>(m2),
                    static_cast<std::uint32_t>(t)};

  SearchOutcome out;
  out.state.seed = seed;

  if (mode == SearchMode::kExact) {
    BranchAndBound bb(ctx, budget);
    bb.run();
    out.state.nodes_explored = bb.nodes;
    out.state.incumbent_product = bb.best;
    out.state.incumbent = ctx.make_pair(bb.best_f1, bb.best_f2);

    CheckResult r{"max-product-exact", params};
    if (bb.exhausted) {
      r.status = Status::kInfeasible;
      r.details = json{{"reason", "node budget exhausted"},
                       {"nodes", bb.nodes},
                       {"best_so_far", to_decimal(ExactInt(bb.best))}};
      out.result = finish(std::move(r), timer);
      return out;
    }

    // Non-trivial optimum, by a second pass that only accepts non-trivial
    // incumbents (the closure-based bound stays admissible).
    BranchAndBound nt(ctx, budget);
    nt.only_nontrivial = true;
    nt.run();
    if (!nt.exhausted && nt.best > 0) {
      out.best_nontrivial = ctx.make_pair(nt.best_f1, nt.best_f2);
      out.best_nontrivial_product = nt.best;
    }

    // All maximal pairs attaining the optimum.
    OptimalWitnessEnum we(ctx, bb.best, budget, 4096);
    we.run();
    for (const auto& [f1, f2] : we.found)
      out.optimal_pairs.push_back(ctx.make_pair(f1, f2));

    const bool optimum_ok = ExactInt(bb.best) == trivial;
    bool nontrivial_ok = true;
    if (have_prediction && !nt.exhausted)
      nontrivial_ok = ExactInt(nt.best) == nontrivial_max;
    r.status = optimum_ok && nontrivial_ok ? Status::kPass : Status::kFail;
    r.details =
        json{{"optimum", to_decimal(ExactInt(bb.best))},
             {"trivial_product", to_decimal(trivial)},
             {"nodes", bb.nodes},
             {"optimal_pair_count", we.found.size()},
             {"optimal_pairs_truncated", we.truncated},
             {"best_nontrivial", to_decimal(out.best_nontrivial_product)}};
    if (have_prediction)
      r.details["predicted_nontrivial"] = to_decimal(nontrivial_max);
    if (!optimum_ok)
      r.details["witness"] = pair_json(out.state.incumbent);
    out.result = finish(std::move(r), timer);
    return out;
  }

  Climber climber(ctx, budget, seed);
  climber.run();
  out.state.nodes_explored = climber.iterations;
  out.state.iterations = climber.iterations;
  out.state.incumbent_product = climber.best;
  out.state.incumbent = ctx.make_pair(climber.best_f1, climber.best_f2);
  if (climber.best_nontrivial > 0) {
    out.best_nontrivial =
        ctx.make_pair(climber.best_nt_f1, climber.best_nt_f2);
    out.best_nontrivial_product = climber.best_nontrivial;
  }

  CheckResult r{"search-no-exceed", params};
  const bool overall_ok = ExactInt(climber.best) <= trivial;
  bool nontrivial_ok = true;
  if (have_prediction)
    nontrivial_ok = ExactInt(climber.best_nontrivial) <= nontrivial_max;
  r.status = overall_ok && nontrivial_ok ? Status::kPass : Status::kFail;
  r.details = json{
      {"best", to_decimal(ExactInt(climber.best))},
      {"best_nontrivial", to_decimal(ExactInt(climber.best_nontrivial))},
      {"trivial_product", to_decimal(trivial)},
      {"iterations", climber.iterations},
      {"restarts", climber.restarts},
      {"attained_trivial", ExactInt(climber.best) == trivial}};
  if (have_prediction) {
    r.details["predicted_nontrivial"] = to_decimal(nontrivial_max);
    r.details["attained_nontrivial"] =
        ExactInt(climber.best_nontrivial) == nontrivial_max;
  }
  if (!overall_ok) r.details["witness"] = pair_json(out.state.incumbent);
  if (!nontrivial_ok && out.best_nontrivial)
    r.details["witness_nontrivial"] = pair_json(*out.best_nontrivial);
  out.result = finish(std::move(r), timer);
  return out;
}

CheckResult check_min_cover_cross(const SymplecticSpace& space,
                                  const families::CrossPair& pair,
                                  const VerifyOptions& opts) {
  Timer timer;
  CheckResult r{"min-cover-cross",
                json{{"m1", pair.f1.m}, {"m2", pair.f2.m}, {"t", pair.t}}};
  try {
    const auto cov1 = families::tau(space, pair.f1, pair.t,
                                    opts.enumeration_cap);
    const auto cov2 = families::tau(space, pair.f2, pair.t,
                                    opts.enumeration_cap);
    r.details = json{{"tau_f1", cov1.tau},
                     {"tau_f2", cov2.tau},
                     {"witnesses_f1", cov1.witnesses.size()},
                     {"witnesses_f2", cov2.witnesses.size()}};
    for (const auto& a : cov1.witnesses) {
      for (const auto& b : cov2.witnesses) {
        if (intersection_dim(space.field, a, b) < pair.t) {
          r.status = Status::kFail;
          r.details["witness"] = json{{"cover_f1", subspace_json(a)},
                                      {"cover_f2", subspace_json(b)}};
          return finish(std::move(r), timer);
        }
      }
    }
    return finish(std::move(r), timer);
  } catch (const FeasibilityError& e) {
    return infeasible_result("min-cover-cross", r.params, e, timer);
  }
}

std::vector<CheckResult> check_theorem1(std::int64_t nu, std::int64_t q,
                                        std::int64_t m1, std::int64_t m2,
                                        std::int64_t t, SearchMode mode,
                                        std::uint64_t budget,
                                        std::uint64_t seed,
                                        const VerifyOptions& opts) {
  std::vector<CheckResult> results;
  SearchOutcome out =
      search_max_product(nu, q, m1, m2, t, mode, budget, seed, opts);
  results.push_back(out.result);
  if (mode != SearchMode::kExact) return results;

  const SymplecticSpace space = symplectic::make_space(nu, q);
  json params{{"nu", nu}, {"q", q}, {"m1", m1}, {"m2", m2}, {"t", t}};

  {
    Timer timer;
    CheckResult r{"optimal-pairs-trivial", params};
    std::size_t checked = 0;
    for (const auto& pair : out.optimal_pairs) {
      ++checked;
      const auto tc = families::is_trivial_pair(space, pair);
      if (!tc.trivial) {
        r.status = Status::kFail;
        r.details = json{{"witness", pair_json(pair)}};
        break;
      }
    }
    r.details["optimal_pairs"] = out.optimal_pairs.size();
    r.details["checked"] = checked;
    results.push_back(finish(std::move(r), timer));
  }

  {
    Timer timer;
    CheckResult agg{"min-cover-cross", params};
    std::size_t checked = 0;
    for (const auto& pair : out.optimal_pairs) {
      CheckResult one = check_min_cover_cross(space, pair, opts);
      ++checked;
      if (one.status != Status::kPass) {
        agg.status = one.status;
        agg.details = one.details;
        break;
      }
    }
    if (out.best_nontrivial) {
      CheckResult one = check_min_cover_cross(space, *out.best_nontrivial,
                                              opts);
      ++checked;
      if (one.status != Status::kPass && agg.status == Status::kPass) {
        agg.status = one.status;
        agg.details = one.details;
      }
    }
    agg.details["pairs_checked"] = checked;
    results.push_back(finish(std::move(agg), timer));
  }
  return results;
}

std::vector<CheckResult> check_theorem2(std::int64_t nu, std::int64_t q,
                                        std::int64_t m1, std::int64_t m2,
                                        std::int64_t t, std::uint64_t budget,
                                        std::uint64_t seed,
                                        const VerifyOptions& opts) {
  std::vector<CheckResult> results;
  const auto pred = qarith::predict_extremal(nu, m1, m2, t, q);
  const SymplecticSpace space = symplectic::make_space(nu, q);
  json params{{"nu", nu}, {"q", q}, {"m1", m1},
              {"m2", m2}, {"t", t}, {"seed", seed}};

  const auto u1 = load_universe(opts, space, static_cast<std::uint32_t>(m1));
  const auto& u2_ref = m1 == m2 ? u1 : load_universe(
      opts, space, static_cast<std::uint32_t>(m2));

  // First canonical choices of the defining subspaces.
  Subspace M;
  symplectic::for_each_isotropic(space, static_cast<std::uint32_t>(m2 + 1),
                                 opts.enumeration_cap,
                                 [&](const Subspace& s) {
                                   M = s;
                                   return false;
                                 });
  const auto t_subs =
      symplectic::subspaces_within(space, M, static_cast<std::uint32_t>(t));
  const Subspace T = t_subs.front();
  Subspace S;
  symplectic::for_each_isotropic(space, static_cast<std::uint32_t>(t + 1),
                                 opts.enumeration_cap,
                                 [&](const Subspace& s) {
                                   S = s;
                                   return false;
                                 });

  const Family fc1 =
      families::build_c1(space, M, T, static_cast<std::uint32_t>(m1),
                         static_cast<std::uint32_t>(t), opts.enumeration_cap);
  const Family fc2 = families::build_c2(
      space, M, T, static_cast<std::uint32_t>(m2), opts.enumeration_cap);
  const Family fc3 = families::build_c3(
      space, S, static_cast<std::uint32_t>(m1), opts.enumeration_cap);
  const Family fc4 =
      families::build_c4(space, S, static_cast<std::uint32_t>(m2),
                         static_cast<std::uint32_t>(t), opts.enumeration_cap);
  const CrossPair p12{fc1, fc2, static_cast<std::uint32_t>(t)};
  const CrossPair p34{fc3, fc4, static_cast<std::uint32_t>(t)};

  {
    Timer timer;
    CheckResult r{"extremal-sizes", params};
    const ExactInt prod12 = ExactInt(fc1.size()) * ExactInt(fc2.size());
    const ExactInt prod34 = ExactInt(fc3.size()) * ExactInt(fc4.size());
    r.details = json{{"c1_sides", {fc1.size(), fc2.size()}},
                     {"c2_sides", {fc3.size(), fc4.size()}},
                     {"c1_product", to_decimal(prod12)},
                     {"c2_product", to_decimal(prod34)},
                     {"c1_formula", to_decimal(pred.c1)},
                     {"c2_formula", to_decimal(pred.c2)}};
    r.status = (prod12 == pred.c1 && prod34 == pred.c2) ? Status::kPass
                                                        : Status::kFail;
    results.push_back(finish(std::move(r), timer));
  }

  {
    Timer timer;
    CheckResult r{"extremal-maximality", params};
    const bool ok =
        families::closure_over(space, p12.f1, u2_ref, p12.t) == p12.f2 &&
        families::closure_over(space, p12.f2, u1, p12.t) == p12.f1 &&
        families::closure_over(space, p34.f1, u2_ref, p34.t) == p34.f2 &&
        families::closure_over(space, p34.f2, u1, p34.t) == p34.f1;
    r.status = ok ? Status::kPass : Status::kFail;
    r.details = json{{"pairs", {"c1-pair", "c2-pair"}}};
    results.push_back(finish(std::move(r), timer));
  }

  {
    Timer timer;
    CheckResult r{"extremal-nontrivial", params};
    const bool triv12 = families::is_trivial_pair(space, p12).trivial;
    const bool triv34 = families::is_trivial_pair(space, p34).trivial;
    r.status = (!triv12 && !triv34) ? Status::kPass : Status::kFail;
    r.details = json{{"c1_pair_trivial", triv12},
                     {"c2_pair_trivial", triv34}};
    results.push_back(finish(std::move(r), timer));
  }

  {
    Timer timer;
    CheckResult r{"extremal-cover-profile", params};
    const auto t1 = families::tau(space, p12.f1, p12.t, opts.enumeration_cap);
    const auto t2 = families::tau(space, p12.f2, p12.t, opts.enumeration_cap);
    const auto t3 = families::tau(space, p34.f1, p34.t, opts.enumeration_cap);
    const auto t4 = families::tau(space, p34.f2, p34.t, opts.enumeration_cap);
    r.details = json{{"c1_pair_profile", {t1.tau, t2.tau}},
                     {"c2_pair_profile", {t3.tau, t4.tau}},
                     {"expected", {t, t + 1}}};
    const auto tt = static_cast<std::uint32_t>(t);
    r.status = (t1.tau == tt && t2.tau == tt + 1 && t3.tau == tt &&
                t4.tau == tt + 1)
                   ? Status::kPass
                   : Status::kFail;
    results.push_back(finish(std::move(r), timer));
  }

  {
    Timer timer;
    CheckResult r{"extremal-prediction", params};
    const ExactInt prod12 = ExactInt(fc1.size()) * ExactInt(fc2.size());
    const ExactInt prod34 = ExactInt(fc3.size()) * ExactInt(fc4.size());
    const ExactInt observed_max = prod12 > prod34 ? prod12 : prod34;
    const bool tag_matches =
        (pred.tag == qarith::StructureTag::kC1Pair) == (prod12 > prod34);
    r.status = (pred.consistent && tag_matches && observed_max == pred.value)
                   ? Status::kPass
                   : Status::kFail;
    r.details = json{{"tag", qarith::to_string(pred.tag)},
                     {"value", to_decimal(pred.value)},
                     {"observed_max", to_decimal(observed_max)},
                     {"consistent", pred.consistent}};
    results.push_back(finish(std::move(r), timer));
  }

  SearchOutcome out = search_max_product(
      nu, q, m1, m2, t, SearchMode::kStochastic, budget, seed, opts);
  results.push_back(out.result);

  {
    Timer timer;
    CheckResult agg{"min-cover-cross", params};
    std::vector<const CrossPair*> pairs{&p12, &p34};
    if (out.best_nontrivial) pairs.push_back(&*out.best_nontrivial);
    if (!out.state.incumbent.f1.empty() && !out.state.incumbent.f2.empty())
      pairs.push_back(&out.state.incumbent);
    std::size_t checked = 0;
    for (const CrossPair* pair : pairs) {
      CheckResult one = check_min_cover_cross(space, *pair, opts);
      ++checked;
      if (one.status != Status::kPass) {
        agg.status = one.status;
        agg.details = one.details;
        break;
      }
    }
    agg.details["pairs_checked"] = checked;
    results.push_back(finish(std::move(agg), timer));
  }

  return results;
}

// --- d-wise -----------------------------------------------------------------

namespace {

// Bit tensor telling whether a d-tuple of members (one per universe) has a
// common intersection of dimension >= t.
struct DwiseTensor {
  std::vector<std::uint32_t> sizes;
  std::vector<std::uint8_t> bits;

  std::size_t index(const std::vector<std::uint32_t>& idx) const {
    std::size_t pos = 0;
    for (std::size_t k = 0; k < idx.size(); ++k)
      pos = pos * sizes[k] + idx[k];
    return pos;
  }
  bool ok(const std::vector<std::uint32_t>& idx) const {
    return bits[index(idx)] != 0;
  }
};

// Bits for subtrees whose running intersection is already below t stay 0:
// intersecting with more members only shrinks the dimension.
void fill_tensor(const SymplecticSpace& space,
                 const std::vector<const std::vector<Subspace>*>& universes,
                 std::uint32_t t, std::size_t level, const Subspace& running,
                 std::size_t base, DwiseTensor& tensor) {
  const auto& u = *universes[level];
  const bool last = level + 1 == universes.size();
  for (std::uint32_t i = 0; i < u.size(); ++i) {
    const std::size_t pos = base * u.size() + i;
    const Subspace inter =
        level == 0 ? u[i] : symplectic::intersect(space.field, running, u[i]);
    if (last) {
      if (inter.rank >= t) tensor.bits[pos] = 1;
    } else if (inter.rank >= t) {
      fill_tensor(space, universes, t, level + 1, inter, pos, tensor);
    }
  }
}

struct DwiseEngine {
  const SymplecticSpace& space;
  std::vector<const std::vector<Subspace>*> universes;
  DwiseTensor tensor;
  std::uint32_t t;

  // f_i <- every member of universe i compatible with all current
  // combinations of the other sides (vacuous when another side is empty).
  IndexSet dclosure(const std::vector<IndexSet>& fams, std::size_t side) {
    const std::size_t d = fams.size();
    std::vector<std::size_t> others;
    bool vacuous = false;
    for (std::size_t k = 0; k < d; ++k) {
      if (k == side) continue;
      others.push_back(k);
      if (fams[k].empty()) vacuous = true;
    }
    IndexSet out;
    std::vector<std::uint32_t> idx(d, 0);
    for (std::uint32_t g = 0; g < universes[side]->size(); ++g) {
      idx[side] = g;
      bool ok = true;
      if (!vacuous) {
        std::vector<std::size_t> pos(others.size(), 0);
        while (true) {
          for (std::size_t oi = 0; oi < others.size(); ++oi)
            idx[others[oi]] = fams[others[oi]][pos[oi]];
          if (!tensor.ok(idx)) {
            ok = false;
            break;
          }
          std::size_t oi = others.size();
          bool advanced = false;
          while (oi-- > 0) {
            if (++pos[oi] < fams[others[oi]].size()) {
              advanced = true;
              break;
            }
            pos[oi] = 0;
          }
          if (!advanced) break;
        }
      }
      if (ok) out.push_back(g);
    }
    return out;
  }

  bool valid_tuple(const std::vector<IndexSet>& fams) {
    const std::size_t d = fams.size();
    for (const auto& f : fams)
      if (f.empty()) return true;  // vacuous
    std::vector<std::size_t> pos(d, 0);
    std::vector<std::uint32_t> idx(d, 0);
    while (true) {
      for (std::size_t k = 0; k < d; ++k) idx[k] = fams[k][pos[k]];
      if (!tensor.ok(idx)) return false;
      std::size_t k = d;
      bool advanced = false;
      while (k-- > 0) {
        if (++pos[k] < fams[k].size()) {
          advanced = true;
          break;
        }
        pos[k] = 0;
      }
      if (!advanced) return true;
    }
  }
};

}  // namespace

CheckResult check_dwise(std::int64_t d, std::int64_t nu, std::int64_t q,
                        const std::vector<std::int64_t>& dims, std::int64_t t,
                        SearchMode mode, std::uint64_t budget,
                        std::uint64_t seed, const VerifyOptions& opts) {
  if (d < 2) throw ParameterError("check_dwise: need d >= 2");
  if (static_cast<std::int64_t>(dims.size()) != d)
    throw ParameterError("check_dwise: dims must list d dimensions");
  for (std::size_t i = 1; i < dims.size(); ++i)
    if (dims[i] > dims[i - 1])
      throw ParameterError("check_dwise: dims must be non-increasing");
  if (dims.back() < t || t < 1)
    throw ParameterError("check_dwise: need m_d >= t >= 1");
  if (2 * nu < 2 * dims[0] + dims[1] + 1)
    throw ParameterError("check_dwise: need 2*nu >= 2*m1 + m2 + 1");

  if (d == 2) {
    SearchOutcome out = search_max_product(nu, q, dims[0], dims[1], t, mode,
                                           budget, seed, opts);
    return out.result;
  }

  Timer timer;
  json params{{"d", d},   {"nu", nu},       {"q", q},
              {"dims", dims}, {"t", t},     {"budget", budget},
              {"seed", seed}};
  CheckResult r{"dwise-product", params};
  try {
    const SymplecticSpace space = symplectic::make_space(nu, q);

    ExactInt expected = 1;
    for (auto m : dims) expected *= n_prime(t, m, nu, q);

    // The common-core construction attains the expected product.
    Subspace T;
    symplectic::for_each_isotropic(space, static_cast<std::uint32_t>(t),
                                   opts.enumeration_cap,
                                   [&](const Subspace& s) {
                                     T = s;
                                     return false;
                                   });
    ExactInt attained = 1;
    for (auto m : dims) {
      const Family fam = families::build_trivial(
          space, T, static_cast<std::uint32_t>(m), opts.enumeration_cap);
      attained *= fam.size();
    }
    if (attained != expected) {
      r.status = Status::kFail;
      r.details = json{{"why", "construction does not attain the product"},
                       {"attained", to_decimal(attained)},
                       {"expected", to_decimal(expected)}};
      return finish(std::move(r), timer);
    }

    // Seeded stochastic search over d-tuples, closed under the d-wise
    // closure: nothing may beat the common-core product.
    std::vector<std::vector<Subspace>> universes;
    for (auto m : dims)
      universes.push_back(
          load_universe(opts, space, static_cast<std::uint32_t>(m)));

    DwiseEngine eng{space, {}, {}, static_cast<std::uint32_t>(t)};
    std::uint64_t cells = 1;
    for (const auto& u : universes) {
      eng.universes.push_back(&u);
      eng.tensor.sizes.push_back(static_cast<std::uint32_t>(u.size()));
      cells *= u.size();
      if (cells > opts.table_cap)
        throw FeasibilityError("d-wise tensor exceeds cap",
                               std::to_string(cells), opts.table_cap);
    }
    eng.tensor.bits.assign(cells, 0);
    fill_tensor(space, eng.universes, eng.t, 0,
                symplectic::zero_subspace(space.dim()), 0, eng.tensor);

    Rng rng(seed);
    std::vector<IndexSet> fams(static_cast<std::size_t>(d));
    std::uint64_t product = 0, best = 0, non_improving = 0, restarts = 0;
    std::vector<IndexSet> best_fams;

    auto tuple_product = [&](const std::vector<IndexSet>& fs) {
      std::uint64_t p = 1;
      for (const auto& f : fs) {
        if (f.empty()) return std::uint64_t{0};
        p *= f.size();
      }
      return p;
    };

    auto reclose = [&](std::vector<IndexSet>& fs) {
      for (int sweep = 0; sweep < 1000; ++sweep) {
        bool changed = false;
        for (std::size_t s = 0; s < fs.size(); ++s) {
          for (const auto& f : fs)
            if (f.empty()) return;  // dead tuple
          IndexSet next = eng.dclosure(fs, s);
          if (next != fs[s]) changed = true;
          fs[s] = std::move(next);
        }
        if (!changed) return;
      }
    };

    auto restart = [&] {
      const std::uint64_t shape = restarts % 2;
      ++restarts;
      non_improving = 0;
      fams.assign(static_cast<std::size_t>(d), {});
      const std::uint32_t x =
          static_cast<std::uint32_t>(rng.below(universes[0].size()));
      if (shape == 0) {
        // common-core seed across all sides
        const auto cores =
            symplectic::subspaces_within(space, universes[0][x], eng.t);
        const Subspace& core = cores[rng.below(cores.size())];
        for (std::size_t s = 0; s < fams.size(); ++s) {
          IndexSet seeded;
          for (std::uint32_t g = 0; g < universes[s].size(); ++g)
            if (symplectic::contains(space.field, (*eng.universes[s])[g],
                                     core))
              seeded.push_back(g);
          fams[s] = std::move(seeded);
        }
      } else {
        fams[0] = {x};
        for (std::size_t s = 1; s < fams.size(); ++s) {
          IndexSet seeded;
          for (std::uint32_t g = 0; g < universes[s].size(); ++g)
            if (intersection_dim(space.field, universes[0][x],
                                 (*eng.universes[s])[g]) >= eng.t)
              seeded.push_back(g);
          fams[s] = std::move(seeded);
        }
      }
      reclose(fams);
      product = tuple_product(fams);
      if (product > best) {
        best = product;
        best_fams = fams;
      }
    };

    restart();
    for (std::uint64_t it = 0; it < budget; ++it) {
      const std::size_t side = rng.below(fams.size());
      if (fams[side].empty()) {
        restart();
        continue;
      }
      std::vector<IndexSet> cand = fams;
      cand[side].erase(cand[side].begin() +
                       static_cast<std::ptrdiff_t>(
                           rng.below(cand[side].size())));
      IndexSet addable;
      for (std::uint32_t g = 0; g < universes[side].size(); ++g) {
        if (std::binary_search(fams[side].begin(), fams[side].end(), g))
          continue;
        std::vector<IndexSet> probe = cand;
        probe[side] = {g};
        if (eng.valid_tuple(probe)) addable.push_back(g);
      }
      if (!addable.empty()) {
        const std::uint32_t add = addable[rng.below(addable.size())];
        auto& f = cand[side];
        f.insert(std::upper_bound(f.begin(), f.end(), add), add);
      }
      reclose(cand);
      const std::uint64_t cand_product = tuple_product(cand);
      if (cand_product > best) {
        best = cand_product;
        best_fams = cand;
      }
      if (cand_product > product)
        non_improving = 0;
      else
        ++non_improving;
      if (cand_product >= product) {
        fams = std::move(cand);
        product = cand_product;
      }
      if (non_improving >= Climber::kRestartAfter) restart();
    }

    const bool ok = ExactInt(best) <= expected;
    r.status = ok ? Status::kPass : Status::kFail;
    r.details = json{{"expected", to_decimal(expected)},
                     {"attained", to_decimal(attained)},
                     {"search_best", to_decimal(ExactInt(best))},
                     {"restarts", restarts},
                     {"attained_by_search", ExactInt(best) == expected}};
    if (!ok) {
      json fams_json = json::array();
      for (std::size_t s = 0; s < best_fams.size(); ++s)
        fams_json.push_back(family_json(
            materialize(*eng.universes[s], best_fams[s],
                        static_cast<std::uint32_t>(dims[s]))));
      r.details["witness"] = std::move(fams_json);
    }
    return finish(std::move(r), timer);
  } catch (const FeasibilityError& e) {
    return infeasible_result("dwise-product", params, e, timer);
  }
}

// --- reporting --------------------------------------------------------------

json report_emit(const std::vector<CheckResult>& results,
                 const json& run_params, bool include_timings) {
  json checks = json::array();
  for (const auto& r : results) {
    json c{{"check_id", r.check_id},
           {"params", r.params},
           {"status", to_string(r.status)},
           {"details", r.details}};
    if (include_timings) c["runtime_ms"] = r.runtime_ms;
    checks.push_back(std::move(c));
  }
  return json{{"version", "1"},
              {"params", run_params},
              {"checks", std::move(checks)}};
}

bool any_failure(const std::vector<CheckResult>& results) {
  return std::any_of(results.begin(), results.end(), [](const CheckResult& r) {
    return r.status == Status::kFail;
  });
}

bool any_infeasible(const std::vector<CheckResult>& results) {
  return std::any_of(results.begin(), results.end(), [](const CheckResult& r) {
    return r.status == Status::kInfeasible;
  });
}

}  // namespace polarx::verify
