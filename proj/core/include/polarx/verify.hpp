#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "polarx/exact.hpp"
#include "polarx/families.hpp"
#include "polarx/qarith.hpp"

namespace polarx::verify {

using nlohmann::json;
using symplectic::SymplecticSpace;

enum class Status { kPass, kFail, kInfeasible };

const char* to_string(Status s);

/// One verification check. A fail always carries a concrete witness in
/// `details`, reproducible from the params (plus seed where applicable);
/// exact integers are serialized as decimal strings.
struct CheckResult {
  std::string check_id;
  json params = json::object();
  Status status = Status::kPass;
  json details = json::object();
  std::int64_t runtime_ms = 0;
};

struct VerifyOptions {
  std::uint64_t enumeration_cap = 10'000'000;
  /// Exact-search feasibility: |P_m1| * |P_m2| must stay under this.
  std::uint64_t exact_search_cap = 2'000'000;
  /// Bytes allowed for a cross-intersection dimension table.
  std::uint64_t table_cap = 400'000'000;
  /// Optional POLAR1 cache directory (empty: enumerate in memory).
  std::filesystem::path cache_dir;
};

// --- counting oracles -------------------------------------------------------

/// For each m <= m_max: full enumeration count vs the closed formula, and
/// containing-counts for up to 50 deterministically sampled fixed
/// subspaces per dimension pair. Infeasible sizes report as such.
std::vector<CheckResult> check_counts(std::int64_t nu, std::int64_t q,
                                      std::int64_t m_max,
                                      const VerifyOptions& opts = {});

// --- inequality grids -------------------------------------------------------

struct InequalityGrid {
  std::vector<std::int64_t> ratio_qs = {2, 3, 4, 5, 7, 8, 9};
  std::int64_t ratio_max_m = 20;

  std::vector<std::int64_t> mono_qs = {2, 3, 4, 5};
  std::int64_t mono_max_nu = 12;
  std::int64_t mono_max_b = 8;

  std::vector<std::int64_t> qs = {2, 3, 4, 5, 7, 8, 9};
  std::int64_t max_nu = 12;
  std::int64_t max_dim = 8;

  std::vector<std::int64_t> gap_qs = {2, 3, 4, 5};
  std::int64_t gap_max_nu = 10;
  std::int64_t gap_max_dim = 6;
};

/// Exact-arithmetic inequality suites: Gaussian ratio and binomial bounds,
/// monotonicity of the cover-profile bound, the c1 lower bounds, the
/// c1/c2 ordering case split, both swap inequalities, and the product-gap
/// bound for cover profiles other than (t, t). Zero violations expected.
std::vector<CheckResult> check_inequalities(const InequalityGrid& grid = {});

// --- family identities ------------------------------------------------------

/// Constructed family sizes match the closed-form factorizations for
/// `samples` random choices of the defining subspaces; the pairs are
/// cross-t-intersecting, maximal and non-trivial.
CheckResult check_family_identities(std::int64_t nu, std::int64_t q,
                                    std::int64_t m1, std::int64_t m2,
                                    std::int64_t t, std::uint64_t seed,
                                    int samples = 10,
                                    const VerifyOptions& opts = {});

// --- searches ---------------------------------------------------------------

enum class SearchMode { kExact, kStochastic };

SearchMode parse_mode(const std::string& name);

struct SearchState {
  families::CrossPair incumbent;
  ExactInt incumbent_product = 0;
  std::uint64_t nodes_explored = 0;
  std::uint64_t iterations = 0;
  std::uint64_t seed = 0;
};

struct SearchOutcome {
  SearchState state;
  CheckResult result;
  /// Exact mode: every maximal pair attaining the proven optimum.
  std::vector<families::CrossPair> optimal_pairs;
  /// Best non-trivial maximal pair seen, when one was found.
  std::optional<families::CrossPair> best_nontrivial;
  ExactInt best_nontrivial_product = 0;
};

/// Exact mode: branch-and-bound over subsets of P_m1, closure-based
/// admissible bound (|included| + |candidates|) * |closure(included)|,
/// include-first; proves the global optimum, which must equal the
/// common-core product. Stochastic mode: seeded alternating-closure hill
/// climbing over maximal pairs; asserts the predicted optima are never
/// exceeded. Budget is a node cap (exact) or an iteration count
/// (stochastic).
SearchOutcome search_max_product(std::int64_t nu, std::int64_t q,
                                 std::int64_t m1, std::int64_t m2,
                                 std::int64_t t, SearchMode mode,
                                 std::uint64_t budget, std::uint64_t seed,
                                 const VerifyOptions& opts = {});

/// Exact optimum bundle: the search itself, triviality of every optimal
/// pair, and the minimum-cover cross check on the encountered pairs.
std::vector<CheckResult> check_theorem1(std::int64_t nu, std::int64_t q,
                                        std::int64_t m1, std::int64_t m2,
                                        std::int64_t t, SearchMode mode,
                                        std::uint64_t budget,
                                        std::uint64_t seed,
                                        const VerifyOptions& opts = {});

/// Extremal-structure property bundle at one parameter set: construction
/// sizes and products, maximality, non-triviality, cover profile (t, t+1),
/// prediction consistency, stochastic no-exceed, and the minimum-cover
/// cross check on every maximal pair encountered.
std::vector<CheckResult> check_theorem2(std::int64_t nu, std::int64_t q,
                                        std::int64_t m1, std::int64_t m2,
                                        std::int64_t t, std::uint64_t budget,
                                        std::uint64_t seed,
                                        const VerifyOptions& opts = {});

/// d-wise product maximum: the common-core construction attains
/// prod_i N'(t; m_i; 2nu), and a seeded stochastic search over d-tuples
/// closed under the d-wise closure finds nothing larger. d = 2 delegates
/// to search_max_product.
CheckResult check_dwise(std::int64_t d, std::int64_t nu, std::int64_t q,
                        const std::vector<std::int64_t>& dims, std::int64_t t,
                        SearchMode mode, std::uint64_t budget,
                        std::uint64_t seed, const VerifyOptions& opts = {});

/// All minimum-dimension t-covers of the two sides of a pair must pairwise
/// intersect in dimension >= t.
CheckResult check_min_cover_cross(const SymplecticSpace& space,
                                  const families::CrossPair& pair,
                                  const VerifyOptions& opts = {});

// --- reporting --------------------------------------------------------------

/// Deterministic JSON report. With include_timings = false the volatile
/// runtime_ms fields are omitted and reports for the same params and seed
/// are byte-identical across runs.
json report_emit(const std::vector<CheckResult>& results,
                 const json& run_params = json::object(),
                 bool include_timings = true);

bool any_failure(const std::vector<CheckResult>& results);
bool any_infeasible(const std::vector<CheckResult>& results);

/// Records an exact strict comparison as a check; used by self-tests of
/// the fail path (an intentionally false claim must produce a fail with
/// both sides as decimal strings).
CheckResult check_strictly_less(const std::string& check_id,
                                const ExactInt& lhs, const ExactInt& rhs,
                                json params);

}  // namespace polarx::verify
