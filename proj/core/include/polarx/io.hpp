#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "polarx/families.hpp"
#include "polarx/symplectic.hpp"

namespace polarx::io {

using symplectic::Subspace;
using symplectic::SymplecticSpace;

/// POLAR1 cache format: a header line
///   POLAR1 nu=<nu> q=<p>^<e> m=<m> count=<n>
/// followed by one subspace per line, as m * 2nu scalar indices (the gf
/// integer encoding), row-major, space-separated, lines in canonical
/// ascending order, LF endings.
struct PolarFile {
  std::int64_t nu = 0, p = 0, e = 0, m = 0;
  std::uint64_t count = 0;
  std::vector<Subspace> members;
};

void write_polar1(std::ostream& os, const SymplecticSpace& space,
                  std::uint32_t m, const std::vector<Subspace>& members);

/// Reads and fully validates a POLAR1 stream: well-formed header, every
/// line a canonical totally isotropic subspace of the declared dimension,
/// strictly ascending order, line count equal to the header count.
/// Throws IntegrityError naming `path` on any violation.
PolarFile read_polar1(std::istream& is, const std::string& path);

/// FAMILY1 format: same member lines as POLAR1 behind the header
///   FAMILY1 nu=.. q=<p>^<e> m=.. t=.. tag=<tag> choice=<spec> count=<n>
/// where <spec> is `-` or `;`-joined `name:dim:i0,i1,...` blocks encoding
/// the construction's defining subspaces.
struct FamilyFile {
  std::int64_t nu = 0, p = 0, e = 0, m = 0, t = 0;
  std::string tag;
  std::vector<std::pair<std::string, Subspace>> choices;
  families::Family family;
};

void write_family1(std::ostream& os, const SymplecticSpace& space,
                   const families::Family& family, std::uint32_t t,
                   const std::string& tag,
                   const std::vector<std::pair<std::string, Subspace>>& choices);

FamilyFile read_family1(std::istream& is, const std::string& path);

// --- cache directory management -------------------------------------------

std::string cache_filename(std::int64_t nu, std::int64_t p, std::int64_t e,
                           std::int64_t m);

struct CacheEntry {
  std::filesystem::path path;
  std::int64_t nu = 0, p = 0, e = 0, m = 0;
  std::uint64_t declared_count = 0;
  std::string expected_count;  // exact polar count, decimal
  bool ok = false;
  std::string note;
};

/// Headers of every *.polar1 file in dir, checked against the closed
/// formula (header scan only; use read_polar1 for full validation).
std::vector<CacheEntry> cache_status(const std::filesystem::path& dir);

/// Ensures the cache file for (space, m) exists and is valid; enumerates
/// and writes it if missing. A valid existing file is reused untouched.
/// Returns the file path.
std::filesystem::path cache_build(const std::filesystem::path& dir,
                                  const SymplecticSpace& space,
                                  std::uint32_t m, std::uint64_t cap);

/// Removes every *.polar1 file in dir; returns how many were removed.
std::size_t cache_clear(const std::filesystem::path& dir);

/// Loads P_m from the cache when dir is non-empty (building the file if
/// needed), else enumerates directly. A corrupt cache file is renamed to
/// <name>.quarantined and IntegrityError is rethrown.
std::vector<Subspace> load_or_build(const std::filesystem::path& dir,
                                    const SymplecticSpace& space,
                                    std::uint32_t m, std::uint64_t cap);

}  // namespace polarx::io
