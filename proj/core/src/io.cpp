#include "polarx/io.hpp"

#include <algorithm>
#include <optional>
#include <fstream>
#include <sstream>

#include "polarx/errors.hpp"
#include "polarx/qarith.hpp"

namespace polarx::io {

namespace {

void write_members(std::ostream& os, const std::vector<Subspace>& members) {
  for (const auto& s : members) {
    for (std::size_t i = 0; i < s.data.size(); ++i) {
      if (i) os << ' ';
      os << s.data[i];
    }
    os << '\n';
  }
}

[[noreturn]] void corrupt(const std::string& path, const std::string& why) {
  throw IntegrityError("corrupt cache file " + path + ": " + why, path);
}

// key=value tokens after the magic word.
std::int64_t header_int(const std::string& token, const std::string& key,
                        const std::string& path) {
  const std::string prefix = key + "=";
  if (token.rfind(prefix, 0) != 0)
    corrupt(path, "expected header field " + key);
  try {
    return std::stoll(token.substr(prefix.size()));
  } catch (const std::exception&) {
    corrupt(path, "bad header field " + key);
  }
}

struct QField {
  std::int64_t p = 0, e = 0;
};

QField header_q(const std::string& token, const std::string& path) {
  const std::string prefix = "q=";
  if (token.rfind(prefix, 0) != 0) corrupt(path, "expected header field q");
  const std::string body = token.substr(prefix.size());
  const auto caret = body.find('^');
  if (caret == std::string::npos) corrupt(path, "q must read p^e");
  try {
    return QField{std::stoll(body.substr(0, caret)),
                  std::stoll(body.substr(caret + 1))};
  } catch (const std::exception&) {
    corrupt(path, "bad header field q");
  }
}

std::vector<Subspace> read_members(std::istream& is, const std::string& path,
                                   const SymplecticSpace& space,
                                   std::int64_t m, std::uint64_t count,
                                   bool require_sorted) {
  std::vector<Subspace> members;
  members.reserve(count);
  const std::size_t want =
      static_cast<std::size_t>(m) * static_cast<std::size_t>(space.dim());
  std::string line;
  for (std::uint64_t i = 0; i < count; ++i) {
    if (!std::getline(is, line)) corrupt(path, "fewer lines than count");
    std::istringstream ls(line);
    Subspace s{space.dim(), static_cast<std::uint32_t>(m), {}};
    s.data.reserve(want);
    std::int64_t v;
    while (ls >> v) {
      if (v < 0 || v >= space.field.q())
        corrupt(path, "scalar index out of range");
      s.data.push_back(static_cast<gf::Scalar>(v));
    }
    if (!ls.eof()) corrupt(path, "malformed scalar");
    if (s.data.size() != want) corrupt(path, "wrong number of scalars");
    // A line must be exactly the canonical form of what it spans, totally
    // isotropic, of the declared dimension.
    linalg::Mat mat(s.rank, s.ambient);
    mat.a = s.data;
    const Subspace canon = symplectic::canonicalize(space.field, std::move(mat));
    if (canon != s) corrupt(path, "row list is not a canonical basis");
    if (!symplectic::is_isotropic(space, s))
      corrupt(path, "subspace is not totally isotropic");
    if (require_sorted && !members.empty() &&
        !symplectic::subspace_less(members.back(), s))
      corrupt(path, "lines out of canonical order");
    members.push_back(std::move(s));
  }
  if (std::getline(is, line) && !line.empty())
    corrupt(path, "trailing content after last member");
  return members;
}

std::string choice_spec(
    const std::vector<std::pair<std::string, Subspace>>& choices) {
  if (choices.empty()) return "-";
  std::ostringstream os;
  for (std::size_t i = 0; i < choices.size(); ++i) {
    if (i) os << ';';
    os << choices[i].first << ':' << choices[i].second.rank << ':';
    for (std::size_t j = 0; j < choices[i].second.data.size(); ++j) {
      if (j) os << ',';
      os << choices[i].second.data[j];
    }
  }
  return os.str();
}

}  // namespace

void write_polar1(std::ostream& os, const SymplecticSpace& space,
                  std::uint32_t m, const std::vector<Subspace>& members) {
  os << "POLAR1 nu=" << space.nu << " q=" << space.field.p() << '^'
     << space.field.e() << " m=" << m << " count=" << members.size() << '\n';
  write_members(os, members);
}

PolarFile read_polar1(std::istream& is, const std::string& path) {
  std::string header;
  if (!std::getline(is, header)) corrupt(path, "missing header");
  std::istringstream hs(header);
  std::string magic, tok_nu, tok_q, tok_m, tok_count;
  hs >> magic >> tok_nu >> tok_q >> tok_m >> tok_count;
  if (magic != "POLAR1") corrupt(path, "bad magic");
  PolarFile pf;
  pf.nu = header_int(tok_nu, "nu", path);
  const QField qf = header_q(tok_q, path);
  pf.p = qf.p;
  pf.e = qf.e;
  pf.m = header_int(tok_m, "m", path);
  pf.count = static_cast<std::uint64_t>(header_int(tok_count, "count", path));
  if (pf.nu < 1 || pf.m < 0 || pf.m > pf.nu) corrupt(path, "bad dimensions");
  std::optional<SymplecticSpace> space;
  try {
    space.emplace(SymplecticSpace{gf::field_make(pf.p, pf.e),
                                  static_cast<std::uint32_t>(pf.nu)});
  } catch (const ParameterError& err) {
    corrupt(path, err.what());
  }
  pf.members = read_members(is, path, *space, pf.m, pf.count, true);
  return pf;
}

void write_family1(std::ostream& os, const SymplecticSpace& space,
                   const families::Family& family, std::uint32_t t,
                   const std::string& tag,
                   const std::vector<std::pair<std::string, Subspace>>& choices) {
  os << "FAMILY1 nu=" << space.nu << " q=" << space.field.p() << '^'
     << space.field.e() << " m=" << family.m << " t=" << t << " tag=" << tag
     << " choice=" << choice_spec(choices) << " count=" << family.size()
     << '\n';
  write_members(os, family.members);
}

FamilyFile read_family1(std::istream& is, const std::string& path) {
  std::string header;
  if (!std::getline(is, header)) corrupt(path, "missing header");
  std::istringstream hs(header);
  std::string magic, tok_nu, tok_q, tok_m, tok_t, tok_tag, tok_choice,
      tok_count;
  hs >> magic >> tok_nu >> tok_q >> tok_m >> tok_t >> tok_tag >> tok_choice >>
      tok_count;
  if (magic != "FAMILY1") corrupt(path, "bad magic");
  FamilyFile ff;
  ff.nu = header_int(tok_nu, "nu", path);
  const QField qf = header_q(tok_q, path);
  ff.p = qf.p;
  ff.e = qf.e;
  ff.m = header_int(tok_m, "m", path);
  ff.t = header_int(tok_t, "t", path);
  if (tok_tag.rfind("tag=", 0) != 0) corrupt(path, "expected header field tag");
  ff.tag = tok_tag.substr(4);
  if (tok_choice.rfind("choice=", 0) != 0)
    corrupt(path, "expected header field choice");
  const std::string spec = tok_choice.substr(7);
  const std::uint64_t count =
      static_cast<std::uint64_t>(header_int(tok_count, "count", path));
  if (ff.nu < 1 || ff.m < 0 || ff.m > ff.nu) corrupt(path, "bad dimensions");

  std::optional<SymplecticSpace> sp;
  try {
    sp.emplace(SymplecticSpace{gf::field_make(ff.p, ff.e),
                               static_cast<std::uint32_t>(ff.nu)});
  } catch (const ParameterError& err) {
    corrupt(path, err.what());
  }
  const SymplecticSpace& space = *sp;

  if (spec != "-") {
    std::istringstream ss(spec);
    std::string block;
    while (std::getline(ss, block, ';')) {
      const auto c1 = block.find(':');
      const auto c2 = block.find(':', c1 + 1);
      if (c1 == std::string::npos || c2 == std::string::npos)
        corrupt(path, "bad choice block");
      const std::string name = block.substr(0, c1);
      std::int64_t dim = 0;
      try {
        dim = std::stoll(block.substr(c1 + 1, c2 - c1 - 1));
      } catch (const std::exception&) {
        corrupt(path, "bad choice dimension");
      }
      Subspace s{space.dim(), static_cast<std::uint32_t>(dim), {}};
      std::istringstream vs(block.substr(c2 + 1));
      std::string item;
      while (std::getline(vs, item, ',')) {
        std::int64_t v = 0;
        try {
          v = std::stoll(item);
        } catch (const std::exception&) {
          corrupt(path, "bad choice scalar");
        }
        if (v < 0 || v >= space.field.q())
          corrupt(path, "choice scalar out of range");
        s.data.push_back(static_cast<gf::Scalar>(v));
      }
      if (s.data.size() != static_cast<std::size_t>(dim) * space.dim())
        corrupt(path, "bad choice length");
      ff.choices.emplace_back(name, std::move(s));
    }
  }

  auto members = read_members(is, path, space, ff.m, count, true);
  ff.family =
      families::Family{static_cast<std::uint32_t>(ff.m), std::move(members)};
  return ff;
}

std::string cache_filename(std::int64_t nu, std::int64_t p, std::int64_t e,
                           std::int64_t m) {
  std::ostringstream os;
  os << "polar_nu" << nu << "_q" << p << "e" << e << "_m" << m << ".polar1";
  return os.str();
}

std::vector<CacheEntry> cache_status(const std::filesystem::path& dir) {
  std::vector<CacheEntry> entries;
  if (!std::filesystem::exists(dir)) return entries;
  std::vector<std::filesystem::path> files;
  for (const auto& de : std::filesystem::directory_iterator(dir))
    if (de.is_regular_file() && de.path().extension() == ".polar1")
      files.push_back(de.path());
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    CacheEntry ce;
    ce.path = path;
    try {
      std::ifstream f(path);
      std::string header;
      if (!std::getline(f, header)) corrupt(path.string(), "missing header");
      std::istringstream hs(header);
      std::string magic, tok_nu, tok_q, tok_m, tok_count;
      hs >> magic >> tok_nu >> tok_q >> tok_m >> tok_count;
      if (magic != "POLAR1") corrupt(path.string(), "bad magic");
      ce.nu = header_int(tok_nu, "nu", path.string());
      const QField qf = header_q(tok_q, path.string());
      ce.p = qf.p;
      ce.e = qf.e;
      ce.m = header_int(tok_m, "m", path.string());
      ce.declared_count = static_cast<std::uint64_t>(
          header_int(tok_count, "count", path.string()));
      std::int64_t q = 1;
      for (std::int64_t i = 0; i < ce.e; ++i) q *= ce.p;
      const ExactInt expected = qarith::polar_count(ce.nu, ce.m, q);
      ce.expected_count = to_decimal(expected);
      ce.ok = (expected == ce.declared_count);
      if (!ce.ok) ce.note = "count disagrees with closed formula";
    } catch (const std::exception& err) {
      ce.ok = false;
      ce.note = err.what();
    }
    entries.push_back(std::move(ce));
  }
  return entries;
}

namespace {

std::vector<Subspace> read_validated_cache(const std::filesystem::path& path,
                                           const SymplecticSpace& space,
                                           std::uint32_t m) {
  std::ifstream f(path);
  if (!f) corrupt(path.string(), "cannot open");
  PolarFile pf = read_polar1(f, path.string());
  if (pf.nu != space.nu || pf.p != space.field.p() || pf.e != space.field.e() ||
      pf.m != m)
    corrupt(path.string(), "header does not match requested parameters");
  const ExactInt expected = qarith::polar_count(pf.nu, pf.m, space.field.q());
  if (expected != pf.count)
    corrupt(path.string(), "count disagrees with closed formula");
  return std::move(pf.members);
}

}  // namespace

std::filesystem::path cache_build(const std::filesystem::path& dir,
                                  const SymplecticSpace& space,
                                  std::uint32_t m, std::uint64_t cap) {
  std::filesystem::create_directories(dir);
  const auto path = dir / cache_filename(space.nu, space.field.p(),
                                         space.field.e(), m);
  if (std::filesystem::exists(path)) {
    read_validated_cache(path, space, m);  // reuse after validation
    return path;
  }
  const auto members = symplectic::enumerate_isotropic(space, m, cap);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    write_polar1(f, space, m, members);
  }
  std::filesystem::rename(tmp, path);
  return path;
}

std::size_t cache_clear(const std::filesystem::path& dir) {
  if (!std::filesystem::exists(dir)) return 0;
  std::size_t removed = 0;
  for (const auto& de : std::filesystem::directory_iterator(dir)) {
    if (de.is_regular_file() && de.path().extension() == ".polar1") {
      std::filesystem::remove(de.path());
      ++removed;
    }
  }
  return removed;
}

std::vector<Subspace> load_or_build(const std::filesystem::path& dir,
                                    const SymplecticSpace& space,
                                    std::uint32_t m, std::uint64_t cap) {
  if (dir.empty()) return symplectic::enumerate_isotropic(space, m, cap);
  const auto path = dir / cache_filename(space.nu, space.field.p(),
                                         space.field.e(), m);
  if (std::filesystem::exists(path)) {
    try {
      return read_validated_cache(path, space, m);
    } catch (const IntegrityError&) {
      std::filesystem::rename(path, path.string() + ".quarantined");
      throw;
    }
  }
  cache_build(dir, space, m, cap);
  return read_validated_cache(path, space, m);
}

}  // namespace polarx::io
