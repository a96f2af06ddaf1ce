#include "saten/ranking_io.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

#include "saten/error.h"

namespace saten {

std::string_view ToString(RankingFormat f) {
  return f == RankingFormat::kOrdinal ? "ordinal" : "degrees";
}

RankingFormat ParseRankingFormat(std::string_view name) {
  if (name == "degrees") return RankingFormat::kDegrees;
  if (name == "ordinal") return RankingFormat::kOrdinal;
  throw Error(ErrorKind::kConfig, "unknown ranking format '" +
                                      std::string(name) +
                                      "' (expected degrees or ordinal)");
}

namespace {

struct Line {
  std::size_t number;
  std::string key;
  std::string formula;
};

std::string_view Strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

bool IsRank(std::string_view key) {
  return !key.empty() && key.size() < 10 &&
         std::all_of(key.begin(), key.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) &&
         std::stoi(std::string(key)) > 0;
}

[[noreturn]] void Fail(ErrorKind kind, std::size_t line, const std::string& msg) {
  throw ParseError(kind, "line " + std::to_string(line) + ": " + msg, line);
}

}  // namespace

Ranking ParseRanking(std::string_view text, const ParseOptions& options) {
  std::vector<Line> lines;
  std::istringstream in{std::string(text)};
  std::string raw;
  for (std::size_t n = 1; std::getline(in, raw); ++n) {
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string_view s = Strip(raw);
    if (s.empty() || s.front() == '#') continue;
    std::size_t tab = raw.find('\t');
    if (tab == std::string::npos) {
      Fail(ErrorKind::kFileParse, n, "expected <degree><TAB><formula>");
    }
    lines.push_back(Line{n, std::string(Strip(std::string_view(raw).substr(0, tab))),
                         std::string(Strip(std::string_view(raw).substr(tab + 1)))});
  }

  auto formula_at = [&](const Line& l) {
    try {
      return Parse(l.formula, options);
    } catch (const Error& e) {
      Fail(e.kind(), l.number, e.what());
    }
  };

  const bool ordinal =
      !lines.empty() && std::all_of(lines.begin(), lines.end(),
                                    [](const Line& l) { return IsRank(l.key); });
  if (ordinal) {
    OrdinalRanking o;
    int max_rank = 0;
    for (const Line& l : lines) max_rank = std::max(max_rank, std::stoi(l.key));
    o.ranks.resize(static_cast<std::size_t>(max_rank));
    std::vector<Formula> seen;
    for (const Line& l : lines) {
      Formula f = formula_at(l);
      if (std::find(seen.begin(), seen.end(), f) != seen.end()) {
        Fail(ErrorKind::kDuplicateBelief, l.number,
             "belief " + Print(f) + " is already ranked");
      }
      seen.push_back(f);
      o.ranks[static_cast<std::size_t>(std::stoi(l.key) - 1)].push_back(f);
    }
    // Unused rank numbers close up.
    std::erase_if(o.ranks, [](const auto& rank) { return rank.empty(); });
    return FromOrdinal(o);
  }

  Ranking r;
  for (const Line& l : lines) {
    Degree d;
    try {
      d = Degree::Parse(l.key);
    } catch (const Error& e) {
      Fail(ErrorKind::kFileParse, l.number, e.what());
    }
    Formula f = formula_at(l);
    try {
      r.Insert(f, d);
    } catch (const Error& e) {
      Fail(e.kind(), l.number, e.what());
    }
  }
  return r;
}

std::string FormatRanking(const Ranking& r, RankingFormat format) {
  std::ostringstream os;
  std::size_t rank = 1;
  for (const Degree& d : r.Degrees()) {
    for (const Formula& f : r.AtDegree(d)) {
      if (format == RankingFormat::kOrdinal) {
        os << rank;
      } else {
        os << d;
      }
      os << '\t' << Print(f) << '\n';
    }
    ++rank;
  }
  return os.str();
}

Ranking LoadRanking(const std::filesystem::path& path,
                    const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::kNotFound, "cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseRanking(buf.str(), options);
}

void SaveRanking(const Ranking& r, const std::filesystem::path& path,
                 RankingFormat format) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorKind::kNotFound, "cannot write " + path.string());
  }
  out << FormatRanking(r, format);
}

}  // namespace saten
