#ifndef SATEN_RANKING_IO_H_
#define SATEN_RANKING_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "saten/entrenchment.h"
#include "saten/formula.h"

namespace saten {

enum class RankingFormat { kDegrees, kOrdinal };

std::string_view ToString(RankingFormat f);
// "degrees" or "ordinal". Throws ConfigError.
RankingFormat ParseRankingFormat(std::string_view name);

// Reads `degree<TAB>formula` lines, degrees written as decimals or p/q.
// Blank lines and lines starting with '#' are skipped. A file whose first
// fields are all positive integers is an ordinal file (`rank<TAB>formula`)
// and is embedded with FromOrdinal. Errors carry the 1-based line number:
// ParseError for malformed lines and formulae, DuplicateBelief, DomainError.
Ranking ParseRanking(std::string_view text, const ParseOptions& options = {});

// One line per belief, highest degree first, insertion order within a rank.
std::string FormatRanking(const Ranking& r,
                          RankingFormat format = RankingFormat::kDegrees);

Ranking LoadRanking(const std::filesystem::path& path,
                    const ParseOptions& options = {});
void SaveRanking(const Ranking& r, const std::filesystem::path& path,
                 RankingFormat format = RankingFormat::kDegrees);

}  // namespace saten

#endif  // SATEN_RANKING_IO_H_
