#include "saten/ranking_io.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "generators.h"
#include "saten/error.h"

namespace saten {
namespace {

Degree D(const char* s) { return Degree::Parse(s); }
Formula F(const char* s) { return Parse(s); }

ErrorKind KindOf(std::string_view text) {
  try {
    ParseRanking(text);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for: " << text;
  return ErrorKind::kNotFound;
}

std::size_t LineOf(std::string_view text) {
  try {
    ParseRanking(text);
  } catch (const ParseError& e) {
    return e.position();
  } catch (const Error& e) {
    ADD_FAILURE() << "no position: " << e.what();
  }
  return 0;
}

TEST(RankingIo, SingleLine) {
  Ranking r = ParseRanking("0.7\ta->b\n");
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(*r.Find(F("a->b")), Degree(7, 10));
}

TEST(RankingIo, CommentsFractionsAndBlankLines) {
  Ranking r = ParseRanking("# base\n\n1/3\tp\n0.25\tq|r\n");
  EXPECT_EQ(*r.Find(F("p")), Degree(1, 3));
  EXPECT_EQ(*r.Find(F("q|r")), D("1/4"));
}

TEST(RankingIo, Errors) {
  EXPECT_EQ(KindOf("0.7\ta\n0.5\ta\n"), ErrorKind::kDuplicateBelief);
  EXPECT_EQ(KindOf("0.7 a\n"), ErrorKind::kFileParse);
  EXPECT_EQ(KindOf("0.7\ta&\n"), ErrorKind::kSyntax);
  EXPECT_EQ(KindOf("1.5\ta\n"), ErrorKind::kDomain);
  EXPECT_EQ(KindOf("x\ta\n"), ErrorKind::kFileParse);
  EXPECT_EQ(LineOf("0.7\ta\n\n0.5\ta\n"), 3u);
  EXPECT_EQ(LineOf("# c\n0.7\ta(\n"), 2u);
}

TEST(RankingIo, OrdinalFiles) {
  Ranking r = ParseRanking("1\ta\n1\tb\n3\tc\n");
  OrdinalRanking o = ToOrdinal(r);
  ASSERT_EQ(o.ranks.size(), 2u);
  EXPECT_EQ(o.ranks[0], (std::vector<Formula>{F("a"), F("b")}));
  EXPECT_EQ(o.ranks[1], std::vector<Formula>{F("c")});
  EXPECT_EQ(*r.Find(F("a")), D("2/3"));
}

TEST(RankingIo, FormatBothViews) {
  Ranking r{{F("b"), D("0.2")}, {F("a"), D("0.9")}, {F("c"), D("0.2")}};
  EXPECT_EQ(FormatRanking(r), "0.9\ta\n0.2\tb\n0.2\tc\n");
  EXPECT_EQ(FormatRanking(r, RankingFormat::kOrdinal), "1\ta\n2\tb\n2\tc\n");
  EXPECT_EQ(ParseRankingFormat("ordinal"), RankingFormat::kOrdinal);
  EXPECT_THROW(ParseRankingFormat("json"), Error);
}

TEST(RankingIo, RoundTrips) {
  gen::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    Ranking r = gen::PropositionalRanking(rng, 10, 5, 6, 3);
    EXPECT_EQ(ParseRanking(FormatRanking(r)), r);
    Ranking o = ParseRanking(FormatRanking(r, RankingFormat::kOrdinal));
    EXPECT_EQ(ToOrdinal(o), ToOrdinal(r));
  }
}

TEST(RankingIo, Files) {
  auto dir = std::filesystem::temp_directory_path() / "saten_ranking_io_test";
  std::filesystem::create_directories(dir);
  Ranking r{{F("*X(Bird(X)->Flies(X))"), D("3/7")}, {F("Bird(tweety)"), D("0.8")}};
  SaveRanking(r, dir / "r.rk");
  EXPECT_EQ(LoadRanking(dir / "r.rk"), r);
  try {
    LoadRanking(dir / "missing.rk");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotFound);
  }
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace saten
