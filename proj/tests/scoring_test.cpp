#include "metronome/scoring.hpp"

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace metronome {
namespace {

constexpr Symbol S = Symbol::Strong;
constexpr Symbol W = Symbol::Weak;
constexpr Symbol B = Symbol::WordBreak;
constexpr Symbol L = Symbol::LineEnd;

void expect_invariants(const ScoreScheme& s) {
  const auto& m = s.substitution();
  for (std::size_t i = 0; i < kSymbolCount; ++i) {
    EXPECT_GT(m[i][i], 0);
    for (std::size_t j = 0; j < kSymbolCount; ++j) {
      EXPECT_EQ(m[i][j], m[j][i]);
      EXPECT_GE(m[i][i], m[i][j]);
    }
  }
  EXPECT_LE(s.gap_open(), 0);
  EXPECT_LE(s.gap_extend(), 0);
  EXPECT_GE(s.gap_extend(), s.gap_open());
}

SchemeError::Kind scheme_error_kind(const std::string& text, std::string* message = nullptr) {
  try {
    parse_scheme(text);
  } catch (const SchemeError& e) {
    if (message) *message = e.what();
    return e.kind();
  }
  ADD_FAILURE() << "scheme accepted:\n" << text;
  return SchemeError::Kind::Schema;
}

TEST(DefaultSchemeTest, QualitativeOrdering) {
  const ScoreScheme s = default_scheme();
  EXPECT_GT(s.score(L, L), s.score(S, S));
  EXPECT_GT(s.score(L, L), s.score(W, W));
  EXPECT_EQ(s.score(B, S), 0);
  EXPECT_EQ(s.score(B, W), 0);
  EXPECT_GT(s.score(B, B), 0);
  EXPECT_LT(s.score(S, W), 0);
  EXPECT_LT(s.score(L, S), 0);
  EXPECT_LT(s.score(L, B), 0);
  // One strong match survives one adjacent mismatch.
  EXPECT_GT(s.score(S, S) + s.score(S, W), 0);
  expect_invariants(s);
}

TEST(DefaultSchemeTest, Values) {
  const ScoreScheme s = default_scheme();
  EXPECT_EQ(s.score(S, S), 3);
  EXPECT_EQ(s.score(W, W), 3);
  EXPECT_EQ(s.score(L, L), 6);
  EXPECT_EQ(s.score(B, B), 2);
  EXPECT_EQ(s.score(S, W), -2);
  EXPECT_EQ(s.score(L, S), -6);
  EXPECT_EQ(s.gap_open(), -5);
  EXPECT_EQ(s.gap_extend(), -1);
}

TEST(UniformSchemeTest, Values) {
  const ScoreScheme s = uniform_scheme();
  EXPECT_EQ(s.score(S, S), 1);
  EXPECT_EQ(s.score(B, B), 1);
  EXPECT_EQ(s.score(S, W), -1);
  EXPECT_EQ(s.gap_open(), -1);
  EXPECT_EQ(s.gap_extend(), -1);
  expect_invariants(s);
}

TEST(CreateTest, RejectsInvariantViolations) {
  SubstitutionMatrix m = default_scheme().substitution();
  auto bad = m;
  bad[0][1] = 1;  // asymmetric
  EXPECT_THROW(ScoreScheme::create(bad, -5, -1), SchemeError);
  bad = m;
  bad[2][2] = 0;
  EXPECT_THROW(ScoreScheme::create(bad, -5, -1), SchemeError);
  EXPECT_THROW(ScoreScheme::create(m, 1, 0), SchemeError);
  EXPECT_THROW(ScoreScheme::create(m, -1, -5), SchemeError);
  EXPECT_NO_THROW(ScoreScheme::create(m, -3, -3));
}

TEST(SchemeFileTest, SaveLoadRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "metronome_scheme_roundtrip.toml";
  for (const ScoreScheme& s : {default_scheme(), uniform_scheme()}) {
    save_scheme(s, path);
    EXPECT_EQ(load_scheme(path), s);
  }
  Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    const ScoreScheme s = testing::random_scheme(rng);
    expect_invariants(s);
    EXPECT_EQ(parse_scheme(format_scheme(s)), s);
  }
  std::filesystem::remove(path);
}

TEST(SchemeFileTest, AcceptsEitherOrientationAndComments) {
  std::string text = format_scheme(default_scheme());
  const auto pos = text.find("S.w = -2");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 8, "w.S = -2   # same cell, other orientation");
  EXPECT_EQ(parse_scheme(text), default_scheme());
}

TEST(SchemeFileTest, DominanceViolationNamesCell) {
  std::string text = format_scheme(default_scheme());
  text.replace(text.find("S.w = -2"), 8, "S.w = 10");
  std::string message;
  EXPECT_EQ(scheme_error_kind(text, &message), SchemeError::Kind::Invariant);
  EXPECT_NE(message.find("dominance"), std::string::npos) << message;
  EXPECT_NE(message.find("S.w"), std::string::npos) << message;
}

TEST(SchemeFileTest, SchemaErrors) {
  const std::string good = format_scheme(default_scheme());

  std::string missing_extend = good;
  missing_extend.erase(missing_extend.find("extend = -1"), 11);
  EXPECT_EQ(scheme_error_kind(missing_extend), SchemeError::Kind::Schema);

  std::string missing_cell = good;
  missing_cell.erase(missing_cell.find("|.| = 6"), 7);
  EXPECT_EQ(scheme_error_kind(missing_cell), SchemeError::Kind::Schema);

  EXPECT_EQ(scheme_error_kind(good + "\n[gaps]\nbonus = 1\n"), SchemeError::Kind::Schema);
  EXPECT_EQ(scheme_error_kind(good + "\n[extras]\n"), SchemeError::Kind::Schema);
  EXPECT_EQ(scheme_error_kind(good + "\n[substitution]\nS.S = 3\n"), SchemeError::Kind::Schema);
  EXPECT_EQ(scheme_error_kind("[substitution]\nS.x = 1\n"), SchemeError::Kind::Schema);

  std::string not_int = good;
  not_int.replace(not_int.find("S.S = 3"), 7, "S.S = 3.5");
  EXPECT_EQ(scheme_error_kind(not_int), SchemeError::Kind::Schema);
}

TEST(SchemeFileTest, AsymmetricOrientationsConflict) {
  std::string text = format_scheme(default_scheme());
  text += "\n[substitution]\n";  // reopening a section is fine; keys must still be unique
  text += "w.S = -1\n";
  EXPECT_EQ(scheme_error_kind(text), SchemeError::Kind::Invariant);
}

TEST(SchemeFileTest, MissingFileIsIoError) {
  EXPECT_THROW(load_scheme("/nonexistent/dir/scheme.toml"), IoError);
}

}  // namespace
}  // namespace metronome
