#include "metronome/corpus.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace metronome {
namespace {

CorpusError::Kind corpus_error(const std::string& line) {
  try {
    parse_record(line);
  } catch (const CorpusError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "accepted: " << line;
  return CorpusError::Kind::Empty;
}

TEST(CorpusTest, ParsesRecord) {
  const auto r = parse_record(R"({"id": "p1", "labels": {"meter": "iamb5", "language": "cs"}, "metronome": "wS.wS|"})");
  EXPECT_EQ(r.id, "p1");
  EXPECT_EQ(r.label("meter"), "iamb5");
  EXPECT_EQ(r.label("language"), "cs");
  EXPECT_EQ(r.label("author"), "");
  EXPECT_EQ(r.metronome.render(), "wS.wS|");
  const auto bare = parse_record(R"({"id": "p2", "metronome": "S"})");
  EXPECT_TRUE(bare.labels.empty());
}

TEST(CorpusTest, SchemaErrors) {
  EXPECT_EQ(corpus_error(R"({"id": "p", "metronome": "wS", "extra": 1})"), CorpusError::Kind::Schema);
  EXPECT_EQ(corpus_error(R"({"metronome": "wS"})"), CorpusError::Kind::Schema);
  EXPECT_EQ(corpus_error(R"({"id": "p"})"), CorpusError::Kind::Schema);
  EXPECT_EQ(corpus_error(R"({"id": 3, "metronome": "wS"})"), CorpusError::Kind::Schema);
  EXPECT_EQ(corpus_error(R"({"id": "", "metronome": "wS"})"), CorpusError::Kind::Schema);
  EXPECT_EQ(corpus_error(R"({"id": "p", "labels": {"meter": 5}, "metronome": "wS"})"), CorpusError::Kind::Schema);
  EXPECT_EQ(corpus_error(R"({"id": "p", "labels": [], "metronome": "wS"})"), CorpusError::Kind::Schema);
  EXPECT_EQ(corpus_error("[1, 2]"), CorpusError::Kind::Schema);
  EXPECT_EQ(corpus_error("{not json"), CorpusError::Kind::Schema);
}

TEST(CorpusTest, BadMetronomeIsParseError) {
  EXPECT_THROW(parse_record(R"({"id": "p", "metronome": "wX"})"), ParseError);
  EXPECT_THROW(parse_record(R"({"id": "p", "metronome": ".wS"})"), ParseError);
}

TEST(CorpusTest, RoundTrip) {
  std::vector<CorpusRecord> records = {
      {"a", {{"meter", "x"}, {"language", "la"}}, MetronomeString::parse("wS.wS|Sw|")},
      {"b \"quoted\"", {}, MetronomeString::parse("S")},
  };
  std::stringstream ss;
  write_corpus(ss, records);
  const auto back = read_corpus(ss);
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(back[i].id, records[i].id);
    EXPECT_EQ(back[i].labels, records[i].labels);
    EXPECT_EQ(back[i].metronome, records[i].metronome);
  }
}

TEST(CorpusTest, ReadSkipsBlankLinesAndRejectsDuplicates) {
  std::istringstream ok("{\"id\":\"a\",\"metronome\":\"wS\"}\n\n{\"id\":\"b\",\"metronome\":\"Sw\"}\n");
  EXPECT_EQ(read_corpus(ok).size(), 2u);
  std::istringstream dup("{\"id\":\"a\",\"metronome\":\"wS\"}\n{\"id\":\"a\",\"metronome\":\"Sw\"}\n");
  try {
    read_corpus(dup);
    FAIL();
  } catch (const CorpusError& e) {
    EXPECT_EQ(e.kind(), CorpusError::Kind::DuplicateId);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(CorpusTest, CheckReportsEveryLine) {
  std::istringstream in(
      "{\"id\":\"a\",\"metronome\":\"wS\"}\n"
      "{\"id\":\"b\",\"metronome\":\"w..S\"}\n"
      "{\"id\":\"a\",\"metronome\":\"Sw\"}\n"
      "{\"id\":\"c\",\"metronome\":\"Sw\",\"x\":1}\n"
      "{\"id\":\"d\",\"metronome\":\"S|\"}\n");
  const auto checks = check_corpus(in);
  ASSERT_EQ(checks.size(), 5u);
  EXPECT_TRUE(checks[0].error.empty());
  EXPECT_FALSE(checks[1].error.empty());
  EXPECT_EQ(checks[1].line, 2u);
  EXPECT_FALSE(checks[2].error.empty());
  EXPECT_FALSE(checks[3].error.empty());
  EXPECT_TRUE(checks[4].error.empty());
  EXPECT_EQ(checks[4].id, "d");
}

TEST(CorpusTest, MissingFile) {
  EXPECT_THROW(load_corpus("/nonexistent/corpus.jsonl"), IoError);
}

}  // namespace
}  // namespace metronome
