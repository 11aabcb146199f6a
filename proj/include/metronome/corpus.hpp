#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "metronome/alphabet.hpp"

namespace metronome {

/// One encoded poem with its metadata labels (meter, language, author, ...).
struct CorpusRecord {
  std::string id;
  std::map<std::string, std::string> labels;
  MetronomeString metronome;

  /// Label value, or empty when absent.
  std::string label(const std::string& name) const;
};

class CorpusError : public Error {
 public:
  enum class Kind { Schema, DuplicateId, Empty };

  CorpusError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Outcome of decoding a single JSON Lines record.
struct RecordCheck {
  std::size_t line = 0;  // 1-based
  std::string id;        // empty if unknown
  std::string error;     // empty when the record is valid
};

/// Parses one JSONL line:
///   {"id": "...", "labels": {"meter": "...", ...}, "metronome": "wS|..."}
/// Throws CorpusError(Schema) or ParseError.
CorpusRecord parse_record(const std::string& json_line);
std::string format_record(const CorpusRecord& record);

/// Reads a whole corpus, failing on the first bad record or duplicate id.
/// Blank lines are skipped.
std::vector<CorpusRecord> read_corpus(std::istream& in);
std::vector<CorpusRecord> load_corpus(const std::filesystem::path& path);

/// Checks every record without stopping at the first failure.
std::vector<RecordCheck> check_corpus(std::istream& in);

void write_corpus(std::ostream& out, const std::vector<CorpusRecord>& records);
void save_corpus(const std::filesystem::path& path, const std::vector<CorpusRecord>& records);

}  // namespace metronome
