#include "metronome/corpus.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace metronome {

using nlohmann::json;

std::string CorpusRecord::label(const std::string& name) const {
  const auto it = labels.find(name);
  return it == labels.end() ? std::string{} : it->second;
}

CorpusRecord parse_record(const std::string& json_line) {
  auto schema = [](const std::string& what) { throw CorpusError(CorpusError::Kind::Schema, what); };
  json j;
  try {
    j = json::parse(json_line);
  } catch (const json::parse_error& e) {
    schema(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) schema("record is not a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "id" && key != "labels" && key != "metronome") schema("unknown field '" + key + "'");
  }
  if (!j.contains("id") || !j["id"].is_string()) schema("missing string field 'id'");
  if (!j.contains("metronome") || !j["metronome"].is_string()) {
    schema("missing string field 'metronome'");
  }
  std::string id = j["id"].get<std::string>();
  if (id.empty()) schema("empty id");

  std::map<std::string, std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_object()) schema("'labels' must be an object");
    for (const auto& [key, value] : j["labels"].items()) {
      if (!value.is_string()) schema("label '" + key + "' must be a string");
      labels.emplace(key, value.get<std::string>());
    }
  }
  try {
    return CorpusRecord{std::move(id), std::move(labels),
                        MetronomeString::parse(j["metronome"].get<std::string>())};
  } catch (const ParseError& e) {
    throw ParseError(e.kind(), e.offset(), "record '" + j["id"].get<std::string>() + "': " + e.what());
  }
}

std::string format_record(const CorpusRecord& record) {
  json labels = json::object();
  for (const auto& [k, v] : record.labels) labels[k] = v;
  json j = {{"id", record.id}, {"labels", labels}, {"metronome", record.metronome.render()}};
  return j.dump();
}

std::vector<CorpusRecord> read_corpus(std::istream& in) {
  std::vector<CorpusRecord> records;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      CorpusRecord r = parse_record(line);
      if (!ids.insert(r.id).second) {
        throw CorpusError(CorpusError::Kind::DuplicateId, "duplicate id '" + r.id + "'");
      }
      records.push_back(std::move(r));
    } catch (const CorpusError& e) {
      throw CorpusError(e.kind(), "line " + std::to_string(line_no) + ": " + e.what());
    } catch (const ParseError& e) {
      throw ParseError(e.kind(), e.offset(), "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (in.bad()) throw IoError("read error while loading corpus");
  return records;
}

std::vector<CorpusRecord> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus '" + path.string() + "'");
  return read_corpus(in);
}

std::vector<RecordCheck> check_corpus(std::istream& in) {
  std::vector<RecordCheck> out;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    RecordCheck check{line_no, {}, {}};
    try {
      const json j = json::parse(line);
      if (j.is_object() && j.contains("id") && j["id"].is_string()) {
        check.id = j["id"].get<std::string>();
      }
    } catch (const json::exception&) {
    }
    try {
      const CorpusRecord r = parse_record(line);
      if (!ids.insert(r.id).second) check.error = "duplicate id '" + r.id + "'";
    } catch (const Error& e) {
      check.error = e.what();
    }
    out.push_back(std::move(check));
  }
  if (in.bad()) throw IoError("read error while checking corpus");
  return out;
}

void write_corpus(std::ostream& out, const std::vector<CorpusRecord>& records) {
  for (const auto& r : records) out << format_record(r) << '\n';
}

void save_corpus(const std::filesystem::path& path, const std::vector<CorpusRecord>& records) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_corpus(out, records);
  if (!out) throw IoError("failed writing corpus to '" + path.string() + "'");
}

}  // namespace metronome
