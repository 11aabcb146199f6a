#include "metronome/scoring.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace metronome {
namespace {

std::string cell_name(std::size_t i, std::size_t j) {
  return std::string{to_char(static_cast<Symbol>(i)), '.', to_char(static_cast<Symbol>(j))};
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

int parse_int(const std::string& value, const std::string& key, int line_no) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) {
    throw SchemeError(SchemeError::Kind::Schema, "line " + std::to_string(line_no) + ": value of '" +
                                                     key + "' is not an integer: '" + value + "'");
  }
  return v;
}

}  // namespace

ScoreScheme ScoreScheme::create(const SubstitutionMatrix& m, int gap_open, int gap_extend) {
  auto fail = [](const std::string& what) { throw SchemeError(SchemeError::Kind::Invariant, what); };
  for (std::size_t i = 0; i < kSymbolCount; ++i) {
    if (m[i][i] <= 0) {
      fail("diagonal cell " + cell_name(i, i) + " = " + std::to_string(m[i][i]) +
           " must be positive");
    }
    for (std::size_t j = 0; j < kSymbolCount; ++j) {
      if (m[i][j] != m[j][i]) {
        fail("asymmetric matrix: " + cell_name(i, j) + " = " + std::to_string(m[i][j]) + " but " +
             cell_name(j, i) + " = " + std::to_string(m[j][i]));
      }
      if (m[i][j] > m[i][i]) {
        fail("diagonal dominance violated: " + cell_name(i, j) + " = " + std::to_string(m[i][j]) +
             " exceeds " + cell_name(i, i) + " = " + std::to_string(m[i][i]));
      }
    }
  }
  if (gap_open > 0) fail("gap open = " + std::to_string(gap_open) + " must be <= 0");
  if (gap_extend > 0) fail("gap extend = " + std::to_string(gap_extend) + " must be <= 0");
  if (gap_extend < gap_open) {
    fail("gap extend = " + std::to_string(gap_extend) + " is costlier than gap open = " +
         std::to_string(gap_open));
  }
  return ScoreScheme(m, gap_open, gap_extend);
}

ScoreScheme default_scheme() {
  static const ScoreScheme scheme = ScoreScheme::create(
      SubstitutionMatrix{{
          {3, -2, 0, -6},
          {-2, 3, 0, -6},
          {0, 0, 2, -6},
          {-6, -6, -6, 6},
      }},
      -5, -1);
  return scheme;
}

ScoreScheme uniform_scheme() {
  SubstitutionMatrix m{};
  for (std::size_t i = 0; i < kSymbolCount; ++i) {
    for (std::size_t j = 0; j < kSymbolCount; ++j) m[i][j] = i == j ? 1 : -1;
  }
  return ScoreScheme::create(m, -1, -1);
}

ScoreScheme parse_scheme(const std::string& text) {
  auto schema_error = [](int line_no, const std::string& what) {
    throw SchemeError(SchemeError::Kind::Schema, "line " + std::to_string(line_no) + ": " + what);
  };

  std::array<std::array<std::optional<int>, kSymbolCount>, kSymbolCount> cells{};
  std::optional<int> gap_open;
  std::optional<int> gap_extend;
  std::string section;
  std::map<std::string, int> seen;  // key -> line

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') schema_error(line_no, "malformed section header '" + line + "'");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (section != "substitution" && section != "gaps") {
        schema_error(line_no, "unknown section [" + section + "]");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) schema_error(line_no, "expected 'key = value', got '" + line + "'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (section.empty()) schema_error(line_no, "key '" + key + "' outside any section");

    const std::string qualified = section + "." + key;
    if (auto it = seen.find(qualified); it != seen.end()) {
      schema_error(line_no, "duplicate key '" + key + "' (first set on line " +
                                std::to_string(it->second) + ")");
    }
    seen.emplace(qualified, line_no);
    const int v = parse_int(value, key, line_no);

    if (section == "gaps") {
      if (key == "open") {
        gap_open = v;
      } else if (key == "extend") {
        gap_extend = v;
      } else {
        schema_error(line_no, "unknown key '" + key + "' in [gaps] (expected open, extend)");
      }
      continue;
    }

    const auto a = key.size() == 3 && key[1] == '.' ? symbol_from_char(key[0]) : std::nullopt;
    const auto b = key.size() == 3 && key[1] == '.' ? symbol_from_char(key[2]) : std::nullopt;
    if (!a || !b) {
      schema_error(line_no, "unknown key '" + key + "' in [substitution] (expected X.Y with X, Y in S w . |)");
    }
    const auto i = static_cast<std::size_t>(*a);
    const auto j = static_cast<std::size_t>(*b);
    cells[i][j] = v;
  }

  SubstitutionMatrix m{};
  for (std::size_t i = 0; i < kSymbolCount; ++i) {
    for (std::size_t j = i; j < kSymbolCount; ++j) {
      const auto& upper = cells[i][j];
      const auto& lower = cells[j][i];
      if (!upper && !lower) {
        throw SchemeError(SchemeError::Kind::Schema,
                          "missing substitution cell " + cell_name(i, j));
      }
      if (upper && lower && *upper != *lower) {
        throw SchemeError(SchemeError::Kind::Invariant,
                          "asymmetric matrix: " + cell_name(i, j) + " = " + std::to_string(*upper) +
                              " but " + cell_name(j, i) + " = " + std::to_string(*lower));
      }
      m[i][j] = m[j][i] = upper ? *upper : *lower;
    }
  }
  if (!gap_open) throw SchemeError(SchemeError::Kind::Schema, "missing [gaps] open");
  if (!gap_extend) throw SchemeError(SchemeError::Kind::Schema, "missing [gaps] extend");
  return ScoreScheme::create(m, *gap_open, *gap_extend);
}

ScoreScheme load_scheme(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scheme file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read scheme file '" + path.string() + "'");
  try {
    return parse_scheme(buf.str());
  } catch (const SchemeError& e) {
    throw SchemeError(e.kind(), path.string() + ": " + e.what());
  }
}

std::string format_scheme(const ScoreScheme& scheme) {
  std::ostringstream out;
  out << "[substitution]\n";
  for (std::size_t i = 0; i < kSymbolCount; ++i) {
    for (std::size_t j = i; j < kSymbolCount; ++j) {
      out << cell_name(i, j) << " = " << scheme.substitution()[i][j] << '\n';
    }
  }
  out << "\n[gaps]\nopen = " << scheme.gap_open() << "\nextend = " << scheme.gap_extend() << '\n';
  return out.str();
}

void save_scheme(const ScoreScheme& scheme, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << format_scheme(scheme);
  if (!out) throw IoError("failed writing scheme to '" + path.string() + "'");
}

}  // namespace metronome
