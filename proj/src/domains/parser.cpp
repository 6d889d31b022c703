#include "snapinf/domains/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "snapinf/domains/blocks.hpp"
#include "snapinf/domains/chain.hpp"
#include "snapinf/domains/gridworld.hpp"

namespace snapinf::domains {

ParseError::ParseError(const std::string& message, int line, int column)
    : ConfigError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

struct Line {
  int number = 0;
  std::string text;
};

std::vector<std::string> split_words(const std::string& text) {
  std::istringstream is(text);
  std::vector<std::string> out;
  std::string word;
  while (is >> word) out.push_back(word);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int column_of(const Line& line, const std::string& word) {
  const auto pos = line.text.find(word);
  return pos == std::string::npos ? 1 : static_cast<int>(pos) + 1;
}

int to_int(const Line& line, const std::string& word) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc{} || ptr != word.data() + word.size()) {
    throw ParseError("expected an integer, got '" + word + "'", line.number, column_of(line, word));
  }
  return value;
}

class Reader {
 public:
  explicit Reader(std::string_view text) {
    std::istringstream is{std::string(text)};
    std::string raw;
    int number = 0;
    while (std::getline(is, raw)) {
      ++number;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      lines_.push_back(Line{number, raw});
    }
  }

  /// Next directive line, skipping blanks and '#' comments.
  std::optional<Line> next_directive() {
    while (pos_ < lines_.size()) {
      const Line& line = lines_[pos_++];
      const std::string t = trim(line.text);
      if (t.empty() || t.front() == '#') continue;
      return line;
    }
    return std::nullopt;
  }

  /// Raw lines up to a line reading `end`.
  std::vector<Line> block(const Line& opener) {
    std::vector<Line> out;
    while (pos_ < lines_.size()) {
      const Line& line = lines_[pos_++];
      if (trim(line.text) == "end") return out;
      out.push_back(line);
    }
    throw ParseError("section is missing its 'end' line", opener.number, 1);
  }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

Cell parse_cell(const Line& line, const std::string& word) {
  const auto comma = word.find(',');
  if (comma == std::string::npos) {
    throw ParseError("expected row,col, got '" + word + "'", line.number, column_of(line, word));
  }
  return Cell{to_int(line, word.substr(0, comma)), to_int(line, word.substr(comma + 1))};
}

std::unique_ptr<Domain> parse_grid(Reader& reader, const std::string& kind) {
  GridSpec grid;
  KeysSpec keys;
  std::vector<Line> map_lines;
  std::optional<Line> map_opener;
  std::map<char, std::pair<std::string, Rgb>> gem_meta;
  std::map<Cell, std::pair<char, Line>> door_annotations;

  while (auto line = reader.next_directive()) {
    const auto words = split_words(line->text);
    const std::string& head = words.front();
    if (head == "start") {
      if (words.size() != 2) throw ParseError("usage: start entryways|anywhere", line->number, 1);
      if (words[1] == "entryways") {
        grid.start_mode = StartMode::kEntryways;
      } else if (words[1] == "anywhere") {
        grid.start_mode = StartMode::kUniformAnywhere;
      } else {
        throw ParseError("unknown start mode '" + words[1] + "'", line->number, column_of(*line, words[1]));
      }
    } else if (head == "map") {
      if (map_opener) throw ParseError("duplicate map section", line->number, 1);
      map_opener = *line;
      map_lines = reader.block(*line);
    } else if (head == "gem") {
      if (words.size() != 3 && words.size() != 6) {
        throw ParseError("usage: gem <label> <name> [r g b]", line->number, 1);
      }
      if (words[1].size() != 1 || !std::islower(static_cast<unsigned char>(words[1][0]))) {
        throw ParseError("gem label must be a lowercase letter", line->number, column_of(*line, words[1]));
      }
      Rgb color{200, 200, 200};
      if (words.size() == 6) {
        for (int i = 0; i < 3; ++i) {
          const int v = to_int(*line, words[static_cast<std::size_t>(3 + i)]);
          if (v < 0 || v > 255) throw ParseError("color channel out of range", line->number, 1);
          color[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
        }
      }
      if (gem_meta.count(words[1][0]) != 0U) {
        throw ParseError("duplicate gem label '" + words[1] + "'", line->number, column_of(*line, words[1]));
      }
      gem_meta[words[1][0]] = {words[2], color};
    } else if (head == "key") {
      if (words.size() != 3 || words[1].size() != 1 || !std::isupper(static_cast<unsigned char>(words[1][0]))) {
        throw ParseError("usage: key <LETTER> <color-name>", line->number, 1);
      }
      keys.color_names.emplace_back(words[1][0], words[2]);
    } else if (head == "doors") {
      for (const Line& entry : reader.block(*line)) {
        const auto parts = split_words(entry.text);
        if (parts.empty()) continue;
        const std::string& tag = parts[0];
        if (parts.size() != 2 || tag.size() != 3 || tag[0] != '[' || tag[2] != ']' ||
            !std::isupper(static_cast<unsigned char>(tag[1]))) {
          throw ParseError("door annotation must read '[A] row,col'", entry.number, 1);
        }
        const Cell cell = parse_cell(entry, parts[1]);
        if (!door_annotations.emplace(cell, std::make_pair(tag[1], entry)).second) {
          throw ParseError("duplicate door annotation", entry.number, 1);
        }
      }
    } else {
      throw ParseError("unknown directive '" + head + "'", line->number, column_of(*line, head));
    }
  }
  if (!map_opener) throw ParseError("missing map section", 1, 1);
  if (map_lines.empty()) throw ParseError("map section is empty", map_opener->number, 1);

  grid.height = static_cast<int>(map_lines.size());
  grid.width = static_cast<int>(map_lines.front().text.size());
  std::map<char, Cell> gem_cells;
  std::vector<Cell> door_cells;
  for (int r = 0; r < grid.height; ++r) {
    const Line& row = map_lines[static_cast<std::size_t>(r)];
    if (static_cast<int>(row.text.size()) != grid.width) {
      throw ParseError("map rows must all have the same width", row.number,
                       static_cast<int>(std::min(row.text.size(), static_cast<std::size_t>(grid.width))) + 1);
    }
    for (int c = 0; c < grid.width; ++c) {
      const char ch = row.text[static_cast<std::size_t>(c)];
      const Cell cell{r, c};
      if (ch == '#') {
        grid.walls.push_back(cell);
      } else if (ch == '.') {
      } else if (ch == '@') {
        grid.entryways.push_back(cell);
      } else if (ch == '+') {
        door_cells.push_back(cell);
      } else if (std::islower(static_cast<unsigned char>(ch))) {
        if (!gem_cells.emplace(ch, cell).second) {
          throw ParseError(std::string("duplicate gem label '") + ch + "'", row.number, c + 1);
        }
      } else if (std::isupper(static_cast<unsigned char>(ch))) {
        if (std::any_of(keys.keys.begin(), keys.keys.end(), [&](const KeySpec& k) { return k.color == ch; })) {
          throw ParseError(std::string("duplicate key '") + ch + "'", row.number, c + 1);
        }
        keys.keys.push_back(KeySpec{ch, cell});
      } else {
        throw ParseError(std::string("unknown glyph '") + ch + "'", row.number, c + 1);
      }
    }
  }
  for (Cell cell : door_cells) {
    auto it = door_annotations.find(cell);
    if (it == door_annotations.end()) {
      throw ParseError("door glyph without a [X] annotation", map_lines[static_cast<std::size_t>(cell.row)].number,
                       cell.col + 1);
    }
    keys.doors.push_back(DoorSpec{it->second.first, cell});
    door_annotations.erase(it);
  }
  if (!door_annotations.empty()) {
    const Line& entry = door_annotations.begin()->second.second;
    throw ParseError("door annotation does not point at a '+' cell", entry.number, 1);
  }
  for (const auto& [label, cell] : gem_cells) {
    GemSpec gem{label, std::string(1, label), cell, Rgb{200, 200, 200}};
    if (auto it = gem_meta.find(label); it != gem_meta.end()) {
      gem.name = it->second.first;
      gem.color = it->second.second;
    }
    grid.gems.push_back(gem);
  }
  for (const auto& [label, meta] : gem_meta) {
    if (gem_cells.count(label) == 0U) {
      throw ParseError(std::string("gem '") + label + "' is described but not on the map", map_opener->number, 1);
    }
  }

  try {
    if (kind == "grid") {
      if (!keys.keys.empty() || !keys.doors.empty()) {
        throw ParseError("grid domains cannot contain keys or doors; use 'kind keys'", map_opener->number, 1);
      }
      return std::make_unique<GridWorld>(std::move(grid));
    }
    keys.grid = std::move(grid);
    return std::make_unique<GridWorld>(std::move(keys));
  } catch (const ParseError&) {
    throw;
  } catch (const ConfigError& e) {
    throw ParseError(e.what(), map_opener->number, 1);
  }
}

std::unique_ptr<Domain> parse_chain(Reader& reader) {
  ChainSpec spec;
  spec.goal_positions.clear();
  spec.start_positions.clear();
  int last_line = 1;
  while (auto line = reader.next_directive()) {
    last_line = line->number;
    const auto words = split_words(line->text);
    const std::string& head = words.front();
    if (head == "length" && words.size() == 2) {
      spec.length = to_int(*line, words[1]);
    } else if (head == "goal" && words.size() == 3) {
      spec.goal_names.push_back(words[1]);
      spec.goal_positions.push_back(to_int(*line, words[2]));
    } else if (head == "start" && words.size() >= 2) {
      for (std::size_t i = 1; i < words.size(); ++i) spec.start_positions.push_back(to_int(*line, words[i]));
    } else if (head == "moves" && words.size() == 2 && (words[1] == "right" || words[1] == "both")) {
      spec.rightward_only = words[1] == "right";
    } else {
      throw ParseError("unknown or malformed directive '" + head + "'", line->number, 1);
    }
  }
  try {
    return std::make_unique<ChainDomain>(std::move(spec));
  } catch (const ConfigError& e) {
    throw ParseError(e.what(), last_line, 1);
  }
}

std::unique_ptr<Domain> parse_blocks(Reader& reader) {
  BlocksSpec spec;
  int last_line = 1;
  int words_line = 1;
  while (auto line = reader.next_directive()) {
    last_line = line->number;
    const auto words = split_words(line->text);
    const std::string& head = words.front();
    if (head == "letters") {
      for (std::size_t i = 1; i < words.size(); ++i) {
        if (words[i].size() != 1) {
          throw ParseError("letters must be single characters", line->number, column_of(*line, words[i]));
        }
        spec.letters.push_back(words[i][0]);
      }
    } else if (head == "slots" && words.size() == 2) {
      spec.table_slots = to_int(*line, words[1]);
    } else if (head == "words") {
      words_line = line->number;
      spec.dictionary.assign(words.begin() + 1, words.end());
    } else if (head == "prior" && words.size() == 2) {
      if (words[1] == "uniform_scatter") {
        spec.prior = BlocksPrior::kUniformScatter;
      } else if (words[1] == "explicit") {
        spec.prior = BlocksPrior::kExplicit;
      } else {
        throw ParseError("unknown prior '" + words[1] + "'", line->number, column_of(*line, words[1]));
      }
    } else if (head == "start" && words.size() == 2) {
      spec.explicit_starts.push_back(words[1]);
    } else {
      throw ParseError("unknown or malformed directive '" + head + "'", line->number, 1);
    }
  }
  try {
    return std::make_unique<BlocksDomain>(std::move(spec));
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    throw ParseError(what, what.find("word") != std::string::npos ? words_line : last_line, 1);
  }
}

}  // namespace

std::unique_ptr<Domain> parse_domain_file(std::string_view text) {
  Reader reader(text);
  auto first = reader.next_directive();
  if (!first) throw ParseError("empty domain file", 1, 1);
  const auto words = split_words(first->text);
  if (words.size() != 2 || words[0] != "kind") {
    throw ParseError("domain file must start with 'kind <grid|keys|chain|blocks>'", first->number, 1);
  }
  const std::string& kind = words[1];
  if (kind == "grid" || kind == "keys") return parse_grid(reader, kind);
  if (kind == "chain") return parse_chain(reader);
  if (kind == "blocks") return parse_blocks(reader);
  throw ParseError("unknown domain kind '" + kind + "'", first->number, column_of(*first, kind));
}

std::unique_ptr<Domain> load_domain_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open domain file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_domain_file(buffer.str());
}

}  // namespace snapinf::domains
