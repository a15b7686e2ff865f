#include "fincollab/eval/records.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fincollab::eval {

const std::vector<std::string> kRecordColumns{
    "ticker",      "structure",       "fundamental",        "sentiment",           "risk",
    "readability", "coherence",       "predicted_target_price", "buy_decision", "actual_release_price",
    "actual_week_price"};

namespace {

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    fields.emplace_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

double parse_double(const std::string &s, std::size_t line_no) {
  double value = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || end != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError, "records line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
  return value;
}

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

}  // namespace

std::string records_to_tsv(const std::vector<EvalRecord> &records) {
  std::ostringstream out;
  for (std::size_t i = 0; i < kRecordColumns.size(); ++i) out << (i ? "\t" : "") << kRecordColumns[i];
  out << '\n';
  for (const auto &r : records) {
    out << r.ticker << '\t' << r.structure;
    for (auto c : kCriteria) {
      auto it = r.scores.find(c);
      out << '\t' << (it == r.scores.end() ? std::string("-") : std::to_string(it->second));
    }
    out << '\t' << toolkit::format_number(r.predicted_target_price) << '\t' << (r.buy_decision ? "yes" : "no") << '\t'
        << toolkit::format_number(r.actual_release_price) << '\t' << toolkit::format_number(r.actual_week_price)
        << '\n';
  }
  return out.str();
}

std::vector<EvalRecord> records_from_tsv(std::string_view text) {
  std::vector<EvalRecord> records;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto fields = split_tabs(line);
    if (line_no == 1) {
      if (fields != kRecordColumns) throw Error(ErrorCode::ParseError, "records header does not match");
      continue;
    }
    if (line.empty()) continue;
    if (fields.size() != kRecordColumns.size()) {
      throw Error(ErrorCode::ParseError, "records line " + std::to_string(line_no) + ": expected " +
                                             std::to_string(kRecordColumns.size()) + " fields");
    }
    EvalRecord r;
    r.ticker = fields[0];
    r.structure = fields[1];
    for (std::size_t i = 0; i < kCriteria.size(); ++i) {
      const auto &f = fields[2 + i];
      if (f == "-") continue;
      if (f.size() != 1 || f[0] < '1' || f[0] > '5') {
        throw Error(ErrorCode::ParseError, "records line " + std::to_string(line_no) + ": bad score '" + f + "'");
      }
      r.scores[kCriteria[i]] = f[0] - '0';
    }
    r.predicted_target_price = parse_double(fields[7], line_no);
    if (fields[8] != "yes" && fields[8] != "no") {
      throw Error(ErrorCode::ParseError, "records line " + std::to_string(line_no) + ": buy_decision must be yes/no");
    }
    r.buy_decision = fields[8] == "yes";
    r.actual_release_price = parse_double(fields[9], line_no);
    r.actual_week_price = parse_double(fields[10], line_no);
    records.push_back(std::move(r));
  }
  if (line_no == 0) throw Error(ErrorCode::ParseError, "records file is empty");
  return records;
}

void write_records(const std::filesystem::path &path, const std::vector<EvalRecord> &records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << records_to_tsv(records);
}

std::vector<EvalRecord> read_records(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return records_from_tsv(buf.str());
}

ScoreTable score_table_from_records(const std::vector<EvalRecord> &records) {
  std::map<std::pair<StructureKind, Task>, std::pair<double, int>> sums;
  for (const auto &r : records) {
    const auto kind = orchestrator::parse_structure_kind(r.structure);
    if (kind == StructureKind::Ensemble) continue;
    for (auto task : kSubTasks) {
      auto it = r.scores.find(parse_criterion(to_string(task)));
      if (it == r.scores.end()) continue;
      auto &[sum, n] = sums[{kind, task}];
      sum += it->second;
      ++n;
    }
  }
  ScoreTable table;
  for (const auto &[key, acc] : sums) table.set(key.first, key.second, acc.first / acc.second);
  return table;
}

std::string render_score_table(const ScoreTable &table, const std::vector<StructureKind> &rows) {
  std::ostringstream out;
  out << "structure";
  for (auto task : kSubTasks) out << '\t' << to_string(task);
  out << '\n';
  for (auto kind : rows) {
    out << orchestrator::to_string(kind);
    for (auto task : kSubTasks) {
      const auto mean = table.get(kind, task);
      out << '\t' << (mean ? fixed(*mean, 2) : "-");
    }
    out << '\n';
  }
  return out.str();
}

ScoreTable parse_score_table(std::string_view text) {
  ScoreTable table;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto fields = split_tabs(line);
    if (line_no == 1) {
      if (fields != std::vector<std::string>{"structure", "fundamental", "sentiment", "risk"}) {
        throw Error(ErrorCode::ParseError, "score table header must be structure, fundamental, sentiment, risk");
      }
      continue;
    }
    if (line.empty()) continue;
    const auto where = "score table line " + std::to_string(line_no);
    if (fields.size() != 4) throw Error(ErrorCode::ParseError, where + ": expected 4 fields");
    StructureKind kind;
    try {
      kind = orchestrator::parse_structure_kind(fields[0]);
    } catch (const Error &e) {
      throw Error(ErrorCode::ParseError, where + ": " + e.what());
    }
    for (std::size_t i = 0; i < kSubTasks.size(); ++i) {
      if (fields[1 + i] == "-") continue;
      try {
        table.set(kind, kSubTasks[i], parse_double(fields[1 + i], line_no));
      } catch (const Error &e) {
        throw Error(ErrorCode::ParseError, where + ": " + e.what());
      }
    }
  }
  if (line_no == 0) throw Error(ErrorCode::ParseError, "score table is empty");
  return table;
}

ScoreTable read_score_table(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_score_table(buf.str());
}

std::string render_decision_table(const std::vector<EvalRecord> &records, const std::vector<StructureKind> &rows) {
  struct Summary {
    StructureKind kind;
    double diff;
    double accuracy;
  };
  std::vector<Summary> present;
  for (auto kind : rows) {
    std::vector<EvalRecord> mine;
    for (const auto &r : records) {
      if (r.structure == orchestrator::to_string(kind)) mine.push_back(r);
    }
    if (!mine.empty()) present.push_back({kind, mean_price_diff(mine), binary_accuracy(mine)});
  }
  auto ranked = present;
  std::stable_sort(ranked.begin(), ranked.end(), [](const Summary &a, const Summary &b) {
    if (a.accuracy != b.accuracy) return a.accuracy > b.accuracy;
    return a.diff < b.diff;
  });
  std::ostringstream out;
  out << "structure\tavg_diff\tbinary_accuracy\trank\n";
  for (auto kind : rows) {
    out << orchestrator::to_string(kind);
    auto it = std::find_if(ranked.begin(), ranked.end(), [&](const Summary &s) { return s.kind == kind; });
    if (it == ranked.end()) {
      out << "\t-\t-\t-\n";
      continue;
    }
    out << '\t' << format_percent(it->diff, 2) << '\t' << format_percent(it->accuracy, 1) << '\t'
        << (it - ranked.begin()) + 1 << '\n';
  }
  return out.str();
}

}  // namespace fincollab::eval
