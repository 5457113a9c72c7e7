// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

#include "prips/trend.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "prips/error.hpp"

namespace prips {
namespace {

constexpr std::array<std::string_view, 4> kFamilyNames = {"Ar-Et-A", "Ar-Et-MA", "Ar-Et-AM",
                                                          "Ar-Et-MAM"};

constexpr std::array<Comparison, 4> kComparisons = {{
    {"AM_vs_A", Family::A, Family::AM, Modification::EsterToAmide},
    {"MAM_vs_MA", Family::MA, Family::MAM, Modification::EsterToAmide},
    {"MA_vs_A", Family::A, Family::MA, Modification::AlphaMethylation},
    {"MAM_vs_AM", Family::AM, Family::MAM, Modification::AlphaMethylation},
}};

// Substituents not listed sort after these, alphabetically.
constexpr std::array<std::string_view, 14> kSubstituentOrder = {
    "F", "Cl", "Br", "I", "CH3", "C2H5", "CF3", "OCH3", "OH", "NH2", "N(CH3)2", "NO2", "CN", "Ph"};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

int position_rank(const std::string& pos) {
  if (pos == "o" || pos == "ortho") return 0;
  if (pos == "m" || pos == "meta") return 1;
  if (pos == "p" || pos == "para") return 2;
  throw ParseError("unknown ring position '" + pos + "'");
}

std::size_t substituent_rank(const std::string& sub) {
  auto it = std::find(kSubstituentOrder.begin(), kSubstituentOrder.end(), sub);
  return static_cast<std::size_t>(it - kSubstituentOrder.begin());
}

// Comma-separated cells; double quotes group commas and "" is a literal quote.
std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(trim(cell));
      cell.clear();
    } else if (c != '\r') {
      cell += c;
    }
  }
  if (quoted) throw ParseError("unterminated quote in '" + line + "'");
  out.push_back(trim(cell));
  return out;
}

double parse_number(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": bad number '" + s + "'");
  }
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::string_view to_string(Family f) { return kFamilyNames[static_cast<std::size_t>(f)]; }

Family parse_family(std::string_view s) {
  for (std::size_t i = 0; i < kFamilyNames.size(); ++i) {
    if (kFamilyNames[i] == s) return static_cast<Family>(i);
  }
  throw ParseError("unknown family '" + std::string(s) + "'");
}

std::string_view to_string(Modification m) {
  return m == Modification::EsterToAmide ? "ester_to_amide" : "alpha_methylation";
}

std::string canonical_substitution_key(std::string_view key) {
  std::string k = trim(key);
  if (k.empty() || k == "none") return "none";
  std::replace(k.begin(), k.end(), ',', ';');
  struct Token {
    int pos;
    std::string pos_text;
    std::string sub;
  };
  std::vector<Token> tokens;
  std::stringstream ss(k);
  std::string part;
  while (std::getline(ss, part, ';')) {
    part = trim(part);
    if (part.empty()) continue;
    const auto dash = part.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 == part.size()) {
      throw ParseError("substitution token '" + part + "' is not of the form pos-sub");
    }
    const std::string pos = trim(part.substr(0, dash));
    const int rank = position_rank(pos);
    tokens.push_back({rank, std::string(1, "omp"[rank]), trim(part.substr(dash + 1))});
  }
  if (tokens.empty()) return "none";
  std::sort(tokens.begin(), tokens.end(), [](const Token& x, const Token& y) {
    if (x.pos != y.pos) return x.pos < y.pos;
    const auto rx = substituent_rank(x.sub), ry = substituent_rank(y.sub);
    if (rx != ry) return rx < ry;
    return x.sub < y.sub;
  });
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ';';
    out += t.pos_text + "-" + t.sub;
  }
  return out;
}

std::span<const Comparison> standard_comparisons() { return kComparisons; }

const Comparison& find_comparison(std::string_view name) {
  for (const auto& c : kComparisons) {
    if (c.name == name) return c;
  }
  throw ValidationError("unknown comparison '" + std::string(name) + "'");
}

PairMatch match_pairs(std::span<const PredictionRecord> records, const Comparison& comparison) {
  std::map<std::string, const PredictionRecord*> from, to;
  for (const auto& r : records) {
    std::map<std::string, const PredictionRecord*>* side = nullptr;
    if (r.family == comparison.from) side = &from;
    else if (r.family == comparison.to) side = &to;
    else continue;
    if (!side->emplace(r.substitution_key, &r).second) {
      throw ValidationError("duplicate substitution key '" + r.substitution_key + "' in family " +
                            std::string(to_string(r.family)));
    }
  }
  PairMatch m;
  for (const auto& [key, a] : from) {
    auto it = to.find(key);
    if (it == to.end()) {
      m.unmatched.push_back(key);
      continue;
    }
    m.pairs.push_back({a, it->second, comparison.modification, it->second->value - a->value});
  }
  for (const auto& [key, b] : to) {
    if (!from.count(key)) m.unmatched.push_back(key);
  }
  std::sort(m.unmatched.begin(), m.unmatched.end());
  return m;
}

std::vector<FamilySummary> summarize_families(std::span<const PredictionRecord> records) {
  std::vector<FamilySummary> out;
  for (std::size_t f = 0; f < kFamilyNames.size(); ++f) {
    std::vector<double> values;
    for (const auto& r : records) {
      if (static_cast<std::size_t>(r.family) == f) values.push_back(r.value);
    }
    if (!values.empty()) out.push_back({static_cast<Family>(f), stats::summarize(values)});
  }
  return out;
}

std::vector<PredictionRecord> read_predictions_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("predictions file is empty");
  const auto header = split_csv_line(line);
  if (header.size() < 4 || header[0] != "id" || header[1] != "family" ||
      header[2] != "substitution_key") {
    throw ParseError("predictions header must start with id,family,substitution_key,fold_1");
  }
  std::vector<std::size_t> fold_cols;
  for (std::size_t c = 3; c < header.size(); ++c) {
    if (header[c].rfind("fold_", 0) == 0) fold_cols.push_back(c);
    else if (header[c] != "mean" && header[c] != "sd") {
      throw ParseError("unexpected predictions column '" + header[c] + "'");
    }
  }
  if (fold_cols.empty()) throw ParseError("predictions file has no fold columns");

  std::vector<PredictionRecord> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw ParseError("line " + std::to_string(lineno) + ": expected " +
                       std::to_string(header.size()) + " columns, got " +
                       std::to_string(cells.size()));
    }
    PredictionRecord r;
    r.id = cells[0];
    r.family = parse_family(cells[1]);
    r.substitution_key = canonical_substitution_key(cells[2]);
    for (auto c : fold_cols) r.folds.push_back(parse_number(cells[c], lineno));
    r.value = stats::mean(r.folds);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<AnalysisRow> analyze(std::span<const PredictionRecord> records,
                                 std::string_view selection, double level) {
  std::vector<const Comparison*> chosen;
  for (const auto& c : kComparisons) {
    if (selection == "all" || selection == c.name || selection == to_string(c.modification)) {
      chosen.push_back(&c);
    }
  }
  if (chosen.empty()) throw ValidationError("unknown comparison '" + std::string(selection) + "'");

  std::vector<AnalysisRow> rows;
  for (const auto* c : chosen) {
    const PairMatch m = match_pairs(records, *c);
    std::vector<double> deltas;
    for (const auto& p : m.pairs) deltas.push_back(p.delta);
    // Broad selections skip comparisons the data set does not cover.
    if (deltas.empty() && selection != c->name) continue;
    const auto t = stats::one_sample_t_test(deltas, level);
    AnalysisRow row;
    row.comparison = std::string(c->name);
    row.n = t.n;
    row.mean_delta = t.mean;
    row.ci_low = t.ci_low;
    row.ci_high = t.ci_high;
    row.p_raw = t.p_value;
    row.method = t.method;
    rows.push_back(std::move(row));
  }
  auto adjust = [&](std::size_t begin) {
    std::vector<double> p;
    for (std::size_t i = begin; i < rows.size(); ++i) p.push_back(rows[i].p_raw);
    const auto adj = stats::holm_adjust(p);
    for (std::size_t i = begin; i < rows.size(); ++i) rows[i].p_holm = adj[i - begin];
  };
  if (rows.empty()) throw ValidationError("no matched pairs for '" + std::string(selection) + "'");
  adjust(0);

  if (selection == "all") {
    const std::size_t begin = rows.size();
    std::array<std::vector<double>, 4> by_family;
    for (const auto& r : records) by_family[static_cast<std::size_t>(r.family)].push_back(r.value);
    for (std::size_t x = 0; x < by_family.size(); ++x) {
      for (std::size_t y = x + 1; y < by_family.size(); ++y) {
        if (by_family[x].empty() || by_family[y].empty()) continue;
        const auto mw = stats::mann_whitney_u(by_family[x], by_family[y]);
        AnalysisRow row;
        row.comparison = std::string(to_string(static_cast<Family>(y))) + "_vs_" +
                         std::string(to_string(static_cast<Family>(x)));
        row.n = mw.n;
        row.mean_delta = mw.mean;
        row.p_raw = mw.p_value;
        row.method = mw.method;
        rows.push_back(std::move(row));
      }
    }
    if (rows.size() > begin) adjust(begin);
  }
  return rows;
}

void write_analysis_csv(std::ostream& out, std::span<const AnalysisRow> rows) {
  out << "comparison,n,mean_delta,ci_low,ci_high,p_raw,p_holm,method\n";
  for (const auto& r : rows) {
    out << r.comparison << ',' << r.n << ',' << format_number(r.mean_delta) << ','
        << (r.ci_low ? format_number(*r.ci_low) : "") << ','
        << (r.ci_high ? format_number(*r.ci_high) : "") << ',' << format_number(r.p_raw) << ','
        << format_number(r.p_holm) << ',' << r.method << '\n';
  }
}

}  // namespace prips
