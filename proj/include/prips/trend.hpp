// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prips/stats.hpp"

namespace prips {

/// Vinyl polymer families: acrylate, methacrylate, acrylamide, methacrylamide.
enum class Family { A, MA, AM, MAM };

std::string_view to_string(Family f);  // "Ar-Et-A", ...
Family parse_family(std::string_view s);

enum class Modification { EsterToAmide, AlphaMethylation };

std::string_view to_string(Modification m);  // "ester_to_amide", "alpha_methylation"

/// Canonical form of a ring-substitution key: tokens "pos-sub" separated by
/// ';' or ','; positions ordered o < m < p, then substituents in a fixed
/// symbol order. Empty or "none" gives "none".
std::string canonical_substitution_key(std::string_view key);

struct PredictionRecord {
  std::string id;
  Family family = Family::A;
  std::string substitution_key;  // canonical
  std::vector<double> folds;
  double value = 0.0;  // mean of folds
};

/// A matched comparison of family `to` against family `from`.
struct Comparison {
  std::string_view name;  // e.g. "AM_vs_A"
  Family from;
  Family to;
  Modification modification;
};

/// The four matched comparisons, in a fixed order.
std::span<const Comparison> standard_comparisons();
const Comparison& find_comparison(std::string_view name);

struct MatchedPair {
  const PredictionRecord* a = nullptr;  // family `from`
  const PredictionRecord* b = nullptr;  // family `to`
  Modification modification;
  double delta = 0.0;  // b - a
};

struct PairMatch {
  std::vector<MatchedPair> pairs;       // sorted by substitution key
  std::vector<std::string> unmatched;   // keys present in only one family, sorted
};

/// Pairs records of `from` and `to` sharing a substitution key. Throws
/// ValidationError on a duplicate key within one family.
PairMatch match_pairs(std::span<const PredictionRecord> records, const Comparison& comparison);

struct FamilySummary {
  Family family;
  stats::Summary summary;
};

/// Families with at least one record, in enum order.
std::vector<FamilySummary> summarize_families(std::span<const PredictionRecord> records);

/// Reads "id,family,substitution_key,fold_1..fold_K[,mean,sd]". Throws
/// ParseError on malformed rows.
std::vector<PredictionRecord> read_predictions_csv(std::istream& in);

struct AnalysisRow {
  std::string comparison;
  std::size_t n = 0;
  double mean_delta = 0.0;
  std::optional<double> ci_low, ci_high;
  double p_raw = 1.0;
  double p_holm = 1.0;
  std::string method;
};

/// Matched-pair t tests for the selected comparisons ("all", a comparison
/// name or a modification name) followed, for "all", by family-level
/// Mann-Whitney tests. Holm adjustment runs within each of the two groups.
std::vector<AnalysisRow> analyze(std::span<const PredictionRecord> records,
                                 std::string_view selection, double level = 0.99);

void write_analysis_csv(std::ostream& out, std::span<const AnalysisRow> rows);

}  // namespace prips
