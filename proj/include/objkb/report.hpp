#pragma once

// Text and tab-separated rendering of engine results.

#include <ostream>
#include <span>
#include <string>

#include "objkb/induction.hpp"
#include "objkb/kbfile.hpp"
#include "objkb/similarity.hpp"

namespace objkb {

enum class OutputFormat { Text, Tsv };

// Fixed 6 decimals, ties to even.
std::string format_real(double v);

void render_compare(std::ostream& out, const SimilarityReport& r, OutputFormat fmt, bool withTable);
void render_match_table(std::ostream& out, std::span<const MatchEntry> table, OutputFormat fmt);
void render_analogy(std::ostream& out, const SimilarityReport& r);
void render_rank(std::ostream& out, std::span<const RankEntry> ranked, OutputFormat fmt);
void render_induction(std::ostream& out, const InductionOutcome& outcome);
void render_violations(std::ostream& out, const std::string& file, std::span<const LocatedViolation> vs);

}  // namespace objkb
