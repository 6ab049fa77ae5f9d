#include "objkb/report.hpp"

#include <cstdio>
#include <iomanip>

namespace objkb {

std::string format_real(double v) {
    // glibc printf rounds exact decimal ties to even under the default mode.
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

namespace {

std::string opt(const std::optional<TypeId>& t) { return t ? *t : "-"; }

template <typename Range>
std::string join(const Range& items) {
    std::string out;
    for (const auto& i : items) {
        if (!out.empty()) out += ",";
        out += i;
    }
    return out.empty() ? "-" : out;
}

std::string chain_line(const AnalogyChain& c) {
    std::string out;
    for (std::size_t i = 0; i < c.memberMatchIndexes.size(); ++i) {
        if (i) out += " -> ";
        out += std::to_string(c.memberMatchIndexes[i]);
    }
    return out + " [" + std::string(to_string(c.terminationReason)) + "]";
}

}  // namespace

void render_compare(std::ostream& out, const SimilarityReport& r, OutputFormat fmt, bool withTable) {
    if (fmt == OutputFormat::Tsv) {
        out << "obj1\tobj2\trelationship\twgd\tnbmatch\tdegree\n";
        out << r.obj1 << '\t' << r.obj2 << '\t' << to_string(r.relationship) << '\t' << format_real(r.wgd) << '\t'
            << r.nbmatch << '\t' << format_real(r.degree) << '\n';
    } else {
        out << std::left;
        out << std::setw(14) << "obj1" << r.obj1 << '\n';
        out << std::setw(14) << "obj2" << r.obj2 << '\n';
        out << std::setw(14) << "relationship" << to_string(r.relationship) << '\n';
        out << std::setw(14) << "wgd" << format_real(r.wgd) << '\n';
        out << std::setw(14) << "nbmatch" << r.nbmatch << '\n';
        out << std::setw(14) << "degree" << format_real(r.degree) << '\n';
    }
    if (withTable) {
        out << '\n';
        render_match_table(out, r.matchTable, fmt);
    }
}

void render_match_table(std::ostream& out, std::span<const MatchEntry> table, OutputFormat fmt) {
    if (fmt == OutputFormat::Tsv) {
        out << "match\tty\tnso\tpdw\tt1s\tt2s\n";
        for (const auto& m : table)
            out << m.matchIndex << '\t' << m.ty << '\t' << m.nso << '\t' << format_real(m.pdw) << '\t' << opt(m.t1s)
                << '\t' << opt(m.t2s) << '\n';
        return;
    }
    out << std::left << std::setw(8) << "match" << std::setw(12) << "ty" << std::setw(8) << "nso" << std::setw(12)
        << "pdw" << std::setw(12) << "t1s" << "t2s" << '\n';
    for (const auto& m : table)
        out << std::setw(8) << m.matchIndex << std::setw(12) << m.ty << std::setw(8) << m.nso << std::setw(12)
            << format_real(m.pdw) << std::setw(12) << opt(m.t1s) << opt(m.t2s) << '\n';
}

void render_analogy(std::ostream& out, const SimilarityReport& r) {
    out << "match\tty\tnso\tpdw\tchained_pdw\tt1s\tt2s\n";
    for (std::size_t i = 0; i < r.matchTable.size(); ++i) {
        const auto& m = r.matchTable[i];
        out << m.matchIndex << '\t' << m.ty << '\t' << m.nso << '\t' << format_real(m.pdw) << '\t'
            << format_real(r.analogy.table[i].pdw) << '\t' << opt(m.t1s) << '\t' << opt(m.t2s) << '\n';
    }
    out << "\nchains\n";
    for (const auto& c : r.analogy.chains) out << chain_line(c) << '\n';
    if (r.analogy.greatest) {
        const auto& g = r.analogy.chains[*r.analogy.greatest];
        out << "\ngreatest\t" << chain_line(g) << "\tpdw " << format_real(g.chainPdw) << '\n';
    }
}

void render_rank(std::ostream& out, std::span<const RankEntry> ranked, OutputFormat fmt) {
    if (fmt == OutputFormat::Tsv) {
        out << "rank\tobject\tdegree\tnbmatch\n";
        for (std::size_t i = 0; i < ranked.size(); ++i)
            out << i + 1 << '\t' << ranked[i].objectId << '\t' << format_real(ranked[i].degree) << '\t'
                << ranked[i].nbmatch << '\n';
        return;
    }
    for (std::size_t i = 0; i < ranked.size(); ++i)
        out << std::left << std::setw(6) << i + 1 << std::setw(20) << ranked[i].objectId << std::setw(12)
            << format_real(ranked[i].degree) << ranked[i].nbmatch << '\n';
}

void render_induction(std::ostream& out, const InductionOutcome& o) {
    out << "decision\t" << to_string(o.decision) << '\n';
    out << "type\t" << (o.newOrEnrichedTypeId ? *o.newOrEnrichedTypeId : "-") << '\n';
    out << "degree\t" << format_real(o.degreeObserved) << '\n';
    out << "threshold\t" << format_real(o.threshold) << '\n';
    out << "migrated\t" << join(o.migratedInstances) << '\n';
    out << "non-migrated\t" << join(o.nonMigrated) << '\n';
    out << "propagated\t" << join(o.propagatedTo) << '\n';
}

void render_violations(std::ostream& out, const std::string& file, std::span<const LocatedViolation> vs) {
    for (const auto& v : vs)
        out << file << ':' << v.line << ": " << to_string(v.violation.code) << ": " << v.violation.message << '\n';
}

}  // namespace objkb
