#include "objkb/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "objkb/induction.hpp"
#include "objkb/kbfile.hpp"
#include "objkb/report.hpp"
#include "objkb/similarity.hpp"

namespace objkb {

namespace {

constexpr double kDefaultThreshold = 0.8;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomically(const std::string& path, const std::string& text) {
    std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw UsageError("cannot write '" + path + "'");
        out << text;
        if (!out.flush()) throw UsageError("cannot write '" + path + "'");
    }
    std::filesystem::rename(tmp, target);
}

double default_threshold() {
    const char* env = std::getenv("KB_THRESHOLD_DEFAULT");
    if (!env || !*env) return kDefaultThreshold;
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (*end != '\0' || !(v >= 0.0 && v <= 1.0))
        throw UsageError("KB_THRESHOLD_DEFAULT must be a real in [0,1]");
    return v;
}

OutputFormat parse_format(const std::string& s) { return s == "tsv" ? OutputFormat::Tsv : OutputFormat::Text; }

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Object knowledge base: validation, structural similarity and induction", "kb"};
    app.require_subcommand(1);

    std::string file, obj1, obj2, format = "text";
    bool table = false;

    auto* validate = app.add_subcommand("validate", "Parse and validate a knowledge base file");
    validate->add_option("file", file, "Knowledge base file")->required();

    auto* cmp = app.add_subcommand("compare", "Structural similarity of two objects");
    cmp->add_option("file", file)->required();
    cmp->add_option("obj1", obj1)->required();
    cmp->add_option("obj2", obj2)->required();
    cmp->add_option("--format", format)->check(CLI::IsMember({"text", "tsv"}));
    cmp->add_flag("--table", table, "Also print the match table");

    auto* analogy = app.add_subcommand("analogy", "Match table and partial-analogy chains of two objects");
    analogy->add_option("file", file)->required();
    analogy->add_option("obj1", obj1)->required();
    analogy->add_option("obj2", obj2)->required();

    std::string ty1, ty2;
    auto* rel = app.add_subcommand("rel", "IS-A relationship between two types");
    rel->add_option("file", file)->required();
    rel->add_option("ty1", ty1)->required();
    rel->add_option("ty2", ty2)->required();

    std::string source, property, target, outPath;
    std::optional<double> threshold;
    auto* induce_cmd = app.add_subcommand("induce", "Induce a property from a similar object's type");
    induce_cmd->add_option("file", file)->required();
    induce_cmd->add_option("--source", source)->required();
    induce_cmd->add_option("--property", property)->required();
    induce_cmd->add_option("--target", target)->required();
    induce_cmd->add_option("--threshold", threshold);
    induce_cmd->add_option("--out", outPath, "Write the resulting knowledge base here");

    std::string rankTarget;
    std::vector<std::string> candidates;
    auto* rank = app.add_subcommand("rank", "Rank candidates by similarity to a target object");
    rank->add_option("file", file)->required();
    rank->add_option("target", rankTarget)->required();
    rank->add_option("candidates", candidates);
    rank->add_option("--format", format)->check(CLI::IsMember({"text", "tsv"}));

    std::vector<const char*> argv{"kb"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (induce_cmd->parsed() && !outPath.empty() &&
            std::filesystem::weakly_canonical(outPath) == std::filesystem::weakly_canonical(file))
            throw UsageError("--out must not name the input file");
        double gate = threshold ? *threshold : (induce_cmd->parsed() ? default_threshold() : 0.0);

        KbDocument doc = parse_document(read_file(file));
        const auto& kb = doc.kb;

        if (validate->parsed()) {
            out << "valid\t" << kb.types.size() << " types\t" << kb.objects.size() << " objects\n";
        } else if (cmp->parsed()) {
            render_compare(out, evaluate(kb, obj1, obj2), parse_format(format), table);
        } else if (analogy->parsed()) {
            render_analogy(out, evaluate(kb, obj1, obj2));
        } else if (rel->parsed()) {
            out << to_string(type_relationship(kb, ty1, ty2)) << '\n';
        } else if (rank->parsed()) {
            auto ranked = rank_similar(kb, rankTarget, candidates);
            render_rank(out, ranked, parse_format(format));
        } else if (induce_cmd->parsed()) {
            auto result = induce(kb, source, property, target, gate);
            render_induction(out, result.outcome);
            if (result.outcome.decision == InductionDecision::Rejected) return kExitRejected;
            if (!outPath.empty()) write_file_atomically(outPath, serialize_kb(result.kb));
        }
        return kExitOk;
    } catch (const SyntaxError& e) {
        err << file << ':' << e.line() << ':' << e.column() << ": syntax error: expected " << e.expectation() << '\n';
        return kExitParse;
    } catch (const ValidationError& e) {
        render_violations(err, file, e.violations());
        return kExitValidation;
    } catch (const KbError& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        if (e.code() == ErrorCode::UnknownObject || e.code() == ErrorCode::UnknownType) return kExitUnknownId;
        if (e.code() == ErrorCode::InvalidThreshold) return kExitUsage;
        return kExitValidation;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace objkb
