#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "objkb/cli.hpp"
#include "objkb/report.hpp"

using namespace objkb;
namespace fs = std::filesystem;

namespace {

std::string fixture(const std::string& name) { return std::string(OBJKB_FIXTURES) + "/" + name; }

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("objkb_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("format_real prints six decimals with ties to even") {
    CHECK(format_real(0.0) == "0.000000");
    CHECK(format_real(1.0) == "1.000000");
    CHECK(format_real(2.0 / 3.0) == "0.666667");
    CHECK(format_real(0.0078125) == "0.007812");
    CHECK(format_real(0.0234375) == "0.023438");
    CHECK(format_real(-0.5) == "-0.500000");
}

TEST_CASE("render_violations prefixes file and line") {
    std::ostringstream out;
    std::vector<LocatedViolation> vs = {{{ErrorCode::UnknownReference, EntityKind::Type, "B", "s", "slot 's' names unknown type"}, 5}};
    render_violations(out, "x.kb", vs);
    CHECK(out.str() == "x.kb:5: UnknownReference: slot 's' names unknown type\n");
}

TEST_CASE("cli validate") {
    auto r = run({"validate", fixture("two_frames.kb")});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "valid\t9 types\t16 objects\n");

    TempDir tmp;
    std::ofstream(tmp.path / "bad.kb") << "type A \"a\"\n  slot s : {B} weight 1.0 optional\nend\n";
    r = run({"validate", (tmp.path / "bad.kb").string()});
    CHECK(r.code == kExitValidation);
    CHECK(r.err.find("bad.kb:2: UnknownReference") != std::string::npos);

    std::ofstream(tmp.path / "syntax.kb") << "type A \"a\"\n  attribute n : int 1..\nend\n";
    r = run({"validate", (tmp.path / "syntax.kb").string()});
    CHECK(r.code == kExitParse);
    CHECK(r.err.find("syntax.kb:2:24: syntax error") != std::string::npos);

    r = run({"validate", (tmp.path / "missing.kb").string()});
    CHECK(r.code == kExitUsage);
}

TEST_CASE("cli compare") {
    auto r = run({"compare", fixture("two_frames.kb"), "obj1", "obj2", "--format", "tsv"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "obj1\tobj2\trelationship\twgd\tnbmatch\tdegree\nobj1\tobj2\tindependent\t2.500000\t7\t0.883721\n");

    r = run({"compare", fixture("two_frames.kb"), "obj1", "obj2", "--format", "tsv", "--table"});
    CHECK(r.out.find("\n\nmatch\tty\tnso\tpdw\tt1s\tt2s\n1\t1\t0\t0.000000\t6\t3\n") != std::string::npos);
    CHECK(r.out.find("7\t2\t5\t0.500000\t6\t3\n") != std::string::npos);

    r = run({"compare", fixture("two_frames.kb"), "obj1", "obj1", "--format", "tsv"});
    CHECK(r.out.find("same-type\t0.000000\t8\t1.000000") != std::string::npos);

    r = run({"compare", fixture("two_frames.kb"), "obj1", "nope"});
    CHECK(r.code == kExitUnknownId);
    r = run({"compare", fixture("two_frames.kb"), "obj1", "obj2", "--format", "xml"});
    CHECK(r.code == kExitUsage);
}

TEST_CASE("cli analogy and rel") {
    auto r = run({"analogy", fixture("two_frames.kb"), "obj1", "obj2"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("\nchains\n1 [father-type mismatch]\n2 -> 6 -> 7 [father-type mismatch]\n") != std::string::npos);
    CHECK(r.out.find("greatest\t2 -> 6 -> 7 [father-type mismatch]\tpdw 0.500000\n") != std::string::npos);

    r = run({"rel", fixture("induce_partial.kb"), "Door", "SafeDoor"});
    CHECK(r.out == "independent\n");
    r = run({"rel", fixture("induce_partial.kb"), "Door", "Ghost"});
    CHECK(r.code == kExitUnknownId);
}

TEST_CASE("cli rank") {
    auto r = run({"rank", fixture("induce_partial.kb"), "door1", "door3", "door2", "safe1", "--format", "tsv"});
    CHECK(r.code == kExitOk);
    CHECK(r.out ==
          "rank\tobject\tdegree\tnbmatch\n"
          "1\tsafe1\t0.800000\t2\n"
          "2\tdoor2\t0.666667\t1\n"
          "3\tdoor3\t0.666667\t1\n");
}

TEST_CASE("cli induce") {
    TempDir tmp;
    const fs::path input = tmp.path / "kb.kb";
    fs::copy_file(fixture("induce_partial.kb"), input);
    const std::string before = slurp(input);

    auto r = run({"induce", input.string(), "--source", "safe1", "--property", "fireRating", "--target", "door1", "--out",
                  (tmp.path / "out.kb").string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("decision\tsubtype-created\ntype\tDoor_fireRating\n") != std::string::npos);
    CHECK(r.out.find("migrated\tdoor1,door2\nnon-migrated\tdoor3\npropagated\tBuilding\n") != std::string::npos);
    auto v = run({"validate", (tmp.path / "out.kb").string()});
    CHECK(v.code == kExitOk);
    CHECK(v.out == "valid\t6 types\t11 objects\n");
    CHECK(slurp(input) == before);

    r = run({"induce", input.string(), "--source", "safe1", "--property", "fireRating", "--target", "door1", "--threshold",
             "0.9", "--out", (tmp.path / "rejected.kb").string()});
    CHECK(r.code == kExitRejected);
    CHECK_FALSE(fs::exists(tmp.path / "rejected.kb"));

    r = run({"induce", input.string(), "--source", "safe1", "--property", "fireRating", "--target", "door1", "--out",
             input.string()});
    CHECK(r.code == kExitUsage);
    CHECK(slurp(input) == before);

    r = run({"induce", input.string(), "--source", "safe1", "--property", "fireRating", "--target", "door1", "--threshold", "2"});
    CHECK(r.code == kExitUsage);
    r = run({"induce", input.string(), "--source", "safe1", "--property", "width", "--target", "door1"});
    CHECK(r.code == kExitValidation);
    r = run({"induce", input.string(), "--source", "ghost", "--property", "fireRating", "--target", "door1"});
    CHECK(r.code == kExitUnknownId);
}

TEST_CASE("cli usage") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"bogus"}).code == kExitUsage);
    CHECK(run({"compare", fixture("two_frames.kb")}).code == kExitUsage);
    auto help = run({"--help"});
    CHECK(help.code == kExitOk);
    CHECK(help.out.find("Usage:") != std::string::npos);
}
