#include "fixtures.hpp"
#include "omegacloud/io.hpp"

#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace omegacloud;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

/// Scratch directory for one test run, removed at exit.
struct Workdir {
    fs::path path = fs::temp_directory_path() / ("omegacloud_cli_" + std::to_string(::getpid()));
    Workdir() { fs::create_directories(path); }
    ~Workdir() {
        std::error_code ignored;
        fs::remove_all(path, ignored);
    }
};

const fs::path& workdir() {
    static const Workdir dir;
    return dir.path;
}

std::string at(const std::string& name) { return (workdir() / name).string(); }

/// Runs the CLI with stdout and stderr captured to files; returns the exit code.
int run(const std::string& args, const std::string& tag = "run", const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + "\"" CLI_PATH "\" " + args + " >" + at(tag + ".stdout") +
                            " 2>" + at(tag + ".stderr");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

void write(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    out << dump(j);
}

std::size_t count(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
    return n;
}

/// stderr holds exactly one JSON object on one line.
json diagnostic(const std::string& tag) {
    const std::string text = slurp(at(tag + ".stderr"));
    REQUIRE(!text.empty());
    CHECK(count(text, "\n") == 1);
    return json::parse(text);
}

}  // namespace

TEST_CASE("cloud subcommand") {
    write(at("tri.json"), polygon_to_json(validate_convex(fixtures::triangle())));
    REQUIRE(run("cloud " + at("tri.json") + " --omega 1.5707963267948966 --out " + at("tri_cloud.json")) == 0);
    CHECK(read_json(at("tri_cloud.json"))["arcs"].size() == 3);

    write(at("hex.json"), polygon_to_json(validate_convex(fixtures::regular(6))));
    REQUIRE(run("cloud " + at("hex.json") + " --omega 2.6179938779914944 --maximal --out " + at("hex_cloud.json")) ==
            0);
    CHECK(read_json(at("hex_cloud.json"))["arcs"].size() == 1);

    CHECK(run("cloud " + at("tri.json") + " --omega 3.141592653589793", "pi") == 2);
    const json d = diagnostic("pi");
    CHECK(d["exit_code"] == 2);
    CHECK(d["message"].get<std::string>().find("omega out of range") != std::string::npos);

    CHECK(run("cloud " + at("missing.json") + " --omega 1", "missing") == 2);
    CHECK(diagnostic("missing")["error"] == "ParseError");
    CHECK(run("cloud " + at("tri.json") + " --omega abc", "abc") == 2);
    CHECK(run("cloud " + at("tri.json"), "noomega") == 2);
}

TEST_CASE("reconstruct subcommand") {
    const std::vector<Point2> tri = fixtures::two_reading_triangle();
    write(at("amb_tri.json"), polygon_to_json(validate_convex(tri)));
    REQUIRE(run("cloud " + at("amb_tri.json") + " --omega 2.0943951 --maximal --out " + at("amb.json")) == 0);

    REQUIRE(run("reconstruct " + at("amb.json") + " --omega 2.0943951 --out " + at("amb3.json"), "r3") == 0);
    const json three = read_json(at("amb3.json"));
    CHECK(three["vertices"].size() == 3);
    CHECK(three["report"]["certified"] == true);
    CHECK(three["report"].contains("pivot_visits"));
    CHECK(three["report"].contains("narrow_count"));
    CHECK(json::parse(slurp(at("r3.stdout")))["omega"] == 2.0943951);

    REQUIRE(run("reconstruct " + at("amb.json") + " --omega 2.6179939 --out " + at("amb6.json")) == 0);
    CHECK(read_json(at("amb6.json"))["vertices"].size() == 6);

    CHECK(run("reconstruct " + at("amb.json") + " --oblivious", "obl") == 3);
    CHECK(diagnostic("obl")["error"] == "AmbiguousOmega");

    write(at("hex.json"), polygon_to_json(validate_convex(fixtures::regular(6))));
    REQUIRE(run("cloud " + at("hex.json") + " --omega 2.6179938779914944 --maximal --out " + at("circle.json")) == 0);
    CHECK(run("reconstruct " + at("circle.json") + " --omega 2.6179938779914944", "circle") == 4);
    CHECK(diagnostic("circle")["error"] == "SingleCircleAmbiguous");

    // A cloud that is nobody's cloud at this omega.
    CHECK(run("reconstruct " + at("amb.json") + " --omega 1.9", "foreign") >= 3);

    CHECK(run("reconstruct " + at("amb.json") + " --omega 2 --oblivious", "both") == 2);
    CHECK(run("reconstruct " + at("amb.json"), "neither") == 2);

    write(at("bad_arcs.json"), json{{"format_version", 1}, {"arcs", json::array()}});
    CHECK(run("reconstruct " + at("bad_arcs.json") + " --omega 1", "bad") == 2);
}

TEST_CASE("oblivious subcommand") {
    write(at("sq.json"), polygon_to_json(validate_convex(fixtures::unit_square())));
    REQUIRE(run("cloud " + at("sq.json") + " --omega 0.7853981633974483 --maximal --out " + at("sq_cloud.json")) == 0);
    REQUIRE(run("reconstruct " + at("sq_cloud.json") + " --oblivious --out " + at("sq_back.json")) == 0);
    const json back = read_json(at("sq_back.json"));
    CHECK(back["vertices"].size() == 4);
    CHECK(std::abs(back["report"]["omega"].get<double>() - kPi / 4) < 1e-9);
}

TEST_CASE("roundtrip subcommand") {
    CHECK(run("roundtrip --n 8 --omega 1.2 --count 100 --seed 3", "rt") == 0);
    CHECK(slurp(at("rt.stdout")).find("passed 100/100") != std::string::npos);
    CHECK(run("roundtrip --n 3..64 --count 40 --seed 4", "sweep") == 0);
    CHECK(run("roundtrip --n 8 --omega 1.2 --count 5 --corrupt", "corrupt") == 1);
    CHECK(run("roundtrip --n 2 --count 5", "small") == 2);
}

TEST_CASE("render subcommand") {
    write(at("tri.json"), polygon_to_json(validate_convex(fixtures::triangle())));
    REQUIRE(run("cloud " + at("tri.json") + " --omega 1.5707963267948966 --out " + at("tri_cloud.json")) == 0);
    REQUIRE(run("render " + at("tri.json") + " " + at("tri_cloud.json") + " --out " + at("tri.svg")) == 0);
    const std::string svg = slurp(at("tri.svg"));
    CHECK(count(svg, "class=\"arc\"") == 3);
    CHECK(count(svg, "class=\"pivot\"") == 3);

    REQUIRE(run("render " + at("tri.json") + " --out " + at("poly.svg")) == 0);
    const std::string poly = slurp(at("poly.svg"));
    CHECK(count(poly, "class=\"polygon\"") == 1);
    CHECK(count(poly, "class=\"arc\"") == 0);

    write(at("empty.json"), json{{"format_version", 1}, {"omega", nullptr}, {"maximal", false}, {"arcs", json::array()}});
    CHECK(run("render " + at("empty.json"), "empty") == 2);
}

TEST_CASE("outputs are byte-identical across runs") {
    REQUIRE(run("generate --n 40 --seed 9 --out " + at("g1.json")) == 0);
    REQUIRE(run("generate --n 40 --seed 9 --out " + at("g2.json")) == 0);
    CHECK(slurp(at("g1.json")) == slurp(at("g2.json")));
    CHECK(read_json(at("g1.json"))["vertices"].size() == 40);

    REQUIRE(run("cloud " + at("g1.json") + " --omega 1.1 --maximal --out " + at("c1.json")) == 0);
    REQUIRE(run("cloud " + at("g1.json") + " --omega 1.1 --maximal --out " + at("c2.json")) == 0);
    CHECK(slurp(at("c1.json")) == slurp(at("c2.json")));

    REQUIRE(run("render " + at("g1.json") + " " + at("c1.json") + " --out " + at("s1.svg")) == 0);
    REQUIRE(run("render " + at("g1.json") + " " + at("c1.json") + " --out " + at("s2.svg")) == 0);
    CHECK(slurp(at("s1.svg")) == slurp(at("s2.svg")));

    REQUIRE(run("reconstruct " + at("c1.json") + " --omega 1.1 --out " + at("r1.json")) == 0);
    REQUIRE(run("reconstruct " + at("c1.json") + " --omega 1.1 --out " + at("r2.json")) == 0);
    CHECK(slurp(at("r1.json")) == slurp(at("r2.json")));
}

TEST_CASE("epsilon override from the environment") {
    REQUIRE(run("generate --n 12 --seed 2 --out " + at("e.json")) == 0);
    CHECK(run("cloud " + at("e.json") + " --omega 1.0 --maximal --out " + at("e_cloud.json"), "env",
              "OMEGA_CLOUD_EPS=1e-8") == 0);
    CHECK(run("reconstruct " + at("e_cloud.json") + " --omega 1.0", "env2", "OMEGA_CLOUD_EPS=1e-8") == 0);
    CHECK(run("cloud " + at("e.json") + " --omega 1.0", "envbad", "OMEGA_CLOUD_EPS=nonsense") == 2);
}
