#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cnet/io/document.hpp"
#include "cnet/profiles.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path scratch()
{
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("cnet_test_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p)
{
    try {
        return cnet::io::read_text_file(p.string());
    } catch (...) {
        return {};
    }
}

Run cli(const std::string& args)
{
    const auto out = scratch() / "stdout.txt", err = scratch() / "stderr.txt";
    const std::string cmd = std::string("\"") + CNET_CLI_PATH + "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                            err.string() + "\"";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string data(const std::string& name) { return std::string("\"") + CNET_DATA_DIR + "/" + name + "\""; }

std::string tmp(const std::string& name) { return "\"" + (scratch() / name).string() + "\""; }

} // namespace

TEST_CASE("gordon on the square writes a mesh")
{
    const auto r = cli("gordon " + data("square.json") + " --out " + tmp("square.stl") + " --nu 5 --nv 4");
    CHECK(r.code == 0);
    const auto stl = slurp(scratch() / "square.stl");
    std::size_t facets = 0;
    for (auto p = stl.find("facet normal"); p != std::string::npos; p = stl.find("facet normal", p + 1)) ++facets;
    CHECK(facets == 2 * 4 * 3);
}

TEST_CASE("obj format is chosen from the extension")
{
    const auto r = cli("gordon " + data("square.json") + " --out " + tmp("square.obj"));
    CHECK(r.code == 0);
    CHECK(slurp(scratch() / "square.obj").rfind("v ", 0) == 0);
}

TEST_CASE("missing intersection exits 1 naming the pair")
{
    const auto r = cli("check " + data("missing-intersection.json"));
    CHECK(r.code == 1);
    CHECK(r.err.find("profile 1 and guide 0") != std::string::npos);
}

TEST_CASE("non-bijective reparametrization exits 2")
{
    const auto r = cli("gordon " + data("nonbijective.json") + " --out " + tmp("nb.stl"));
    CHECK(r.code == 2);
    CHECK(r.err.find("strictly increasing") != std::string::npos);
}

TEST_CASE("check prints the averaged parameters")
{
    const auto r = cli("check " + data("square.json"));
    CHECK(r.code == 0);
    CHECK(r.out.rfind("u_avg: 0 1\nv_avg: 0 1\n", 0) == 0);
}

TEST_CASE("invalid document exits 1 with a path")
{
    const auto bad = scratch() / "bad.json";
    cnet::io::write_text_file(bad.string(), R"({"profiles": [{"type": "points", "pts": []}]})");
    const auto r = cli("check \"" + bad.string() + "\"");
    CHECK(r.code == 1);
    CHECK(r.err.find("$.profiles[0]") != std::string::npos);

    const auto missing = cli("check " + tmp("does-not-exist.json"));
    CHECK(missing.code == 1);
}

TEST_CASE("airfoil samples the class-shape function")
{
    const auto r = cli("airfoil --cst 0.5,1,0.2,2,3,2,1 --samples 3");
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string header;
    std::getline(in, header);
    CHECK(header == "psi,zeta");
    const cnet::CstParameters p{0.5, 1.0, {2, 3, 2, 1}, 0.2};
    for (double psi : {0.0, 0.5, 1.0}) {
        double a = -1, z = -1;
        char comma = 0;
        in >> a >> comma >> z;
        CHECK(a == psi);
        CHECK(std::abs(z - cnet::cst_evaluate(p, psi)) <= 1e-11);
    }

    const auto csv = cli("airfoil --cst 0.5,1,0,1 --samples 11 --out " + tmp("a.csv"));
    CHECK(csv.code == 0);
    CHECK(csv.out.empty());
    CHECK(slurp(scratch() / "a.csv").rfind("psi,zeta\n0,0\n", 0) == 0);

    CHECK(cli("airfoil --cst 0.5,1,0").code == 1);
    CHECK(cli("airfoil --cst -0.5,1,0,1").code == 1);
}

TEST_CASE("eval matches the surface written by gordon")
{
    const auto r = cli("gordon " + data("wing.json") + " --out " + tmp("wing.stl") + " --surface-out " +
                       tmp("wing-surface.json"));
    REQUIRE(r.code == 0);
    const auto s = cnet::io::read_surface_file((scratch() / "wing-surface.json").string());
    for (auto [u, v] : {std::pair{0.0, 0.0}, {0.3, 0.6}, {1.0, 0.25}, {0.77, 1.0}}) {
        char args[64];
        std::snprintf(args, sizeof args, " --u %.17g --v %.17g", u, v);
        const auto e = cli("eval " + tmp("wing-surface.json") + args);
        REQUIRE(e.code == 0);
        std::istringstream in(e.out);
        double x, y, z;
        in >> x >> y >> z;
        const auto p = s.evaluate(u, v);
        CHECK(x == p[0]);
        CHECK(y == p[1]);
        CHECK(z == p[2]);
    }
    CHECK(cli("eval " + tmp("wing-surface.json") + " --u 1.5 --v 0").code == 1);
}

TEST_CASE("report goes to stderr")
{
    const auto r = cli("gordon " + data("square.json") + " --out " + tmp("r.stl") + " --report");
    CHECK(r.code == 0);
    CHECK(r.err.find("original curve error") != std::string::npos);
}

TEST_CASE("bad usage exits 1 with help")
{
    const auto unknown = cli("gordon " + data("square.json") + " --out " + tmp("x.stl") + " --frobnicate");
    CHECK(unknown.code == 1);
    CHECK(unknown.err.find("Usage") != std::string::npos);
    CHECK(cli("").code == 1);
    CHECK(cli("gordon " + data("square.json")).code == 1);
    CHECK(cli("gordon " + data("square.json") + " --out " + tmp("x.stl") + " --nu 1").code == 1);
    CHECK(cli("gordon " + data("square.json") + " --out " + tmp("x.stl") + " --format ply").code == 1);
}

TEST_CASE("skin lofts the profiles")
{
    const auto r = cli("skin " + data("wing.json") + " --out " + tmp("skin.obj") + " --surface-out " +
                       tmp("skin.json"));
    CHECK(r.code == 0);
    const auto s = cnet::io::read_surface_file((scratch() / "skin.json").string());
    CHECK(s.domain_u().first == 0.0);
    CHECK(s.domain_v().second == 1.0);
}
