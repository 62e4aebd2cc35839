#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "polygpt/gpt/builders.hpp"
#include "polygpt/gpt/serialize.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* p = std::getenv("POLYGPT_CLI");
    return p ? p : "";
}

int run(const std::string& args) {
    const std::string cmd = "\"" + cli_path() + "\" " + args + " >/dev/null 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    return rc == -1 ? -1 : WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "polygpt-cli-tests";
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("cli exit-code contract") {
    REQUIRE_FALSE(cli_path().empty());
    SUBCASE("construction failure exits 3") {
        CHECK(run("theory --polygon 2") == 3);
        CHECK(run("theory --displaced-hexagon 0.7") == 3);
    }
    SUBCASE("invalid flags exit 2") {
        CHECK(run("theory") == 2);                      // no source
        CHECK(run("theory --polygon 4 --square-bit") == 2);  // two sources
        CHECK(run("coexist --polygon 4 --e 0.1,0.1") == 2);  // missing --f
        CHECK(run("nonsense") == 2);
    }
    SUBCASE("odd-n criterion exits 4") {
        CHECK(run("coexist --polygon 5 --e 0.1,0 --f 0,0.1 --method criterion") == 4);
        CHECK(run("region --polygon 5 --edge-ratio 0.5") == 4);
        CHECK(run("region --polygon 6 --edge-ratio 2.0") == 2);  // outside polygon
    }
    SUBCASE("limit guards") {
        CHECK(run("limit --e 0.6,0 --n-list 8") == 2);
        CHECK(run("limit --e 0.2,0 --n-list 7") == 4);
        CHECK(run("limit --e 0.2,0 --n-list 8,16") == 0);
    }
    SUBCASE("oracle method works for odd polygons") {
        CHECK(run("coexist --polygon 5 --e 0.1,0 --f 0,0.1 --method oracle") == 0);
    }
    SUBCASE("criterion/oracle agreement on the documented pair") {
        CHECK(run("coexist --polygon 4 --e 0.5,0.5 --f 0.5,-0.5 --method both") == 0);
        CHECK(run("coexist --polygon 6 --e 0,0 --f 0.3,0.1 --method criterion") == 0);
    }
    SUBCASE("verify with a filter") {
        CHECK(run("verify --only c02") == 0);
    }
}

TEST_CASE("cli theory round trip preserves extremal effects") {
    REQUIRE_FALSE(cli_path().empty());
    const fs::path dir = work_dir();
    const fs::path doc = dir / "hex.json";
    REQUIRE(run("theory --polygon 6 --out \"" + doc.string() + "\"") == 0);

    const polygpt::Theory reloaded = polygpt::load_theory_file(doc.string());
    const polygpt::Theory direct = polygpt::build_regular_polygon_theory(6);
    REQUIRE(reloaded.extremal_effects.size() == direct.extremal_effects.size());
    for (std::size_t i = 0; i < direct.extremal_effects.size(); ++i) {
        CHECK(polygpt::max_abs_diff(reloaded.extremal_effects[i],
                                    direct.extremal_effects[i]) <= 1e-12);
    }

    // A reloaded file is accepted as a --theory source.
    CHECK(run("effects --theory \"" + doc.string() + "\"") == 0);
    CHECK(run("coexist --theory \"" + doc.string() + "\" --e 0.1,0 --f 0,0.1 --method oracle") == 0);
}

TEST_CASE("cli region emits CSV whose area matches its vertices") {
    REQUIRE_FALSE(cli_path().empty());
    const fs::path dir = work_dir();
    const fs::path csv = dir / "region.csv";
    const fs::path svg = dir / "region.svg";
    REQUIRE(run("region --polygon 6 --edge-ratio 0.6667 --out \"" + csv.string() +
                "\" --svg \"" + svg.string() + "\"") == 0);
    const std::string text = slurp(csv);
    CHECK(text.find("# n=6") != std::string::npos);
    CHECK(text.find("# probe_disagree=0") != std::string::npos);
    const std::string image = slurp(svg);
    CHECK(image.find("#2ca02c") != std::string::npos);
    CHECK(image.find("#1f6fb4") != std::string::npos);
}
