#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "holab/experiment.hpp"
#include "holab/specparse.hpp"

using namespace holab;
namespace fs = std::filesystem;

namespace {
std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path tmp_dir(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / "holab-tests" / name;
    fs::remove_all(d);
    return d;
}
}  // namespace

TEST_CASE("config validation happens before any computation") {
    ExperimentConfig c;
    c.id = "nonsense";
    c.out_dir = tmp_dir("bad").string();
    CHECK_THROWS_AS(run_experiment(c), std::invalid_argument);

    c.id = "lens";
    c.n_points = 100;
    CHECK_THROWS_AS(run_experiment(c), std::invalid_argument);

    c.n_points = 1 << 16;
    c.h_min = 1e-7;  // below 10/n
    CHECK_THROWS_AS(run_experiment(c), std::invalid_argument);

    c.h_min = 1e-3;
    c.depth = 16;  // 2^16 > n/100
    CHECK_THROWS_AS(run_experiment(c), std::invalid_argument);

    ExperimentConfig cu;
    cu.id = "custom";
    cu.out_dir = tmp_dir("bad2").string();
    CHECK_THROWS_AS(run_experiment(cu), std::invalid_argument);  // no symbol

    ExperimentConfig ne;
    ne.id = "lens";
    CHECK_THROWS_AS(run_experiment(ne), std::invalid_argument);  // no out dir
}

TEST_CASE("custom experiment writes a complete bundle") {
    ExperimentConfig c;
    c.id = "custom";
    c.symbol_spec = "identity";
    c.n_points = 1 << 16;
    c.h_min = 1e-3;
    c.h_max = 0.4;
    c.depth = 8;
    c.out_dir = tmp_dir("custom").string();
    const auto res = run_experiment(c);
    CHECK(res.all_pass);
    for (const char* f : {"profile.csv", "dyadic.csv", "verdicts.json", "summary.txt", "config.txt"})
        CHECK(fs::exists(fs::path(c.out_dir) / f));
    const std::string verdicts = slurp(fs::path(c.out_dir) / "verdicts.json");
    CHECK(verdicts.find("maccluer_h2") != std::string::npos);
    CHECK(verdicts.find("\"version\"") != std::string::npos);
    const std::string config = slurp(fs::path(c.out_dir) / "config.txt");
    CHECK(config.find("id custom") != std::string::npos);
}

TEST_CASE("identical configs produce byte-identical bundles") {
    ExperimentConfig c;
    c.id = "custom";
    c.symbol_spec = "phi-theta:1.5";
    c.psi_spec = "loglog";
    c.n_points = 1 << 17;
    c.h_min = 1e-3;
    c.depth = 8;
    c.p_list = {1.0, 4.0};

    c.out_dir = tmp_dir("det-a").string();
    run_experiment(c);
    const fs::path a = c.out_dir;
    c.out_dir = tmp_dir("det-b").string();
    run_experiment(c);
    const fs::path b = c.out_dir;
    for (const char* f : {"profile.csv", "dyadic.csv", "verdicts.json", "summary.txt", "config.txt"})
        CHECK(slurp(a / f) == slurp(b / f));
}

TEST_CASE("spec mini-grammars round-trip") {
    CHECK(parse_orlicz_spec("power:3").spec() == "power:3");
    CHECK(parse_orlicz_spec("exp_x").spec() == "exp_x");
    CHECK(parse_orlicz_spec("loglog").spec() == "loglog");
    CHECK(parse_orlicz_spec("critere:8").spec() == "critere:8");
    CHECK_THROWS(parse_orlicz_spec("mystery"));
    CHECK_THROWS(parse_orlicz_spec("power:abc"));

    CHECK(parse_symbol_spec("identity").kind() == Symbol::Kind::identity);
    CHECK(parse_symbol_spec("lens").kind() == Symbol::Kind::lens);
    CHECK(parse_symbol_spec("phi-theta:2").theta() == 2.0);
    const auto c = parse_symbol_spec("const:0.5+0.1i");
    CHECK(std::abs(c.boundary(0.3) - std::complex<double>(0.5, 0.1)) < 1e-15);
    const auto cn = parse_symbol_spec("const:-0.25-0.5i");
    CHECK(std::abs(cn.boundary(0.3) - std::complex<double>(-0.25, -0.5)) < 1e-15);
    CHECK_THROWS(parse_symbol_spec("outer:@nope.csv"));  // psi missing

    CHECK(parse_condition_spec("delta2").kind == Condition::delta2);
    CHECK(parse_condition_spec("delta-sup2:4").A == 4.0);
    CHECK(parse_condition_spec("theta:2:1.5").theta == 1.5);
    CHECK_THROWS(parse_condition_spec("delta9"));
}

TEST_CASE("csv files parse into piecewise functions and profiles") {
    const fs::path dir = tmp_dir("csv");
    fs::create_directories(dir);
    write_text_file((dir / "psi.csv").string(), "x,psi\n1,2\n10,40\n100,4000\n");
    const auto psi = parse_orlicz_spec("piecewise:@" + (dir / "psi.csv").string());
    CHECK(psi(10.0) == doctest::Approx(40.0));

    write_text_file((dir / "prof.csv").string(), "h,c\n0.5,1.0\n0.1,0.4\n0.02,0.16\n");
    const auto sym = parse_symbol_spec("general:@" + (dir / "prof.csv").string());
    CHECK(sym.kind() == Symbol::Kind::general);
}
