#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rmtnet/pipeline.hpp"

using namespace rmtnet;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("rmtnet_test_pipeline_" + std::to_string(::getpid())) / name;
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

ExperimentConfig small_config(const fs::path& dir) {
    ExperimentConfig c;
    c.seed = c.ensemble.seed = 7;
    c.ensemble.count = 3;
    c.ensemble.n = 200;
    c.ensemble.p_intra = 0.2;
    c.ensemble.block_sizes = {200};
    c.methods = {parse_method("exact"), parse_method("poly3")};
    c.statistics.density = true;
    c.statistics.sigma2 = true;
    c.statistics.L_max = 10.0;
    c.statistics.window_samples = 50;
    c.output.dir = dir.string();
    return c;
}

bool is_data(const std::string& path) { return path != "manifest.json" && path.find(".ini") == std::string::npos; }

}  // namespace

TEST_CASE("run writes one CSV and sidecar per statistic and method") {
    const auto dir = scratch("layout");
    const auto b = run_experiment(small_config(dir));
    CHECK(b.ok());
    for (const char* f : {"config.ini", "manifest.json", "density.csv", "nnsd_exact.csv", "nnsd_poly3.csv",
                          "sigma2_exact.csv", "delta3_poly3.csv", "delta3_exact.method.json",
                          "nnsd_theory_goe_nnsd.csv", "delta3_theory_goe_delta3.csv", "sigma2_theory_goe_sigma2.csv",
                          "density_theory_semicircle_density.csv"})
        CHECK(fs::exists(dir / f));
    for (const auto& r : b.files) {
        if (r.path.size() > 4 && r.path.substr(r.path.size() - 4) == ".csv" && r.path.find("theory") == std::string::npos &&
            r.path != "density.csv") {
            const auto side = r.path.substr(0, r.path.size() - 4) + ".method.json";
            CHECK(fs::exists(dir / side));
        }
    }
    const auto side = nlohmann::json::parse(slurp(dir / "delta3_exact.method.json"));
    CHECK(side["unfolding"]["variant"] == "SemicircleExact");
    CHECK(side["members"] == 3);

    REQUIRE(b.methods.size() == 2);
    CHECK(b.method("exact").delta3->size() == 20);
    CHECK(b.method("poly3").nnsd->area() == Catch::Approx(1.0));
}

TEST_CASE("manifest lists every file with its hash") {
    const auto dir = scratch("manifest");
    run_experiment(small_config(dir));
    const auto m = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(m["status"] == "OK");
    CHECK(m["version"] == std::string(rmtnet::version));
    std::size_t listed = 0;
    for (const auto& f : m["files"]) {
        const auto content = slurp(dir / f["path"].get<std::string>());
        CHECK(f["sha256"] == sha256_hex(content));
        CHECK(f["bytes"] == content.size());
        ++listed;
    }
    std::size_t on_disk = 0;
    for (const auto& e : fs::recursive_directory_iterator(dir))
        if (e.is_regular_file() && e.path().filename() != "manifest.json") ++on_disk;
    CHECK(listed == on_disk);
}

TEST_CASE("sha256 of a known string") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("outputs are bit-identical across runs and thread counts") {
    auto c1 = small_config(scratch("det1"));
    auto c2 = small_config(scratch("det2"));
    c1.threads = 1;
    c2.threads = 4;
    const auto a = run_experiment(c1);
    const auto b = run_experiment(c2);
    REQUIRE(a.files.size() == b.files.size());
    for (std::size_t i = 0; i < a.files.size(); ++i) {
        CHECK(a.files[i].path == b.files[i].path);
        if (is_data(a.files[i].path)) CHECK(a.files[i].sha256 == b.files[i].sha256);
    }
}

TEST_CASE("config echo reproduces the run") {
    const auto dir = scratch("echo");
    const auto a = run_experiment(small_config(dir));
    auto again = parse_config(slurp(dir / "config.ini"));
    CHECK(again == a.config);
    again.output.dir = scratch("echo2").string();
    const auto b = run_experiment(again);
    for (std::size_t i = 0; i < a.files.size(); ++i)
        if (is_data(a.files[i].path)) CHECK(a.files[i].sha256 == b.files[i].sha256);
}

TEST_CASE("member failures are recorded and partial results kept") {
    const auto dir = scratch("partial");
    auto c = small_config(dir);
    c.statistics.L_max = 150.0;  // longer than half the unfolded span
    c.statistics.L_step = 50.0;
    c.statistics.L_min = 50.0;
    c.statistics.nnsd = false;
    c.statistics.sigma2 = false;
    const auto b = run_experiment(c);
    CHECK_FALSE(b.ok());
    CHECK(b.failures.size() == 6);
    CHECK(b.failures.front().stage == "delta3");
    CHECK(b.failures.front().member == 0);
    CHECK(b.failures.front().method == "exact");
    CHECK(fs::exists(dir / "density.csv"));
    const auto m = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(m["status"] == "FAILED");
    CHECK(m["failures"].size() == 6);
}

TEST_CASE("a run with no usable output rethrows the member error") {
    auto c = small_config(scratch("fatal"));
    c.statistics.density = false;
    c.statistics.nnsd = false;
    c.statistics.sigma2 = false;
    c.statistics.L_min = 150.0;
    c.statistics.L_max = 150.0;
    CHECK_THROWS_AS(run_experiment(c), interval_too_long);
    const auto m = nlohmann::json::parse(slurp(fs::path(c.output.dir) / "manifest.json"));
    CHECK(m["status"] == "FAILED");
}

TEST_CASE("analyze: exported member re-ingests to the same spectrum") {
    const auto dir = scratch("analyze");
    fs::create_directories(dir);
    EnsembleSpec spec;
    spec.n = 200;
    spec.p_intra = 0.2;
    spec.block_sizes = {200};
    spec.seed = 11;
    const auto a = generate_member(spec, 0);
    {
        std::ofstream out(dir / "net.edges");
        write_edge_list(out, a);
    }
    const auto direct = eigenvalues(a);
    const auto b = analyze_file(dir / "net.edges", {"statistics.L_max=10", "unfolding.methods=poly3,poly5"},
                                (dir / "out").string());
    REQUIRE(b.spectra.size() == 1);
    REQUIRE(b.spectra[0].size() == direct.size());
    for (std::size_t i = 0; i < direct.size(); ++i) CHECK(b.spectra[0].values[i] == Catch::Approx(direct.values[i]).margin(1e-9));
    REQUIRE(b.methods.size() == 2);
    for (const auto& m : b.methods)
        for (double se : m.delta3->std_errors) CHECK(se == 0.0);
    CHECK(fs::exists(dir / "out" / "delta3_poly3.method.json"));
    CHECK(fs::exists(dir / "out" / "delta3_poly5.csv"));
    const auto m = nlohmann::json::parse(slurp(dir / "out" / "manifest.json"));
    CHECK(m["input"]["edges"] == a.edge_count());
    CHECK_THROWS_AS(analyze_file(dir / "net.edges", {"ensemble.n=5"}, (dir / "out").string()), config_error);
}

TEST_CASE("analyze: a single edge is too few levels") {
    const auto dir = scratch("one_edge");
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "one.edges");
        out << "a b\n";
    }
    CHECK_THROWS_AS(analyze_file(dir / "one.edges", {}, (dir / "out").string()), insufficient_levels);
    CHECK_THROWS_AS(analyze_file(dir / "missing.edges", {}, (dir / "out").string()), io_error);
}

TEST_CASE("figure ids") {
    CHECK_THROWS_AS(reproduce_figure(4, 0, scratch("fig4").string()), config_error);
    CHECK_THROWS_AS(figure_config(1, 0, "x"), config_error);
    const auto c2 = figure_config(2, 5, "x");
    CHECK(c2.methods.size() == 4);
    CHECK(c2.output.delta3_stem == "fig2b");
    const auto c3 = figure_config(3, 5, "x");
    CHECK(c3.ensemble.block_sizes == std::vector<std::size_t>{500, 500});
    CHECK(c3.trim.resolved_drop_top(2) == 2);
}

// ---- command line ---------------------------------------------------------------

namespace {

int cli(const std::string& args, const std::string& env = {}) {
    const char* exe = std::getenv("RMTNET_CLI");
    if (!exe) FAIL("RMTNET_CLI is not set");
    const std::string cmd = env + " \"" + exe + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("cli exit codes") {
    const auto dir = scratch("cli");
    fs::create_directories(dir);
    const auto d = dir.string();

    CHECK(cli("theory goe_nnsd --grid 0:3:0.5 --out " + d + "/t.csv") == 0);
    CHECK(slurp(dir / "t.csv").rfind("L,mean,stderr,kind,method\n", 0) == 0);
    CHECK(cli("theory no_such_curve --grid 0:1:0.5") == 2);
    CHECK(cli("theory semicircle_density --grid -1:1:0.5") == 2);
    CHECK(cli("theory goe_nnsd --grid 0:1") == 2);
    CHECK(cli("theory goe_nnsd --grid -1:1:0.5") == 3);
    CHECK(cli("theory goe_nnsd --grid 0:1:0.5 --out " + d + "/no/such/dir/t.csv") == 4);
    CHECK(cli("reproduce-fig 7") == 2);
    CHECK(cli("frobnicate") == 2);

    {
        std::ofstream bad(dir / "bad.ini");
        bad << "[run]\nseed = banana\n";
    }
    CHECK(cli("run " + d + "/bad.ini") == 2);
    CHECK(cli("run " + d + "/missing.ini") == 4);

    {
        std::ofstream one(dir / "one.edges");
        one << "1 2\n";
    }
    CHECK(cli("analyze " + d + "/one.edges --out " + d + "/an") == 3);
    CHECK(cli("analyze " + d + "/none.edges --out " + d + "/an") == 4);
    {
        std::ofstream junk(dir / "junk.edges");
        junk << "1 2 3\n";
    }
    CHECK(cli("analyze " + d + "/junk.edges --out " + d + "/an") == 2);
}

TEST_CASE("cli run honours the output directory variable") {
    const auto dir = scratch("cli_env");
    fs::create_directories(dir);
    {
        std::ofstream cfg(dir / "small.ini");
        cfg << "[ensemble]\ncount = 2\nn = 120\np = 0.3\n[statistics]\nL_max = 5\nwindow_samples = 20\n";
    }
    CHECK(cli("run " + (dir / "small.ini").string(), "RMTNET_OUTPUT_DIR=" + (dir / "env_out").string()) == 0);
    CHECK(fs::exists(dir / "env_out" / "manifest.json"));
    CHECK(fs::exists(dir / "env_out" / "delta3_exact.csv"));

    CHECK(cli("generate --n 50 --p 0.2 --count 2 --seed 3 --spectra --out " + (dir / "gen").string()) == 0);
    CHECK(fs::exists(dir / "gen" / "member_001.edges"));
    CHECK(fs::exists(dir / "gen" / "member_000.csv"));
    CHECK(fs::exists(dir / "gen" / "manifest.json"));
    CHECK(cli("generate --n 50 --p 1.5 --out " + (dir / "gen2").string()) == 2);
}
