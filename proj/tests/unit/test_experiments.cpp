#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hheat/errors.hpp"
#include "hheat/experiments.hpp"

using namespace hheat;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

fs::path scratch_dir(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("hheat_test_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

const char* kSmallSweep = R"(
# tiny lattice
problem.gamma = 0.5
grid.nx = 15
grid.rx = 2.1
grid.rtau = 3
data.amplitude = 0.5
solver.horizon = 0.2
sweep.points = 1.5:2.5, 3.0:2.5, 1.2:4.0, 2.0:3.0
)";

}  // namespace

TEST_CASE("config parsing, overrides and errors") {
    Config c = Config::from_string("a.b = 1.5\n# comment\nc.d=hello  \nlist.x = 1, 2 ,3\nflag.on = true\n", "mem");
    CHECK(c.get_double("a.b") == 1.5);
    CHECK(c.get_string("c.d") == "hello");
    CHECK(c.get_list("list.x") == std::vector<double>{1, 2, 3});
    CHECK(c.get_bool("flag.on", false));
    CHECK(c.get_int("missing.key", 7) == 7);
    c.apply_override("a.b=2.5");
    CHECK(c.get_double("a.b") == 2.5);
    CHECK(Config::from_string("x.y = inf").get_double("x.y") == INFINITY);

    CHECK_THROWS_AS(c.get_double("c.d"), ConfigError);
    CHECK_THROWS_AS(c.get_double("nope"), ConfigError);
    CHECK_THROWS_AS(c.apply_override("novalue"), ConfigError);
    CHECK_THROWS_AS(Config::from_string("just words\n"), ConfigError);
    try {
        Config::from_file("/nonexistent/dir/run.cfg");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("/nonexistent/dir/run.cfg") != std::string::npos);
    }

    const Config unused = Config::from_string("a.b = 1\nc.d = 2");
    (void)unused.get_double("a.b");
    CHECK(unused.unused_keys() == std::vector<std::string>{"c.d"});
}

TEST_CASE("config mapping builds the requested space and data") {
    const Config c = Config::from_string(
        "grid.kind = radial\ngrid.hr = 0.5\ngrid.r_max = 10\ngrid.tau_max = 30\ndata.kind = power\ndata.kappa = 1.5\n"
        "solver.history = float\nproblem.p1 = 2\nproblem.p2 = 3");
    const RunSetup s = setup_from_config(c);
    CHECK(s.space.kind == SpaceKind::Radial);
    CHECK(s.space.radial.r_max() == doctest::Approx(10.0));
    CHECK(s.data.kind == DataKind::PowerDecay);
    CHECK(s.data.kappa == 1.5);
    CHECK(s.settings.history_precision == HistoryPrecision::Float);
    CHECK(params_from_config(c).p2 == 3.0);

    CHECK_THROWS_AS(space_from_config(Config::from_string("grid.kind = torus")), ConfigError);
    CHECK_THROWS_AS(data_from_config(Config::from_string("data.width = -1")), ConfigError);
    CHECK_THROWS_AS(settings_from_config(Config::from_string("solver.history = half")), ConfigError);
    CHECK_THROWS_AS(sweep_from_config(Config::from_string("grid.nx = 15")), ConfigError);
}

TEST_CASE("CSV numbers round-trip at 17 digits") {
    for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, 0.0}) {
        CHECK(std::stod(format_double(v)) == v);
    }
    CsvTable t;
    t.header = {"a", "b"};
    t.add_row({"1", "2"});
    CHECK(t.str() == "a,b\n1,2\n");
    CHECK_THROWS_AS(t.add_row({"1"}), InvalidArgument);
}

TEST_CASE("manifest lists outputs with digests") {
    const fs::path d = scratch_dir("manifest");
    const std::string csv = (d / "out.csv").string();
    write_text(csv, "x\n1\n");
    Manifest m;
    m.command = "simulate";
    m.config = Config::from_string("a.b = 1");
    m.seed = 11;
    m.outputs.push_back({csv, kSeriesSchema});
    m.summary.push_back({"status", "SurvivedHorizon"});
    write_manifest((d / "manifest.json").string(), m);
    const auto j = nlohmann::json::parse(slurp(d / "manifest.json"));
    CHECK(j["manifest_schema"] == kManifestSchemaVersion);
    CHECK(j["seed"] == 11);
    CHECK(j["config"]["a.b"] == "1");
    CHECK(j["outputs"][0]["sha256"] == sha256_hex("x\n1\n"));
    CHECK(j["outputs"][0]["bytes"] == 4);
    CHECK(j["outputs"][0]["schema"] == kSeriesSchema);
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("phase sweep is deterministic across thread counts") {
    Config c = Config::from_string(kSmallSweep);
    SweepConfig one = sweep_from_config(c);
    REQUIRE(one.lattice.size() == 4);
    SweepConfig two = one;
    two.threads = 2;
    const auto a = phase_sweep(one);
    const auto b = phase_sweep(two);
    CHECK(sweep_table(a).str() == sweep_table(b).str());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].index == i);
        CHECK(a[i].p1 == one.lattice[i].first);
    }
    CHECK(a[0].predicted == Region::BlowUp);
    CHECK(a[1].predicted == Region::GlobalSmallData);
}

TEST_CASE("lifespan fit needs three blow-up points") {
    std::vector<LifespanPoint> pts(3);
    for (std::size_t i = 0; i < 3; ++i) {
        pts[i].epsilon = std::pow(0.5, static_cast<double>(i));
        pts[i].t_end = 2.0 * std::pow(pts[i].epsilon, -1.5);
        pts[i].status = RunStatus::BlewUp;
        pts[i].valid = true;
    }
    const LineFit f = fit_lifespan(pts);
    CHECK(f.slope == doctest::Approx(-1.5));
    CHECK(f.r2 == doctest::Approx(1.0));
    pts[2].valid = false;
    pts[2].status = RunStatus::SurvivedHorizon;
    CHECK_THROWS_AS(fit_lifespan(pts), FitAborted);

    LifespanConfig lc;
    lc.params = ProblemParams{0.5, 3.0, 2.5, 1};  // global region
    lc.epsilons = {1.0, 0.5};
    CHECK_THROWS_AS(lc.validate(), InvalidArgument);
    lc.params = ProblemParams{0.5, 1.5, 2.5, 1};
    lc.epsilons = {0.5, 1.0};
    CHECK_THROWS_AS(lc.validate(), InvalidArgument);
}

TEST_CASE("comparison: ordered data give ordered solutions") {
    const SpaceSetup space = SpaceSetup::from(GridSpec::parabolic(15, 15, 2.1, 2.1, 3.0, 1));
    SolverSettings s;
    s.horizon = 0.2;
    const ProblemParams p{0.5, 2.0, 2.0, 1};
    const auto upper = InitialData::bump(1.0, 1.0);
    const auto same = comparison_check(p, space, upper, upper, s);
    CHECK(same.order_violation == 0.0);
    const auto r = comparison_check(p, space, upper.scaled(0.5), upper, s);
    CHECK(r.order_violation <= 1e-12);
    CHECK(r.memory_violation <= 1e-12);
    CHECK(r.reaction_violation <= 1e-12);
    CHECK(r.t_end == doctest::Approx(0.2));
    CHECK_THROWS_AS(comparison_check(p, space, upper, upper.scaled(0.5), s), InvalidArgument);
}

TEST_CASE("kernel validation on a small sample") {
    HistogramSpec bins;
    bins.rx = bins.ry = 2.0;
    bins.rtau = 3.0;
    bins.bx = bins.by = 10;
    bins.btau = 10;
    const KernelValidation v = validate_kernel(0.25, 40000, 3, bins);
    CHECK(v.mass > 0.95);
    CHECK(v.mass <= 1.0);
    CHECK(v.symmetry.size() == 5);
    // Each probe bin holds roughly a thousand paths here, so the gaps are loose.
    CHECK(v.max_symmetry_gap() < 0.2);
    CHECK(v.max_scaling_gap() < 0.2);
    CHECK(v.semigroup_z < 4.0);
    const CsvTable t = kernel_table(v.estimate);
    CHECK(t.rows.size() == bins.bins());
}
