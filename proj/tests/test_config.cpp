#include <doctest.h>

#include <cstdlib>

#include "petallab/config.hpp"

using namespace petallab;

namespace {

const char* kSample = R"(
# slit-strip experiment
[domain]
shape = "slit-strip"
height = 6.283185307179586
slits = [[3.141592653589793, 0.0]]

[compact]
disks = [[3.0, 1.5707963267948966, 0.3]]

[probes]
z = [5.0, 1.5707963267948966]
w = [6.0, 1.5707963267948966]

[sweep]
t_grid = [0.0, -2.0, -4.0]
quantities = ["harmonic", "density"]
diameter_n = 4
m = 64
petal = 0

[wos]
epsilon_shell = 1e-3
max_steps = 10000
n_walks = 5000
seed = 7
)";

}  // namespace

TEST_CASE("config parses tables, arrays and inline tables") {
    const auto doc = parse_config_text(R"(
title = "x"
domain = { shape = "strip", y0 = 0.0, y1 = 1.5 }
grid = [[1, 2], [3, 4]]
flag = true
)");
    CHECK(doc.at("title") == "x");
    CHECK(doc.at("domain").at("shape") == "strip");
    CHECK(doc.at("domain").at("y1") == 1.5);
    CHECK(doc.at("grid")[1][0] == 3);
    CHECK(doc.at("flag") == true);
}

TEST_CASE("run config round trip") {
    const RunConfig run = parse_run_config(kSample);
    CHECK(run.sweep.domain.shape() == Shape::SlitStrip);
    CHECK(run.sweep.compact.disks().size() == 1);
    CHECK(run.sweep.z == Complex{5.0, 1.5707963267948966});
    CHECK(run.sweep.t_grid.size() == 3);
    CHECK(run.sweep.wos.n_walks == 5000);
    CHECK(run.sweep.wos.seed == 7);
    CHECK(run.seed_from_config);

    const std::string emitted = emit_config(run);
    const RunConfig again = parse_run_config(emitted);
    CHECK(emit_config(again) == emitted);
    CHECK(again.sweep.wos.seed == run.sweep.wos.seed);
    CHECK(again.sweep.t_grid == run.sweep.t_grid);
    CHECK(again.sweep.quantities == run.sweep.quantities);
    CHECK(again.sweep.domain.slits()[0].height == run.sweep.domain.slits()[0].height);
}

TEST_CASE("unknown keys and tables are rejected") {
    CHECK_THROWS_AS(parse_run_config("[domain]\nshape = \"unit-disk\"\nradius = 2\n"
                                     "[compact]\ndisks = [[0.0, 0.0, 0.5]]\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_run_config("[domian]\nshape = \"unit-disk\"\n"), ConfigError);
    CHECK_THROWS_AS(
        parse_run_config("[domain]\nshape = \"unit-disk\"\n[compact]\ndisks = [[0.0, 0.0, 0.5]]\n"
                         "[sweep]\nquantities = [\"harmonics\"]\n"),
        ConfigError);
}

TEST_CASE("numeric preconditions are enforced at parse time") {
    // slit ordinate outside the strip
    CHECK_THROWS_AS(parse_run_config("[domain]\nshape = \"slit-strip\"\nheight = 2.0\n"
                                     "slits = [[2.5, 0.0]]\n"
                                     "[compact]\ndisks = [[0.0, 0.5, 0.1]]\n"),
                    ConfigError);
    // nonpositive disk radius
    CHECK_THROWS_AS(parse_run_config("[domain]\nshape = \"unit-disk\"\n"
                                     "[compact]\ndisks = [[0.0, 0.0, -0.5]]\n"),
                    ConfigError);
    // walk budget below the floor
    CHECK_THROWS_AS(parse_run_config("[domain]\nshape = \"unit-disk\"\n"
                                     "[compact]\ndisks = [[0.0, 0.0, 0.5]]\n"
                                     "[wos]\nn_walks = 10\n"),
                    ConfigError);
}

TEST_CASE("seed falls back to the environment variable") {
    const char* no_seed =
        "[domain]\nshape = \"unit-disk\"\n[compact]\ndisks = [[0.0, 0.0, 0.5]]\n";
    setenv("PETALLAB_SEED", "424242", 1);
    const RunConfig run = parse_run_config(no_seed);
    CHECK(run.sweep.wos.seed == 424242);
    CHECK_FALSE(run.seed_from_config);
    unsetenv("PETALLAB_SEED");
    const RunConfig fallback = parse_run_config(no_seed);
    CHECK(fallback.sweep.wos.seed == 1);
}

TEST_CASE("config errors carry messages") {
    CHECK_THROWS_WITH_AS(parse_config_text("key = "), doctest::Contains("expected a value"),
                         ConfigError);
    CHECK_THROWS_AS(parse_config_text("a = 1\na = 2"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("s = \"unterminated"), ConfigError);
}
