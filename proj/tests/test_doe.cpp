#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <wez/design.hpp>
#include <wez/errors.hpp>
#include <wez/rng.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <vector>

using namespace wez;

namespace {

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

std::vector<DesignRow> random_unit_rows(std::size_t n, std::uint64_t seed) {
    CounterRng rng(seed, 0xABCD);
    std::vector<DesignRow> rows(n);
    for (auto& r : rows)
        for (double& x : r) x = rng.uniform();
    return rows;
}

// Stratum index of a value within [min, max] cut into n equal strata.
std::size_t stratum_of(double x, const VariableBounds& b, std::size_t n) {
    double t = (x - b.min) / (b.max - b.min);
    auto idx = static_cast<std::size_t>(t * static_cast<double>(n));
    return std::min(idx, n - 1);
}

}  // namespace

TEST_CASE("latin property: one sample per stratum for every variable") {
    for (std::size_t n : {10UL, 100UL}) {
        DesignSpec spec;
        spec.samples = n;
        spec.seed = 42;
        spec.maximin_iterations = 500;  // the swap pass must preserve the property
        Design d = lhs_sample(spec);
        REQUIRE(d.rows.size() == n);
        for (std::size_t v = 0; v < kDesignDims; ++v) {
            std::set<std::size_t> seen;
            for (const DesignRow& row : d.rows) {
                CHECK(row[v] >= spec.bounds[v].min);
                CHECK(row[v] <= spec.bounds[v].max);
                seen.insert(stratum_of(row[v], spec.bounds[v], n));
            }
            CHECK(seen.size() == n);  // every stratum hit exactly once
        }
    }
}

TEST_CASE("column means sit near stratum-centre midpoints") {
    // Each variable has one point per stratum, jittered within it, so the
    // column mean can deviate from the domain midpoint by at most half a
    // stratum width.
    DesignSpec spec;
    spec.samples = 1000;
    spec.seed = 3;
    spec.maximin_iterations = 2000;
    Design d = lhs_sample(spec);
    for (std::size_t v = 0; v < kDesignDims; ++v) {
        double sum = 0.0;
        for (const DesignRow& row : d.rows) sum += row[v];
        const double mean = sum / static_cast<double>(spec.samples);
        const VariableBounds& b = spec.bounds[v];
        const double midpoint = 0.5 * (b.min + b.max);
        const double half_stratum = 0.5 * (b.max - b.min) / static_cast<double>(spec.samples);
        CHECK(std::fabs(mean - midpoint) <= half_stratum + 1e-9);
    }
}

TEST_CASE("maximin pass never decreases the minimum pairwise distance") {
    std::vector<DesignRow> rows = random_unit_rows(60, 7);
    const double before = min_pairwise_distance_serial(rows);
    CounterRng rng(7, kStreamMaximin);
    std::vector<double> accepted;
    MaximinResult res =
        maximin_pass(rows, 4000, rng, [&](double d) { accepted.push_back(d); });
    CHECK(res.initial_min_distance == doctest::Approx(before));
    CHECK(res.final_min_distance >= res.initial_min_distance);
    CHECK(res.accepted_swaps == accepted.size());
    REQUIRE(!accepted.empty());
    double prev = before;
    for (double d : accepted) {
        CHECK(d > prev);  // strict-improvement acceptance rule
        prev = d;
    }
    CHECK(min_pairwise_distance_serial(rows) == doctest::Approx(res.final_min_distance));
}

TEST_CASE("lhs_sample records the maximin improvement") {
    DesignSpec spec;
    spec.samples = 50;
    spec.seed = 11;
    spec.maximin_iterations = 5000;
    Design d = lhs_sample(spec);
    CHECK(d.min_distance >= d.min_distance_initial);
    CHECK(d.min_distance_initial > 0.0);
    CHECK(d.accepted_swaps > 0);
    CHECK(d.seed == 11);
}

TEST_CASE("design generation is deterministic in the seed") {
    DesignSpec spec;
    spec.samples = 40;
    spec.seed = 99;
    spec.maximin_iterations = 1000;
    Design a = lhs_sample(spec);
    Design b = lhs_sample(spec);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        for (std::size_t v = 0; v < kDesignDims; ++v)
            CHECK(a.rows[i][v] == b.rows[i][v]);  // bitwise

    spec.seed = 100;
    Design c = lhs_sample(spec);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.rows.size() && !any_diff; ++i)
        any_diff = a.rows[i] != c.rows[i];
    CHECK(any_diff);
}

TEST_CASE("scenario_rows preserves count and produces valid scenarios") {
    DesignSpec spec;
    spec.samples = 30;
    spec.seed = 5;
    spec.maximin_iterations = 200;
    Design d = lhs_sample(spec);
    std::vector<Scenario> rows = scenario_rows(d);
    REQUIRE(rows.size() == d.rows.size());
    for (const Scenario& s : rows) CHECK_NOTHROW(validate_scenario(s));
    CHECK(rows[4].alt_sht == d.rows[4][0]);
    CHECK(rows[4].rgt_tgt == d.rows[4][6]);
}

TEST_CASE("design CSV round-trips exactly") {
    DesignSpec spec;
    spec.samples = 25;
    spec.seed = 17;
    spec.maximin_iterations = 100;
    Design d = lhs_sample(spec);
    auto csv = temp_file("wez_test_design.csv");
    write_design_csv(d, csv.string());
    Design back = read_design_csv(csv.string());
    REQUIRE(back.rows.size() == d.rows.size());
    for (std::size_t i = 0; i < d.rows.size(); ++i)
        for (std::size_t v = 0; v < kDesignDims; ++v)
            CHECK(back.rows[i][v] == d.rows[i][v]);  // %.17g is lossless
    std::filesystem::remove(csv);
}

TEST_CASE("design meta sidecar restores provenance") {
    DesignSpec spec;
    spec.samples = 12;
    spec.seed = 23;
    spec.maximin_iterations = 300;
    Design d = lhs_sample(spec);
    auto meta = temp_file("wez_test_design.meta.json");
    write_design_meta(d, meta.string());
    Design stripped;
    stripped.rows = d.rows;
    read_design_meta(stripped, meta.string());
    CHECK(stripped.seed == d.seed);
    CHECK(stripped.maximin_iterations == d.maximin_iterations);
    CHECK(stripped.accepted_swaps == d.accepted_swaps);
    CHECK(stripped.min_distance == d.min_distance);
    CHECK(stripped.min_distance_initial == d.min_distance_initial);
    std::filesystem::remove(meta);
}

TEST_CASE("parallel distance kernels match the serial reference bitwise") {
    for (std::size_t n : {2UL, 37UL, 500UL}) {
        std::vector<DesignRow> rows = random_unit_rows(n, 1000 + n);
        CHECK(min_pairwise_distance(rows) == min_pairwise_distance_serial(rows));

        std::vector<double> d2_s, d2_p;
        std::vector<int> idx_s, idx_p;
        nearest_neighbors_serial(rows, d2_s, idx_s);
        nearest_neighbors(rows, d2_p, idx_p);
        CHECK(d2_s == d2_p);
        CHECK(idx_s == idx_p);
    }
}

TEST_CASE("invalid specs are rejected") {
    DesignSpec spec;
    spec.samples = 1;
    CHECK_THROWS_AS(lhs_sample(spec), ConfigError);

    spec.samples = 10;
    spec.bounds[2].min = 45.0;
    spec.bounds[2].max = 45.0;
    CHECK_THROWS_AS(lhs_sample(spec), ConfigError);
}

TEST_CASE("design CSV parser reports file and line on malformed input") {
    auto path = temp_file("wez_test_bad_design.csv");
    {
        std::ofstream out(path);
        out << "alt_sht,vel_sht,pit_sht,alt_tgt,vel_tgt,hdg_tgt,WRONG\n";
    }
    CHECK_THROWS_WITH_AS(read_design_csv(path.string()),
                         doctest::Contains(":1:"), CsvError);
    {
        std::ofstream out(path);
        out << "alt_sht,vel_sht,pit_sht,alt_tgt,vel_tgt,hdg_tgt,rgt_tgt\n";
        out << "1000,500,0,2000,450,90,10\n";
        out << "1000,500,zzz,2000,450,90,10\n";
    }
    CHECK_THROWS_WITH_AS(read_design_csv(path.string()),
                         doctest::Contains(":3:"), CsvError);
    std::filesystem::remove(path);
}
