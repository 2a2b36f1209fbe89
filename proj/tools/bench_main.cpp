// Timing comparison of the OpenMP kernels against their serial reference
// implementations, with equality checks so a speedup never hides a
// divergence.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "wez/dataset.hpp"
#include "wez/design.hpp"
#include "wez/rng.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<wez::DesignRow> random_rows(std::size_t n, std::uint64_t seed) {
    wez::CounterRng rng(seed, 0x9999);
    std::vector<wez::DesignRow> rows(n);
    for (auto& row : rows)
        for (double& v : row) v = rng.uniform();
    return rows;
}

struct Timed {
    double serial_s = 0.0;
    double parallel_s = 0.0;
    bool equal = false;
};

void report(const char* name, const Timed& t) {
    std::printf("%-24s serial %8.3f s   parallel %8.3f s   speedup %5.2fx   %s\n", name,
                t.serial_s, t.parallel_s,
                t.parallel_s > 0.0 ? t.serial_s / t.parallel_s : 0.0,
                t.equal ? "outputs identical" : "OUTPUTS DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Serial-vs-parallel kernel benchmark"};
    std::size_t distance_rows = 4000;
    std::size_t sim_rows = 24;
    int repeats = 3;
    app.add_option("--distance-rows", distance_rows, "rows for the distance kernels");
    app.add_option("--sim-rows", sim_rows, "design rows for the batch-labelling kernel");
    app.add_option("--repeats", repeats, "repetitions per distance kernel");
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled in this build; both columns run serially\n\n");
#endif

    const std::vector<wez::DesignRow> rows = random_rows(distance_rows, 7);
    bool all_equal = true;

    {
        Timed t;
        double serial_value = 0.0, parallel_value = 0.0;
        auto start = std::chrono::steady_clock::now();
        for (int r = 0; r < repeats; ++r)
            serial_value = wez::min_pairwise_distance_serial(rows);
        t.serial_s = seconds_since(start) / repeats;
        start = std::chrono::steady_clock::now();
        for (int r = 0; r < repeats; ++r) parallel_value = wez::min_pairwise_distance(rows);
        t.parallel_s = seconds_since(start) / repeats;
        t.equal = serial_value == parallel_value;
        all_equal = all_equal && t.equal;
        report("min_pairwise_distance", t);
    }

    {
        Timed t;
        std::vector<double> d2_serial, d2_parallel;
        std::vector<int> idx_serial, idx_parallel;
        auto start = std::chrono::steady_clock::now();
        for (int r = 0; r < repeats; ++r)
            wez::nearest_neighbors_serial(rows, d2_serial, idx_serial);
        t.serial_s = seconds_since(start) / repeats;
        start = std::chrono::steady_clock::now();
        for (int r = 0; r < repeats; ++r)
            wez::nearest_neighbors(rows, d2_parallel, idx_parallel);
        t.parallel_s = seconds_since(start) / repeats;
        t.equal = d2_serial == d2_parallel && idx_serial == idx_parallel;
        all_equal = all_equal && t.equal;
        report("nearest_neighbors", t);
    }

    {
        Timed t;
        wez::DesignSpec spec;
        spec.samples = sim_rows;
        spec.seed = 99;
        spec.maximin_iterations = 2000;
        const wez::Design design = wez::lhs_sample(spec);
        const wez::MissileConfig missile;
        auto start = std::chrono::steady_clock::now();
        const wez::Dataset serial = wez::generate_dataset_serial(design, missile);
        t.serial_s = seconds_since(start);
        start = std::chrono::steady_clock::now();
        const wez::Dataset parallel = wez::generate_dataset(design, missile, 0);
        t.parallel_s = seconds_since(start);
        t.equal = serial.rows.size() == parallel.rows.size();
        for (std::size_t i = 0; t.equal && i < serial.rows.size(); ++i)
            t.equal = serial.rows[i].max_range_nm == parallel.rows[i].max_range_nm;
        all_equal = all_equal && t.equal;
        report("generate_dataset", t);
    }

    if (!all_equal) {
        std::fprintf(stderr, "kernel outputs diverged\n");
        return 1;
    }
    return 0;
}
