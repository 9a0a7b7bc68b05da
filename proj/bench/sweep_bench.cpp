// Times the serial sweep reference against the OpenMP runner on a small grid.

#include <chrono>
#include <cstdio>
#include <filesystem>

#include "cpgrun/sweep.hpp"

#ifdef CPGRUN_HAVE_OPENMP
#include <omp.h>
#endif

using namespace cpgrun;
namespace fs = std::filesystem;

namespace {

double time_run(auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    int repeats = argc > 1 ? std::atoi(argv[1]) : 3;

    SimConfig base = preset_config(Preset::WithoutFeedback);
    base.simulation.max_steps = 60;
    base.simulation.decimation = 1000;

    const SweepSpec spec = parse_sweep_text(
        "simulation.y0 = 1.2764, 1.25, 1.30, 1.20\n"
        "simulation.vx0 = 4.6754, 4.5, 4.8, 4.3\n");
    const auto points = expand_sweep(spec, base);

    const fs::path root = fs::temp_directory_path() / "cpgrun_bench";
    fs::remove_all(root);

    std::printf("sweep of %zu points, %d repeats\n", points.size(), repeats);
#ifdef CPGRUN_HAVE_OPENMP
    std::printf("openmp enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("openmp not available; parallel path runs serially\n");
#endif

    double best_serial = 1e300, best_parallel = 1e300;
    for (int i = 0; i < repeats; ++i) {
        fs::remove_all(root / "serial");
        const double ms =
            time_run([&] { run_sweep_serial(points, root / "serial"); });
        best_serial = std::min(best_serial, ms);
        std::printf("  serial   run %d: %8.1f ms\n", i, ms);
    }
    for (int i = 0; i < repeats; ++i) {
        fs::remove_all(root / "parallel");
        const double ms =
            time_run([&] { run_sweep_parallel(points, root / "parallel", 0); });
        best_parallel = std::min(best_parallel, ms);
        std::printf("  parallel run %d: %8.1f ms\n", i, ms);
    }
    std::printf("best serial %.1f ms, best parallel %.1f ms, speedup %.2fx\n", best_serial,
                best_parallel, best_serial / best_parallel);
    fs::remove_all(root);
    return 0;
}
