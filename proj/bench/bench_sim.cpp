// Compares the sequential reference simulation loop against the
// OpenMP-parallel one on identical workloads and checks they agree.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "polar/simulate.hpp"

namespace {

double seconds(void) {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

void bench_case(const char* label, polar::SimConfig config) {
    config.max_frame_errors = config.max_frames;  // fixed workload, no early stop

    double t0 = seconds();
    polar::SimResult serial = polar::run_simulation_reference(config);
    double t_serial = seconds() - t0;

    config.workers = 0;
    t0 = seconds();
    polar::SimResult parallel = polar::run_simulation(config);
    double t_parallel = seconds() - t0;

    bool match = serial == parallel;
    std::printf("%-28s serial %7.3fs  parallel %7.3fs  speedup %5.2fx  %s\n",
                label, t_serial, t_parallel, t_serial / t_parallel,
                match ? "results match" : "RESULTS DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP max threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP, parallel path runs serially\n");
#endif

    polar::SimConfig base;
    base.design_ebn0_db = 2.0;
    base.ebn0_db = {2.0};
    base.seed = 7;

    {
        polar::SimConfig c = base;
        c.n = 8;
        c.K = 128;
        c.decoder = "sc";
        c.pm_mode = "hwf";
        c.max_frames = 20000;
        bench_case("sc n=8", c);
    }
    {
        polar::SimConfig c = base;
        c.n = 7;
        c.K = 64;
        c.decoder = "scl";
        c.list_size = 8;
        c.pm_mode = "exact";
        c.max_frames = 4000;
        bench_case("scl L=8 n=7", c);
    }
    {
        polar::SimConfig c = base;
        c.n = 7;
        c.K = 64;
        c.decoder = "sscl";
        c.list_size = 8;
        c.pm_mode = "exact";
        c.max_frames = 4000;
        bench_case("sscl L=8 n=7", c);
    }
    {
        polar::SimConfig c = base;
        c.n = 7;
        c.K = 64;
        c.decoder = "fast-sscl";
        c.list_size = 8;
        c.pm_mode = "hwf";
        c.max_frames = 4000;
        bench_case("fast-sscl L=8 n=7", c);
    }
    {
        polar::SimConfig c = base;
        c.n = 10;
        c.K = 512;
        c.decoder = "fast-sscl";
        c.list_size = 4;
        c.pm_mode = "hwf";
        c.max_frames = 1000;
        bench_case("fast-sscl L=4 n=10", c);
    }
    return 0;
}
