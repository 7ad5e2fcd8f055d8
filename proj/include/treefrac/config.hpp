#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <string>

namespace treefrac {

/// Desk-scale caps. Environment variables override the defaults; a CLI config
/// file (see tools/) overrides both.
struct Limits {
    int census_max_n = 7;                        // exhaustive census cap (hard ceiling 7)
    std::uint64_t ball_max_elements = 10'000'000;  // semigroup ball element cap
    std::uint64_t pressure_max_terms = 100'000'000;  // A^depth cap for pressure sums
    std::size_t grid_cells = 100'000;            // default certification grid
    std::size_t grid_cells_max = 10'000'000;     // refinement ceiling
    unsigned threads = 0;                        // 0 = hardware concurrency

    static Limits from_env() {
        Limits lim;
        auto geti = [](const char* name, auto fallback) {
            const char* v = std::getenv(name);
            if (!v || !*v) return fallback;
            return static_cast<decltype(fallback)>(std::strtoull(v, nullptr, 10));
        };
        lim.census_max_n = static_cast<int>(geti("TREEFRAC_CENSUS_MAX_N", std::uint64_t{7}));
        lim.ball_max_elements = geti("TREEFRAC_BALL_CAP", lim.ball_max_elements);
        lim.pressure_max_terms = geti("TREEFRAC_PRESSURE_CAP", lim.pressure_max_terms);
        lim.grid_cells = geti("TREEFRAC_GRID_CELLS", lim.grid_cells);
        lim.grid_cells_max = geti("TREEFRAC_GRID_CELLS_MAX", lim.grid_cells_max);
        lim.threads = static_cast<unsigned>(geti("TREEFRAC_THREADS", std::uint64_t{0}));
        return lim;
    }
};

inline const char* artifact_version() { return "1.0.0"; }

}  // namespace treefrac
