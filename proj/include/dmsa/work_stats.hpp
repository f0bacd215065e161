#pragma once

#include <cstdint>

namespace dmsa {

// Operation counters threaded through the compute kernels so the runtime can
// account work per worker without timing noise.
struct WorkStats {
    std::uint64_t dp_cells = 0;
    std::uint64_t kmer_evals = 0;

    WorkStats& operator+=(const WorkStats& o) noexcept {
        dp_cells += o.dp_cells;
        kmer_evals += o.kmer_evals;
        return *this;
    }
};

}  // namespace dmsa
