#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "corpus.hpp"
#include "engine.hpp"
#include "serialize.hpp"

namespace expsum {

struct RunReport {
    unsigned instances = 0;
    unsigned skipped = 0;        // per-instance cap or time budget overflows
    unsigned hard_failures = 0;  // correctness invariants: fatal
    std::vector<std::string> failure_notes;
    std::vector<std::string> written_files;
};

// Default thread count: EXPSUM_THREADS, else hardware concurrency.
unsigned default_threads();

// Runs the experiment described by cfg, writing sums/verdicts/summary into
// out_dir. Deterministic output for a fixed config regardless of threads.
RunReport run_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                         unsigned threads = 0);

}  // namespace expsum
