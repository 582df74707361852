#pragma once

#include <cstdint>
#include <vector>

#include "sps/report.hpp"

namespace sps {

// One-command property suite: binds every finitely checkable identity,
// scaling law, inequality and oracle equivalence of the grid, kernel,
// nonlinearity and functional modules to a pass/fail/report line, over a
// deterministic corpus seeded by corpus_seed. Hard identities may fail;
// inequality checks with empirical constants are report-only.
std::vector<CheckReport> run_suite(std::uint64_t corpus_seed, double L, int n,
                                   int workers = 0);

bool any_hard_failure(const std::vector<CheckReport>& reports);

}  // namespace sps
