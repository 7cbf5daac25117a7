#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nlcolloc/tables.hpp"

namespace nlcolloc {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Algebraic weight identities, cubic exactness, the standard-vs-shifted
/// perturbation identity and its magnitude bound.
std::vector<CheckResult> verify_weights(std::uint64_t seed);

/// Dual-oracle agreement, kernel moment, local-limit consistency, pinned
/// operator values.
std::vector<CheckResult> verify_oracle(std::uint64_t seed);

/// Matrix certificates over the (N, r) grid, discrete maximum principle,
/// direct-vs-CG and FFT-vs-dense solver cross-checks.
std::vector<CheckResult> verify_matrix(std::uint64_t seed);

/// Truncation-order probes, order dichotomy, asymptotic compatibility and
/// the horizon misalignment order collapse.
std::vector<CheckResult> verify_truncation(std::uint64_t seed);

std::vector<CheckResult> verify_all(std::uint64_t seed);

int count_failures(const std::vector<CheckResult>& checks);
std::string format_checks(const std::vector<CheckResult>& checks);

}  // namespace nlcolloc
