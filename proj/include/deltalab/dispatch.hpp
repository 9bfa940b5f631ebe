#pragma once

// The CLI dispatch table: which subcommand surfaces which library operation.
// Kept as data so the test suite can assert that every operation is exposed
// by exactly one subcommand.

#include <string>
#include <vector>

namespace deltalab::cli {

struct DispatchEntry {
    std::string subcommand;
    std::vector<std::string> operations;
};

inline const std::vector<DispatchEntry>& dispatch_table() {
    static const std::vector<DispatchEntry> table = {
        {"delta", {"summatory.divisor_summatory", "summatory.delta"}},
        {"sweep", {"moments.prime_moment_sweep", "sieves.primes_in"}},
        {"mean-square", {"moments.continuous_mean_square"}},
        {"discrete-mean-square", {"moments.discrete_mean_square", "summatory.delta_stream"}},
        {"furuya", {"moments.furuya_check"}},
        {"shifted-moment", {"moments.shifted_delta_moment"}},
        {"voronoi", {"voronoi.delta1", "voronoi.delta2", "voronoi.voronoi_residual_stats"}},
        {"hb-verify",
         {"identities.heath_brown_rhs", "identities.verify_heath_brown",
          "sieves.sieve_segment"}},
        {"spacing", {"spacing.t_value", "spacing.count_spacing_B", "spacing.proposition_bound"}},
        {"quadruplets", {"spacing.count_quadruplets_N"}},
        {"close-pairs", {"spacing.count_close_pairs"}},
        {"pair-proximity", {"spacing.pair_proximity_check"}},
        {"t-sum", {"spacing.T_sum"}},
        {"expsum-suite",
         {"expsums.exp_sum", "expsums.exp_integral", "expsums.sum_to_integral_residual",
          "expsums.first_derivative_check", "expsums.second_derivative_ratio",
          "expsums.double_large_sieve_check"}},
        {"type-sum", {"expsums.type_sum_eval"}},
        {"constants", {"moments.constant_C"}},
    };
    return table;
}

// Canonical list of the library's operations (everything the CLI must cover).
inline std::vector<std::string> library_operations() {
    return {
        "sieves.sieve_segment",
        "sieves.primes_in",
        "summatory.divisor_summatory",
        "summatory.delta",
        "summatory.delta_stream",
        "voronoi.delta1",
        "voronoi.delta2",
        "voronoi.voronoi_residual_stats",
        "identities.heath_brown_rhs",
        "identities.verify_heath_brown",
        "spacing.t_value",
        "spacing.count_spacing_B",
        "spacing.proposition_bound",
        "spacing.count_quadruplets_N",
        "spacing.count_close_pairs",
        "spacing.pair_proximity_check",
        "spacing.T_sum",
        "expsums.exp_sum",
        "expsums.exp_integral",
        "expsums.sum_to_integral_residual",
        "expsums.first_derivative_check",
        "expsums.second_derivative_ratio",
        "expsums.double_large_sieve_check",
        "expsums.type_sum_eval",
        "moments.constant_C",
        "moments.continuous_mean_square",
        "moments.discrete_mean_square",
        "moments.furuya_check",
        "moments.shifted_delta_moment",
        "moments.prime_moment_sweep",
    };
}

}  // namespace deltalab::cli
