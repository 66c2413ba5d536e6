// Walk through one round of the protocol for a handful of spins: Alice's frame
// is a random rotation, Bob measures with the covariant design and guesses the
// outcome's rotation label.

#include <dcc/optimal_state.hpp>
#include <dcc/povm.hpp>
#include <dcc/simulator.hpp>
#include <dcc/su2.hpp>

#include <cstdio>
#include <random>

int main() {
    constexpr int n_spins = 4;
    const auto coeffs = dcc::optimal_coeffs(n_spins);
    const auto povm = dcc::build_product_design(n_spins);

    std::printf("N = %d, design with %zu outcomes\n", n_spins, povm.size());
    for (int k = 0; k < coeffs.spectrum.size(); ++k)
        std::printf("  a_{%d/2} = %.10f\n", coeffs.spectrum[k].twoJ, coeffs.a(k));

    std::mt19937_64 rng(2024);
    const dcc::Rotation alice = dcc::haar_sample(rng);
    const auto p = dcc::outcome_probabilities(coeffs, povm, alice);
    std::discrete_distribution<std::size_t> outcome(p.begin(), p.end());
    const dcc::Rotation guess = povm.points[outcome(rng)].g;

    std::printf("single-shot Holevo error: %.6f\n", dcc::holevo_error(alice, guess));
    std::printf("expected error <h>_min:   %.6f\n", dcc::min_error_closed(n_spins));

    const auto summary = dcc::run_trials(coeffs, povm, 20000, 7);
    std::printf("mean over %lld trials:   %.6f +- %.6f\n", summary.trials, summary.mean_h,
                summary.stderr_h.value_or(0.0));
    return 0;
}
