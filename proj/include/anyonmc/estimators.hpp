#ifndef ANYONMC_ESTIMATORS_HPP
#define ANYONMC_ESTIMATORS_HPP

#include <span>
#include <vector>

#include "anyonmc/sampler.hpp"

namespace anyonmc {

// Mean and standard error of an autocorrelated series by blocking:
// block sizes double until the error estimate plateaus.
struct BlockingResult {
    double mean = 0.0;
    double std_error = 0.0;
    long block_size = 1;
    std::size_t count = 0;
};

BlockingResult blocking_analysis(std::span<const double> series);

struct ValueWithError {
    double value = 0.0;
    double error = 0.0;
};

// rho_hat = mean(N) / L^2 with blocking errors.
ValueWithError estimate_density(std::span<const SampleRecord> records, int num_plaquettes);

struct ParityPoint {
    int scale = 0;         // l
    double pi = 0.0;       // fraction of records with even count in the window
    double pi_err = 0.0;
    double gamma = 0.0;    // 2 (ln 2 - S(pi))
    double gamma_err = 0.0;
    long block_size = 1;
};

// One point per registered window; `scales` must align with the parity
// entries of the records.
std::vector<ParityPoint> estimate_parity_profile(std::span<const SampleRecord> records,
                                                 std::span<const int> scales);

// Fills gamma and gamma_err. Errors propagate through S by the delta
// method; near the degenerate points pi in {0, 1/2, 1} a parametric
// bootstrap replaces the vanishing derivative.
void estimate_gamma(std::vector<ParityPoint>& profile);

enum class LambdaFlag { Crossed, NotCrossedAbove, NotCrossedBelow };

struct LambdaEstimate {
    LambdaFlag flag = LambdaFlag::Crossed;
    double value = 0.0;
    double error = 0.0;
    bool isotonic_warning = false;  // profile was non-monotone beyond noise
};

// The window side at which pi crosses 1 - delta, interpolated in
// (l^2, ln(2 pi - 1)) coordinates where the uncorrelated law is exactly
// linear. Non-monotone profiles are isotonized first.
LambdaEstimate estimate_lambda(std::span<const ParityPoint> profile, double delta);

struct GammaProfile {
    std::vector<ParityPoint> points;
    LambdaEstimate lambda;
    double delta = 0.05;
    std::size_t samples = 0;
};

GammaProfile build_gamma_profile(std::span<const SampleRecord> records, std::span<const int> scales,
                                 double delta);

// Default scale grid: every l with w = l feasible (3l <= L - 1), thinned
// geometrically above l = 8.
std::vector<int> default_scale_grid(int side);

}  // namespace anyonmc

#endif
