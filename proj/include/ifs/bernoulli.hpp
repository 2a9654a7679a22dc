#pragma once

#include "ifs/algebraic.hpp"
#include "ifs/core.hpp"

#include <json.hpp>

#include <optional>
#include <vector>

namespace ifs::bernoulli {

// Truncated Fourier product prod_{n<N} cos(Re(lambda^n conj(xi))).
// truncation_error bounds |value - (infinite product)|: the tail product lies
// in [1 - S, 1] with S = |xi|^2 |lambda|^{2N} / (2 (1 - |lambda|^2)), so the
// error is |value| * S plus a small rounding allowance.
struct FourierValue {
    double value = 1.0;
    double truncation_error = 0.0;
    int terms_used = 0;
};

inline constexpr int max_fourier_terms = 10'000;

FourierValue fourier_nu(Parameter lambda, Complex xi, int terms);

// Chooses the number of terms so that S <= 1e-12 (the tail bound is then at
// most 1e-12 times the product), capped at max_terms.
FourierValue fourier_nu_auto(Parameter lambda, Complex xi, int max_terms = max_fourier_terms);

struct DecayRow {
    int n = 0;
    double float_value = 0.0;      // 2 Re(theta^n) from floating powers
    double recurrence_value = 0.0; // s_n minus the other conjugate powers
    long long power_sum = 0;       // Newton power sum s_n
    double distance = 0.0;         // dist(2 Re(theta^n), Z)
};

struct DecayScan {
    std::vector<DecayRow> rows;
    double rho = 0.0;        // fitted decay rate, NaN if fewer than two usable rows
    int fit_points = 0;
    double rho_max = 0.0;    // largest modulus among the other conjugates
    double max_route_gap = 0.0;
};

// Requires a complex Pisot theta.
DecayScan pisot_decay_scan(const algebraic::AlgebraicNumber& theta, int n_max);

struct WitnessRow {
    int n = 0;
    double direct = 0.0;
    double direct_error = 0.0;
    double factorized = 0.0;
    double factorized_error = 0.0;
};

struct WitnessReport {
    FourierValue base; // nu_hat(2 pi)
    std::vector<WitnessRow> rows;
    double min_abs = 0.0;
    int argmin = 0;
    double floor = 0.0; // lower bound on |nu_hat(2 pi conj(theta)^N)| for every N >= 0
    double max_discrepancy = 0.0;
    DecayScan scan;
};

// Evaluates nu_hat_lambda(2 pi conj(theta)^N), lambda = 1/theta, for N <= n_max,
// directly with N + extra_terms factors and through the factorization
// prod_{n<=N} cos(2 pi Re theta^n) * nu_hat(2 pi). Requires a complex Pisot
// theta with |theta| < sqrt 2.
WitnessReport singularity_witness(const algebraic::AlgebraicNumber& theta, int n_max, int extra_terms = 200);

struct LevelStatistics {
    int n = 0;
    long long count = 0;         // distinct points (closer than 1e-10 counts as equal)
    double min_distance = 0.0;   // over all pairs of the 2^n sums
};

inline constexpr int default_level_cap = 14;
inline constexpr int hard_level_cap = 22;

// Statistics of the level-n sums sum_{k<n} a_k lambda^k, a_k = +-1. The grid
// hash starts at cell size `hint` and doubles until the minimum is resolved.
LevelStatistics level_statistics(Parameter lambda, int n, double hint, unsigned threads = 0);

struct SeparationReport {
    int n = 0;
    long long count = 0;
    double min_distance = 0.0;
    double bound = 0.0; // c 2^{-n/2}
    double c = 0.0;     // 2 |theta| prod_{j>=3} (|theta_j| - 1)^{1/2}
    bool holds = false; // count == 2^n and min_distance >= bound - 1e-12
};

double garsia_constant(const algebraic::AlgebraicNumber& theta);

// Requires a complex Garsia theta with constant term +-2; n <= cap.
SeparationReport garsia_separation(const algebraic::AlgebraicNumber& theta, int n, int cap = default_level_cap,
                                   unsigned threads = 0);

struct DensityReport {
    double max_ratio = 0.0; // max cell mass / cell area
    Complex location;       // center of the densest cell
    double cell_area = 0.0;
    double mass_outside = 0.0;
};

DensityReport density_histogram(Parameter lambda, int n, const Window& window, Resolution grid,
                                int cap = default_level_cap, unsigned threads = 0);

// k^{-1/(2k)} (1 + 1/k)^{-(1+1/k)/2}; k = 4 gives 2 * 5^{-5/8}.
double transversality_bound(int k);

struct Interval {
    int k = 0;
    double low = 0.0;
    double high = 0.0;
};

struct IntervalReport {
    std::vector<Interval> intervals;
    std::optional<int> overlap_k; // smallest k whose interval meets the one for k + 1
};

IntervalReport continuous_density_intervals(int k_max);

// Which typical-parameter statements cover |lambda|. Every claim is about
// almost every parameter of an annulus, never about this lambda.
nlohmann::json typical_region_report(Parameter lambda);

} // namespace ifs::bernoulli
