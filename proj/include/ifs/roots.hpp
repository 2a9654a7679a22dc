#pragma once

#include "ifs/core.hpp"

#include <span>
#include <vector>

namespace ifs::roots {

struct RootOptions {
    int max_iterations = 400;
    // Radius of the initial circle; <= 0 picks |c_0 / c_m|^{1/m}.
    double initial_radius = 0.0;
    int polish_steps = 3;
};

struct RootSet {
    std::vector<Complex> roots;
    bool converged = false;
    int iterations = 0;
};

// All complex roots (with multiplicity) of sum c_k z^k, constant first, by
// Aberth-Ehrlich simultaneous iteration from equally spaced points on a
// circle, followed by Newton polishing in extended precision.
// The leading coefficient must be nonzero.
RootSet aberth(std::span<const double> coefficients, const RootOptions& options = {});

// |p(z)| evaluated in extended precision.
double residual(std::span<const double> coefficients, Complex z);

} // namespace ifs::roots
