#pragma once

#include "ifs/core.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace ifs::certificates {

// Membership in the region H = {1/3 <= |l|^2 <= 1/2, 0 <= Re l <= (3|l|^2 - 1)/2,
// Im l >= 0}. Non-strict mode accepts a few ulps of slack on each boundary;
// strict mode (the interior) demands the same margin on the inside.
bool h_contains(Parameter lambda, bool strict);

enum class CoverRegime { ab1, ab2 };
std::string to_string(CoverRegime regime);

struct CoverParams {
    double a = 0.0;
    double b = 0.0;
    CoverRegime regime = CoverRegime::ab1;
    double threshold = 0.0; // xi* = |l|^2 - |l| sqrt(1 - |l|^2) / sqrt 2
};

// Closed-form rectangle R_{a,b} with R subset lR u (lR - 1) u (lR + 1).
// Throws PreconditionError outside H.
CoverParams cover_params(Parameter lambda);

// Both closed forms, regardless of which the threshold selects.
CoverParams cover_params_ab1(Parameter lambda);
CoverParams cover_params_ab2(Parameter lambda);

// The four sufficient covering inequalities (overlap, short sides, long
// sides), each as LHS - RHS oriented so that >= 0 means satisfied.
struct ConditionSlacks {
    std::array<double, 4> slack{};
    bool holds = false;
    double min() const;
};

ConditionSlacks covering_condition_slacks(Parameter lambda, double a, double b);

enum class TranslateSet {
    with_zero, // R u (R - 1/l) u (R + 1/l)
    signs,     // (R - 1/l) u (R + 1/l)
};
std::string to_string(TranslateSet set);

struct CoverResidual {
    double residual_area = 0.0;
    double target_area = 0.0;
    bool covered = false;
};

// Clips l^{-1} R against the translated copies of R and measures what is left.
CoverResidual verify_cover_geometric(Parameter lambda, const Rectangle& rect, TranslateSet translates);

struct CoverCertificate {
    Parameter lambda;
    Rectangle rect;
    TranslateSet translates = TranslateSet::with_zero;
    std::optional<CoverRegime> regime;
    std::optional<ConditionSlacks> conditions;
    CoverResidual residual;
    bool valid = false;
};

// cover_params followed by both checks.
CoverCertificate certify_cover(Parameter lambda);

// Any rectangle, both checks (conditions only for the three-translate set).
CoverCertificate check_cover(Parameter lambda, const Rectangle& rect, TranslateSet translates);

struct OmegaSearch {
    bool found = false;
    CoverCertificate certificate;
    double best_relative_residual = 0.0;
    int evaluations = 0;
};

// Grid search for R_{a,b} subset (lR - 1) u (lR + 1), a in (1, 40], b in (2^{-1/2}, 40].
// Throws PreconditionError outside Omega.
OmegaSearch omega_cover_params(Parameter lambda);

struct CoverSample {
    Complex point;
    double a = 0.0;
    double b = 0.0;
    double min_slack = 0.0;
    double residual_area = 0.0;
    bool ok = false;
};

struct DiscCertificate {
    DigitString polynomial;
    Complex center;
    double radius = 0.0;
    int degree = 0;
    double center_residual = 0.0; // |p(center)| plus its rounding bound
    double lipschitz_bound = 0.0;  // sum |a_k| k rho^{k-1}, rho = |center| + radius
    double floor_bound = 0.0;      // 0.5 (|center| - radius)^{n+1}
    double lhs = 0.0;              // center_residual + radius * lipschitz_bound
    // Conservative ranges over the disc used for the H test.
    double norm_min = 0.0, norm_max = 0.0, re_min = 0.0, re_max = 0.0, im_min = 0.0;
    std::vector<CoverSample> samples;
};

struct DiscDecision {
    bool accepted = false;
    std::string failing_clause; // empty when accepted
    DiscCertificate certificate;
};

// Certifies B_delta(center) subset M for a {0,+-1} polynomial p with
// p(center) ~ 0: the closed disc lies in int(H) and
// |p(center)| + delta L <= 0.5 (|center| - delta)^{n+1}.
DiscDecision certify_disc(const DigitString& p, Complex center, double delta);

// Largest delta accepted by certify_disc (bisection to relative 1e-6); 0 if none.
double max_certified_radius(const DigitString& p, Complex center);

} // namespace ifs::certificates
