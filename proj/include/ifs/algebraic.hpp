#pragma once

#include "ifs/core.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ifs::algebraic {

// Integer polynomial, constant term first. Trailing zero coefficients are
// trimmed; the degree must be at least one.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<std::int64_t> coefficients);

    // Accepts "z^3 - z^2 + 1" (also x, 2*z, 3z^2) or "[1,0,-1,1]".
    static IntPolynomial parse(const std::string& text);

    const std::vector<std::int64_t>& coefficients() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    std::int64_t leading() const { return coeffs_.back(); }
    std::int64_t constant() const { return coeffs_.front(); }
    bool monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
    std::vector<double> as_doubles() const;

    // p(-z), rescaled to be monic again when p is monic.
    IntPolynomial negated_variable() const;

    std::string to_string() const;

    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

private:
    std::vector<std::int64_t> coeffs_;
};

inline constexpr int max_root_degree = 24;
inline constexpr double root_residual_limit = 1e-10;

struct Root {
    Complex value;
    double residual = 0.0;
};

// All roots with multiplicity, sorted by (modulus, argument). Real roots have
// imaginary part exactly 0 and non-real roots come in exact conjugate pairs.
// Throws NumericError if some residual stays above 1e-10.
std::vector<Root> find_roots(const IntPolynomial& p);

enum class Irreducibility { irreducible, reducible, unknown };
std::string to_string(Irreducibility value);

inline constexpr std::uint64_t default_factor_cap = 10'000'000;

// Monic input only. Rational-root test, a prime-constant argument for
// polynomials with every root outside the unit circle, then an exhaustive
// search over monic factors with coefficients bounded by the elementary
// symmetric functions of the largest root moduli.
Irreducibility is_irreducible(const IntPolynomial& p, std::uint64_t cap = default_factor_cap);

// Selects a root either by its position in the (modulus, argument) order or
// as the root nearest a target value.
struct RootSelector {
    std::optional<int> index;
    std::optional<Complex> near;
};

struct AlgebraicNumber {
    IntPolynomial minpoly;
    Complex root;
    double residual = 0.0;
    int index = 0;                       // position among the sorted roots
    std::vector<double> conjugate_moduli; // all roots, sorted ascending
    std::vector<Complex> conjugates;      // all roots in (modulus, argument) order
};

AlgebraicNumber make_algebraic(const IntPolynomial& p, const RootSelector& selector);

enum class NumberKind { real_pisot, complex_pisot, real_garsia, complex_garsia, neither, indeterminate };
std::string to_string(NumberKind kind);

inline constexpr double modulus_margin = 1e-9;

struct Classification {
    NumberKind kind = NumberKind::indeterminate;
    double margin = 0.0; // min over roots of ||root| - 1|
    std::string reason;
    double modulus = 0.0;
    Irreducibility irreducibility = Irreducibility::unknown;
    bool constant_pm2 = false;
    bool garsia_theorem = false; // Garsia number with constant term +-2
    bool pisot_theorem = false;  // complex Pisot with |theta| < sqrt 2
};

// Throws PreconditionError for non-monic input.
Classification classify(const AlgebraicNumber& theta);

nlohmann::json to_json(const AlgebraicNumber& theta, const Classification& c);

struct CatalogEntry {
    std::string name;
    std::string description;
    AlgebraicNumber theta;
    Complex lambda; // 1 / theta
    Classification classification;
};

// Built once and re-verified on first use; throws NumericError if a stored
// root fails to reproduce.
const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(const std::string& name);

} // namespace ifs::algebraic
