#include "ifs/algebraic.hpp"

#include "ifs/errors.hpp"
#include "ifs/roots.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace ifs::algebraic {

using nlohmann::json;

IntPolynomial::IntPolynomial(std::vector<std::int64_t> coefficients) : coeffs_(std::move(coefficients))
{
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
    if (coeffs_.size() < 2)
        throw PreconditionError("polynomial must have degree at least 1");
}

namespace {

std::string strip_spaces(const std::string& text)
{
    std::string out;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            out.push_back(ch);
    return out;
}

std::int64_t read_integer(const std::string& s, std::size_t& pos, const std::string& text)
{
    const std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        ++pos;
    try {
        return std::stoll(s.substr(start, pos - start));
    } catch (const std::exception&) {
        throw ParseError("bad integer in polynomial '" + text + "'");
    }
}

} // namespace

IntPolynomial IntPolynomial::parse(const std::string& text)
{
    const std::string s = strip_spaces(text);
    if (s.empty())
        throw ParseError("empty polynomial");
    if (s.front() == '[') {
        std::vector<std::int64_t> coeffs;
        try {
            coeffs = json::parse(s).get<std::vector<std::int64_t>>();
        } catch (const json::exception&) {
            throw ParseError("bad coefficient list '" + text + "'");
        }
        return IntPolynomial(std::move(coeffs));
    }

    std::map<int, std::int64_t> terms;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::int64_t sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (pos != 0) {
            throw ParseError("expected '+' or '-' in polynomial '" + text + "'");
        }
        bool has_coeff = false;
        std::int64_t coeff = 1;
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            coeff = read_integer(s, pos, text);
            has_coeff = true;
            if (pos < s.size() && s[pos] == '*')
                ++pos;
        }
        int exponent = 0;
        if (pos < s.size() && (s[pos] == 'z' || s[pos] == 'x')) {
            ++pos;
            exponent = 1;
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
                    throw ParseError("bad exponent in polynomial '" + text + "'");
                const auto e = read_integer(s, pos, text);
                if (e > 1000)
                    throw ParseError("exponent too large in polynomial '" + text + "'");
                exponent = static_cast<int>(e);
            }
        } else if (!has_coeff) {
            throw ParseError("cannot parse polynomial '" + text + "'");
        }
        terms[exponent] += sign * coeff;
    }
    std::vector<std::int64_t> coeffs(terms.rbegin()->first + 1, 0);
    for (const auto& [e, c] : terms)
        coeffs[e] = c;
    return IntPolynomial(std::move(coeffs));
}

std::vector<double> IntPolynomial::as_doubles() const
{
    return {coeffs_.begin(), coeffs_.end()};
}

IntPolynomial IntPolynomial::negated_variable() const
{
    std::vector<std::int64_t> c = coeffs_;
    for (std::size_t k = 1; k < c.size(); k += 2)
        c[k] = -c[k];
    if (c.back() < 0)
        for (auto& v : c)
            v = -v;
    return IntPolynomial(std::move(c));
}

std::string IntPolynomial::to_string() const
{
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        const std::int64_t c = coeffs_[k];
        if (c == 0)
            continue;
        const std::int64_t mag = c < 0 ? -c : c;
        if (out.empty())
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        if (mag != 1 || k == 0)
            out += std::to_string(mag);
        if (k >= 1)
            out += "z";
        if (k >= 2)
            out += "^" + std::to_string(k);
    }
    return out;
}

namespace {

void sort_roots(std::vector<Root>& roots)
{
    std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) {
        return std::abs(a.value) < std::abs(b.value);
    });
    // Moduli that agree to rounding noise are ordered by argument.
    std::size_t start = 0;
    while (start < roots.size()) {
        std::size_t end = start + 1;
        while (end < roots.size()) {
            const double m0 = std::abs(roots[end - 1].value);
            if (std::abs(roots[end].value) - m0 > 1e-12 * std::max(1.0, m0))
                break;
            ++end;
        }
        std::sort(roots.begin() + start, roots.begin() + end,
                  [](const Root& a, const Root& b) { return std::arg(a.value) < std::arg(b.value); });
        start = end;
    }
}

// Makes nearly real roots exactly real and pairs the rest into exact
// conjugates. Returns false if the pairing is inconsistent.
bool symmetrize(std::vector<Complex>& roots)
{
    std::vector<std::size_t> upper, lower;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        auto& z = roots[i];
        if (std::abs(z.imag()) <= 1e-9 * std::max(1.0, std::abs(z)))
            z = {z.real(), 0.0};
        else if (z.imag() > 0)
            upper.push_back(i);
        else
            lower.push_back(i);
    }
    if (upper.size() != lower.size())
        return false;
    std::vector<bool> used(lower.size(), false);
    for (const auto u : upper) {
        std::size_t best = lower.size();
        double best_distance = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < lower.size(); ++j) {
            const double dist = std::abs(std::conj(roots[u]) - roots[lower[j]]);
            if (!used[j] && dist < best_distance) {
                best_distance = dist;
                best = j;
            }
        }
        used[best] = true;
        roots[lower[best]] = std::conj(roots[u]);
    }
    return true;
}

} // namespace

std::vector<Root> find_roots(const IntPolynomial& p)
{
    if (p.degree() < 1)
        throw PreconditionError("polynomial must have degree at least 1");
    if (p.degree() > max_root_degree)
        throw ResourceError("degree " + std::to_string(p.degree()) + " exceeds the cap of " +
                            std::to_string(max_root_degree));
    const auto coeffs = p.as_doubles();

    const roots::RootOptions attempts[] = {
        {},
        {2000, 1.0, 6},
        {4000, 1.5, 10},
    };
    for (const auto& options : attempts) {
        auto found = roots::aberth(coeffs, options);
        if (!symmetrize(found.roots))
            continue;
        std::vector<Root> out;
        bool ok = true;
        for (const auto& z : found.roots) {
            const double res = roots::residual(coeffs, z);
            ok = ok && res <= root_residual_limit;
            out.push_back({z, res});
        }
        if (!ok)
            continue;
        sort_roots(out);
        return out;
    }
    throw NumericError("root finding did not converge for " + p.to_string());
}

std::string to_string(Irreducibility value)
{
    switch (value) {
    case Irreducibility::irreducible: return "irreducible";
    case Irreducibility::reducible: return "reducible";
    case Irreducibility::unknown: return "unknown";
    }
    return "unknown";
}

namespace {

__extension__ typedef __int128 Wide;

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t q = 2; q * q <= n; ++q)
        if (n % q == 0)
            return false;
    return true;
}

std::vector<std::int64_t> positive_divisors(std::int64_t n)
{
    std::vector<std::int64_t> small, large;
    for (std::int64_t q = 1; q * q <= n; ++q) {
        if (n % q == 0) {
            small.push_back(q);
            if (q != n / q)
                large.push_back(n / q);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

// Exact p(x) == 0 for an integer x, bailing out (false) on overflow: a root
// must divide the constant, and beyond ~2^100 the value cannot cancel.
bool has_integer_root(const std::vector<std::int64_t>& c, std::int64_t x)
{
    const Wide limit = Wide(1) << 100;
    Wide acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * x + *it;
        if (acc > limit || acc < -limit)
            return false;
    }
    return acc == 0;
}

// Exact division by a monic g; true iff the remainder vanishes.
bool divides(const std::vector<std::int64_t>& g, const std::vector<std::int64_t>& p)
{
    const Wide limit = Wide(1) << 100;
    std::vector<Wide> r(p.begin(), p.end());
    const std::size_t j = g.size() - 1;
    for (std::size_t k = r.size() - 1; k >= j; --k) {
        const Wide q = r[k];
        if (q != 0) {
            if (q > (Wide(1) << 62) || q < -(Wide(1) << 62))
                return false;
            for (std::size_t i = 0; i <= j; ++i) {
                r[k - j + i] -= q * g[i];
                if (r[k - j + i] > limit || r[k - j + i] < -limit)
                    return false;
            }
        }
        if (k == j)
            break;
    }
    for (std::size_t i = 0; i < j; ++i)
        if (r[i] != 0)
            return false;
    return true;
}

// e_k of the given values, k = 0..n.
std::vector<double> elementary_symmetric(const std::vector<double>& values)
{
    std::vector<double> e(values.size() + 1, 0.0);
    e[0] = 1.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t k = i + 1; k >= 1; --k)
            e[k] += e[k - 1] * values[i];
    return e;
}

std::int64_t coefficient_bound(double e)
{
    return static_cast<std::int64_t>(std::floor(e * (1.0 + 1e-9) + 1e-9));
}

// Degree of gcd(p, p') over Q, by a primitive remainder sequence in exact integers.
int derivative_gcd_degree(const std::vector<std::int64_t>& c)
{
    using boost::multiprecision::cpp_int;
    using Poly = std::vector<cpp_int>; // constant first, no trailing zeros
    const auto primitive = [](Poly& f) {
        cpp_int g = 0;
        for (const auto& x : f)
            g = gcd(g, abs(x));
        if (g > 1)
            for (auto& x : f)
                x /= g;
    };
    Poly a(c.begin(), c.end());
    Poly b;
    for (std::size_t k = 1; k < c.size(); ++k)
        b.push_back(cpp_int(c[k]) * static_cast<long long>(k));
    primitive(b);
    while (!b.empty()) {
        // Pseudo-remainder of a by b.
        Poly r = a;
        while (!r.empty() && r.size() >= b.size()) {
            const cpp_int lead = r.back();
            const std::size_t shift = r.size() - b.size();
            for (auto& x : r)
                x *= b.back();
            for (std::size_t k = 0; k < b.size(); ++k)
                r[shift + k] -= lead * b[k];
            while (!r.empty() && r.back() == 0)
                r.pop_back();
        }
        primitive(r);
        a = std::move(b);
        b = std::move(r);
    }
    return static_cast<int>(a.size()) - 1;
}

} // namespace

Irreducibility is_irreducible(const IntPolynomial& p, std::uint64_t cap)
{
    if (!p.monic())
        throw PreconditionError("irreducibility test needs a monic polynomial");
    const int d = p.degree();
    const auto& c = p.coefficients();
    if (d == 1)
        return Irreducibility::irreducible;
    if (c[0] == 0)
        return Irreducibility::reducible;
    const std::int64_t c0 = c[0] < 0 ? -c[0] : c[0];
    if (c0 > 1'000'000'000'000LL)
        return Irreducibility::unknown;

    const auto divisors = positive_divisors(c0);
    for (const auto q : divisors)
        if (has_integer_root(c, q) || has_integer_root(c, -q))
            return Irreducibility::reducible;
    if (d <= 3)
        return Irreducibility::irreducible;
    // A repeated root makes gcd(p, p') a proper factor.
    if (derivative_gcd_degree(c) > 0)
        return Irreducibility::reducible;

    const auto roots = find_roots(p);
    std::vector<double> moduli;
    for (const auto& r : roots)
        moduli.push_back(std::abs(r.value));
    std::sort(moduli.begin(), moduli.end(), std::greater<>());

    // Every monic factor would have |constant| = product of its root moduli > 1,
    // so two factors need |c0| >= 4 unless c0 is composite.
    if (is_prime(static_cast<std::uint64_t>(c0)) && moduli.back() > 1.0 + modulus_margin)
        return Irreducibility::irreducible;

    struct Plan {
        int degree;
        std::vector<std::int64_t> constants;
        std::vector<std::int64_t> bounds; // for g_1..g_{j-1}
    };
    std::vector<Plan> plans;
    double total = 0.0;
    for (int j = 2; j <= d / 2; ++j) {
        const auto e = elementary_symmetric(std::vector<double>(moduli.begin(), moduli.begin() + j));
        Plan plan{j, {}, {}};
        const auto b0 = coefficient_bound(e[j]);
        for (const auto q : divisors)
            if (q <= b0) {
                plan.constants.push_back(q);
                plan.constants.push_back(-q);
            }
        double count = static_cast<double>(plan.constants.size());
        for (int i = 1; i < j; ++i) {
            plan.bounds.push_back(coefficient_bound(e[j - i]));
            count *= 2.0 * static_cast<double>(plan.bounds.back()) + 1.0;
        }
        total += count;
        plans.push_back(std::move(plan));
    }
    if (total > static_cast<double>(cap))
        return Irreducibility::unknown;

    for (const auto& plan : plans) {
        const int j = plan.degree;
        std::vector<std::int64_t> g(j + 1, 0);
        g[j] = 1;
        for (const auto g0 : plan.constants) {
            g[0] = g0;
            for (int i = 1; i < j; ++i)
                g[i] = -plan.bounds[i - 1];
            while (true) {
                if (divides(g, c))
                    return Irreducibility::reducible;
                int i = 1;
                while (i < j && g[i] == plan.bounds[i - 1]) {
                    g[i] = -plan.bounds[i - 1];
                    ++i;
                }
                if (i == j)
                    break;
                ++g[i];
            }
        }
    }
    return Irreducibility::irreducible;
}

AlgebraicNumber make_algebraic(const IntPolynomial& p, const RootSelector& selector)
{
    const auto roots = find_roots(p);
    AlgebraicNumber out;
    out.minpoly = p;
    for (const auto& r : roots) {
        out.conjugates.push_back(r.value);
        out.conjugate_moduli.push_back(std::abs(r.value));
    }
    std::sort(out.conjugate_moduli.begin(), out.conjugate_moduli.end());

    int index = static_cast<int>(roots.size()) - 1;
    if (selector.index) {
        index = *selector.index;
        if (index < 0 || index >= static_cast<int>(roots.size()))
            throw PreconditionError("root index " + std::to_string(index) + " out of range for " + p.to_string());
    } else if (selector.near) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < roots.size(); ++i) {
            const double dist = std::abs(roots[i].value - *selector.near);
            if (dist < best) {
                best = dist;
                index = static_cast<int>(i);
            }
        }
    }
    out.index = index;
    out.root = roots[index].value;
    out.residual = roots[index].residual;
    return out;
}

std::string to_string(NumberKind kind)
{
    switch (kind) {
    case NumberKind::real_pisot: return "RealPisot";
    case NumberKind::complex_pisot: return "ComplexPisot";
    case NumberKind::real_garsia: return "RealGarsia";
    case NumberKind::complex_garsia: return "ComplexGarsia";
    case NumberKind::neither: return "Neither";
    case NumberKind::indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

Classification classify(const AlgebraicNumber& theta)
{
    const auto& p = theta.minpoly;
    if (!p.monic())
        throw PreconditionError("classification needs a monic polynomial, got " + p.to_string());

    Classification c;
    c.modulus = std::abs(theta.root);
    c.constant_pm2 = p.constant() == 2 || p.constant() == -2;
    c.margin = std::numeric_limits<double>::infinity();
    for (const double m : theta.conjugate_moduli)
        c.margin = std::min(c.margin, std::abs(m - 1.0));

    c.irreducibility = is_irreducible(p);
    if (c.irreducibility != Irreducibility::irreducible) {
        c.kind = NumberKind::indeterminate;
        c.reason = c.irreducibility == Irreducibility::reducible ? "reducible" : "irreducibility unknown";
        return c;
    }
    if (c.margin < modulus_margin) {
        c.kind = NumberKind::indeterminate;
        c.reason = "a root modulus is within 1e-9 of 1";
        return c;
    }

    const bool real = theta.root.imag() == 0.0;
    const bool all_outside = theta.conjugate_moduli.front() > 1.0;
    if (all_outside) {
        c.kind = real ? NumberKind::real_garsia : NumberKind::complex_garsia;
        c.reason = "every conjugate lies outside the unit circle";
    } else if (c.modulus > 1.0) {
        int partner = -1;
        if (!real)
            for (std::size_t i = 0; i < theta.conjugates.size(); ++i)
                if (static_cast<int>(i) != theta.index && theta.conjugates[i] == std::conj(theta.root))
                    partner = static_cast<int>(i);
        bool others_inside = true;
        for (std::size_t i = 0; i < theta.conjugates.size(); ++i) {
            const int ii = static_cast<int>(i);
            if (ii != theta.index && ii != partner && std::abs(theta.conjugates[i]) >= 1.0)
                others_inside = false;
        }
        if (others_inside && real) {
            c.kind = NumberKind::real_pisot;
            c.reason = theta.root.real() > 0 ? "other conjugates inside the unit circle"
                                             : "negative of a Pisot number; other conjugates inside the unit circle";
        } else if (others_inside) {
            c.kind = NumberKind::complex_pisot;
            c.reason = "conjugates other than the complex conjugate inside the unit circle";
        } else {
            c.kind = NumberKind::neither;
            c.reason = "another conjugate lies outside the unit circle";
        }
    } else {
        c.kind = NumberKind::neither;
        c.reason = "selected root lies inside the unit circle";
    }
    const bool garsia = c.kind == NumberKind::real_garsia || c.kind == NumberKind::complex_garsia;
    c.garsia_theorem = garsia && c.constant_pm2;
    c.pisot_theorem = c.kind == NumberKind::complex_pisot && c.modulus < std::sqrt(2.0);
    return c;
}

namespace {

json complex_json(Complex z)
{
    return json::array({z.real(), z.imag()});
}

} // namespace

json to_json(const AlgebraicNumber& theta, const Classification& c)
{
    json j;
    j["schema_version"] = 1;
    j["kind"] = "classification";
    j["polynomial"] = theta.minpoly.to_string();
    j["coefficients"] = theta.minpoly.coefficients();
    j["root"] = complex_json(theta.root);
    j["root_index"] = theta.index;
    j["residual"] = theta.residual;
    j["lambda"] = complex_json(1.0 / theta.root);
    json conj = json::array();
    for (const auto& z : theta.conjugates)
        conj.push_back(complex_json(z));
    j["conjugates"] = conj;
    j["conjugate_moduli"] = theta.conjugate_moduli;
    j["classification"] = {{"kind", to_string(c.kind)},
                           {"margin", c.margin},
                           {"reason", c.reason},
                           {"modulus", c.modulus},
                           {"irreducibility", to_string(c.irreducibility)},
                           {"constant_pm2", c.constant_pm2},
                           {"garsia_theorem_applies", c.garsia_theorem},
                           {"pisot_theorem_applies", c.pisot_theorem}};
    return j;
}

namespace {

struct CatalogSeed {
    const char* name;
    const char* description;
    std::vector<std::int64_t> coefficients;
    Complex target;
    NumberKind expected;
};

std::vector<CatalogEntry> build_catalog()
{
    // Each theta is taken in the lower half plane so that lambda = 1/theta
    // lies in the upper half plane.
    const std::vector<CatalogSeed> seeds = {
        {"twindragon", "lambda = (1+i)/2", {2, -2, 1}, {1.0, -1.0}, NumberKind::complex_garsia},
        {"rectangle", "lambda = i/sqrt(2)", {2, 0, 1}, {0.0, -1.41421356}, NumberKind::complex_garsia},
        {"tame_twindragon", "lambda = 1/4 + i sqrt(7)/4", {2, -1, 1}, {0.5, -1.32287566}, NumberKind::complex_garsia},
        {"chamfy", "smallest complex Pisot modulus, cubic", {1, 0, -1, 1}, {0.87743883, -0.74486177},
         NumberKind::complex_pisot},
        {"chamfy_sextic", "smallest complex Pisot modulus, theta = -i sqrt(alpha0)", {1, 0, -1, 0, 0, 0, 1},
         {0.0, -1.15096393}, NumberKind::complex_pisot},
        {"smallest_pisot", "alpha0, smallest real Pisot number", {-1, -1, 0, 1}, {1.32471796, 0.0},
         NumberKind::real_pisot},
        {"cubic_pisot_a", "complex Pisot below sqrt 2, z^3 - z^2 + z + 1", {1, 1, -1, 1}, {0.771845, -1.115143},
         NumberKind::complex_pisot},
        {"cubic_pisot_b", "complex Pisot below sqrt 2, z^3 + z + 1", {1, 1, 0, 1}, {0.341164, -1.161541},
         NumberKind::complex_pisot},
        {"garsia_cubic", "complex Garsia from x^{m+n} - x^n - 2 with m = 2, n = 1", {-2, -1, 0, 1},
         {-0.76069, -0.857874}, NumberKind::complex_garsia},
    };
    std::vector<CatalogEntry> out;
    for (const auto& seed : seeds) {
        CatalogEntry e;
        e.name = seed.name;
        e.description = seed.description;
        e.theta = make_algebraic(IntPolynomial(seed.coefficients), {std::nullopt, seed.target});
        e.lambda = 1.0 / e.theta.root;
        e.classification = classify(e.theta);
        if (std::abs(e.theta.root - seed.target) > 1e-5 || e.classification.kind != seed.expected)
            throw NumericError(std::string("catalog entry '") + seed.name + "' failed re-verification");
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace

const std::vector<CatalogEntry>& catalog()
{
    static const std::vector<CatalogEntry> entries = build_catalog();
    return entries;
}

const CatalogEntry& catalog_entry(const std::string& name)
{
    for (const auto& e : catalog())
        if (e.name == name)
            return e;
    throw PreconditionError("no catalog entry named '" + name + "'");
}

} // namespace ifs::algebraic
