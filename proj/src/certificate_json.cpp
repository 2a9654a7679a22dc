#include "ifs/certificate_json.hpp"

#include "ifs/errors.hpp"

namespace ifs::certificates {

using nlohmann::json;

namespace {

json complex_json(Complex z)
{
    return json::array({z.real(), z.imag()});
}

Complex complex_from(const json& j)
{
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

json cover_body(const CoverCertificate& cert)
{
    json j;
    j["lambda"] = complex_json(cert.lambda.value());
    j["rect"] = {{"a", cert.rect.half_width}, {"b", cert.rect.half_height}};
    j["translates"] = to_string(cert.translates);
    if (cert.regime)
        j["regime"] = to_string(*cert.regime);
    if (cert.conditions) {
        j["slacks"] = cert.conditions->slack;
        j["conditions_hold"] = cert.conditions->holds;
    }
    j["residual_area"] = cert.residual.residual_area;
    j["target_area"] = cert.residual.target_area;
    j["covered"] = cert.residual.covered;
    j["valid"] = cert.valid;
    return j;
}

} // namespace

json to_json(const CoverCertificate& cert)
{
    json j = cover_body(cert);
    j["schema_version"] = schema_version;
    j["kind"] = "cover";
    j["source"] = cert.regime ? "closed_form" : "given";
    return j;
}

json to_json(const OmegaSearch& search)
{
    json j = cover_body(search.certificate);
    j["schema_version"] = schema_version;
    j["kind"] = "cover";
    j["source"] = "omega_search";
    j["found"] = search.found;
    j["evaluations"] = search.evaluations;
    j["best_relative_residual"] = search.best_relative_residual;
    return j;
}

json to_json(const DiscDecision& decision)
{
    const auto& c = decision.certificate;
    json j;
    j["schema_version"] = schema_version;
    j["kind"] = "disc";
    j["polynomial"] = c.polynomial.coefficients();
    j["center"] = complex_json(c.center);
    j["radius"] = c.radius;
    j["degree"] = c.degree;
    j["center_residual"] = c.center_residual;
    j["lipschitz_bound"] = c.lipschitz_bound;
    j["floor_bound"] = c.floor_bound;
    j["lhs"] = c.lhs;
    j["h_ranges"] = {{"norm_min", c.norm_min}, {"norm_max", c.norm_max}, {"re_min", c.re_min},
                     {"re_max", c.re_max},     {"im_min", c.im_min}};
    json samples = json::array();
    for (const auto& s : c.samples)
        samples.push_back({{"point", complex_json(s.point)},
                           {"a", s.a},
                           {"b", s.b},
                           {"min_slack", s.min_slack},
                           {"residual_area", s.residual_area},
                           {"ok", s.ok}});
    j["cover_samples"] = samples;
    j["accepted"] = decision.accepted;
    j["failing_clause"] = decision.failing_clause;
    return j;
}

VerifyResult verify_certificate(const json& doc)
{
    try {
        if (doc.at("schema_version").get<int>() != schema_version)
            return {false, "unsupported schema version"};
        const auto kind = doc.at("kind").get<std::string>();
        json recomputed;
        if (kind == "disc") {
            std::vector<int> coeffs = doc.at("polynomial").get<std::vector<int>>();
            if (coeffs.empty() || coeffs.front() != 1)
                return {false, "polynomial must have constant term 1"};
            const DigitString p(std::vector<int>(coeffs.begin() + 1, coeffs.end()), Alphabet::ternary, true);
            recomputed = to_json(certify_disc(p, complex_from(doc.at("center")), doc.at("radius").get<double>()));
        } else if (kind == "cover") {
            const Parameter lambda(complex_from(doc.at("lambda")));
            const auto source = doc.at("source").get<std::string>();
            if (source == "closed_form") {
                recomputed = to_json(certify_cover(lambda));
            } else if (source == "omega_search") {
                recomputed = to_json(omega_cover_params(lambda));
            } else {
                const Rectangle rect(doc.at("rect").at("a").get<double>(), doc.at("rect").at("b").get<double>());
                const auto set = doc.at("translates").get<std::string>() == "signs" ? TranslateSet::signs
                                                                                    : TranslateSet::with_zero;
                recomputed = to_json(check_cover(lambda, rect, set));
            }
        } else {
            return {false, "unknown certificate kind '" + kind + "'"};
        }
        if (recomputed != doc) {
            for (auto it = doc.begin(); it != doc.end(); ++it)
                if (!recomputed.contains(it.key()) || recomputed[it.key()] != it.value())
                    return {false, "field '" + it.key() + "' does not match the recomputation"};
            return {false, "recomputed certificate differs"};
        }
        return {true, "certificate re-verified"};
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed certificate: ") + e.what());
    }
}

} // namespace ifs::certificates
