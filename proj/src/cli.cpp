#include "ifs/cli.hpp"

#include "ifs/algebraic.hpp"
#include "ifs/attractor.hpp"
#include "ifs/bernoulli.hpp"
#include "ifs/certificate_json.hpp"
#include "ifs/certificates.hpp"
#include "ifs/connectivity.hpp"
#include "ifs/errors.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>

namespace ifs::cli {

using nlohmann::json;

namespace {

// Hard ceilings for the overridable caps.
constexpr int max_depth_ceiling = 60;
constexpr int m0_degree_ceiling = 16;
constexpr int level_ceiling = bernoulli::hard_level_cap;
constexpr int fourier_terms_ceiling = 1'000'000;

std::vector<double> parse_reals(const std::string& text, std::size_t count, const char* what)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used])))
                ++used;
            if (used != item.size())
                throw ParseError("");
        } catch (const std::exception&) {
            throw ParseError(std::string("cannot parse ") + what + " '" + text + "'");
        }
    }
    if (out.size() != count)
        throw ParseError(std::string(what) + " needs " + std::to_string(count) + " comma-separated values, got '" +
                         text + "'");
    return out;
}

Complex parse_complex(const std::string& text, const char* what)
{
    if (text.find(',') == std::string::npos)
        return {parse_reals(text, 1, what)[0], 0.0};
    const auto v = parse_reals(text, 2, what);
    return {v[0], v[1]};
}

Window parse_window(const std::string& text)
{
    const auto v = parse_reals(text, 4, "window");
    Window w{v[0], v[1], v[2], v[3]};
    if (!w.valid())
        throw PreconditionError("window must satisfy re_min < re_max and im_min < im_max");
    return w;
}

Resolution parse_resolution(const std::string& text)
{
    const auto v = parse_reals(text, 2, "resolution");
    if (v[0] < 1 || v[1] < 1 || v[0] != std::floor(v[0]) || v[1] != std::floor(v[1]) || v[0] > 16384 || v[1] > 16384)
        throw PreconditionError("resolution must be two integers in [1, 16384]");
    return {static_cast<int>(v[0]), static_cast<int>(v[1])};
}

void require_range(int value, int lo, int hi, const char* what)
{
    if (value < lo || value > hi)
        throw PreconditionError(std::string(what) + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                "], got " + std::to_string(value));
}

// A {0,+-1} polynomial with constant term 1, from "[1,0,1]" or "1 + z^2".
DigitString parse_m_polynomial(const std::string& text)
{
    const auto p = algebraic::IntPolynomial::parse(text);
    const auto& c = p.coefficients();
    if (c.front() != 1)
        throw PreconditionError("polynomial must have constant term 1");
    std::vector<int> digits;
    for (std::size_t k = 1; k < c.size(); ++k) {
        if (c[k] < -1 || c[k] > 1)
            throw PreconditionError("polynomial coefficients must lie in {-1, 0, 1}");
        digits.push_back(static_cast<int>(c[k]));
    }
    return DigitString(digits, Alphabet::ternary, true);
}

std::string fmt(double x, int digits = 17)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

json complex_json(Complex z)
{
    return json::array({z.real(), z.imag()});
}

struct Context {
    std::ostream& out;
    std::ostream& err;
    unsigned threads = 0;
    bool timing = false;
};

std::string output_path(const std::string& path)
{
    const char* dir = std::getenv("IFS_OUTPUT_DIR");
    std::filesystem::path p(path);
    if (dir && *dir && p.is_relative())
        p = std::filesystem::path(dir) / p;
    return p.string();
}

void emit_json(Context& ctx, const json& j, const std::string& out_path)
{
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        ctx.out << text;
        return;
    }
    const auto path = output_path(out_path);
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw PreconditionError("cannot open '" + path + "' for writing");
    f << text;
}

// Root of p inside int(H): the one nearest the hint, or the first in order.
Complex select_interior_root(const DigitString& p, const std::string& hint)
{
    const auto coeffs = p.coefficients();
    const auto roots = algebraic::find_roots(algebraic::IntPolynomial({coeffs.begin(), coeffs.end()}));
    std::optional<Complex> target;
    if (!hint.empty())
        target = parse_complex(hint, "lambda");
    std::optional<Complex> best;
    double best_distance = std::numeric_limits<double>::infinity();
    for (const auto& r : roots) {
        if (!certificates::h_contains(Parameter(r.value), true))
            continue;
        if (!target)
            return r.value;
        const double d = std::abs(r.value - *target);
        if (d < best_distance) {
            best_distance = d;
            best = r.value;
        }
    }
    if (!best)
        throw PreconditionError("polynomial has no root in the interior of H");
    return *best;
}

algebraic::AlgebraicNumber select_number(const std::string& poly, const std::string& catalog_name, int root_index,
                                         const std::string& near)
{
    if (!catalog_name.empty()) {
        if (!poly.empty())
            throw PreconditionError("give either --poly or --catalog, not both");
        return algebraic::catalog_entry(catalog_name).theta;
    }
    if (poly.empty())
        throw PreconditionError("a polynomial (--poly) or catalog name (--catalog) is required");
    const auto p = algebraic::IntPolynomial::parse(poly);
    if (!p.monic())
        throw PreconditionError("polynomial must be monic");
    algebraic::RootSelector sel;
    if (root_index >= 0)
        sel.index = root_index;
    if (!near.empty())
        sel.near = parse_complex(near, "root target");
    return algebraic::make_algebraic(p, sel);
}

Parameter parse_lambda(const std::string& text)
{
    return Parameter::in_disc(parse_complex(text, "lambda"));
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Attractors of {lz - 1, lz + 1}, the connectivity locus M and Bernoulli convolutions"};
    app.require_subcommand(1);
    Context ctx{out, err};
    app.add_option("--threads", ctx.threads, "Worker threads (0 = available parallelism)")->capture_default_str();
    app.add_flag("--timing", ctx.timing, "Report wall time on stderr");

    std::function<int()> action;

    // render-mset
    std::string window_text = "0,0.25,0.6,0.72", res_text = "64,64", out_path, json_path;
    int depth = 30, m0_degree = 10;
    {
        auto* sub = app.add_subcommand("render-mset", "Tri-state raster of M (P5: out 0, unknown 128, in 255)");
        sub->add_option("--window", window_text, "re_min,re_max,im_min,im_max")->capture_default_str();
        sub->add_option("--res", res_text, "width,height")->capture_default_str();
        sub->add_option("--depth", depth, "Exclusion depth (ceiling 60)")->capture_default_str();
        sub->add_option("--m0-degree", m0_degree, "Degree of the M0 roots marking In pixels (ceiling 16)")
            ->capture_default_str();
        sub->add_option("--out", out_path, "P5 output path")->required();
        sub->add_option("--json", json_path, "Write the counts here instead of stdout");
        sub->callback([&] {
            action = [&] {
                require_range(depth, 0, max_depth_ceiling, "depth");
                require_range(m0_degree, 1, m0_degree_ceiling, "m0 degree");
                connectivity::MsetRenderOptions options;
                options.m0_degree = m0_degree;
                options.threads = ctx.threads;
                const auto render =
                    connectivity::render_mset(parse_window(window_text), parse_resolution(res_text), depth, options);
                write_pgm(output_path(out_path), render.to_gray());
                json j;
                j["schema_version"] = 1;
                j["kind"] = "mset_render";
                j["window"] = parse_reals(window_text, 4, "window");
                j["resolution"] = {render.grid.resolution.width, render.grid.resolution.height};
                j["depth"] = depth;
                j["m0_degree"] = m0_degree;
                j["counts"] = {{"out", render.counts.out}, {"in", render.counts.in}, {"unknown", render.counts.unknown}};
                emit_json(ctx, j, json_path);
                return 0;
            };
        });
    }

    // render-attractor
    std::string lambda_text, format = "gray";
    int att_depth = 16;
    std::string att_window = "-4,4,-4,4", att_res = "256,256";
    {
        auto* sub = app.add_subcommand("render-attractor", "Raster of A_lambda (P5 or P6)");
        sub->add_option("--lambda", lambda_text, "re,im")->required();
        sub->add_option("--depth", att_depth, "Subdivision depth (ceiling 60)")->capture_default_str();
        sub->add_option("--window", att_window, "re_min,re_max,im_min,im_max")->capture_default_str();
        sub->add_option("--res", att_res, "width,height")->capture_default_str();
        sub->add_option("--format", format, "gray (P5) or color (P6)")
            ->check(CLI::IsMember({"gray", "color"}))
            ->capture_default_str();
        sub->add_option("--out", out_path, "Output path")->required();
        sub->callback([&] {
            action = [&] {
                require_range(att_depth, 0, max_depth_ceiling, "depth");
                attractor::RenderOptions options;
                options.threads = ctx.threads;
                const auto raster = attractor::render_attractor(parse_lambda(lambda_text), att_depth,
                                                                parse_window(att_window), parse_resolution(att_res),
                                                                options);
                if (format == "gray")
                    write_pgm(output_path(out_path), raster.to_gray());
                else
                    write_ppm(output_path(out_path), raster.to_rgb());
                json j;
                j["schema_version"] = 1;
                j["kind"] = "attractor_render";
                j["depth"] = att_depth;
                j["marked"] = raster.count();
                j["covering_radius"] = geometric_tail(modulus_up(parse_lambda(lambda_text).value()), att_depth - 1);
                emit_json(ctx, j, "");
                return 0;
            };
        });
    }

    // polygon
    double poly_r = 0.0;
    int poly_m = 1, poly_n = 2;
    std::string poly_form = "half";
    {
        auto* sub = app.add_subcommand("polygon", "Exact polygon attractor for rotational parameters");
        sub->add_option("--r", poly_r, "Modulus r")->required();
        sub->add_option("--m", poly_m, "Numerator m")->capture_default_str();
        sub->add_option("--n", poly_n, "Denominator n")->capture_default_str();
        sub->add_option("--form", poly_form, "half: r e^{pi i m/n}; odd: r e^{2 pi i m/(2n+1)}")
            ->check(CLI::IsMember({"half", "odd"}))
            ->capture_default_str();
        sub->callback([&] {
            action = [&] {
                const auto form =
                    poly_form == "half" ? attractor::PolygonForm::half_turn : attractor::PolygonForm::odd_full_turn;
                const auto polygon = attractor::polygon_attractor(poly_r, poly_m, poly_n, form);
                json verts = json::array();
                for (const auto& v : polygon.vertices)
                    verts.push_back(complex_json(v));
                json j;
                j["schema_version"] = 1;
                j["kind"] = "polygon";
                j["lambda"] = complex_json(attractor::polygon_parameter(poly_r, poly_m, poly_n, form));
                j["vertices"] = verts;
                j["interior_angles"] = attractor::interior_angles(polygon);
                emit_json(ctx, j, "");
                return 0;
            };
        });
    }

    // certify-interior / max-radius
    std::string poly_text, hint_text;
    double delta = 2e-3;
    {
        auto* sub = app.add_subcommand("certify-interior", "Certify a disc around a root of p inside M");
        sub->add_option("--poly", poly_text, "Constant-first list such as [1,0,1,1,-1,-1,0,1]")->required();
        sub->add_option("--delta", delta, "Disc radius")->capture_default_str();
        sub->add_option("--lambda", hint_text, "Pick the root nearest this value");
        sub->add_option("--out", out_path, "Write the certificate here instead of stdout");
        sub->callback([&] {
            action = [&] {
                if (!(delta >= 0.0))
                    throw PreconditionError("delta must be nonnegative");
                const auto p = parse_m_polynomial(poly_text);
                const auto center = select_interior_root(p, hint_text);
                emit_json(ctx, certificates::to_json(certificates::certify_disc(p, center, delta)), out_path);
                return 0;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("max-radius", "Largest certifiable disc around a root of p");
        sub->add_option("--poly", poly_text, "Constant-first list")->required();
        sub->add_option("--lambda", hint_text, "Pick the root nearest this value");
        sub->callback([&] {
            action = [&] {
                const auto p = parse_m_polynomial(poly_text);
                const auto center = select_interior_root(p, hint_text);
                const double radius = certificates::max_certified_radius(p, center);
                json j;
                j["schema_version"] = 1;
                j["kind"] = "max_radius";
                j["center"] = complex_json(center);
                j["radius"] = radius;
                j["certificate"] = certificates::to_json(certificates::certify_disc(p, center, radius));
                emit_json(ctx, j, "");
                return 0;
            };
        });
    }

    // cover-check / omega-cover
    double rect_a = 0.0, rect_b = 0.0;
    std::string translates = "three";
    {
        auto* sub = app.add_subcommand("cover-check", "Rectangle covering certificate");
        sub->add_option("--lambda", lambda_text, "re,im")->required();
        sub->add_option("--a", rect_a, "Half width (default: closed form in H)");
        sub->add_option("--b", rect_b, "Half height");
        sub->add_option("--translates", translates, "three: R, R +- 1/l; two: R +- 1/l")
            ->check(CLI::IsMember({"three", "two"}))
            ->capture_default_str();
        sub->add_option("--out", out_path, "Write the certificate here instead of stdout");
        sub->callback([&] {
            action = [&] {
                const auto lambda = parse_lambda(lambda_text);
                const bool given = rect_a != 0.0 || rect_b != 0.0;
                const auto set =
                    translates == "three" ? certificates::TranslateSet::with_zero : certificates::TranslateSet::signs;
                const auto cert = given ? certificates::check_cover(lambda, Rectangle(rect_a, rect_b), set)
                                        : certificates::certify_cover(lambda);
                emit_json(ctx, certificates::to_json(cert), out_path);
                return 0;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("omega-cover", "Two-translate rectangle cover in Omega");
        sub->add_option("--lambda", lambda_text, "re,im")->required();
        sub->add_option("--out", out_path, "Write the certificate here instead of stdout");
        sub->callback([&] {
            action = [&] {
                emit_json(ctx, certificates::to_json(certificates::omega_cover_params(parse_lambda(lambda_text))),
                          out_path);
                return 0;
            };
        });
    }

    // classify-number / catalog
    std::string catalog_name, near_text;
    int root_index = -1;
    {
        auto* sub = app.add_subcommand("classify-number", "Pisot / Garsia classification of a root");
        sub->add_option("--poly", poly_text, "\"z^3 - z^2 + 1\" or [1,0,-1,1]");
        sub->add_option("--catalog", catalog_name, "Catalog entry name");
        sub->add_option("--root", root_index, "Index in (modulus, argument) order");
        sub->add_option("--near", near_text, "Pick the root nearest re,im");
        sub->callback([&] {
            action = [&] {
                const auto theta = select_number(poly_text, catalog_name, root_index, near_text);
                emit_json(ctx, algebraic::to_json(theta, algebraic::classify(theta)), "");
                return 0;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("catalog", "Built-in algebraic numbers");
        sub->callback([&] {
            action = [&] {
                json list = json::array();
                for (const auto& e : algebraic::catalog()) {
                    json j = algebraic::to_json(e.theta, e.classification);
                    j["name"] = e.name;
                    j["description"] = e.description;
                    list.push_back(j);
                }
                emit_json(ctx, {{"schema_version", 1}, {"kind", "catalog"}, {"entries", list}}, "");
                return 0;
            };
        });
    }

    // fourier-scan
    std::string xi_text = "1,0";
    double growth = 2.0;
    int scan_n = 20, terms = 0;
    {
        auto* sub = app.add_subcommand("fourier-scan", "nu_hat along xi_n = xi * growth^n (CSV)");
        sub->add_option("--lambda", lambda_text, "re,im")->required();
        sub->add_option("--xi", xi_text, "Base frequency re,im")->capture_default_str();
        sub->add_option("--growth", growth, "Ratio between successive frequencies")->capture_default_str();
        sub->add_option("--n-max", scan_n, "Last index")->capture_default_str();
        sub->add_option("--terms", terms, "Fixed number of factors (0 = automatic, ceiling 1e6)")
            ->capture_default_str();
        sub->callback([&] {
            action = [&] {
                require_range(scan_n, 0, 100000, "n-max");
                require_range(terms, 0, fourier_terms_ceiling, "terms");
                const auto lambda = parse_lambda(lambda_text);
                Complex xi = parse_complex(xi_text, "xi");
                ctx.out << "n,value,bound,error,xi_re,xi_im,terms\n";
                for (int n = 0; n <= scan_n; ++n) {
                    const auto v = terms > 0 ? bernoulli::fourier_nu(lambda, xi, terms)
                                             : bernoulli::fourier_nu_auto(lambda, xi);
                    ctx.out << n << ',' << fmt(v.value) << ',' << fmt(std::abs(v.value) + v.truncation_error) << ','
                            << fmt(v.truncation_error) << ',' << fmt(xi.real()) << ',' << fmt(xi.imag()) << ','
                            << v.terms_used << '\n';
                    xi *= growth;
                }
                return 0;
            };
        });
    }

    // pisot-witness
    int extra_terms = 200, witness_n = 25;
    {
        auto* sub = app.add_subcommand("pisot-witness", "Non-decay of nu_hat at 2 pi conj(theta)^N (CSV)");
        sub->add_option("--poly", poly_text, "Minimal polynomial of theta");
        sub->add_option("--catalog", catalog_name, "Catalog entry name");
        sub->add_option("--root", root_index, "Root index");
        sub->add_option("--near", near_text, "Pick the root nearest re,im");
        sub->add_option("--n-max", witness_n, "Largest N")->capture_default_str();
        sub->add_option("--terms", extra_terms, "Factors beyond N in the direct product")->capture_default_str();
        sub->callback([&] {
            action = [&] {
                require_range(witness_n, 0, 60, "n-max");
                require_range(extra_terms, 1, fourier_terms_ceiling, "terms");
                const auto theta = select_number(poly_text, catalog_name, root_index, near_text);
                const auto report = bernoulli::singularity_witness(theta, witness_n, extra_terms);
                ctx.out << "n,value,bound,error,factorized,factorized_error,distance,recurrence,float\n";
                for (const auto& row : report.rows) {
                    const auto& scan = report.scan.rows[row.n];
                    ctx.out << row.n << ',' << fmt(row.direct) << ',' << fmt(report.floor) << ','
                            << fmt(row.direct_error) << ',' << fmt(row.factorized) << ',' << fmt(row.factorized_error)
                            << ',' << fmt(scan.distance) << ',' << fmt(scan.recurrence_value) << ','
                            << fmt(scan.float_value) << '\n';
                }
                ctx.err << "min |nu_hat| = " << fmt(report.min_abs) << " at N = " << report.argmin
                        << ", floor = " << fmt(report.floor) << ", fitted rho = " << fmt(report.scan.rho) << '\n';
                return 0;
            };
        });
    }

    // garsia-separation
    int level_cap = bernoulli::default_level_cap;
    int sep_n = 12;
    {
        auto* sub = app.add_subcommand("garsia-separation", "Level-n cardinality and separation (CSV)");
        sub->add_option("--poly", poly_text, "Minimal polynomial of theta");
        sub->add_option("--catalog", catalog_name, "Catalog entry name");
        sub->add_option("--root", root_index, "Root index");
        sub->add_option("--near", near_text, "Pick the root nearest re,im");
        sub->add_option("--n-max", sep_n, "Largest level")->capture_default_str();
        sub->add_option("--cap", level_cap, "Level cap (ceiling 22)")->capture_default_str();
        sub->callback([&] {
            action = [&] {
                const auto theta = select_number(poly_text, catalog_name, root_index, near_text);
                ctx.out << "n,value,bound,error,count,expected,c,holds\n";
                for (int n = 1; n <= sep_n; ++n) {
                    const auto r = bernoulli::garsia_separation(theta, n, level_cap, ctx.threads);
                    ctx.out << n << ',' << fmt(r.min_distance) << ',' << fmt(r.bound) << ','
                            << fmt(r.min_distance - r.bound) << ',' << r.count << ',' << (1LL << n) << ','
                            << fmt(r.c) << ',' << (r.holds ? "true" : "false") << '\n';
                }
                return 0;
            };
        });
    }

    // density-histogram
    std::string grid_text = "64,64", hist_window = "-3,3,-3,3";
    int hist_n = 12;
    {
        auto* sub = app.add_subcommand("density-histogram", "Max cell mass / cell area of the level-n measure (CSV)");
        sub->add_option("--lambda", lambda_text, "re,im");
        sub->add_option("--catalog", catalog_name, "Use lambda = 1/theta of a catalog entry");
        sub->add_option("--n-max", hist_n, "Largest level")->capture_default_str();
        sub->add_option("--cap", level_cap, "Level cap (ceiling 22)")->capture_default_str();
        sub->add_option("--window", hist_window, "re_min,re_max,im_min,im_max")->capture_default_str();
        sub->add_option("--grid", grid_text, "cells across,cells down")->capture_default_str();
        sub->callback([&] {
            action = [&] {
                Parameter lambda;
                double ceiling = std::numeric_limits<double>::quiet_NaN();
                if (!catalog_name.empty()) {
                    const auto& e = algebraic::catalog_entry(catalog_name);
                    lambda = Parameter(e.lambda);
                    if (e.classification.garsia_theorem) {
                        const double c = bernoulli::garsia_constant(e.theta);
                        ceiling = 16.0 / (c * c);
                    }
                } else if (!lambda_text.empty()) {
                    lambda = parse_lambda(lambda_text);
                } else {
                    throw PreconditionError("density-histogram needs --lambda or --catalog");
                }
                const auto window = parse_window(hist_window);
                const auto grid = parse_resolution(grid_text);
                ctx.out << "n,value,bound,error,re,im\n";
                for (int n = 0; n <= hist_n; ++n) {
                    const auto r = bernoulli::density_histogram(lambda, n, window, grid, level_cap, ctx.threads);
                    ctx.out << n << ',' << fmt(r.max_ratio) << ',' << (std::isnan(ceiling) ? "" : fmt(ceiling)) << ','
                            << fmt(r.mass_outside) << ',' << fmt(r.location.real()) << ',' << fmt(r.location.imag())
                            << '\n';
                }
                return 0;
            };
        });
    }

    // regions / transversality
    int k_max = 12, k = 4;
    {
        auto* sub = app.add_subcommand("regions", "Typical-parameter statements covering |lambda| (JSON)");
        sub->add_option("--lambda", lambda_text, "re,im");
        sub->add_option("--k-max", k_max, "Last continuous-density interval")->capture_default_str();
        sub->callback([&] {
            action = [&] {
                require_range(k_max, 2, 100000, "k-max");
                const auto intervals = bernoulli::continuous_density_intervals(k_max);
                json list = json::array();
                for (const auto& i : intervals.intervals)
                    list.push_back({{"k", i.k}, {"low", i.low}, {"high", i.high}});
                json j;
                j["schema_version"] = 1;
                j["kind"] = "regions";
                j["intervals"] = list;
                j["overlap_k"] = intervals.overlap_k ? json(*intervals.overlap_k) : json(nullptr);
                if (!lambda_text.empty())
                    j["report"] = bernoulli::typical_region_report(parse_lambda(lambda_text));
                emit_json(ctx, j, "");
                return 0;
            };
        });
    }
    {
        auto* sub = app.add_subcommand("transversality", "Double-zero-free radius for the k-th root family");
        sub->add_option("--k", k, "k >= 1")->capture_default_str();
        sub->callback([&] {
            action = [&] {
                ctx.out << fmt(bernoulli::transversality_bound(k), 16) << '\n';
                return 0;
            };
        });
    }

    // verify-certificate
    std::string cert_path;
    {
        auto* sub = app.add_subcommand("verify-certificate", "Recompute a JSON certificate and compare");
        sub->add_option("certificate", cert_path, "Certificate file")->required();
        sub->callback([&] {
            action = [&] {
                std::ifstream f(cert_path, std::ios::binary);
                if (!f)
                    throw PreconditionError("cannot read '" + cert_path + "'");
                json doc;
                try {
                    doc = json::parse(f);
                } catch (const json::exception&) {
                    throw ParseError("'" + cert_path + "' is not valid JSON");
                }
                const auto result = certificates::verify_certificate(doc);
                (result.ok ? ctx.out : ctx.err) << (result.ok ? "ok: " : "mismatch: ") << result.message << '\n';
                return result.ok ? 0 : 1;
            };
        });
    }

    // m0-roots
    int degree = 7;
    std::string disc_text;
    {
        auto* sub = app.add_subcommand("m0-roots", "Roots of {0,+-1} polynomials with constant term 1 (CSV)");
        sub->add_option("--degree", degree, "Maximal degree (ceiling 16)")->capture_default_str();
        sub->add_option("--window", window_text, "re_min,re_max,im_min,im_max")->capture_default_str();
        sub->add_option("--disc", disc_text, "re,im,radius (instead of --window)");
        sub->callback([&] {
            action = [&] {
                require_range(degree, 1, m0_degree_ceiling, "degree");
                connectivity::Region region = parse_window(window_text);
                if (!disc_text.empty()) {
                    const auto v = parse_reals(disc_text, 3, "disc");
                    if (v[2] < 0)
                        throw PreconditionError("disc radius must be nonnegative");
                    region = Disc{{v[0], v[1]}, v[2]};
                }
                connectivity::M0Options options;
                options.degree_cap = m0_degree_ceiling;
                options.threads = ctx.threads;
                const auto roots = connectivity::m0_roots(degree, region, options);
                ctx.out << "re,im,residual,degree,polynomial\n";
                for (const auto& r : roots) {
                    json coeffs = r.polynomial.coefficients();
                    std::string text = coeffs.dump();
                    ctx.out << fmt(r.root.real()) << ',' << fmt(r.root.imag()) << ',' << fmt(r.residual) << ','
                            << r.polynomial.size() << ",\"" << text << "\"\n";
                }
                return 0;
            };
        });
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        const int code = action ? action() : 0;
        if (ctx.timing) {
            const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            err << "runtime_ms " << fmt(ms, 6) << '\n';
        }
        return code;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const NumericError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
}

int run(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    std::ios::sync_with_stdio(true);
    return run(args, std::cout, std::cerr);
}

} // namespace ifs::cli
