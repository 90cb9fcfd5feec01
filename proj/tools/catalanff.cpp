#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>

#include "catff/catalan.hpp"
#include "catff/reports.hpp"
#include "catff/textio.hpp"

namespace {

using namespace catff;

std::uint64_t enumeration_budget() {
    const char* env = std::getenv("CATALANFF_BUDGET");
    if (env == nullptr || *env == '\0') return kDefaultEnumerationBudget;
    std::uint64_t v = 0;
    for (const char* c = env; *c; ++c) {
        if (*c < '0' || *c > '9' || v > UINT64_MAX / 10)
            throw std::runtime_error("invalid CATALANFF_BUDGET value");
        v = v * 10 + static_cast<std::uint64_t>(*c - '0');
    }
    if (v == 0) throw std::runtime_error("invalid CATALANFF_BUDGET value");
    return v;
}

struct CommonOpts {
    std::string curve_spec;
    bool json = false;
    unsigned threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_curve = true) {
    if (with_curve)
        cmd->add_option("--curve", opts.curve_spec, "curve spec: char=<l>;deg=<a>;e=<e>;f=<poly>")
            ->required();
    cmd->add_flag("--json", opts.json, "machine-readable output");
    cmd->add_option("--threads", opts.threads, "worker threads for point counts and search")
        ->default_val(1)
        ->check(CLI::Range(1u, 256u));
}

ClassNumberReport build_classnum_report(const CurvePtr& curve, const std::vector<unsigned>& ext,
                                        const std::vector<std::uint64_t>& mu, std::uint64_t budget,
                                        unsigned threads) {
    ClassNumberReport report;
    report.curve = curve;
    report.lpoly = lpoly_for_curve(curve, budget, threads);
    for (unsigned k = 1; k <= 2 * curve->genus(); ++k) {
        if (pow_big(curve->base()->cardinality(), k) > budget) break;
        report.counts.push_back(count_points(curve, k, budget, threads));
    }
    report.h_by_degree[1] = class_number(report.lpoly);
    for (unsigned n : ext) {
        if (n < 1) throw std::invalid_argument("extension degree must be positive");
        report.h_by_degree.emplace(n, constant_extension_class_number(report.lpoly, n));
    }
    for (std::uint64_t p : mu) {
        const unsigned d = cyclotomic_degree(curve->base()->cardinality(), p);
        report.mu_degrees[p] = d;
        report.h_by_degree.emplace(d, constant_extension_class_number(report.lpoly, d));
    }
    return report;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "catalanff: class numbers of constant cyclotomic extensions of superelliptic "
        "function fields, and exhaustive bounded search for solutions of X^m - Y^n = 1 "
        "(or X^m = f(Y)) in the ring of functions regular away from infinity"};
    app.require_subcommand(1);

    std::function<int()> run;

    // lpoly
    {
        auto* cmd = app.add_subcommand("lpoly", "zeta numerator, point counts and class number");
        auto opts = std::make_shared<CommonOpts>();
        add_common(cmd, *opts);
        cmd->callback([opts, &run] {
            run = [opts] {
                const CurvePtr curve = parse_curve_spec(opts->curve_spec).to_curve();
                const auto report =
                    build_classnum_report(curve, {}, {}, enumeration_budget(), opts->threads);
                std::cout << (opts->json ? classnum_json(report) : classnum_human(report));
                return 0;
            };
        });
    }

    // classnum
    {
        auto* cmd = app.add_subcommand(
            "classnum", "class numbers of constant extensions, by degree or by mu_p");
        auto opts = std::make_shared<CommonOpts>();
        auto ext = std::make_shared<std::vector<unsigned>>();
        auto mu = std::make_shared<std::vector<std::uint64_t>>();
        add_common(cmd, *opts);
        cmd->add_option("--ext", *ext, "constant-extension degrees n (h_n table)")->delimiter(',');
        cmd->add_option("--mu", *mu, "primes p (or 4): report h of F(mu_p)")->delimiter(',');
        cmd->callback([opts, ext, mu, &run] {
            run = [opts, ext, mu] {
                const CurvePtr curve = parse_curve_spec(opts->curve_spec).to_curve();
                const auto report =
                    build_classnum_report(curve, *ext, *mu, enumeration_budget(), opts->threads);
                std::cout << (opts->json ? classnum_json(report) : classnum_human(report));
                return 0;
            };
        });
    }

    // check
    {
        auto* cmd = app.add_subcommand("check", "decide whether the nonexistence criterion applies");
        auto opts = std::make_shared<CommonOpts>();
        auto m = std::make_shared<std::uint64_t>(0);
        auto n = std::make_shared<std::uint64_t>(0);
        add_common(cmd, *opts);
        cmd->add_option("-m", *m, "exponent of X")->required();
        cmd->add_option("-n", *n, "exponent of Y")->required();
        cmd->callback([opts, m, n, &run] {
            run = [opts, m, n] {
                const CurvePtr curve = parse_curve_spec(opts->curve_spec).to_curve();
                const TheoremVerdict verdict =
                    check_theorem(curve, *m, *n, enumeration_budget(), opts->threads);
                std::cout << (opts->json ? verdict_json(verdict) : verdict_human(verdict));
                switch (verdict.status) {
                    case TheoremStatus::kTheoremApplies: return 0;
                    case TheoremStatus::kInconclusive: return 2;
                    case TheoremStatus::kCharDividesBothSidesImpossible: return 3;
                }
                return 2;
            };
        });
    }

    // search
    {
        auto* cmd = app.add_subcommand("search", "exhaustive bounded solution search");
        auto opts = std::make_shared<CommonOpts>();
        auto m = std::make_shared<std::uint64_t>(0);
        auto n = std::make_shared<std::uint64_t>(0);
        auto bound = std::make_shared<std::uint64_t>(0);
        auto rhs = std::make_shared<std::string>();
        add_common(cmd, *opts);
        cmd->add_option("-m", *m, "exponent of X")->required();
        cmd->add_option("-n", *n, "exponent of Y")->required();
        cmd->add_option("--bound", *bound, "pole-order bound on Y")->required();
        cmd->add_option("--rhs", *rhs, "right-hand side f(Y) replacing Y^n + 1");
        cmd->callback([opts, m, n, bound, rhs, &run] {
            run = [opts, m, n, bound, rhs] {
                const CurvePtr curve = parse_curve_spec(opts->curve_spec).to_curve();
                SearchParams params;
                params.m = *m;
                params.n = *n;
                params.bound = *bound;
                params.budget = enumeration_budget();
                params.threads = opts->threads;
                if (!rhs->empty()) params.rhs = parse_polynomial(curve->base(), *rhs);
                const SearchReport report = search(curve, params);
                std::cout << (opts->json ? search_json(report) : search_human(report));
                return report.found_non_constant() ? 4 : 0;
            };
        });
    }

    // counterexample
    {
        auto* cmd = app.add_subcommand(
            "counterexample", "Frobenius witness X = 1 + z^n, Y = z^l solving X^l - Y^n = 1");
        auto opts = std::make_shared<CommonOpts>();
        auto n = std::make_shared<std::uint64_t>(0);
        auto z_text = std::make_shared<std::string>("x");
        add_common(cmd, *opts);
        cmd->add_option("-n", *n, "exponent of Y (coprime to the characteristic)")->required();
        cmd->add_option("--z", *z_text, "witness z: a polynomial in x, or the literal y")
            ->capture_default_str();
        cmd->callback([opts, n, z_text, &run] {
            run = [opts, n, z_text] {
                const CurvePtr curve = parse_curve_spec(opts->curve_spec).to_curve();
                RingElement z = *z_text == "y"
                                    ? curve->y()
                                    : RingElement(curve, [&] {
                                          std::vector<Polynomial> parts(curve->e(),
                                                                        Polynomial(curve->base()));
                                          parts[0] = parse_polynomial(curve->base(), *z_text);
                                          return parts;
                                      }());
                const auto [x, y] = counterexample(curve, *n, z);
                if (opts->json) {
                    std::cout << "{\n  \"X\": \"" << ring_element_to_string(x) << "\",\n  \"Y\": \""
                              << ring_element_to_string(y) << "\",\n  \"verified\": true\n}\n";
                } else {
                    std::cout << "X = " << ring_element_to_string(x) << "\n"
                              << "Y = " << ring_element_to_string(y) << "\n"
                              << "X^" << curve->base()->characteristic() << " - Y^" << *n
                              << " = 1 verified exactly\n";
                }
                return 0;
            };
        });
    }

    // lemma2
    {
        auto* cmd = app.add_subcommand(
            "lemma2", "check that (Y+c1)^p - Y^p = c2 forces Y constant, and list constant roots");
        auto opts = std::make_shared<CommonOpts>();
        auto characteristic = std::make_shared<std::uint64_t>(0);
        auto degree = std::make_shared<unsigned>(1);
        auto p = std::make_shared<std::uint64_t>(0);
        auto c1_text = std::make_shared<std::string>();
        auto c2_text = std::make_shared<std::string>();
        auto bound = std::make_shared<unsigned>(4);
        add_common(cmd, *opts, /*with_curve=*/false);
        cmd->add_option("--char", *characteristic, "field characteristic l")->required();
        cmd->add_option("--deg", *degree, "field extension degree a")->default_val(1);
        cmd->add_option("-p", *p, "prime p distinct from l")->required();
        cmd->add_option("--c1", *c1_text, "nonzero constant c1 (element syntax)")->required();
        cmd->add_option("--c2", *c2_text, "nonzero constant c2 (element syntax)")->required();
        cmd->add_option("-D,--bound", *bound, "degree bound of the claim")->default_val(4);
        cmd->callback([opts, characteristic, degree, p, c1_text, c2_text, bound, &run] {
            run = [opts, characteristic, degree, p, c1_text, c2_text, bound] {
                const FieldPtr field = make_field(*characteristic, *degree);
                const FieldElement c1 = parse_element(field, *c1_text);
                const FieldElement c2 = parse_element(field, *c2_text);
                const bool holds = verify_lemma2(field, *p, c1, c2, *bound);
                const auto roots = lemma2_constant_solutions(field, *p, c1, c2);
                if (opts->json) {
                    std::string items;
                    for (const auto& r : roots) {
                        if (!items.empty()) items += ", ";
                        items += "\"" + element_to_string(r) + "\"";
                    }
                    std::cout << "{\n  \"holds\": " << (holds ? "true" : "false")
                              << ",\n  \"constant_solutions\": [" << items << "]\n}\n";
                } else {
                    std::cout << "only constant solutions up to degree " << *bound << ": "
                              << (holds ? "yes" : "NO") << "\nconstant solutions:";
                    for (const auto& r : roots) std::cout << " " << element_to_string(r);
                    std::cout << "\n";
                }
                return holds ? 0 : 5;
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        return run();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
