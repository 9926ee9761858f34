// Command-line front end: reproducible experiments over the library with
// machine-readable output. JSON goes to stdout, diagnostics to stderr.
//
// Exit codes: 0 success, 2 bad input, 3 unusable form, 4 recognition
// failure, 5 bound violation.

#include <maassclass/bounds.hpp>
#include <maassclass/classpoly.hpp>
#include <maassclass/evaluator.hpp>
#include <maassclass/formexpr.hpp>
#include <maassclass/irreducibility.hpp>
#include <maassclass/parallel.hpp>
#include <maassclass/poincare.hpp>
#include <maassclass/qseries.hpp>
#include <maassclass/quadforms.hpp>
#include <maassclass/serialize.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitBadInput = 2;
constexpr int kExitUnusableForm = 3;
constexpr int kExitRecognition = 4;
constexpr int kExitBoundViolation = 5;

struct RunConfig {
    unsigned precision = 192;
    int64_t trunc = 128;
    std::string tol = "1e-20";
    double c_param = 1.5;
    std::string format = "json";
    int64_t seed = 0;
    unsigned threads = 0; // 0 = auto (env MAASSCLASS_THREADS, then hardware)

    unsigned effective_threads() const {
        return threads ? threads : maassclass::default_thread_count();
    }

    maassclass::ClassPolyConfig classpoly() const {
        maassclass::ClassPolyConfig cfg;
        cfg.eval.precision = precision;
        cfg.eval.trunc = trunc;
        double t = std::stod(tol);
        cfg.eval.tail_tol = t;
        cfg.im_tol = t;
        cfg.round_tol = t;
        cfg.threads = effective_threads();
        return cfg;
    }

    maassclass::Json json() const {
        return maassclass::Json{{"precision", precision},
                                {"trunc", trunc},
                                {"tol", tol},
                                {"c", maassclass::double_decimal(c_param)},
                                {"format", format},
                                {"seed", seed}};
    }
};

void emit(const maassclass::Json& out, const RunConfig& cfg) {
    if (cfg.format == "json") {
        std::cout << out.dump(2) << "\n";
        return;
    }
    // text: flat, greppable key: value lines
    std::function<void(const maassclass::Json&, const std::string&)> walk =
        [&](const maassclass::Json& node, const std::string& prefix) {
            if (node.is_object()) {
                for (auto it = node.begin(); it != node.end(); ++it)
                    walk(it.value(), prefix.empty() ? it.key()
                                                    : prefix + "." + it.key());
            } else if (node.is_array()) {
                size_t i = 0;
                for (const auto& v : node) walk(v, prefix + "[" + std::to_string(i++) + "]");
            } else {
                std::cout << prefix << ": "
                          << (node.is_string() ? node.get<std::string>()
                                               : node.dump())
                          << "\n";
            }
        };
    walk(out, "");
}

// Parse, expand and sanity-check a form expression; throws the library
// errors, which main() maps to exit codes.
struct PreparedForm {
    maassclass::FormExpr expr;
    maassclass::QSeries series;
    int k = 0;
    maassclass::PrincipalPart principal;
};

PreparedForm prepare_form(const std::string& text, const RunConfig& cfg,
                          bool need_positive_k) {
    maassclass::FormExpr expr = maassclass::parse_form_expr(text);
    if (expr.weight > 0 || expr.weight % 2 != 0)
        throw maassclass::NoPrincipalPartError(); // not a nonpositive even weight
    maassclass::QSeries series = maassclass::expand(expr, cfg.trunc);
    PreparedForm out{std::move(expr), std::move(series), 0, {}};
    out.k = -out.expr.weight / 2;
    out.principal = maassclass::principal_part(out.series); // throws if no pole
    if (need_positive_k && out.k < 1) throw maassclass::NoPrincipalPartError();
    return out;
}

int cmd_forms(int64_t disc, bool primitive_only, const RunConfig& cfg) {
    maassclass::Discriminant D(disc);
    auto forms = maassclass::enumerate_reduced(D);
    if (primitive_only) forms = maassclass::primitive_subset(forms);
    maassclass::Json list = maassclass::Json::array();
    for (const auto& q : forms) {
        maassclass::CMPoint cm = maassclass::cm_point(q, cfg.precision);
        maassclass::Json entry = maassclass::json_of(q);
        entry["primitive"] = q.is_primitive();
        entry["cm_point"] =
            maassclass::Json{{"re", maassclass::real_decimal(cm.re, 30)},
                             {"im", maassclass::real_decimal(cm.im, 30)}};
        list.push_back(entry);
    }
    maassclass::Json out{{"schema", 1},
                         {"command", "forms"},
                         {"config", cfg.json()},
                         {"discriminant", disc},
                         {"fundamental", D.is_fundamental()},
                         {"forms", list},
                         {"class_number", maassclass::class_number(D)}};
    emit(out, cfg);
    return 0;
}

int cmd_classpoly(const std::string& form, int64_t disc, const RunConfig& cfg) {
    maassclass::Discriminant D(disc);
    PreparedForm pf = prepare_form(form, cfg, false);
    maassclass::ClassPolyConfig ccfg = cfg.classpoly();
    maassclass::ComplexPolynomial raw =
        maassclass::build_hhat(D, pf.series, pf.k, ccfg);
    maassclass::RationalPolynomial poly = maassclass::recognize_rational(raw, ccfg);
    maassclass::Verdict verdict = maassclass::irreducible_over_q(poly);
    maassclass::Json out{{"schema", 1},
                         {"command", "classpoly"},
                         {"config", cfg.json()},
                         {"discriminant", disc},
                         {"form", form},
                         {"weight", pf.expr.weight},
                         {"k", pf.k},
                         {"pole_order", pf.principal.m},
                         {"class_number", maassclass::class_number(D)},
                         {"polynomial", maassclass::json_of(poly)},
                         {"irreducibility", maassclass::json_of(verdict)}};
    if (poly.degree() == 2 && verdict.irreducible()) {
        out["splitting_field_squarefree_part"] =
            maassclass::quadratic_splitting_field(poly).str();
    }
    emit(out, cfg);
    return 0;
}

maassclass::BoundInputs bound_inputs(const PreparedForm& pf, int64_t disc,
                                     double c) {
    maassclass::BoundInputs in;
    in.k = pf.k;
    in.m = pf.principal.m;
    in.a = pf.principal.a;
    in.D = disc;
    in.c = c;
    return in;
}

int cmd_bound(const std::string& form, int64_t disc, const RunConfig& cfg) {
    PreparedForm pf = prepare_form(form, cfg, true);
    maassclass::BoundInputs in = bound_inputs(pf, disc, cfg.c_param);
    maassclass::BoundReport rep = maassclass::bound_report(in);
    maassclass::Json out{{"schema", 1},
                         {"command", "bound"},
                         {"config", cfg.json()},
                         {"form", form},
                         {"report", maassclass::json_of(rep)}};
    emit(out, cfg);
    return 0;
}

int cmd_bound_sweep(const std::string& form, int64_t dmax, const RunConfig& cfg) {
    if (dmax < 3) throw std::invalid_argument("--dmax must be at least 3");
    PreparedForm pf = prepare_form(form, cfg, true);
    std::vector<int64_t> fundamentals;
    for (int64_t D = -3; D >= -dmax; --D) {
        if (maassclass::mod4(D) != 0 && maassclass::mod4(D) != 1) continue;
        if (maassclass::Discriminant(D).is_fundamental()) fundamentals.push_back(D);
    }
    std::vector<maassclass::Json> rows(fundamentals.size());
    maassclass::parallel_for(
        fundamentals.size(), cfg.effective_threads(), [&](size_t i) {
            int64_t D = fundamentals[i];
            maassclass::BoundInputs in = bound_inputs(pf, D, cfg.c_param);
            auto corollary = maassclass::corollary_criterion(in);
            auto theorem = maassclass::theorem_criterion(in);
            int h = maassclass::class_number(maassclass::Discriminant(D));
            bool guaranteed = corollary.guaranteed || theorem.guaranteed || h == 1;
            rows[i] = maassclass::Json{
                {"discriminant", D},
                {"class_number", h},
                {"degree_one", h == 1},
                {"corollary_guaranteed", corollary.guaranteed},
                {"theorem_guaranteed", theorem.guaranteed},
                {"irreducibility_guaranteed", guaranteed}};
        });
    maassclass::Json list = maassclass::Json::array();
    for (auto& r : rows) list.push_back(std::move(r));
    maassclass::Json out{{"schema", 1},
                         {"command", "bound-sweep"},
                         {"config", cfg.json()},
                         {"form", form},
                         {"dmax", dmax},
                         {"discriminants", list}};
    emit(out, cfg);
    return 0;
}

int cmd_verify_poincare(int64_t n_max, int k_max, int64_t l_max, int64_t c_max,
                        const RunConfig& cfg) {
    if (k_max < 1) throw std::invalid_argument("--k must be >= 1");
    if (n_max < 1 || l_max < 0 || c_max < 1)
        throw std::invalid_argument("grid parameters out of range");
    auto grid = maassclass::poincare_grid(n_max, k_max, l_max, c_max,
                                          cfg.effective_threads());
    bool all_pass = true;
    maassclass::Json list = maassclass::Json::array();
    for (const auto& e : grid) {
        all_pass = all_pass && e.pass;
        list.push_back(maassclass::json_of(e));
    }
    maassclass::Json out{{"schema", 1},
                         {"command", "verify-poincare"},
                         {"config", cfg.json()},
                         {"c_max", c_max},
                         {"entries", list},
                         {"all_pass", all_pass}};
    emit(out, cfg);
    return all_pass ? 0 : kExitBoundViolation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"class polynomials of raised negative-weight forms"};
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand

    RunConfig cfg;
    app.add_option("--precision", cfg.precision, "working precision in bits");
    app.add_option("--trunc", cfg.trunc, "q-series truncation order");
    app.add_option("--tol", cfg.tol, "tail/recognition tolerance (decimal string)");
    app.add_option("--format", cfg.format, "output format: json|text")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--seed", cfg.seed, "seed echoed into the output");
    app.add_option("--threads", cfg.threads,
                   "worker threads (0 = MAASSCLASS_THREADS or hardware)");

    auto* forms = app.add_subcommand("forms", "enumerate reduced forms");
    int64_t disc = 0;
    bool primitive_only = false;
    forms->add_option("--disc", disc, "negative discriminant")->required();
    forms->add_flag("--primitive", primitive_only, "primitive forms only");

    auto* classpoly = app.add_subcommand("classpoly", "build and recognize Hhat");
    std::string form_text;
    int64_t cp_disc = 0;
    classpoly->add_option("--form", form_text, "form expression")->required();
    classpoly->add_option("--disc", cp_disc, "negative discriminant")->required();

    auto* bound = app.add_subcommand("bound", "irreducibility criteria at D");
    std::string bound_form;
    int64_t bound_disc = 0;
    bound->add_option("--form", bound_form, "form expression")->required();
    bound->add_option("--disc", bound_disc, "fundamental discriminant")->required();
    bound->add_option("--c", cfg.c_param, "corollary parameter c > 1");

    auto* sweep = app.add_subcommand("bound-sweep", "sweep fundamental discriminants");
    std::string sweep_form;
    int64_t dmax = 200;
    sweep->add_option("--form", sweep_form, "form expression")->required();
    sweep->add_option("--dmax", dmax, "largest |D| included")->required();
    sweep->add_option("--c", cfg.c_param, "corollary parameter c > 1");

    auto* verify = app.add_subcommand("verify-poincare", "coefficient vs bound table");
    int64_t vp_n = 3, vp_l = 10, vp_cmax = 2000;
    int vp_k = 2;
    verify->add_option("--n", vp_n, "max pole index");
    verify->add_option("--k", vp_k, "max raising depth (>= 1)");
    verify->add_option("--lmax", vp_l, "max coefficient index");
    verify->add_option("--cmax", vp_cmax, "c-sum truncation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitBadInput;
    }

    try {
        if (*forms) return cmd_forms(disc, primitive_only, cfg);
        if (*classpoly) return cmd_classpoly(form_text, cp_disc, cfg);
        if (*bound) return cmd_bound(bound_form, bound_disc, cfg);
        if (*sweep) return cmd_bound_sweep(sweep_form, dmax, cfg);
        if (*verify) return cmd_verify_poincare(vp_n, vp_k, vp_l, vp_cmax, cfg);
    } catch (const maassclass::RecognitionError& e) {
        std::cerr << "recognition failure: " << e.what() << "\n";
        maassclass::Json out{{"schema", 1},
                             {"error", "recognition_failure"},
                             {"detail", e.what()},
                             {"coefficient_index", e.coefficient_index}};
        std::cout << out.dump(2) << "\n";
        return kExitRecognition;
    } catch (const maassclass::NoPrincipalPartError& e) {
        std::cerr << "unusable form: " << e.what() << "\n";
        return kExitUnusableForm;
    } catch (const maassclass::FormSyntaxError& e) {
        std::cerr << "bad form expression: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const maassclass::WeightMismatchError& e) {
        std::cerr << "bad form expression: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "bad input: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
