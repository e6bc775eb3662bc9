#include "scenarios.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

#include "ccr/errors.hpp"
#include "ccr/specfun.hpp"

namespace ccr::cli {

namespace {

constexpr double kPi = std::numbers::pi;

json check_json(const Check& c) {
    return {{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"tol", c.tol}, {"pass", c.pass}, {"oracle", c.oracle}};
}

std::string pair_name(const std::string& what, std::size_t i, std::size_t j) {
    return what + " (" + std::to_string(i) + "," + std::to_string(j) + ")";
}

struct Context {
    const ScenarioConfig& cfg;
    std::vector<FieldVector> fields;
    json results = json::array();
    std::vector<Check> checks;
    std::ostringstream csv;
    std::mt19937_64 rng;

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
};

void require_massless(const Context& ctx, const char* scenario) {
    for (const auto& f : ctx.fields)
        if (f.mass() != 0.0) throw ParseError(std::string(scenario) + " scenario needs a massless corpus");
}

// ---------------------------------------------------------------------------

void run_axisym(Context& ctx) {
    const auto& q = ctx.cfg.quad;
    const std::size_t n = ctx.fields.size();
    std::vector<AxisymmetricAmplitude> amps;
    for (const auto& f : ctx.fields) amps.push_back(project_axisymmetric(f, q));
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = reduced_forms_axisym(amps[i], amps[i], q).mu_hat;

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const auto avg = average_bform_circle(ctx.fields[i], ctx.fields[j], q);
            const auto red = reduced_forms_axisym(amps[i], amps[j], q);
            const double avg_mu = avg.value.real(), avg_omega = -2.0 * avg.value.imag();
            const double scale = std::sqrt(std::max(0.0, diag[i] * diag[j]));
            ctx.results.push_back({{"i", i},
                                   {"j", j},
                                   {"average", {{"mu", avg_mu}, {"omega", avg_omega}}},
                                   {"reduced", {{"mu", red.mu_hat}, {"omega", red.omega_hat}}}});
            ctx.checks.push_back(close_check(pair_name("average=restriction mu", i, j), avg_mu, red.mu_hat, 1e-6,
                                             scale, "circle trapezoid average vs reduced 2D quadrature"));
            ctx.checks.push_back(close_check(pair_name("average=restriction omega", i, j), avg_omega,
                                             red.omega_hat, 1e-6, scale,
                                             "circle trapezoid average vs reduced 2D quadrature"));
        }
    }
    ctx.csv << "field,kappa,kz,re,im\n";
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = amps[i];
        for (int u = 0; u <= 20; ++u) {
            for (int v = 0; v <= 20; ++v) {
                const double kappa = a.kappa_max() * u / 20.0;
                const double kz = a.kz_range().lo + (a.kz_range().hi - a.kz_range().lo) * v / 20.0;
                const cplx val = a(kappa, kz);
                ctx.csv << i << ',' << kappa << ',' << kz << ',' << val.real() << ',' << val.imag() << '\n';
            }
        }
    }
}

void run_bhp_average(Context& ctx) {
    require_massless(ctx, "bhp-average");
    const auto& q = ctx.cfg.quad;
    const std::size_t n = ctx.fields.size();
    std::vector<double> norms(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto s = project_bhp(ctx.fields[i], q.n_max, q);
        norms[i] = std::sqrt(reduced_forms_bhp(s, s).mu_hat);
    }
    for (std::size_t i = 0; i < n && n > 1; ++i) {
        const std::size_t j = (i + 1) % n;
        const auto& f1 = ctx.fields[i];
        const auto& f2 = ctx.fields[j];
        const auto boost = average_bform_bhp_boost(f1, f2, q);
        const auto semi = average_bform_bhp_semianalytic(f1, f2, q);
        const auto reduced = average_bform_bhp_reduced(f1, f2, q);
        const double scale = norms[i] * norms[j];
        ctx.results.push_back({{"i", i},
                               {"j", j},
                               {"boost_level", to_json(boost)},
                               {"double_integral", to_json(semi)},
                               {"reduced", to_json(reduced)}});
        auto pairwise = [&](const std::string& what, const AverageResult& a, const AverageResult& b) {
            ctx.checks.push_back(close_check(pair_name(what + " re", i, j), a.value.real(), b.value.real(), 1e-5,
                                             scale, "independent quadrature levels of the Z x R^2 average"));
            ctx.checks.push_back(close_check(pair_name(what + " im", i, j), a.value.imag(), b.value.imag(), 1e-5,
                                             scale, "independent quadrature levels of the Z x R^2 average"));
        };
        pairwise("boost=reduced", boost, reduced);
        pairwise("double=reduced", semi, reduced);
        pairwise("boost=double", boost, semi);
    }
    const Vec3 k{ctx.uniform(-2.0, 2.0), ctx.uniform(-2.0, 2.0), ctx.uniform(-2.0, 2.0)};
    const double center = ctx.uniform(-2.0, 2.0), width = ctx.uniform(0.3, 1.5);
    const auto sub = alpha_substitution_check(center, width, k, 0.0, q.alpha_cutoff);
    ctx.checks.push_back(close_check("alpha substitution", sub.lhs, sub.rhs, 1e-8, std::abs(sub.rhs),
                                     "1D quadrature in alpha vs in l^y"));
    const auto pc = poisson_check([](double u) { return std::exp(-0.5 * u * u); }, 32, 40.0);
    ctx.checks.push_back(close_check("poisson identity", pc.lhs.real(), pc.rhs, 1e-6, std::abs(pc.rhs),
                                     "Dirichlet-kernel quadrature vs direct lattice sum"));
}

double wave_residual(const GowdySolution& psi, double tau, double sigma) {
    const double h = 1e-3;
    auto p = [&](double t, double s) { return gowdy_evaluate(psi, t, s); };
    const double c = p(tau, sigma);
    const double tt = (p(tau + h, sigma) - 2.0 * c + p(tau - h, sigma)) / (h * h);
    const double t1 = (p(tau + h, sigma) - p(tau - h, sigma)) / (2.0 * h);
    const double ss = (p(tau, sigma + h) - 2.0 * c + p(tau, sigma - h)) / (h * h);
    return -tt - t1 / tau + ss;
}

void run_bhp_field(Context& ctx) {
    require_massless(ctx, "bhp-field");
    const auto& q = ctx.cfg.quad;
    ctx.csv << "field,tau,sigma,psi\n";
    for (std::size_t i = 0; i < ctx.fields.size(); ++i) {
        const auto& f = ctx.fields[i];
        ctx.checks.push_back(bound_check("field " + std::to_string(i) + " in S0", f.in_s0() ? 0.0 : 1.0, 0.0, 0.0,
                                         "S0 flag verified on load"));
        if (!f.in_s0()) continue;
        const auto s0 = project_bhp(f, q.n_max, q);
        const double norm = std::sqrt(reduced_forms_bhp(s0, s0).mu_hat);
        if (norm == 0.0) continue;
        const FieldVector unit = scale(f, 1.0 / norm);
        const GowdySolution psi = gowdy_from_sequence(project_bhp(unit, q.n_max, q));
        json points = json::array();
        for (double tau : {0.5, 1.0, 2.0}) {
            for (double sigma : {0.0, 1.0, kPi}) {
                const auto direct = average_field_bhp(unit, tau, sigma, q, FieldPath::Direct);
                const auto series = average_field_bhp(unit, tau, sigma, q, FieldPath::Series);
                const double res = wave_residual(psi, tau, sigma);
                points.push_back({{"tau", tau}, {"sigma", sigma}, {"direct", direct.value},
                                  {"series", series.value}, {"wave_residual", res}});
                std::ostringstream at;
                at << " field " << i << " at (" << tau << "," << sigma << ")";
                ctx.checks.push_back(close_check("direct=series" + at.str(), direct.value, series.value, 1e-5, 1.0,
                                                 "contour boost integral vs Hankel series"));
                ctx.checks.push_back(close_check("wave equation" + at.str(), res, 0.0, 1e-4, 1.0,
                                                 "finite-difference residual of the reduced wave equation"));
            }
        }
        ctx.results.push_back({{"field", i}, {"normalization", norm}, {"points", points}});
        for (int a = 0; a <= 24; ++a) {
            for (int b = 0; b <= 24; ++b) {
                const double tau = 0.25 + 2.75 * a / 24.0, sigma = 2.0 * kPi * b / 24.0;
                ctx.csv << i << ',' << tau << ',' << sigma << ',' << gowdy_evaluate(psi, tau, sigma) << '\n';
            }
        }
    }
}

void run_nullspace(Context& ctx) {
    const auto& q = ctx.cfg.quad;
    if (ctx.fields.empty()) return;
    bool massless = true;
    for (const auto& f : ctx.fields) massless = massless && f.mass() == 0.0;

    auto analyze = [&](const std::string& label, GroupKind kind, const GroupElement& h) {
        std::vector<FieldVector> list = ctx.fields;
        list.push_back(apply_group(h, ctx.fields.front()));
        const auto rep = null_space_analysis(list, kind, q);
        ctx.results.push_back({{"group", label}, {"h", to_json(h)}, {"report", to_json(rep)}});
        ctx.checks.push_back(bound_check(label + " null(mu) in null(omega)", rep.inclusion_holds ? 0.0 : 1.0, 0.0, 0.0,
                                         "eigen-decomposition of the averaged Gram matrices"));
        ctx.checks.push_back(bound_check(label + " rank deficient", double(rep.rank), double(list.size() - 1), 0.0,
                                         "phi and Phi_h phi differ by a null vector"));

        // (Phi_h - 1) psi against every field.
        const FieldVector nullvec = list.back() - ctx.fields.front();
        for (std::size_t i = 0; i < ctx.fields.size(); ++i) {
            cplx b;
            double scale;
            if (kind == GroupKind::Circle) {
                b = average_bform_circle(ctx.fields[i], nullvec, q).value;
                const double d1 = average_bform_circle(ctx.fields[i], ctx.fields[i], q).value.real();
                const double d2 = average_bform_circle(ctx.fields.front(), ctx.fields.front(), q).value.real();
                scale = std::sqrt(std::max(0.0, d1 * d2));
            } else {
                const auto si = project_bhp(ctx.fields[i], q.n_max, q);
                const auto s0 = project_bhp(ctx.fields.front(), q.n_max, q);
                b = average_bform_bhp_reduced(ctx.fields[i], nullvec, q).value;
                scale = std::sqrt(reduced_forms_bhp(si, si).mu_hat * reduced_forms_bhp(s0, s0).mu_hat);
            }
            ctx.checks.push_back(close_check(label + " mu_G annihilates null vector vs " + std::to_string(i),
                                             b.real(), 0.0, 1e-6, scale, "averaged form on (Phi_h - 1) psi"));
            ctx.checks.push_back(close_check(label + " omega_G annihilates null vector vs " + std::to_string(i),
                                             -2.0 * b.imag(), 0.0, 1e-6, scale, "averaged form on (Phi_h - 1) psi"));
        }
    };
    // k^x-odd fields have no axisymmetric part, so the circle Gram is zero.
    bool all_s0 = true;
    for (const auto& f : ctx.fields) all_s0 = all_s0 && f.in_s0();
    const auto rot = make_rotation(ctx.uniform(0.0, 2.0 * kPi));
    if (!all_s0) analyze("circle", GroupKind::Circle, rot);
    if (massless) {
        const long n = std::uniform_int_distribution<long>(-2, 2)(ctx.rng);
        analyze("bhp", GroupKind::BHP, BHPElement{n, ctx.uniform(-1.0, 1.0), ctx.uniform(-2.0, 2.0)});
    }
}

void run_weyl(Context& ctx) {
    const auto& q = ctx.cfg.quad;
    const std::size_t n = ctx.fields.size();
    if (n == 0) return;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int t = 0; t < 10; ++t) {
        const std::size_t a = pick(ctx.rng), b = pick(ctx.rng), c = pick(ctx.rng);
        const WeylWord w1{std::polar(1.0, ctx.uniform(0.0, 2.0 * kPi)), ctx.fields[a]};
        const WeylWord w2{std::polar(1.0, ctx.uniform(0.0, 2.0 * kPi)), ctx.fields[b]};
        const WeylWord w3{std::polar(1.0, ctx.uniform(0.0, 2.0 * kPi)), ctx.fields[c]};
        const auto left = weyl_multiply(weyl_multiply(w1, w2, q), w3, q);
        const auto right = weyl_multiply(w1, weyl_multiply(w2, w3, q), q);
        const std::string tag = " (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
        ctx.checks.push_back(close_check("associativity phase" + tag, std::abs(left.phase - right.phase), 0.0, 1e-10,
                                         1.0, "bilinearity of Omega"));
        ctx.results.push_back({{"triple", {a, b, c}}, {"left", to_json(left.phase)}, {"right", to_json(right.phase)}});
    }
    for (std::size_t i = 0; i < n; ++i) {
        const WeylWord w{cplx(1.0, 0.0), ctx.fields[i]};
        const auto id = weyl_multiply(weyl_star(w), w, q);
        ctx.checks.push_back(close_check("star identity phase " + std::to_string(i), std::abs(id.phase - 1.0), 0.0,
                                         1e-12, 1.0, "W(phi)* W(phi) = 1"));
        ctx.checks.push_back(bound_check("star identity vector " + std::to_string(i), double(id.vector.terms().size()),
                                         0.0, 0.0, "phi + (-phi) cancels termwise"));
        const double m = mu(ctx.fields[i], ctx.fields[i], q).value;
        ctx.results.push_back({{"field", i}, {"mu_diagonal", m}, {"state_value", state_value(m)}});
    }
}

void run_zero_mode(Context& ctx) {
    require_massless(ctx, "zero-mode");
    const std::vector<double> cutoffs{5.0, 10.0, 20.0, 40.0};
    for (std::size_t i = 0; i < ctx.fields.size(); ++i) {
        const auto& f = ctx.fields[i];
        const auto probe = zero_mode_divergence_probe(f, cutoffs, 1.0, ctx.cfg.quad);
        ctx.results.push_back({{"field", i}, {"s0", f.in_s0()}, {"cutoffs", cutoffs}, {"probe", probe}});
        const std::string tag = " field " + std::to_string(i);
        if (f.in_s0()) {
            ctx.checks.push_back(bound_check("vanishes on S0" + tag, probe.back(), 1e-8, 0.0,
                                             "exact cancellation of a(0, k^y, 0)"));
            continue;
        }
        double worst = HUGE_VAL, ratio = HUGE_VAL;
        for (std::size_t k = 1; k < probe.size(); ++k) {
            worst = std::min(worst, probe[k] - probe[k - 1]);
            ratio = std::min(ratio, probe[k] / probe[k - 1]);
        }
        ctx.checks.push_back(Check{"diverges" + tag, worst, 0.0, 0.0, worst > 0.0,
                                   "n = 0 term at increasing boost cutoffs"});
        ctx.checks.push_back(Check{"growth ratio" + tag, ratio, 1.2, 0.0, ratio > 1.2,
                                   "successive cutoff doublings"});
    }
}

void run_bounds(Context& ctx) {
    const auto& q = ctx.cfg.quad;
    const std::size_t n = ctx.fields.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (ctx.fields[i].mass() != ctx.fields[j].mass()) continue;
            const auto b = qf_bound_check(ctx.fields[i], ctx.fields[j], q);
            ctx.checks.push_back(bound_check(pair_name("quasi-free bound", i, j), b.lhs, b.rhs, kBoundTolerance,
                                             "closed-form Gaussian overlaps"));
        }
        const auto s = qf_bound_check(ctx.fields[i], apply_A(ctx.fields[i]), q);
        ctx.checks.push_back(close_check("saturation " + std::to_string(i), s.lhs, s.rhs, 1e-8, s.rhs,
                                         "Omega(phi, A phi) / 2 = mu(phi, phi)"));
        ctx.results.push_back({{"field", i}, {"mu_diagonal", mu(ctx.fields[i], ctx.fields[i], q).value}});
    }
}

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

}  // namespace

Check close_check(std::string name, double lhs, double rhs, double rel_tol, double scale, std::string oracle) {
    const double tol = rel_tol * std::max(scale, std::numeric_limits<double>::min());
    return {std::move(name), lhs, rhs, tol, std::abs(lhs - rhs) <= tol, std::move(oracle)};
}

Check bound_check(std::string name, double lhs, double rhs, double rel_tol, std::string oracle) {
    return {std::move(name), lhs, rhs, rel_tol, lhs <= rhs * (1.0 + rel_tol) || lhs <= rhs, std::move(oracle)};
}

bool Report::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

Report run_scenario(const ScenarioConfig& cfg) {
    if (std::find(kScenarios.begin(), kScenarios.end(), cfg.scenario) == kScenarios.end())
        throw ParseError("unknown scenario '" + cfg.scenario + "'");
    cfg.quad.validate();
    Context ctx{cfg, load_corpus(cfg.corpus), json::array(), {}, {}, std::mt19937_64(cfg.seed)};

    if (cfg.scenario == "axisym")
        run_axisym(ctx);
    else if (cfg.scenario == "bhp-average")
        run_bhp_average(ctx);
    else if (cfg.scenario == "bhp-field")
        run_bhp_field(ctx);
    else if (cfg.scenario == "nullspace")
        run_nullspace(ctx);
    else if (cfg.scenario == "weyl")
        run_weyl(ctx);
    else if (cfg.scenario == "zero-mode")
        run_zero_mode(ctx);
    else
        run_bounds(ctx);

    Report rep;
    rep.checks = ctx.checks;
    json checks = json::array();
    for (const auto& c : ctx.checks) checks.push_back(check_json(c));
    rep.document = {{"scenario", cfg.scenario},
                    {"config",
                     {{"corpus", cfg.corpus.string()},
                      {"seed", cfg.seed},
                      {"quadrature", to_json(cfg.quad)},
                      {"fields", ctx.fields.size()}}},
                    {"results", ctx.results},
                    {"checks", checks},
                    {"all_pass", rep.all_pass()}};
    if (cfg.timestamp) rep.document["timestamp"] = utc_now();
    if (cfg.csv) rep.document["csv"] = ctx.csv.str();
    return rep;
}

int run_and_write(const ScenarioConfig& cfg) {
    Report rep = run_scenario(cfg);
    if (cfg.csv) {
        std::ofstream out(*cfg.csv);
        if (!out) throw ParseError("cannot write " + cfg.csv->string());
        out << rep.document["csv"].get<std::string>();
        rep.document.erase("csv");
        rep.document["csv_path"] = cfg.csv->string();
    }
    save_json(cfg.output, rep.document);
    return rep.all_pass() ? 0 : 1;
}

std::vector<FieldVector> generate_corpus(std::uint64_t seed, int size, bool s0, double mass) {
    if (size < 0 || size > 64) throw DomainError("corpus size must be in [0, 64]");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> centre(-3.0, 3.0), width(0.3, 1.5), coeff(-1.0, 1.0);
    std::vector<FieldVector> out;
    for (int i = 0; i < size; ++i) {
        GaussianPacket p;
        for (auto& c : p.center) c = centre(rng);
        for (auto& w : p.width) w = width(rng);
        const double re = coeff(rng), im = coeff(rng);
        p.coeff = {re, im};
        FieldVector f = FieldVector::packet(p, mass);
        out.push_back(s0 ? antisymmetrize_kx(f) : f);
    }
    return out;
}

}  // namespace ccr::cli
