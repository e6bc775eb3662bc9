#include <iostream>

#include "CLI11.hpp"

#include "ccr/errors.hpp"
#include "scenarios.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Group-averaged reduction of CCR forms for Klein-Gordon fields"};
    app.require_subcommand(1);

    ccr::cli::ScenarioConfig cfg;
    std::string csv;
    auto* run = app.add_subcommand("run", "run a scenario over a corpus and write a JSON report");
    run->add_option("--scenario", cfg.scenario, "axisym | bhp-average | bhp-field | nullspace | weyl | zero-mode | bounds")
        ->required();
    run->add_option("--corpus", cfg.corpus, "packet corpus JSON")->required();
    run->add_option("--out", cfg.output, "report path")->required();
    run->add_option("--seed", cfg.seed, "RNG seed");
    run->add_option("--n-max", cfg.quad.n_max, "discrete-sum truncation");
    run->add_option("--alpha-cutoff", cfg.quad.alpha_cutoff, "boost truncation");
    run->add_option("--rel-tol", cfg.quad.rel_tol, "quadrature relative tolerance");
    run->add_option("--csv", csv, "also write the plotting grid as CSV");
    run->add_flag("--timestamp", cfg.timestamp, "add a UTC timestamp field to the report");

    std::uint64_t seed = 0;
    int size = 0;
    bool s0 = false;
    double mass = 0.0;
    std::string out;
    auto* gen = app.add_subcommand("generate", "write a pseudo-random packet corpus");
    gen->add_option("--seed", seed)->required();
    gen->add_option("--size", size)->required()->check(CLI::Range(0, 64));
    gen->add_flag("--s0", s0, "antisymmetrize each field in k^x");
    gen->add_option("--mass", mass)->check(CLI::NonNegativeNumber);
    gen->add_option("--out", out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*run) {
            if (!csv.empty()) cfg.csv = csv;
            return ccr::cli::run_and_write(cfg);
        }
        ccr::save_json(out, ccr::corpus_to_json(ccr::cli::generate_corpus(seed, size, s0, mass)));
        return 0;
    } catch (const ccr::ParseError& e) {
        std::cerr << "ccr-reduce: " << e.what() << '\n';
        return 2;
    } catch (const ccr::DomainError& e) {
        std::cerr << "ccr-reduce: " << e.what() << '\n';
        return 2;
    } catch (const ccr::Error& e) {
        std::cerr << "ccr-reduce: " << e.what() << '\n';
        return 1;
    }
}
