// holab: numerical laboratory for Carleson functions of composition-operator
// symbols and Orlicz growth conditions.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "holab/carleson.hpp"
#include "holab/criteria.hpp"
#include "holab/experiment.hpp"
#include "holab/specparse.hpp"
#include "holab/version.hpp"

using namespace holab;

namespace {

struct CommonSampling {
    std::string symbol_spec = "identity";
    std::string psi_spec;
    std::size_t n = 1u << 20;
    std::uint64_t seed = 0;

    BoundarySample sample() const {
        std::optional<OrliczFunction> psi;
        if (!psi_spec.empty()) psi = parse_orlicz_spec(psi_spec);
        const Symbol sym = parse_symbol_spec(symbol_spec, psi ? &*psi : nullptr);
        return sample_boundary(sym, n, seed);
    }
};

void add_sampling_opts(CLI::App* cmd, CommonSampling& cs) {
    cmd->add_option("--symbol", cs.symbol_spec, "symbol spec (identity, const:c, lens, phi-theta:t, general:@f.csv, outer:@f.csv)");
    cmd->add_option("--psi", cs.psi_spec, "Orlicz spec (power:p, exp_x, exp_log_power:a, loglog, logloglog, product, critere:n, piecewise:@f.csv)");
    cmd->add_option("--n", cs.n, "boundary sample size");
    cmd->add_option("--seed", cs.seed, "RNG seed; 0 = deterministic equispaced grid");
}

// --config FILE: flat key-value lines ("key value" or "key=value") expanded
// into flags before CLI11 sees them; explicit flags win because they come
// later on the command line.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    for (std::size_t i = 1; i + 1 < args.size(); ++i) {
        if (args[i] != "--config") continue;
        std::ifstream in(args[i + 1]);
        if (!in) throw std::runtime_error("cannot open config file " + args[i + 1]);
        std::vector<std::string> extra;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            const std::size_t sep = line.find_first_of(" =\t");
            if (sep == std::string::npos) {
                extra.push_back("--" + line);
                continue;
            }
            extra.push_back("--" + line.substr(0, sep));
            const std::string val = line.substr(sep + 1);
            if (!val.empty()) extra.push_back(val);
        }
        args.erase(args.begin() + long(i), args.begin() + long(i) + 2);
        args.insert(args.begin() + long(i), extra.begin(), extra.end());
        break;
    }
    return args;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) std::fputs(text.c_str(), stdout);
    else write_text_file(out_path, text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kVersion) +
                 " - composition-operator Carleson laboratory"};
    app.require_subcommand(1);

    // ---- orlicz check
    auto* orlicz = app.add_subcommand("orlicz", "Orlicz growth-condition tools");
    auto* ocheck = orlicz->add_subcommand("check", "decide a growth condition");
    ocheck->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    std::string o_psi, o_cond = "delta2";
    ocheck->add_option("--psi", o_psi, "Orlicz spec")->required();
    ocheck->add_option("--cond", o_cond,
                       "delta2 | delta-sup2[:A] | delta-sup1[:A] | nabla0 | slow-growth[:eps] | theta[:A[:theta]]");

    // ---- symbol build
    auto* symbol = app.add_subcommand("symbol", "symbol construction tools");
    auto* sbuild = symbol->add_subcommand("build", "build a symbol and dump boundary values");
    sbuild->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    std::string sb_spec, sb_out, sb_psi;
    std::size_t sb_n = 4096;
    sbuild->add_option("spec", sb_spec, "symbol spec")->required();
    sbuild->add_option("--psi", sb_psi, "Orlicz spec for outer symbols");
    sbuild->add_option("--n", sb_n, "boundary grid size");
    sbuild->add_option("--out", sb_out, "output CSV path (default stdout)");

    // ---- rho
    auto* rho = app.add_subcommand("rho", "estimate the Carleson function");
    rho->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    CommonSampling rho_cs;
    add_sampling_opts(rho, rho_cs);
    double r_hmin = 1e-4, r_hmax = 0.5;
    std::size_t r_points = 40;
    int r_boot = 0;
    std::string r_out;
    rho->add_option("--hmin", r_hmin, "smallest window height");
    rho->add_option("--hmax", r_hmax, "largest window height");
    rho->add_option("--points", r_points, "grid size");
    rho->add_option("--bootstrap", r_boot, "bootstrap replicates for error bars");
    rho->add_option("--out", r_out, "output CSV path (default stdout)");

    // ---- dyadic
    auto* dyadic = app.add_subcommand("dyadic", "dyadic window masses");
    dyadic->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    CommonSampling dy_cs;
    add_sampling_opts(dyadic, dy_cs);
    int dy_depth = 10;
    std::string dy_out;
    dyadic->add_option("--depth", dy_depth, "dyadic depth");
    dyadic->add_option("--out", dy_out, "output CSV path (default stdout)");

    // ---- luecking
    auto* luecking = app.add_subcommand("luecking", "Luecking partial sums");
    luecking->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    CommonSampling lk_cs;
    add_sampling_opts(luecking, lk_cs);
    std::vector<double> lk_p = {2.0};
    int lk_depth = 10;
    luecking->add_option("--p", lk_p, "Schatten exponents")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    luecking->add_option("--depth", lk_depth, "dyadic depth");

    // ---- experiment
    auto* exp = app.add_subcommand("experiment", "run a reproducible experiment bundle");
    exp->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    std::string e_id, e_out, e_psi, e_symbol;
    ExperimentConfig ecfg;
    exp->add_option("id", e_id, "thm-noncompact | lens | phi-theta | corollary | custom")->required();
    exp->add_option("--symbol", e_symbol, "symbol spec for custom runs");
    exp->add_option("--psi", e_psi, "Orlicz spec");
    exp->add_option("--theta", ecfg.theta, "theta for phi-theta / corollary");
    exp->add_option("--n", ecfg.n_points, "boundary sample size");
    exp->add_option("--seed", ecfg.seed, "seed (0 = deterministic grid)");
    exp->add_option("--hmin", ecfg.h_min, "smallest window height");
    exp->add_option("--hmax", ecfg.h_max, "largest window height");
    exp->add_option("--points", ecfg.h_points, "h grid size");
    exp->add_option("--depth", ecfg.depth, "dyadic depth");
    exp->add_option("--p", ecfg.p_list, "Schatten exponents")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    exp->add_option("--out", e_out, "output directory")->required();

    std::vector<std::string> args;
    try {
        args = expand_config(argc, argv);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    try {
        std::vector<const char*> argp;
        for (const auto& a : args) argp.push_back(a.c_str());
        app.parse(int(argp.size()), argp.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (ocheck->parsed()) {
            const OrliczFunction psi = parse_orlicz_spec(o_psi);
            const ConditionSpec cond = parse_condition_spec(o_cond);
            GrowthVerdict v = check_condition(psi, cond);
            if (cond.kind == Condition::delta2 && v.holds == Tristate::fails) {
                try {
                    v.witness = delta2_witness(psi, 24);
                } catch (const std::exception&) {
                    // witness extraction is best-effort for the report
                }
            }
            std::fputs((growth_verdict_json(v) + "\n").c_str(), stdout);
            return 0;
        }
        if (sbuild->parsed()) {
            std::optional<OrliczFunction> psi;
            if (!sb_psi.empty()) psi = parse_orlicz_spec(sb_psi);
            const Symbol sym = parse_symbol_spec(sb_spec, psi ? &*psi : nullptr);
            std::string csv = "t,re,im,modulus\n";
            char buf[160];
            for (std::size_t i = 0; i < sb_n; ++i) {
                const double t = 2.0 * 3.14159265358979323846 * (double(i) + 0.5) / double(sb_n);
                const auto z = sym.boundary(t);
                std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", t, z.real(), z.imag(),
                              std::abs(z));
                csv += buf;
            }
            emit(csv, sb_out);
            return 0;
        }
        if (rho->parsed()) {
            const auto sample = rho_cs.sample();
            const auto grid = log_spaced(r_hmin, r_hmax, r_points);
            auto profile = rho_profile(sample, grid);
            if (r_boot > 0) profile.stderr_ = bootstrap_stderr(sample, grid, r_boot, rho_cs.seed + 1);
            emit(profile_csv(profile), r_out);
            return 0;
        }
        if (dyadic->parsed()) {
            const auto dm = dyadic_measures(dy_cs.sample(), dy_depth);
            emit(dyadic_csv(dm), dy_out);
            return 0;
        }
        if (luecking->parsed()) {
            const auto dm = dyadic_measures(lk_cs.sample(), lk_depth);
            for (double p : lk_p) {
                const auto lk = luecking_partial_sums(dm, p);
                std::printf("p=%g verdict=%s S_N=%.8g\n", p, lk.verdict.c_str(),
                            lk.partial_sums.empty() ? 0.0 : lk.partial_sums.back());
                for (std::size_t n = 0; n < lk.level_terms.size(); ++n)
                    std::printf("  level %zu: term=%.8g ratio=%s\n", n + 1, lk.level_terms[n],
                                n == 0 ? "-" : std::to_string(lk.tail_ratios[n - 1]).c_str());
            }
            return 0;
        }
        if (exp->parsed()) {
            ecfg.id = e_id;
            ecfg.psi_spec = e_psi;
            ecfg.symbol_spec = e_symbol;
            ecfg.out_dir = e_out;
            const auto res = run_experiment(ecfg);
            std::fputs(res.summary.c_str(), stdout);
            return res.all_pass ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
