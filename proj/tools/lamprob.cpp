// lamprob: command line front end for the experiments in lamprob/report.hpp.
#include "lamprob/report.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

// Options shared by every subcommand; values land in the Config map only when given.
struct Common {
    std::string config, format = "table", out_dir, fixtures_dir;
    int threads = -1;
};

void add_common(CLI::App* s, Common& c) {
    s->add_option("--config", c.config, "config file (key=value lines or a JSON object)");
    s->add_option("--out", c.format, "output format")->check(CLI::IsMember({"json", "csv", "table"}));
    s->add_option("--out-dir", c.out_dir, "also write <out-dir>/<command>.<ext>");
    s->add_option("--fixtures-dir", c.fixtures_dir, "directory of pinned fixtures");
    s->add_option("--threads", c.threads, "worker threads (0 = hardware concurrency)");
}

template <class T> void put(lp::Config& c, CLI::App* s, const std::string& opt, const std::string& key, const T& v) {
    const CLI::Option* o = s->get_option_no_throw(opt);
    if (o && o->count()) {
        if constexpr (std::is_same_v<T, std::string>) c.values[key] = v;
        else c.values[key] = std::to_string(v);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact lambda-ring probability: random matrices, character and hypersurface statistics"};
    app.require_subcommand(1);
    Common common;

    long q = 0, n = 0, i = 1, dmin = 0, dmax = 0, trunc = 0, witt = 0, ell = 2, samples = 0, seed = 1, trials = 8, half_power = -2;
    std::string group, tau, mode, sign, limit_mode;
    double m_cap = 0;

    auto* rm = app.add_subcommand("randmat", "finite-n vs limit MGFs of Haar random matrices");
    rm->add_option("--group", group, "sym, symstd, u, o, so or sp");
    rm->add_option("--n", n, "matrix size");
    rm->add_option("--trunc", trunc, "truncation degree");
    rm->add_option("--tau", tau, "restrict to partitions, e.g. '1,1;2'");
    rm->add_option("--mc-samples", samples, "Haar Monte Carlo samples (>= 10000)");
    rm->add_option("--seed", seed, "Monte Carlo seed");

    auto* ch = app.add_subcommand("chars", "Kummer character L-function statistics");
    ch->add_option("--q", q, "field size");
    ch->add_option("--ell", ell, "character order");
    ch->add_option("--i", i, "ghost index for gap tables");
    ch->add_option("--dmin", dmin, "smallest degree");
    ch->add_option("--dmax", dmax, "largest degree");
    ch->add_option("--trunc", trunc, "truncation degree");
    ch->add_option("--witt", witt, "Witt length");
    ch->add_option("--mode", mode, "empirical, limit or compare")->check(CLI::IsMember({"empirical", "limit", "compare"}));
    ch->add_option("--limit-mode", limit_mode, "euler or power")->check(CLI::IsMember({"euler", "power"}));

    auto* hy = app.add_subcommand("hypersurf", "smooth hypersurface section statistics");
    hy->add_option("--q", q, "field size");
    hy->add_option("--i", i, "ghost index for gap tables");
    hy->add_option("--n", n, "dimension of the hypersurface (ambient P^{n+1})");
    hy->add_option("--dmin", dmin, "smallest degree");
    hy->add_option("--dmax", dmax, "largest degree");
    hy->add_option("--trunc", trunc, "truncation degree");
    hy->add_option("--witt", witt, "Witt length");
    hy->add_option("--mode", mode, "geo or vanishing")->check(CLI::IsMember({"geo", "vanishing"}));
    hy->add_option("--sign", sign, "plus or minus")->check(CLI::IsMember({"plus", "minus"}));

    auto* id = app.add_subcommand("identities", "randomized identity suite, stable homology, Exp/Log approximations");
    id->add_option("--seed", seed, "suite seed");
    id->add_option("--trials", trials, "trials per identity");
    id->add_option("--q", q, "q for the stable-homology identity");
    id->add_option("--trunc", trunc, "truncation degree");
    id->add_option("--witt", witt, "Witt length");

    auto* cp = app.add_subcommand("compare", "limit MGFs against random-matrix MGFs modulo [q^-1] or [q^-1/2]");
    cp->add_option("--q", q, "field size (default: the standard suite)");
    cp->add_option("--ell", ell, "compare the character family of this order");
    cp->add_option("--n", n, "compare the hypersurface family of this dimension");
    cp->add_option("--trunc", trunc, "truncation degree");
    cp->add_option("--witt", witt, "Witt length");
    cp->add_option("--m-cap", m_cap, "largest acceptable fitted M");
    cp->add_option("--half-power", half_power, "character modulus [u^k], u = q^{1/2} (default -2)");

    for (auto* s : {rm, ch, hy, id, cp}) add_common(s, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    CLI::App* s = app.get_subcommands().front();
    const std::string cmd = s->get_name();
    try {
        lp::Config cfg;
        if (!common.config.empty()) cfg = lp::Config::load(common.config);
        lp::Config cli;
        put(cli, s, "--group", "group", group);
        put(cli, s, "--n", "n", n);
        put(cli, s, "--trunc", "trunc_degree", trunc);
        put(cli, s, "--tau", "tau", tau);
        put(cli, s, "--mc-samples", "mc_samples", samples);
        put(cli, s, "--seed", "seed", seed);
        put(cli, s, "--q", "q", q);
        put(cli, s, "--ell", "ell", ell);
        put(cli, s, "--i", "i", i);
        put(cli, s, "--dmin", "dmin", dmin);
        put(cli, s, "--dmax", "dmax", dmax);
        put(cli, s, "--witt", "witt_len", witt);
        put(cli, s, "--mode", "mode", mode);
        put(cli, s, "--limit-mode", "limit_mode", limit_mode);
        put(cli, s, "--sign", "sign", sign);
        put(cli, s, "--trials", "trials", trials);
        put(cli, s, "--m-cap", "m_cap", m_cap);
        put(cli, s, "--half-power", "half_power", half_power);
        put(cli, s, "--out-dir", "out_dir", common.out_dir);
        put(cli, s, "--fixtures-dir", "fixtures_dir", common.fixtures_dir);
        put(cli, s, "--threads", "threads", common.threads);
        put(cli, s, "--out", "format", common.format);
        cfg.merge(cli);

        const lp::Format fmt = lp::parse_format(cfg.get("format", "table"));
        lp::ExperimentResult r = lp::run_experiment(cmd, cfg);
        std::cout << r.render(fmt);
        return r.pass ? 0 : 1;
    } catch (const std::invalid_argument& e) { // includes UsageError
        std::cerr << "lamprob " << cmd << ": " << e.what() << "\n";
        return 2;
    } catch (const std::length_error& e) {
        std::cerr << "lamprob " << cmd << ": " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "lamprob " << cmd << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "lamprob " << cmd << ": " << e.what() << "\n";
        return 1;
    }
}
