#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "factdual/dickman.hpp"
#include "factdual/distribution.hpp"
#include "factdual/duality.hpp"
#include "factdual/experiments.hpp"
#include "factdual/series.hpp"

using namespace factdual;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<u64> parse_checkpoints(const std::string& spec, u64 limit) {
    if (spec == "pow10") return pow10_checkpoints(limit);
    if (spec.rfind("list:", 0) == 0) {
        std::vector<u64> cps;
        for (const std::string& tok : split(spec.substr(5), ',')) cps.push_back(std::stoull(tok));
        return cps;
    }
    throw CLI::ValidationError("--checkpoints", "expected pow10 or list:x1,x2,...");
}

u64 parse_step(const std::string& s) {
    // accepted: "2^-10", "1/1024", "1024" (all meaning h = 1/1024)
    if (s.rfind("2^-", 0) == 0) {
        const int k = std::stoi(s.substr(3));
        if (k < 6 || k > 24) throw CLI::ValidationError("--step", "need 2^-6 .. 2^-24");
        return u64{1} << k;
    }
    if (s.rfind("1/", 0) == 0) return std::stoull(s.substr(2));
    return std::stoull(s);
}

std::vector<PrimeFn> default_battery() {
    return {PrimeFn::identity(),      PrimeFn::one(),
            PrimeFn::residue(3, 1),   PrimeFn::residue(4, 3),
            PrimeFn::random_table(1), PrimeFn::random_table(2),
            PrimeFn::random_table(3)};
}

int cmd_verify(const std::string& identity, u64 max_n, int k_opt, const std::string& f_opt) {
    std::cout << "identity,n,k,f,lhs,rhs\n";
    if (identity == "all") {
        VerifyOptions vo;
        vo.k_max = k_opt;
        if (!f_opt.empty()) vo.fns = {PrimeFn::parse(f_opt)};
        const VerifyResult vr = verify_identities(max_n, vo);
        for (const IdentityReport& r : vr.failures)
            std::cout << r.identity << "," << r.n << "," << r.k << "," << r.fn << "," << r.lhs << ","
                      << r.rhs << "\n";
        std::cerr << "checked " << vr.checked << " identity instances, " << vr.failures.size()
                  << " failures\n";
        return vr.ok() ? 0 : 1;
    }
    const auto names = identity_names();
    if (std::find(names.begin(), names.end(), identity) == names.end())
        throw CLI::ValidationError("--identity", "unknown identity " + identity);
    std::vector<PrimeFn> fns = f_opt.empty() ? default_battery() : std::vector<PrimeFn>{PrimeFn::parse(f_opt)};
    const bool k_free = identity == "1.3" || identity == "1.4" || identity == "1.13" ||
                        identity == "2.9" || identity == "2.10";
    u64 checked = 0, failed = 0;
    for (u64 n = 2; n <= max_n; ++n) {
        const int omega = static_cast<int>(factorize(n).size());
        std::vector<int> ks;
        if (k_free)
            ks = {identity == "1.13" ? 2 : 1};
        else if (k_opt > 0)
            ks = {k_opt};
        else
            for (int k = 1; k <= omega + 1; ++k) ks.push_back(k);
        for (const PrimeFn& f : fns) {
            for (int k : ks) {
                const auto [lhs, rhs] = identity_sides(identity, n, k, f);
                ++checked;
                if (lhs != rhs) {
                    ++failed;
                    std::cout << identity << "," << n << "," << k << "," << f.describe() << ","
                              << lhs << "," << rhs << "\n";
                }
            }
        }
    }
    std::cerr << "checked " << checked << " identity instances, " << failed << " failures\n";
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"factdual: prime-factor duality identities and distribution experiments"};
    app.require_subcommand(1);
    int rc = 0;

    // ---- sieve ----
    auto* sieve_cmd = app.add_subcommand("sieve", "stream factor records; optional binary dump");
    u64 sv_limit = 1000000;
    u64 sv_block = kDefaultBlockSize;
    unsigned sv_workers = 0;
    std::string sv_out;
    sieve_cmd->add_option("--limit", sv_limit, "sieve n in [2, limit]")->required();
    sieve_cmd->add_option("--block-size", sv_block, "records per block");
    sieve_cmd->add_option("--workers", sv_workers, "worker threads (0 = auto)");
    sieve_cmd->add_option("--out", sv_out, "binary dump path (magic FDUAL001)");
    sieve_cmd->callback([&] {
        StreamOptions opts{sv_block, sv_workers};
        if (!sv_out.empty()) {
            const u64 n = dump_range(sv_limit, sv_out, opts);
            std::cout << "wrote " << n << " records to " << sv_out << "\n";
        } else {
            u64 count = 0, squarefree = 0;
            stream_blocks(sv_limit, opts, [&](const FactorBlock& b) {
                count += b.records.size();
                for (const FactorRecord& r : b.records) squarefree += r.mu != 0;
            });
            std::cout << "records=" << count << " squarefree=" << squarefree << "\n";
        }
    });

    // ---- verify ----
    auto* verify_cmd = app.add_subcommand("verify", "check duality identities exactly");
    std::string vf_identity = "all";
    u64 vf_max_n = 10000;
    int vf_k = 0;
    std::string vf_f;
    verify_cmd->add_option("--identity", vf_identity,
                           "1.3|1.4|1.9|1.10|1.11|1.12|1.13|2.9|2.10|all");
    verify_cmd->add_option("--max-n", vf_max_n, "check every 2 <= n <= max-n");
    verify_cmd->add_option("--k", vf_k, "fixed k (0 = every k up to omega(n)+1)");
    verify_cmd->add_option("--f", vf_f, "id|one|res:k,l|rand:seed|set:p1,p2|window:x");
    verify_cmd->callback([&] { rc = cmd_verify(vf_identity, vf_max_n, vf_k, vf_f); });

    // ---- series ----
    auto* series_cmd = app.add_subcommand("series", "checkpointed Moebius series");
    u64 se_limit = 1000000;
    u64 se_mod = 0;
    std::string se_residues = "all";
    std::string se_side = "smallest";
    std::string se_cps = "pow10";
    std::string se_out = "series.csv";
    u64 se_block = kDefaultBlockSize;
    unsigned se_workers = 0;
    series_cmd->add_option("--limit", se_limit)->required();
    series_cmd->add_option("--mod", se_mod, "slice modulus k (0 = no slices)");
    series_cmd->add_option("--residues", se_residues, "all | l1,l2,...");
    series_cmd->add_option("--side", se_side, "smallest|largest|p2");
    series_cmd->add_option("--checkpoints", se_cps, "pow10 | list:x1,x2,...");
    series_cmd->add_option("--out", se_out);
    series_cmd->add_option("--block-size", se_block);
    series_cmd->add_option("--workers", se_workers);
    series_cmd->callback([&] {
        std::vector<SliceSpec> slices;
        if (se_mod >= 1) {
            const Side side = parse_side(se_side);
            std::vector<u64> ls;
            if (se_residues == "all")
                for (u64 l = 0; l < se_mod; ++l) ls.push_back(l);
            else
                for (const std::string& tok : split(se_residues, ',')) ls.push_back(std::stoull(tok));
            for (u64 l : ls) slices.push_back({se_mod, l, side, false});
        }
        const auto cps = parse_checkpoints(se_cps, se_limit);
        const SeriesTable table = accumulate_series(se_limit, slices, cps, {se_block, se_workers});
        write_series_csv(table, se_out);
        std::cout << "wrote " << se_out << " (" << cps.size() << " checkpoints, " << slices.size()
                  << " slices)\n";
    });

    // ---- dist ----
    auto* dist_cmd = app.add_subcommand("dist", "smooth counts and residue distribution");
    u64 di_limit = 1000000;
    std::string di_stat = "psi";
    u64 di_y = 0;
    std::string di_alpha;
    u64 di_mod = 3;
    std::string di_side = "P";
    std::string di_out = "dist.csv";
    u64 di_block = kDefaultBlockSize;
    unsigned di_workers = 0;
    dist_cmd->add_option("--limit", di_limit)->required();
    dist_cmd->add_option("--stat", di_stat, "psi|psi2|nrep|rescount");
    dist_cmd->add_option("--y", di_y, "smoothness bound");
    dist_cmd->add_option("--alpha", di_alpha, "use y = floor(limit^(1/alpha)), alpha rational");
    dist_cmd->add_option("--mod", di_mod, "modulus for rescount");
    dist_cmd->add_option("--side", di_side, "P|P2");
    dist_cmd->add_option("--out", di_out);
    dist_cmd->add_option("--block-size", di_block);
    dist_cmd->add_option("--workers", di_workers);
    dist_cmd->callback([&] {
        StreamOptions opts{di_block, di_workers};
        std::ofstream out(di_out);
        if (!out) throw std::runtime_error("cannot open " + di_out);
        out << "x,stat,param1,param2,value\n";
        if (di_stat == "psi" || di_stat == "psi2") {
            u64 y = di_y;
            if (y == 0) {
                if (di_alpha.empty())
                    throw CLI::ValidationError("--y", "psi/psi2 need --y or --alpha");
                y = smoothness_bound(di_limit, Rational::parse(di_alpha));
            }
            const u64 v = di_stat == "psi" ? psi(di_limit, y, opts) : psi2(di_limit, y, opts);
            out << di_limit << "," << di_stat << "," << y << ",0," << v << "\n";
            std::cout << di_stat << "(" << di_limit << "," << y << ") = " << v << "\n";
        } else if (di_stat == "nrep") {
            const u64 v = repeated_lpf_count(di_limit, opts);
            out << di_limit << ",nrep,0,0," << v << "\n";
            std::cout << "nrep(" << di_limit << ") = " << v << "\n";
        } else if (di_stat == "rescount") {
            const Side side = di_side == "P2" ? Side::second_largest : Side::largest;
            const ResidueCountTable t = residue_counts(di_limit, di_mod, side, opts);
            const std::string stat = side == Side::largest ? "rescount_P" : "rescount_P2";
            for (u64 r = 0; r < di_mod; ++r)
                out << di_limit << "," << stat << "," << di_mod << "," << r << "," << t.counts[r]
                    << "\n";
            if (side == Side::second_largest)
                out << di_limit << "," << stat << "_undef," << di_mod << ",0,"
                    << t.undefined_count << "\n";
            std::cout << "wrote " << di_out << "\n";
        } else {
            throw CLI::ValidationError("--stat", "unknown stat " + di_stat);
        }
    });

    // ---- rho ----
    auto* rho_cmd = app.add_subcommand("rho", "Dickman rho table");
    double rh_alpha_max = 16.0;
    std::string rh_step = "2^-10";
    std::string rh_out = "rho.csv";
    bool rh_plain = false;
    rho_cmd->add_option("--alpha-max", rh_alpha_max);
    rho_cmd->add_option("--step", rh_step, "grid step: 2^-k, 1/N, or N (h = 1/N)");
    rho_cmd->add_option("--out", rh_out);
    rho_cmd->add_flag("--plain", rh_plain, "plain trapezoid (no extrapolation)");
    rho_cmd->callback([&] {
        const RhoTable t = build_rho_table(rh_alpha_max, parse_step(rh_step),
                                           rh_plain ? RhoMethod::trapezoid : RhoMethod::richardson);
        std::ofstream out(rh_out);
        if (!out) throw std::runtime_error("cannot open " + rh_out);
        out << "alpha,rho\n";
        for (std::size_t i = 0; i < t.values.size(); ++i)
            out << fmt(static_cast<double>(i) / static_cast<double>(t.inv_h)) << ","
                << fmt(t.values[i]) << "\n";
        std::cout << "wrote " << rh_out << " (" << t.values.size() << " grid points)\n";
    });

    // ---- rho-compare ----
    auto* cmp_cmd = app.add_subcommand("rho-compare", "psi / rho comparison at alphas");
    u64 cp_limit = 1000000;
    std::string cp_alphas = "1.5,2,2.5,3";
    std::string cp_step = "2^-10";
    std::string cp_out = "cmp.csv";
    u64 cp_block = kDefaultBlockSize;
    unsigned cp_workers = 0;
    cmp_cmd->add_option("--limit", cp_limit)->required();
    cmp_cmd->add_option("--alphas", cp_alphas, "comma list of rationals");
    cmp_cmd->add_option("--step", cp_step);
    cmp_cmd->add_option("--out", cp_out);
    cmp_cmd->add_option("--block-size", cp_block);
    cmp_cmd->add_option("--workers", cp_workers);
    cmp_cmd->callback([&] {
        std::vector<Rational> alphas;
        double amax = 2.0;
        for (const std::string& tok : split(cp_alphas, ',')) {
            alphas.push_back(Rational::parse(tok));
            amax = std::max(amax, alphas.back().as_double());
        }
        const RhoTable rho = build_rho_table(amax + 1.0, parse_step(cp_step));
        std::ofstream out(cp_out);
        if (!out) throw std::runtime_error("cannot open " + cp_out);
        out << "alpha,psi_ratio,rho2_alpha_times\n";
        StreamOptions opts{cp_block, cp_workers};
        for (const Rational& a : alphas)
            out << fmt(a.as_double()) << "," << fmt(smooth_ratio(cp_limit, a, rho, opts)) << ","
                << fmt(a.as_double() * rho2_empirical(cp_limit, a, opts)) << "\n";
        std::cout << "wrote " << cp_out << "\n";
    });

    // ---- run ----
    auto* run_cmd = app.add_subcommand("run", "run configured experiments");
    std::string rn_config;
    u64 rn_limit = 0;
    u64 rn_block = 0;
    int rn_workers = -1;
    std::string rn_cps, rn_out_dir, rn_experiments;
    std::vector<std::string> rn_slices;
    u64 rn_id_max_n = 0;
    int rn_id_k_max = -1;
    run_cmd->add_option("--config", rn_config, "JSON config path");
    run_cmd->add_option("--limit", rn_limit);
    run_cmd->add_option("--block-size", rn_block);
    run_cmd->add_option("--workers", rn_workers);
    run_cmd->add_option("--checkpoints", rn_cps);
    run_cmd->add_option("--out-dir", rn_out_dir);
    run_cmd->add_option("--experiments", rn_experiments, "comma list of experiment ids");
    run_cmd->add_option("--slice", rn_slices, "k,l[,side[,coprime]] (repeatable)");
    run_cmd->add_option("--identity-max-n", rn_id_max_n);
    run_cmd->add_option("--identity-k-max", rn_id_k_max);
    run_cmd->callback([&] {
        ExperimentConfig cfg =
            rn_config.empty() ? ExperimentConfig{} : config_from_json_file(rn_config);
        if (rn_limit) cfg.limit = rn_limit;
        if (rn_block) cfg.block_size = rn_block;
        if (rn_workers >= 0) cfg.worker_count = static_cast<unsigned>(rn_workers);
        if (!rn_cps.empty()) cfg.checkpoint_spec = rn_cps;
        if (!rn_out_dir.empty()) cfg.out_dir = rn_out_dir;
        if (!rn_experiments.empty()) cfg.experiments = split(rn_experiments, ',');
        if (rn_id_max_n) cfg.identity_max_n = rn_id_max_n;
        if (rn_id_k_max >= 0) cfg.identity_k_max = rn_id_k_max;
        for (const std::string& s : rn_slices) {
            const auto parts = split(s, ',');
            if (parts.size() < 2) throw CLI::ValidationError("--slice", "want k,l[,side[,coprime]]");
            SliceSpec sl;
            sl.k = std::stoull(parts[0]);
            sl.l = std::stoull(parts[1]);
            if (parts.size() > 2) sl.side = parse_side(parts[2]);
            if (parts.size() > 3) sl.coprime_only = parts[3] == "coprime";
            cfg.slices.push_back(sl);
        }
        const RunResult res = run_experiments(cfg);
        std::cout << "wrote " << res.outputs.size() << " outputs to " << cfg.out_dir << "\n";
        for (const ManifestEntry& e : res.outputs)
            std::cout << "  " << e.file << "  [" << e.op << "]\n";
        if (!res.ok) rc = 1;
    });

    // ---- report ----
    auto* report_cmd = app.add_subcommand("report", "fit convergence rates from a run directory");
    std::string rp_in, rp_out = "report.json";
    report_cmd->add_option("--in", rp_in, "run output directory")->required();
    report_cmd->add_option("--out", rp_out);
    report_cmd->callback([&] {
        write_report(rp_in, rp_out);
        std::cout << "wrote " << rp_out << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
