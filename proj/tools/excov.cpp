// excov: bound evaluation and sweeps, constructions, exhaustive verification,
// exact covers, and Reed-Solomon parity-check commands.
//
// Exit codes: 0 success/verified, 1 verification failure (witness printed),
// 2 usage or budget error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "excov/bounds.hpp"
#include "excov/coding.hpp"
#include "excov/combinat.hpp"
#include "excov/constructions.hpp"
#include "excov/exact.hpp"
#include "excov/setsys.hpp"
#include "excov/sweep.hpp"

namespace {

using namespace excov;

struct Options {
    std::string format = "table";
    std::string out;
    std::uint64_t seed = 1;
    long long budget = 100'000'000;
    bool budget_given = false;

    int n = 0, d = 0, t = 0, s = 0, k = 0, l = 0, j = 0;
    int n_max = 0, threads = 0, max_size = 0;
    double p = 0.0;
    long q = 0;
    bool override_budget = false;
    std::string method, kind, in_path, erased;
};

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string members_str(const setsys::Block& b) {
    std::string s;
    for (int e : b.members()) {
        if (!s.empty()) s += ' ';
        s += std::to_string(e);
    }
    return s;
}

// ---- bounds eval -------------------------------------------------------------------

std::string render_bounds(const bounds::BestBounds& bb, const std::string& format) {
    std::ostringstream os;
    auto emit = [&](const bounds::BoundResult& b, bool is_winner) {
        const char* kind = b.kind == bounds::BoundKind::lower ? "lower" : "upper";
        if (format == "csv") {
            os << bounds::bound_label(b.name) << ',' << kind << ',' << b.value.get_str() << ','
               << b.target << ",\"" << b.params << "\"" << (is_winner ? ",winner" : ",") << '\n';
        } else {
            char line[64];
            std::snprintf(line, sizeof line, "%-22s %-5s %18s  ", bounds::bound_label(b.name).c_str(),
                          kind, b.value.get_str().c_str());
            os << line << b.target;
            if (!b.params.empty()) os << "  [" << b.params << "]";
            if (is_winner) os << "  <- winner";
            os << '\n';
        }
    };
    if (format == "csv") os << "name,kind,value,target,params,winner\n";
    for (const auto& b : bb.lowers) emit(b, false);
    for (const auto& b : bb.uppers) emit(b, b.name == bb.winner);
    if (format != "csv") {
        os << "best lower " << bb.best_lower.get_str() << ", best upper " << bb.best_upper.get_str()
           << " (" << bounds::bound_label(bb.winner) << ")\n";
    }
    return os.str();
}

int cmd_bounds_eval(const Options& opt) {
    if (opt.d < 2 || opt.d > opt.n) throw std::invalid_argument("bounds eval: need 2 <= d <= n");
    if (opt.d <= 5) {
        std::cerr << "warning: d <= 5 is outside the bound tables; computing exact S(" << opt.n
                  << "," << opt.d - 2 << ") instead\n";
        exact::SolveOptions sopts;
        if (opt.budget_given) sopts.budget_bits = opt.budget;
        sopts.override_budget = opt.override_budget;
        exact::ExactResult res = exact::min_se(opt.n, opt.d - 2, sopts);
        write_text(opt.out, res.value.get_str() + "\n");
        return 0;
    }
    bounds::BestBounds bb = bounds::best_bounds(opt.n, opt.d);
    write_text(opt.out, render_bounds(bb, opt.format));
    return 0;
}

int cmd_bounds_sweep(const Options& opt) {
    auto cells = sweep::run_sweep(opt.n_max, opt.threads);
    write_text(opt.out, sweep::sweep_csv(cells));
    return 0;
}

int cmd_report_fig1(const Options& opt) {
    auto cells = sweep::run_sweep(opt.n_max, opt.threads);
    std::string csv_path = opt.out.empty() ? "fig1.csv" : opt.out;
    write_text(csv_path, sweep::fig1_csv(cells));
    std::string script_path = csv_path;
    if (script_path.size() >= 4 && script_path.substr(script_path.size() - 4) == ".csv")
        script_path = script_path.substr(0, script_path.size() - 4) + ".gp";
    else
        script_path += ".gp";
    write_text(script_path, sweep::fig1_plot_script(csv_path));
    std::cerr << "wrote " << csv_path << " and " << script_path << "\n";
    return 0;
}

// ---- construct / verify / exact ------------------------------------------------------

int cmd_construct(const Options& opt) {
    setsys::SetSystem sys;
    if (opt.method == "weighted_partition")
        sys = cons::construct_weighted_partition(opt.n, opt.t, opt.l, opt.j, opt.budget);
    else if (opt.method == "bin_parity")
        sys = cons::construct_bin_parity(opt.n, opt.t, opt.l, opt.j, opt.budget);
    else if (opt.method == "kuzjurin")
        sys = cons::construct_kuzjurin(opt.n, opt.k, opt.budget);
    else if (opt.method == "recurrent")
        sys = cons::construct_recurrent_se(opt.n, opt.t, opt.budget);
    else if (opt.method == "random_greedy")
        sys = cons::construct_random_greedy(opt.n, opt.t, opt.p, opt.seed, opt.budget);
    else
        throw std::invalid_argument("construct: unknown method " + opt.method);
    std::ostringstream os;
    setsys::write_blocks(os, sys);
    write_text(opt.out, os.str());
    return 0;
}

int cmd_verify(const Options& opt) {
    setsys::SetSystem sys = setsys::read_blocks_file(opt.in_path);
    setsys::VerifyResult vr;
    if (opt.kind == "se") {
        vr = setsys::is_se_system(sys, opt.budget);
    } else if (opt.kind == "turan") {
        if (opt.s <= 0) throw std::invalid_argument("verify --kind turan needs --s");
        vr = setsys::is_turan_system(sys, opt.s, opt.budget);
    } else if (opt.kind == "covering") {
        if (opt.s <= 0) throw std::invalid_argument("verify --kind covering needs --s");
        vr = setsys::is_covering_design(sys, opt.s, opt.budget);
    } else {
        throw std::invalid_argument("verify: unknown kind " + opt.kind);
    }
    if (vr.ok) {
        std::cout << "verified\n";
        return 0;
    }
    std::cout << "violation: " << members_str(*vr.witness) << "\n";
    return 1;
}

int cmd_exact(const Options& opt) {
    exact::SolveOptions sopts;
    if (opt.budget_given) sopts.budget_bits = opt.budget;
    sopts.override_budget = opt.override_budget;
    exact::ExactResult res;
    std::string stem;
    if (opt.kind == "se") {
        res = exact::min_se(opt.n, opt.t, sopts);
        stem = "se_" + std::to_string(opt.n) + "_" + std::to_string(opt.t);
    } else if (opt.kind == "turan") {
        res = exact::min_turan(opt.n, opt.s, opt.t, sopts);
        stem = "turan_" + std::to_string(opt.n) + "_" + std::to_string(opt.s) + "_" +
               std::to_string(opt.t);
    } else if (opt.kind == "covering") {
        res = exact::min_covering(opt.n, opt.s, opt.t, sopts);
        stem = "covering_" + std::to_string(opt.n) + "_" + std::to_string(opt.s) + "_" +
               std::to_string(opt.t);
    } else {
        throw std::invalid_argument("exact: unknown kind " + opt.kind);
    }
    std::cout << res.value.get_str() << "\n";
    const std::string path = opt.out.empty() ? stem + ".blocks" : opt.out;
    setsys::write_blocks_file(path, res.witness);
    std::cerr << "witness: " << path << "\n";
    return 0;
}

// ---- code ----------------------------------------------------------------------------

setsys::SetSystem default_se_system(int n, int t, long long budget) {
    if (t == 0) {
        setsys::SetSystem sys;
        sys.n = n;
        sys.t = 0;
        sys.kind = setsys::Kind::se;
        sys.blocks.push_back(setsys::Block{});
        return sys;
    }
    return cons::construct_recurrent_se(n, t, budget);
}

int cmd_code_make_h(const Options& opt) {
    coding::CodeSpec spec = coding::CodeSpec::make(opt.n, opt.d, opt.q);
    setsys::SetSystem sys = opt.in_path.empty() ? default_se_system(opt.n, opt.d - 2, opt.budget)
                                                : setsys::read_blocks_file(opt.in_path);
    coding::ParityCheckMatrix h = coding::build_h_from_se(spec, sys, opt.budget);
    std::ostringstream os;
    coding::write_matrix(os, h);
    write_text(opt.out, os.str());
    return 0;
}

int cmd_code_stopping(const Options& opt) {
    coding::ParityCheckMatrix h = coding::read_matrix_file(opt.in_path);
    std::optional<int> s = coding::stopping_distance(h, opt.max_size, opt.budget);
    if (s)
        std::cout << *s << "\n";
    else
        std::cout << "none\n";
    return 0;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    return out;
}

int cmd_code_decode(const Options& opt) {
    coding::ParityCheckMatrix h = coding::read_matrix_file(opt.in_path);
    setsys::Block erased;
    for (int e : parse_int_list(opt.erased)) {
        if (e < 1 || e > h.n) throw std::invalid_argument("decode: erased position out of range");
        erased.insert(e);
    }
    coding::PeelResult pr = coding::peel_decode(h, erased);
    if (pr.recovered)
        std::cout << "recovered\n";
    else
        std::cout << "stuck: " << members_str(setsys::block_of(pr.residual)) << "\n";
    return 0;
}

int cmd_code_replace_rows(const Options& opt) {
    coding::CodeSpec spec = coding::CodeSpec::make(opt.n, opt.d, opt.q);
    coding::ParityCheckMatrix h = coding::read_matrix_file(opt.in_path);
    coding::ParityCheckMatrix out = coding::replace_nonmin_rows(spec, h);
    std::ostringstream os;
    coding::write_matrix(os, out);
    write_text(opt.out, os.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"single-exclusion systems, covering bounds, and RS parity-check tooling"};
    app.require_subcommand(1);
    Options opt;

    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"table", "csv"}))
        ->capture_default_str();
    app.add_option("--out", opt.out, "output path (default stdout)");
    app.add_option("--seed", opt.seed, "PRNG seed")->capture_default_str();
    auto* budget_opt =
        app.add_option("--budget", opt.budget, "enumeration / solver budget")->capture_default_str();

    auto* bounds_cmd = app.add_subcommand("bounds", "bound evaluation");
    bounds_cmd->require_subcommand(1);
    bounds_cmd->fallthrough();
    auto* eval_cmd = bounds_cmd->add_subcommand("eval", "evaluate every bound at one (n, d)");
    eval_cmd->fallthrough();
    eval_cmd->add_option("--n", opt.n, "code length")->required();
    eval_cmd->add_option("--d", opt.d, "minimum distance")->required();
    auto* sweep_cmd = bounds_cmd->add_subcommand("sweep", "full grid sweep CSV");
    sweep_cmd->fallthrough();
    sweep_cmd->add_option("--n-max", opt.n_max, "largest n (<= 512)")->required();
    sweep_cmd->add_option("--threads", opt.threads, "worker threads (0 = hardware)");

    auto* report_cmd = app.add_subcommand("report", "figure reproduction");
    report_cmd->require_subcommand(1);
    report_cmd->fallthrough();
    auto* fig1_cmd = report_cmd->add_subcommand("fig1", "winner-map CSV + plot script");
    fig1_cmd->fallthrough();
    fig1_cmd->add_option("--n-max", opt.n_max, "largest n (<= 512)")->required();
    fig1_cmd->add_option("--threads", opt.threads, "worker threads (0 = hardware)");

    auto* construct_cmd = app.add_subcommand("construct", "emit a block family");
    construct_cmd->fallthrough();
    construct_cmd
        ->add_option("--method", opt.method,
                     "weighted_partition|bin_parity|kuzjurin|recurrent|random_greedy")
        ->required();
    construct_cmd->add_option("--n", opt.n, "ground-set size")->required();
    construct_cmd->add_option("--t", opt.t, "block size (SE methods)");
    construct_cmd->add_option("--k", opt.k, "block size (kuzjurin)");
    construct_cmd->add_option("--l", opt.l, "partition bins");
    construct_cmd->add_option("--j", opt.j, "residue class");
    construct_cmd->add_option("--p", opt.p, "inclusion probability (random_greedy)");

    auto* verify_cmd = app.add_subcommand("verify", "exhaustively verify a block file");
    verify_cmd->fallthrough();
    verify_cmd->add_option("--kind", opt.kind, "se|turan|covering")->required();
    verify_cmd->add_option("--in", opt.in_path, "block file")->required();
    verify_cmd->add_option("--s", opt.s, "super-set / target size (turan, covering)");

    auto* exact_cmd = app.add_subcommand("exact", "exact optimum by branch and bound");
    exact_cmd->fallthrough();
    exact_cmd->add_option("--kind", opt.kind, "se|turan|covering")->required();
    exact_cmd->add_option("--n", opt.n, "ground-set size")->required();
    exact_cmd->add_option("--t", opt.t, "block / target size")->required();
    exact_cmd->add_option("--s", opt.s, "super-set / block size (turan, covering)");
    exact_cmd->add_flag("--override-budget", opt.override_budget, "allow oversize instances");

    auto* code_cmd = app.add_subcommand("code", "parity-check matrix commands");
    code_cmd->require_subcommand(1);
    code_cmd->fallthrough();
    auto* makeh_cmd = code_cmd->add_subcommand("make-h", "H from an SE system");
    makeh_cmd->fallthrough();
    makeh_cmd->add_option("--n", opt.n, "code length")->required();
    makeh_cmd->add_option("--d", opt.d, "minimum distance")->required();
    makeh_cmd->add_option("--q", opt.q, "prime modulus (0 = smallest prime >= n)");
    makeh_cmd->add_option("--in", opt.in_path, "SE block file (default: recurrent construction)");
    auto* stopping_cmd = code_cmd->add_subcommand("stopping", "exact stopping distance");
    stopping_cmd->fallthrough();
    stopping_cmd->add_option("--in", opt.in_path, "matrix file")->required();
    stopping_cmd->add_option("--max-size", opt.max_size, "largest subset size (0 = n)");
    auto* decode_cmd = code_cmd->add_subcommand("decode", "iterative erasure decoding");
    decode_cmd->fallthrough();
    decode_cmd->add_option("--in", opt.in_path, "matrix file")->required();
    decode_cmd->add_option("--erased", opt.erased, "comma-separated erased positions")->required();
    auto* replace_cmd = code_cmd->add_subcommand("replace-rows", "minimum-weight row replacement");
    replace_cmd->fallthrough();
    replace_cmd->add_option("--n", opt.n, "code length")->required();
    replace_cmd->add_option("--d", opt.d, "minimum distance")->required();
    replace_cmd->add_option("--q", opt.q, "prime modulus (0 = smallest prime >= n)");
    replace_cmd->add_option("--in", opt.in_path, "matrix file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    opt.budget_given = budget_opt->count() > 0;

    try {
        if (eval_cmd->parsed()) return cmd_bounds_eval(opt);
        if (sweep_cmd->parsed()) return cmd_bounds_sweep(opt);
        if (fig1_cmd->parsed()) return cmd_report_fig1(opt);
        if (construct_cmd->parsed()) return cmd_construct(opt);
        if (verify_cmd->parsed()) return cmd_verify(opt);
        if (exact_cmd->parsed()) return cmd_exact(opt);
        if (makeh_cmd->parsed()) return cmd_code_make_h(opt);
        if (stopping_cmd->parsed()) return cmd_code_stopping(opt);
        if (decode_cmd->parsed()) return cmd_code_decode(opt);
        if (replace_cmd->parsed()) return cmd_code_replace_rows(opt);
        std::cerr << "error: missing subcommand\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
