// mveu: decision-analysis CLI over the mean-variance / expected-utility
// library. Subcommands: borch, curves, dominate, frontier, capm, mixture,
// chipman. JSON in (file, inline handled by '-' for stdin), JSON or CSV out.
//
// Exit codes: 0 success, 1 domain/precondition/input error (machine-readable
// JSON on stderr), 2 usage error.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "mveu/borch.hpp"
#include "mveu/capm.hpp"
#include "mveu/dominance.hpp"
#include "mveu/frontier.hpp"
#include "mveu/indifference.hpp"
#include "mveu/json_io.hpp"

namespace {

using nlohmann::json;

double verify_tol() {
    if (const char* env = std::getenv("MVEU_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && v > 0.0) return v;
        throw mveu::domain_error("MVEU_TOL must be a positive number");
    }
    return mveu::kVerifyTol;
}

// 17 significant digits: enough for exact double round-trips.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Input problems (unreadable file, malformed JSON) are reported with the
// "input_error" code; the JSON parse error message carries the position.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json read_input(const std::string& input) {
    try {
        if (input == "-") return json::parse(std::cin);
        std::ifstream f(input);
        if (!f) throw input_error("cannot open input file: " + input);
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw input_error(std::string("malformed JSON: ") + e.what());
    }
}

void write_output(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(path);
    if (!f) throw mveu::domain_error("cannot open output file: " + path);
    f << payload;
}

std::string points_to_csv(const std::vector<mveu::MomentPair>& pts) {
    std::string out = "sigma,mu\n";
    for (const auto& p : pts) out += fmt(p.sigma) + "," + fmt(p.mu) + "\n";
    return out;
}

json points_to_json(const std::vector<mveu::MomentPair>& pts) {
    json arr = json::array();
    for (const auto& p : pts) arr.push_back({{"sigma", p.sigma}, {"mu", p.mu}});
    return arr;
}

const char* relation_name(mveu::Relation r) {
    switch (r) {
        case mveu::Relation::strict_dominance: return "strict";
        case mveu::Relation::weak_dominance: return "weak";
        default: return "none";
    }
}

struct CommonOpts {
    std::string input = "-";
    std::string output;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_input = true) {
    if (with_input)
        cmd->add_option("--input", o.input, "input file path, or - for standard input");
    cmd->add_option("--output", o.output, "output file path (default: standard output)");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
}

int run_borch(double mu1, double var1, double mu2, double var2, const std::string& branch,
              const CommonOpts& opts) {
    const mveu::MomentPair m1{mu1, std::sqrt(var1)};
    const mveu::MomentPair m2{mu2, std::sqrt(var2)};
    const auto b = branch == "secondary" ? mveu::BorchBranch::secondary
                                         : mveu::BorchBranch::primary;
    const auto c = mveu::construct(m1, m2, b, verify_tol());
    const auto verdict = mveu::paradox_verdict(c);
    if (opts.format == "csv") {
        write_output(opts.output, "x,p,y1,y2\n" + fmt(c.asset1.x) + "," + fmt(c.asset1.p) +
                                      "," + fmt(c.asset1.y) + "," + fmt(c.asset2.y) + "\n");
        return 0;
    }
    json out = {
        {"branch", branch},
        {"x", c.asset1.x},
        {"p", c.asset1.p},
        {"y1", c.asset1.y},
        {"y2", c.asset2.y},
        {"targets", {mveu::to_json(m1), mveu::to_json(m2)}},
        {"asset1", mveu::to_json(c.asset1.to_discrete())},
        {"asset2", mveu::to_json(c.asset2.to_discrete())},
        {"indifference_residual", mveu::indifference_residual(m1, m2)},
        {"verdict",
         {{"indifference_possible", verdict.indifference_possible},
          {"dominant", verdict.dominant},
          {"fsd_confirmed", verdict.fsd_confirmed},
          {"detail", verdict.detail}}},
    };
    write_output(opts.output, out.dump(2) + "\n");
    return 0;
}

int run_curves(const std::string& kind, double mu0, double sigma1, double mu1, double a,
               double eu_level, double kappa, double level, double sigma_max, int n,
               const CommonOpts& opts) {
    std::vector<mveu::MomentPair> pts;
    if (kind == "buridan") {
        pts = mveu::buridan_circle_points(mveu::buridan_circle(mu0, {mu1, sigma1}), n);
    } else if (kind == "quadratic") {
        pts = mveu::quadratic_circle_points(a, eu_level, n);
    } else if (kind == "cara") {
        pts = mveu::cara_parabola_points(kappa, level, sigma_max, n);
    } else {
        throw mveu::domain_error("curves: unknown kind \"" + kind + "\"");
    }
    if (opts.format == "csv")
        write_output(opts.output, points_to_csv(pts));
    else
        write_output(opts.output, points_to_json(pts).dump(2) + "\n");
    return 0;
}

int run_dominate(const CommonOpts& opts) {
    const json in = read_input(opts.input);
    if (!in.is_array() || in.empty())
        throw mveu::domain_error("dominate: input must be a nonempty JSON array of assets");
    std::vector<mveu::DiscreteAsset> assets;
    for (const auto& j : in) assets.push_back(mveu::discrete_asset_from_json(j));
    json fsd_matrix = json::array(), ssd_matrix = json::array();
    for (const auto& a : assets) {
        json frow = json::array(), srow = json::array();
        for (const auto& b : assets) {
            frow.push_back(relation_name(mveu::fsd(a, b).relation));
            srow.push_back(relation_name(mveu::ssd(a, b).relation));
        }
        fsd_matrix.push_back(frow);
        ssd_matrix.push_back(srow);
    }
    json out = {{"assets", assets.size()},
                {"fsd", fsd_matrix},
                {"ssd", ssd_matrix},
                {"survivors", mveu::fsd_filter(assets)}};
    write_output(opts.output, out.dump(2) + "\n");
    return 0;
}

int run_frontier(double mu_min, double mu_max, int n, bool have_range, const CommonOpts& opts) {
    const json in = read_input(opts.input);
    const mveu::AssetUniverse u = mveu::asset_universe_from_json(in);
    if (!have_range) {
        mu_min = u.means().minCoeff();
        mu_max = u.means().maxCoeff();
    }
    std::vector<double> grid;
    for (int k = 0; k < n; ++k)
        grid.push_back(n == 1 ? mu_min : mu_min + (mu_max - mu_min) * k / (n - 1));
    const auto samples = mveu::frontier_sample(u, grid);
    if (opts.format == "csv") {
        std::string out = "mu,sigma";
        for (Eigen::Index j = 0; j < u.size(); ++j) out += ",w_" + std::to_string(j + 1);
        out += "\n";
        for (const auto& p : samples) {
            out += fmt(p.moments.mu) + "," + fmt(p.moments.sigma);
            for (Eigen::Index j = 0; j < u.size(); ++j) out += "," + fmt(p.weights[j]);
            out += "\n";
        }
        write_output(opts.output, out);
    } else {
        json arr = json::array();
        for (const auto& p : samples)
            arr.push_back({{"mu", p.moments.mu},
                           {"sigma", p.moments.sigma},
                           {"weights", mveu::to_json(p.weights)}});
        write_output(opts.output, arr.dump(2) + "\n");
    }
    return 0;
}

int run_capm(const CommonOpts& opts) {
    const json in = read_input(opts.input);
    const mveu::MarketModel m = mveu::market_model_from_json(in);
    const Eigen::VectorXd prices = mveu::capm_prices(m);
    const auto round_trip = mveu::capm_round_trip(m, prices);
    json betas = json::array();
    for (Eigen::Index j = 0; j < m.size(); ++j)
        betas.push_back(mveu::beta(m.value_cov(), j).value);
    json out = {{"prices", mveu::to_json(prices)},
                {"betas", betas},
                {"residuals", round_trip.residuals},
                {"max_residual", round_trip.max_residual}};
    write_output(opts.output, out.dump(2) + "\n");
    return 0;
}

int run_mixture(double alpha, const CommonOpts& opts) {
    const json in = read_input(opts.input);
    const auto a = mveu::discrete_asset_from_json(in.at("a"));
    const auto b = mveu::discrete_asset_from_json(in.at("b"));
    if (in.contains("alpha")) alpha = in["alpha"].get<double>();
    const auto mixed = mveu::mixture(a, b, alpha);
    const auto m = mveu::moments(mixed);
    if (opts.format == "csv") {
        std::string out = "x,p\n";
        for (const auto& o : mixed.outcomes())
            out += fmt(o.payoff) + "," + fmt(o.probability) + "\n";
        write_output(opts.output, out);
        return 0;
    }
    json out = mveu::to_json(mixed);
    out["moments"] = mveu::to_json(m);
    out["alpha"] = alpha;
    write_output(opts.output, out.dump(2) + "\n");
    return 0;
}

int run_chipman(const std::string& merit, double a, double kappa, double sigma_min,
                double sigma_max, double mu_min, double mu_max, int n, double h,
                const CommonOpts& opts) {
    mveu::MeritFunction V;
    if (merit == "quadratic")
        V = mveu::quadratic_merit(a);
    else if (merit == "cara")
        V = mveu::cara_normal_merit(kappa);
    else if (merit == "mu-minus-sigma")
        V = {[](double s, double m) { return m - s; }, "mu - sigma"};
    else
        throw mveu::domain_error("chipman: unknown merit \"" + merit + "\"");
    std::string csv = "sigma,mu,residual\n";
    json arr = json::array();
    for (int i = 0; i < n; ++i) {
        const double sigma =
            n == 1 ? sigma_min : sigma_min + (sigma_max - sigma_min) * i / (n - 1);
        for (int j = 0; j < n; ++j) {
            const double mu = n == 1 ? mu_min : mu_min + (mu_max - mu_min) * j / (n - 1);
            const double step = h > 0.0 ? h : mveu::chipman_default_step(sigma, mu);
            const double res = mveu::chipman_residual(V, sigma, mu, step);
            if (opts.format == "csv")
                csv += fmt(sigma) + "," + fmt(mu) + "," + fmt(res) + "\n";
            else
                arr.push_back({{"sigma", sigma}, {"mu", mu}, {"residual", res}});
        }
    }
    write_output(opts.output, opts.format == "csv" ? csv : arr.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mean-variance / expected-utility decision-analysis toolkit"};
    app.require_subcommand(1);

    // borch
    auto* borch = app.add_subcommand("borch", "two-point counterexample construction");
    double mu1 = 0, var1 = 0, mu2 = 0, var2 = 0;
    std::string branch = "primary";
    CommonOpts borch_opts;
    borch->add_option("--mu1", mu1)->required();
    borch->add_option("--var1", var1, "variance of target 1")->required();
    borch->add_option("--mu2", mu2)->required();
    borch->add_option("--var2", var2, "variance of target 2")->required();
    borch->add_option("--branch", branch)->check(CLI::IsMember({"primary", "secondary"}));
    add_common(borch, borch_opts, false);

    // curves
    auto* curves = app.add_subcommand("curves", "indifference curve samplers");
    std::string kind = "buridan";
    double mu0 = 0, sigma1 = 1, cmu1 = 1, qa = 1, eu_level = 0, kappa = 1, level = 0,
           sigma_max = 10;
    int cn = 256;
    CommonOpts curve_opts;
    curves->add_option("--kind", kind, "buridan|quadratic|cara")->required();
    curves->add_option("--mu0", mu0, "risk-free merit anchor (buridan)");
    curves->add_option("--sigma1", sigma1, "anchor sigma (buridan)");
    curves->add_option("--mu1", cmu1, "anchor mu (buridan)");
    curves->add_option("--a", qa, "quadratic satiation parameter");
    curves->add_option("--eu-level", eu_level, "quadratic EU level");
    curves->add_option("--kappa", kappa, "CARA risk aversion");
    curves->add_option("--level", level, "CARA certainty-equivalent level");
    curves->add_option("--sigma-max", sigma_max, "CARA sampling range");
    curves->add_option("--n", cn, "number of sampled points");
    add_common(curves, curve_opts, false);

    // dominate
    auto* dominate = app.add_subcommand("dominate", "FSD/SSD verdicts and FSD filter");
    CommonOpts dom_opts;
    add_common(dominate, dom_opts);

    // frontier
    auto* frontier = app.add_subcommand("frontier", "Markowitz efficient frontier");
    double mu_min = 0, mu_max = 0;
    int fn = 33;
    CommonOpts frontier_opts;
    frontier_opts.format = "csv";
    auto* fmin = frontier->add_option("--mu-min", mu_min, "grid lower bound");
    auto* fmax = frontier->add_option("--mu-max", mu_max, "grid upper bound");
    frontier->add_option("--n", fn, "grid size");
    add_common(frontier, frontier_opts);

    // capm
    auto* capm = app.add_subcommand("capm", "price-form CAPM with round-trip check");
    CommonOpts capm_opts;
    add_common(capm, capm_opts);

    // mixture
    auto* mix = app.add_subcommand("mixture", "probability mixture of two assets");
    double alpha = 0.5;
    CommonOpts mix_opts;
    mix->add_option("--alpha", alpha, "weight on asset a");
    add_common(mix, mix_opts);

    // chipman
    auto* chipman = app.add_subcommand("chipman", "PDE residual sweep");
    std::string merit = "quadratic";
    double ca = 20, ckappa = 1, smin = 1, smax = 10, mmin = 0, mmax = 10, ch = 0;
    int chn = 20;
    CommonOpts chip_opts;
    chipman->add_option("--merit", merit, "quadratic|cara|mu-minus-sigma");
    chipman->add_option("--a", ca);
    chipman->add_option("--kappa", ckappa);
    chipman->add_option("--sigma-min", smin);
    chipman->add_option("--sigma-max", smax);
    chipman->add_option("--mu-min", mmin);
    chipman->add_option("--mu-max", mmax);
    chipman->add_option("--n", chn, "grid points per axis");
    chipman->add_option("--step", ch, "finite-difference step (0: automatic)");
    add_common(chipman, chip_opts, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        nlohmann::json err = {{"error", "usage_error"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        std::cerr << app.help() << "\n";
        return 2;
    }

    try {
        if (*borch) return run_borch(mu1, var1, mu2, var2, branch, borch_opts);
        if (*curves)
            return run_curves(kind, mu0, sigma1, cmu1, qa, eu_level, kappa, level, sigma_max,
                              cn, curve_opts);
        if (*dominate) return run_dominate(dom_opts);
        if (*frontier)
            return run_frontier(mu_min, mu_max, fn, fmin->count() > 0 && fmax->count() > 0,
                                frontier_opts);
        if (*capm) return run_capm(capm_opts);
        if (*mix) return run_mixture(alpha, mix_opts);
        if (*chipman)
            return run_chipman(merit, ca, ckappa, smin, smax, mmin, mmax, chn, ch, chip_opts);
    } catch (const mveu::error& e) {
        const char* code = "domain_error";
        if (dynamic_cast<const mveu::precondition_error*>(&e)) code = "precondition_error";
        if (dynamic_cast<const mveu::numeric_error*>(&e)) code = "numeric_error";
        nlohmann::json err = {{"error", code}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        nlohmann::json err = {{"error", "input_error"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 2;
}
