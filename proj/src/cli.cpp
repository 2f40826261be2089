#include "markov_ldp/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "markov_ldp/hamiltonian.hpp"
#include "markov_ldp/montecarlo.hpp"
#include "markov_ldp/rate_function.hpp"
#include "markov_ldp/trajectory.hpp"

namespace ldp {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json number(double v) {
    if (std::isfinite(v)) return v;
    return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

std::string status_name(SolveStatus s) {
    switch (s) {
    case SolveStatus::Attained: return "attained";
    case SolveStatus::BoundaryValue: return "boundary";
    case SolveStatus::Unbounded: return "unbounded";
    }
    return "unknown";
}

Eigen::VectorXd random_potential(Rng& rng, std::size_t n, double bound) {
    Eigen::VectorXd f(static_cast<Eigen::Index>(n));
    for (auto& v : f) v = bound * (2.0 * rng.uniform() - 1.0);
    return f;
}

Measure random_positive_measure(Rng& rng, const StateSpace& space) {
    Eigen::VectorXd p(static_cast<Eigen::Index>(space.size()));
    for (auto& v : p) v = 0.05 + rng.uniform();
    return Measure(space, p / p.sum());
}

struct CheckAccumulator {
    std::vector<CheckRow> rows;

    // observed <= tolerance passes
    void add(std::string name, double observed, double tolerance) {
        const bool pass = observed <= tolerance;
        rows.push_back({std::move(name), observed, tolerance, pass});
    }
};

} // namespace

std::vector<CheckRow> run_check_suite(const Model& model, double t, std::uint64_t seed, const DualOptions& options) {
    const Generator& q = model.generator;
    const StateSpace& space = q.space();
    const std::size_t n = q.size();
    const auto ni = static_cast<Eigen::Index>(n);
    Rng rng(seed);
    CheckAccumulator acc;
    constexpr int kSamples = 20;

    {
        double worst = 0.0;
        for (int i = 0; i < kSamples; ++i) {
            const double a = t * rng.uniform(), b = t * rng.uniform();
            const Eigen::MatrixXd lhs = transition_matrix(q, a + b).matrix();
            const Eigen::MatrixXd rhs = transition_matrix(q, a).matrix() * transition_matrix(q, b).matrix();
            worst = std::max(worst, (lhs - rhs).cwiseAbs().rowwise().sum().maxCoeff());
        }
        acc.add("semigroup law e^{(t+s)Q} = e^{tQ} e^{sQ}", worst, 1e-9);
    }
    {
        const double rate = q.max_exit_rate();
        const double lambda = rate > 0.0 ? 0.5 / rate : 1.0;
        const Eigen::MatrixXd j = resolvent_matrix(q, lambda);
        const Eigen::MatrixXd res = (Eigen::MatrixXd::Identity(ni, ni) - lambda * q.matrix()) * j -
                                    Eigen::MatrixXd::Identity(ni, ni);
        acc.add("resolvent residual (I - lQ) J(l) = I", res.cwiseAbs().maxCoeff(), 1e-10);
    }
    {
        double worst = 0.0;
        for (int i = 0; i < kSamples; ++i) {
            const Measure mu = random_positive_measure(rng, space);
            const Measure out = evolve_law(q, mu, t * rng.uniform());
            worst = std::max({worst, std::abs(out.probs().sum() - 1.0), -out.probs().minCoeff()});
        }
        acc.add("evolved law is a probability vector", worst, 1e-10);
    }
    {
        double worst = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < kSamples; ++i) {
            const Measure a = random_positive_measure(rng, space), b = random_positive_measure(rng, space);
            const double l1 = (a.probs() - b.probs()).cwiseAbs().sum();
            worst = std::max(worst, 0.5 * l1 * l1 - relative_entropy(a, b));
        }
        acc.add("Pinsker: 1/2 |mu - nu|_1^2 <= H(mu | nu)", worst, 0.0);
    }
    {
        double worst_h = 0.0, worst_tilt = 0.0;
        for (int i = 0; i < kSamples; ++i) {
            const Potential f(space, random_potential(rng, n, 2.0));
            const Potential g(space, random_potential(rng, n, 2.0));
            const Potential h1 = apply_hamiltonian(q, f), h2 = apply_hamiltonian_conjugated(q, f);
            worst_h = std::max(worst_h, (h1.values() - h2.values()).cwiseAbs().maxCoeff() / (1.0 + h1.sup_norm()));
            const Potential t1 = apply_generator(tilted_generator(q, g), f);
            const Potential t2 = apply_tilted_conjugated(q, g, f);
            worst_tilt = std::max(worst_tilt,
                                  (t1.values() - t2.values()).cwiseAbs().maxCoeff() / (1.0 + t1.sup_norm()));
        }
        acc.add("H: jump form = e^{-f} A e^{f} (relative)", worst_h, 1e-12);
        acc.add("A^g: tilted rates = conjugation form (relative)", worst_tilt, 1e-12);
    }
    {
        double worst_semi = 0.0, worst_contract = -1.0, worst_dom = -1.0, worst_eq = 0.0, worst_res = -1.0;
        for (int i = 0; i < kSamples; ++i) {
            const Potential f(space, random_potential(rng, n, 2.0));
            const Potential g(space, random_potential(rng, n, 2.0));
            const double a = t * rng.uniform(), b = t * rng.uniform();
            const Potential lhs = v_apply(q, f, a + b), rhs = v_apply(q, v_apply(q, f, b), a);
            worst_semi = std::max(worst_semi, (lhs.values() - rhs.values()).cwiseAbs().maxCoeff());
            const double dv = (v_apply(q, f, a).values() - v_apply(q, g, a).values()).cwiseAbs().maxCoeff();
            worst_contract = std::max(worst_contract, dv - (f.values() - g.values()).cwiseAbs().maxCoeff());
            const Potential hf = apply_hamiltonian(q, f);
            const Eigen::VectorXd dom = apply_generator(tilted_generator(q, g), f).values() - pre_lagrangian(q, g).values();
            worst_dom = std::max(worst_dom, (dom - hf.values()).maxCoeff());
            const Eigen::VectorXd eq = apply_generator(tilted_generator(q, f), f).values() - pre_lagrangian(q, f).values();
            worst_eq = std::max(worst_eq, (eq - hf.values()).cwiseAbs().maxCoeff() / (1.0 + hf.sup_norm()));
            const double lambda = 0.05 + rng.uniform();
            const Potential r = nonlinear_resolvent(q, f, lambda);
            const Eigen::VectorXd lhs_r = r.values() - lambda * apply_hamiltonian(q, r).values();
            worst_res = std::max(worst_res, (f.values() - lhs_r).maxCoeff());
        }
        acc.add("V(t+s) f = V(t) V(s) f", worst_semi, 1e-8);
        acc.add("contraction |V f - V g| <= |f - g|", worst_contract, 1e-10);
        acc.add("Hf >= A^g f - Lg", worst_dom, 1e-10);
        acc.add("Hf = A^f f - Lf (relative)", worst_eq, 1e-12);
        acc.add("(1 - lH) R(l) f >= f", worst_res, 1e-10);
    }
    {
        const Potential f(space, random_potential(rng, n, 1.0));
        const Eigen::VectorXd hf = apply_hamiltonian(q, f).values();
        const double e3 = ((v_apply(q, f, 1e-3).values() - f.values()) / 1e-3 - hf).cwiseAbs().maxCoeff();
        const double e4 = ((v_apply(q, f, 1e-4).values() - f.values()) / 1e-4 - hf).cwiseAbs().maxCoeff();
        // First order: shrinking h tenfold shrinks the error about tenfold.
        const double ratio = e3 > 1e-12 ? e4 / e3 : 0.0;
        acc.add("(V(h) f - f)/h -> Hf at first order (error ratio 1e-4 vs 1e-3)", ratio, 0.2);
    }
    if (q.max_exit_rate() > 0.0) {
        const double radius = barrel_radius(q);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const Potential g(space, random_potential(rng, n, radius));
            worst = std::max(worst, apply_hamiltonian(q, g).sup_norm());
        }
        acc.add("barrel: |g| <= radius implies |Hg| <= 1", worst, 1.0 + 1e-12);
    }
    {
        double worst_dual = 0.0, worst_young = -1.0, worst_l = 0.0, worst_zero = 0.0;
        for (int i = 0; i < kSamples; ++i) {
            const Measure mu = random_positive_measure(rng, space);
            const Potential f(space, random_potential(rng, n, 2.0));
            const Potential g(space, random_potential(rng, n, 2.0));
            worst_dual = std::max(worst_dual, dual_check(q, mu, f, options));
            const Speed u = speed(q, mu, g);
            const LagrangianResult l = lagrangian_value(q, mu, u, options);
            worst_young = std::max(worst_young, inner(f, u) - inner(apply_hamiltonian(q, f), mu) - l.value);
            worst_l = std::max(worst_l, std::abs(l.value - inner(pre_lagrangian(q, g), mu)));
            worst_zero = std::max(worst_zero, std::abs(lagrangian_value(q, mu, forward_speed(q, mu), options).value));
        }
        acc.add("duality residual <Hf,mu> = <f,rho> - L(mu,rho)", worst_dual, 1e-6);
        acc.add("Young: <f,u> <= <Hf,mu> + L(mu,u)", worst_young, 1e-8);
        acc.add("L(mu, rho(mu,g)) = <Lg, mu>", worst_l, 1e-6);
        acc.add("L(mu, Q'mu) = 0", worst_zero, 1e-9);
    }
    {
        const Measure mu = random_positive_measure(rng, space);
        const RateResult r = conditional_rate(q, mu, evolve_law(q, mu, t), t, options);
        acc.add("I_t(S(t)'mu | mu) = 0", std::abs(r.value), 1e-9);
        const PathGrid path = zero_cost_path(q, mu, t, 200);
        acc.add("zero-cost path action (K = 200)", path_action(q, path, options).value, 1e-6);
    }
    {
        const Measure mu = random_positive_measure(rng, space);
        const Potential f(space, random_potential(rng, n, 1.0));
        TrajectoryOptions topts;
        topts.dual = options;
        acc.add("entropy decomposition residual (K = 1000)", entropy_identity_check(q, mu, f, t, 1000, topts), 1e-3);
    }
    return acc.rows;
}

// ---------------------------------------------------------------------------

namespace {

struct CommonArgs {
    std::string model_path;
    std::string out_dir = ".";
    double tol = 1e-9;
    int max_iters = 200;
    double divergence_norm = 50.0;
};

DualOptions dual_options(const CommonArgs& c) {
    DualOptions o;
    o.gradient_tol = c.tol;
    o.max_iters = c.max_iters;
    o.divergence_norm = c.divergence_norm;
    return o;
}

Measure measure_arg(const std::vector<double>& v, const StateSpace& space, const std::string& flag) {
    if (v.size() != space.size()) {
        throw LdpError(ErrorKind::MalformedModel, flag + " needs " + std::to_string(space.size()) + " entries");
    }
    return Measure(space, Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
}

Potential potential_arg(const std::vector<double>& v, const StateSpace& space) {
    if (v.empty()) {
        Eigen::VectorXd f(static_cast<Eigen::Index>(space.size()));
        for (Eigen::Index i = 0; i < f.size(); ++i) f(i) = static_cast<double>(i);
        return Potential(space, f);
    }
    if (v.size() != space.size()) {
        throw LdpError(ErrorKind::MalformedModel, "--f needs " + std::to_string(space.size()) + " entries");
    }
    return Potential(space, Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
}

json measure_json(const Measure& m) {
    return std::vector<double>(m.probs().data(), m.probs().data() + m.probs().size());
}

json potential_json(const Potential& p) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < p.values().size(); ++i) arr.push_back(number(p.values()(i)));
    return arr;
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidRate:
    case ErrorKind::MalformedModel:
        return 3;
    case ErrorKind::InvalidTime:
    case ErrorKind::InvalidParameter:
    case ErrorKind::InfeasibleSpeed:
    case ErrorKind::DegenerateModel:
        return 2;
    default:
        return 4;
    }
}

} // namespace

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Large-deviation toolkit for finite-state continuous-time Markov chains", "markov-ldp"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    CommonArgs common;
    double t = 1.0;
    std::size_t grid = 1000;
    std::optional<std::uint64_t> seed;
    std::vector<double> n_list;
    std::size_t reps = 2000;
    double radius = 0.05;
    std::vector<double> from, to, f_values, target;
    std::string path_file;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--model", common.model_path, "Model JSON file")->required();
        sub->add_option("--out", common.out_dir, "Output directory for reports and data files")->capture_default_str();
        sub->add_option("--tol", common.tol, "Dual solver gradient tolerance")->capture_default_str();
        sub->add_option("--max-iters", common.max_iters, "Dual solver iteration cap")->capture_default_str();
        sub->add_option("--divergence-norm", common.divergence_norm, "Dual solver divergence norm")
            ->capture_default_str();
    };

    auto* check = app.add_subcommand("check", "Run the invariant suites on a model");
    add_common(check);
    check->add_option("--t", t, "Time horizon used by the checks")->capture_default_str();
    check->add_option("--seed", seed, "Seed for the randomized cases (default 1)");

    auto* semigroup = app.add_subcommand("semigroup", "Compare R(1/n)^{floor(nt)} f with V(t) f");
    add_common(semigroup);
    semigroup->add_option("--t", t, "Time")->capture_default_str();
    semigroup->add_option("--n", n_list, "Comma-separated resolvent orders (default 8,64,512)")->delimiter(',');
    semigroup->add_option("--f", f_values, "Comma-separated potential (default 0,1,2,...)")->delimiter(',');

    auto* rate = app.add_subcommand("rate", "Conditional rate I_t(to | from)");
    add_common(rate);
    rate->add_option("--t", t, "Time")->capture_default_str();
    rate->add_option("--from", from, "Initial law (default: model initial)")->delimiter(',');
    rate->add_option("--to", to, "Target law")->delimiter(',')->required();

    auto* bridge = app.add_subcommand("bridge", "Optimal Doob bridge between two laws; writes bridge.csv");
    add_common(bridge);
    bridge->add_option("--t", t, "Time")->capture_default_str();
    bridge->add_option("--grid", grid, "Number of time intervals")->capture_default_str();
    bridge->add_option("--from", from, "Initial law (default: model initial)")->delimiter(',');
    bridge->add_option("--to", to, "Target law (default: evolved initial law)")->delimiter(',');

    auto* action = app.add_subcommand("action", "Path action of a CSV path");
    add_common(action);
    action->add_option("--path", path_file, "Path CSV file")->required();

    auto* simulate = app.add_subcommand("simulate", "Empirical measure trajectory of n copies; writes simulate.csv");
    add_common(simulate);
    simulate->add_option("--t", t, "Horizon")->capture_default_str();
    simulate->add_option("--grid", grid, "Number of time intervals")->capture_default_str();
    simulate->add_option("--n", n_list, "Number of copies")->delimiter(',')->required();
    simulate->add_option("--seed", seed, "Random seed")->required();

    auto* verify = app.add_subcommand("verify-ldp", "Monte Carlo decay rate of an l1-ball event; writes decay.json");
    add_common(verify);
    verify->add_option("--t", t, "Observation time")->capture_default_str();
    verify->add_option("--radius", radius, "l1 radius of the event")->capture_default_str();
    verify->add_option("--n", n_list, "Comma-separated copy counts (default 50,100,200,400)")->delimiter(',');
    verify->add_option("--reps", reps, "Replicas per copy count")->capture_default_str();
    verify->add_option("--target", target, "Event centre (default: model initial)")->delimiter(',');
    verify->add_option("--seed", seed, "Random seed")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    const auto started = std::chrono::steady_clock::now();

    try {
        const std::string model_text = read_text_file(common.model_path);
        const Model model = parse_model(model_text, common.model_path);
        for (const auto& w : model.warnings) err << "warning: " << w << "\n";
        const Generator& q = model.generator;
        const StateSpace& space = q.space();
        const DualOptions opts = dual_options(common);
        const fs::path out_dir(common.out_dir);
        fs::create_directories(out_dir);

        RunReport report;
        report.command = command;
        report.arguments = args;
        std::string digest_input = model_text;
        for (const auto& a : args) digest_input += '\0' + a;
        report.seed = seed;
        int code = 0;
        json& o = report.outputs;

        if (command == "check") {
            const auto rows = run_check_suite(model, t, seed.value_or(1), opts);
            out << std::left << std::setw(64) << "invariant" << std::setw(14) << "observed" << std::setw(12)
                << "tolerance" << "result\n";
            o["checks"] = json::array();
            for (const auto& r : rows) {
                out << std::left << std::setw(64) << r.name << std::setw(14) << std::setprecision(4) << r.observed
                    << std::setw(12) << r.tolerance << (r.pass ? "PASS" : "FAIL") << "\n";
                o["checks"].push_back({{"name", r.name},
                                       {"observed", number(r.observed)},
                                       {"tolerance", r.tolerance},
                                       {"pass", r.pass}});
                if (!r.pass) code = 1;
            }
            o["all_pass"] = code == 0;
        } else if (command == "semigroup") {
            const Potential f = potential_arg(f_values, space);
            std::vector<double> orders = n_list.empty() ? std::vector<double>{8, 64, 512} : n_list;
            const Potential exact = v_apply(q, f, t);
            out << std::left << std::setw(10) << "n" << std::setw(10) << "steps" << "sup error\n";
            o["rows"] = json::array();
            for (double nd : orders) {
                const int nn = static_cast<int>(nd);
                const Potential approx = resolvent_iterate(q, f, t, nn);
                const double e = (approx.values() - exact.values()).cwiseAbs().maxCoeff();
                const long steps = static_cast<long>(std::floor(nn * t + 1e-12));
                out << std::left << std::setw(10) << nn << std::setw(10) << steps << std::setprecision(6) << e << "\n";
                o["rows"].push_back({{"n", nn}, {"steps", steps}, {"sup_error", e}});
            }
            o["v_t_f"] = potential_json(exact);
        } else if (command == "rate") {
            const Measure mu = from.empty() ? model.initial : measure_arg(from, space, "--from");
            const Measure nu = measure_arg(to, space, "--to");
            const RateResult r = conditional_rate(q, mu, nu, t, opts);
            out << "I_t(to | from) = " << std::setprecision(12) << r.value << " (" << status_name(r.status) << ")\n";
            o["value"] = number(r.value);
            o["status"] = status_name(r.status);
            o["iterations"] = r.iterations;
            o["maximizer"] = r.maximizer ? potential_json(*r.maximizer) : json(nullptr);
        } else if (command == "bridge") {
            const Measure mu = from.empty() ? model.initial : measure_arg(from, space, "--from");
            const Measure nu = to.empty() ? evolve_law(q, mu, t) : measure_arg(to, space, "--to");
            BridgeOptions bopts;
            bopts.trajectory.dual = opts;
            const BridgeResult b = optimal_bridge(q, mu, nu, t, grid, bopts);
            const fs::path csv = out_dir / "bridge.csv";
            write_path_csv(csv, b.doob.path, &b.doob.action.cell_actions);
            if (!b.warning.empty()) err << "warning: " << b.warning << "\n";
            const double miss = (b.doob.path.back().probs() - nu.probs()).cwiseAbs().sum();
            out << "rate   = " << std::setprecision(12) << b.rate << "\naction = " << b.doob.action.value
                << "\n|gamma(t) - target|_1 = " << miss << "\nwrote " << csv.string() << "\n";
            o["from"] = measure_json(mu);
            o["to"] = measure_json(nu);
            o["rate"] = number(b.rate);
            o["action"] = number(b.doob.action.value);
            o["endpoint_error_l1"] = miss;
            o["status"] = b.status == BridgeStatus::Exact ? "exact" : "boundary";
            o["gap_estimate"] = number(b.gap_estimate);
            o["path_csv"] = csv.string();
        } else if (command == "action") {
            const PathGrid path = read_path_csv(path_file, space);
            digest_input += '\0' + read_text_file(path_file);
            const ActionResult a = path_action(q, path, opts);
            out << "action = " << std::setprecision(17) << a.value << "\n";
            o["action"] = number(a.value);
            o["first_infinite_cell"] = a.first_infinite_cell ? json(*a.first_infinite_cell) : json(nullptr);
        } else if (command == "simulate") {
            const auto copies = static_cast<std::size_t>(n_list.front());
            const PathGrid path = empirical_trajectory(q, model.initial, copies, GridShape{0.0, t, grid}, *seed);
            const fs::path csv = out_dir / "simulate.csv";
            write_path_csv(csv, path);
            const double lln = (path.back().probs() - evolve_law(q, model.initial, t).probs()).cwiseAbs().sum();
            out << "wrote " << csv.string() << "\n|L_n(t) - law(t)|_1 = " << lln << "\n";
            o["copies"] = copies;
            o["path_csv"] = csv.string();
            o["final_l1_to_law"] = lln;
        } else if (command == "verify-ldp") {
            std::vector<std::size_t> ns;
            for (double v : n_list.empty() ? std::vector<double>{50, 100, 200, 400} : n_list) {
                ns.push_back(static_cast<std::size_t>(v));
            }
            const Measure centre = target.empty() ? model.initial : measure_arg(target, space, "--target");
            const BallEvent event{centre, t, radius};
            const double predicted = ball_rate(q, model.initial, event, opts);
            const fs::path decay_path = out_dir / "decay.json";
            json decay;
            auto fill = [&](const DecayEstimate& d) {
                decay["n_values"] = d.n_values;
                json lp = json::array();
                for (double v : d.log_probs) lp.push_back(number(v));
                decay["log_probs"] = lp;
                json ls = json::array();
                for (double v : d.log_sigmas) ls.push_back(number(v));
                decay["log_sigmas"] = ls;
                decay["hits"] = d.hits;
                decay["reps"] = d.reps;
                decay["ball_rate"] = number(predicted);
            };
            try {
                const DecayEstimate d = estimate_event_decay(q, model.initial, event, ns, reps, *seed);
                fill(d);
                decay["slope"] = d.slope;
                decay["intercept"] = d.intercept;
                decay["stderr"] = d.slope_stderr;
                decay["status"] = "ok";
                out << "slope = " << std::setprecision(6) << d.slope << " +- " << d.slope_stderr
                    << "\nball-corrected rate = " << predicted << "\n";
            } catch (const InsufficientSamplingError& e) {
                fill(e.partial());
                decay["slope"] = nullptr;
                decay["stderr"] = nullptr;
                decay["status"] = "insufficient_sampling";
                err << "error: " << e.what() << "\n";
                code = 1;
            }
            std::ofstream(decay_path, std::ios::binary) << decay.dump(2) << "\n";
            out << "wrote " << decay_path.string() << "\n";
            o = decay;
            o["decay_json"] = decay_path.string();
        }

        report.inputs_digest = fnv1a_hex(digest_input);
        report.wall_time_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        save_report(out_dir / (command + "_report.json"), report);
        return code;
    } catch (const ModelFileError& e) {
        err << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const LdpError& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    }
}

int execute(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return execute(args, std::cout, std::cerr);
}

} // namespace ldp
