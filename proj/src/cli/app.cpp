#include "circjoin/cli/app.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "circjoin/cli/document.hpp"
#include "circjoin/cli/report.hpp"
#include "circjoin/graphs.hpp"
#include "circjoin/kuramoto.hpp"

namespace circjoin::cli {

namespace {

std::string read_source(const std::string& name, std::istream& in) {
    if (name.empty() || name == "-") {
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }
    std::ifstream file(name, std::ios::binary);
    if (!file) throw PreconditionError("cannot open " + name);
    return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

std::size_t parse_count(const std::string& text, const std::string& what) {
    std::size_t pos = 0;
    unsigned long long value = 0;
    try {
        value = std::stoull(text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != text.size() || text.empty() || text[0] == '-') {
        throw ParseError("invalid " + what + " '" + text + "'", 0, 0);
    }
    return static_cast<std::size_t>(value);
}

std::vector<std::string> split(const std::string& text, char sep, std::size_t max_parts) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (parts.size() + 1 < max_parts) {
        const auto pos = text.find(sep, start);
        if (pos == std::string::npos) break;
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    parts.push_back(text.substr(start));
    return parts;
}

// complete:N | cycle:K | ring:K:M | circ:c0,c1,... | complement:PART
graphs::CirculantGraph parse_part(const std::string& spec) {
    const auto parts = split(spec, ':', 2);
    const std::string& kind = parts[0];
    const std::string rest = parts.size() > 1 ? parts[1] : "";
    if (kind == "complement") {
        if (rest.empty()) throw ParseError("complement needs a graph, e.g. complement:cycle:5", 0, 0);
        return graphs::complement(parse_part(rest));
    }
    if (kind == "complete") return graphs::complete_graph(parse_count(rest, "vertex count"));
    if (kind == "cycle") return graphs::directed_cycle(parse_count(rest, "cycle length"));
    if (kind == "ring") {
        const auto km = split(rest, ':', 2);
        if (km.size() != 2) throw ParseError("ring graph is written ring:K:M", 0, 0);
        return graphs::ring_graph(parse_count(km[0], "vertex count"), parse_count(km[1], "neighbour count"));
    }
    if (kind == "circ") {
        std::vector<int> c;
        for (const auto& v : split(rest, ',', std::string::npos)) c.push_back(static_cast<int>(parse_count(v, "entry")));
        bool palindromic = true;
        for (std::size_t j = 1; j < c.size(); ++j) palindromic = palindromic && c[j] == c[c.size() - j];
        return graphs::CirculantGraph(std::move(c), !palindromic);
    }
    throw ParseError("unknown graph '" + spec + "'", 0, 0);
}

struct SpectrumFlags {
    bool eigenvectors = false;
    bool verify = false;
    std::string output = "json";
    double residual_tol = 1e-8;
    double cluster_tol = 1e-7;
    double null_tol = 1e-8;
    double independence_tol = 1e-6;
    std::size_t dense_cap = kDefaultDenseCap;

    void attach(CLI::App* app) {
        app->add_flag("--eigenvectors", eigenvectors, "Include the generalised eigenbasis");
        app->add_flag("--verify", verify, "Check every eigenpair against the dense matrix");
        app->add_option("--output", output, "Output format")->check(CLI::IsMember({"json", "csv"}));
        app->add_option("--residual-tol", residual_tol, "Relative residual bound for --verify");
        app->add_option("--cluster-tol", cluster_tol, "Relative eigenvalue clustering threshold");
        app->add_option("--null-tol", null_tol, "Relative singular value threshold for null spaces");
        app->add_option("--independence-tol", independence_tol, "Minimum singular value of chain vectors");
        app->add_option("--dense-cap", dense_cap, "Largest dense expansion allowed");
    }

    SpectrumOptions options() const {
        SpectrumOptions o;
        o.eigenvectors = eigenvectors;
        o.verify = verify;
        o.residual_tol = residual_tol;
        o.dense_cap = dense_cap;
        o.spectral.dense.cluster_tol = cluster_tol;
        o.spectral.dense.null_tol = null_tol;
        o.spectral.dense.independence_tol = independence_tol;
        return o;
    }
};

void emit_spectrum(const JoinDocument& doc, const SpectrumFlags& flags, std::ostream& out) {
    const SpectrumReport report = make_spectrum_report(doc, flags.options());
    out << (flags.output == "csv" ? render_csv(report) : render_json(report));
}

JoinDocument build_graph(const std::string& kind, const std::vector<std::string>& parts,
                         const std::optional<std::size_t>& n, const std::optional<std::size_t>& k,
                         const std::optional<std::size_t>& m, bool directed) {
    auto need = [&](const std::optional<std::size_t>& v, const char* flag) {
        if (!v) throw ParseError(kind + " needs " + flag, 0, 0);
        return *v;
    };
    auto single = [](const graphs::CirculantGraph& g, std::string label) {
        return JoinDocument{graphs::join({g}), {std::move(label)}};
    };
    if (kind == "complete") {
        const auto nn = need(n, "--n");
        return single(graphs::complete_graph(nn), "complete:" + std::to_string(nn));
    }
    if (kind == "cycle") {
        const auto kk = need(k, "--k");
        return single(graphs::directed_cycle(kk), "cycle:" + std::to_string(kk));
    }
    if (kind == "ring") {
        const auto kk = need(k, "--k");
        const auto mm = need(m, "--m");
        return single(graphs::ring_graph(kk, mm), "ring:" + std::to_string(kk) + ":" + std::to_string(mm));
    }
    if (kind == "complement") {
        if (parts.size() != 1) throw ParseError("complement takes exactly one graph", 0, 0);
        return single(graphs::complement(parse_part(parts[0])), "complement:" + parts[0]);
    }
    if (kind == "join") {
        if (parts.empty()) throw ParseError("join needs at least one graph", 0, 0);
        std::vector<graphs::CirculantGraph> graphs_list;
        for (const auto& p : parts) graphs_list.push_back(parse_part(p));
        return {graphs::join(graphs_list), parts};
    }
    if (kind == "remove-cycle") {
        const auto nn = need(n, "--n");
        const auto kk = need(k, "--k");
        auto spec = graphs::remove_cycle_from_complete(nn, kk, directed);
        const std::string removed = std::string(directed ? "complete-minus-directed-cycle:" : "complete-minus-cycle:") +
                                    std::to_string(kk);
        return {std::move(spec), {removed, "complete:" + std::to_string(nn - kk)}};
    }
    throw ParseError("unknown graph kind '" + kind + "'", 0, 0);
}

nlohmann::ordered_json reals_json(const RVector& v) {
    auto arr = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i) == 0.0 ? 0.0 : v(i));
    return arr;
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectra of joins of circulant matrices, graph joins and Kuramoto equilibria", "circjoin"};
    app.require_subcommand(1);

    // spectrum
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Eigenvalues and generalised eigenbasis of a join document");
    std::string spectrum_input = "-";
    spectrum_cmd->add_option("input", spectrum_input, "Join document (default: stdin)");
    SpectrumFlags spectrum_flags;
    spectrum_flags.attach(spectrum_cmd);

    // graph
    auto* graph_cmd = app.add_subcommand("graph", "Build circulant graphs and their joins");
    std::string graph_kind;
    std::vector<std::string> graph_parts;
    std::optional<std::size_t> graph_n;
    std::optional<std::size_t> graph_k;
    std::optional<std::size_t> graph_m;
    bool graph_directed = false;
    std::string graph_emit = "spec";
    graph_cmd->add_option("kind", graph_kind, "complete | cycle | ring | complement | join | remove-cycle")
        ->required();
    graph_cmd->add_option("parts", graph_parts, "Graphs for join/complement: complete:N cycle:K ring:K:M circ:c0,c1,..");
    graph_cmd->add_option("--n", graph_n, "Vertex count");
    graph_cmd->add_option("--k", graph_k, "Cycle / ring length");
    graph_cmd->add_option("--m", graph_m, "Ring neighbours per side");
    graph_cmd->add_flag("--directed", graph_directed, "Remove a directed cycle");
    graph_cmd->add_option("--emit", graph_emit, "Emit the join document or its spectrum")
        ->check(CLI::IsMember({"spec", "spectrum"}));
    SpectrumFlags graph_flags;
    graph_flags.attach(graph_cmd);

    // kuramoto
    auto* kuramoto_cmd = app.add_subcommand("kuramoto", "Kuramoto dynamics on a join network");
    kuramoto_cmd->require_subcommand(1);
    std::string network_input = "-";
    double epsilon = 1.0;
    std::vector<double> omega;
    std::string kuramoto_output = "json";
    kuramoto_cmd->add_option("--epsilon", epsilon, "Coupling strength");
    kuramoto_cmd->add_option("--omega", omega, "Natural frequencies (default all zero)");

    auto* simulate_cmd = kuramoto_cmd->add_subcommand("simulate", "RK4 trajectory as CSV rows t,theta_1..theta_N");
    simulate_cmd->add_option("input", network_input, "Join document (default: stdin)");
    std::string sim_state;
    std::vector<double> sim_theta;
    double dt = 1e-2;
    std::size_t steps = 1000;
    std::size_t every = 1;
    simulate_cmd->add_option("--state", sim_state, "Initial phase file (JSON array or {\"theta\": [...]})");
    simulate_cmd->add_option("--theta", sim_theta, "Initial phases (default all zero)");
    simulate_cmd->add_option("--dt", dt, "Time step");
    simulate_cmd->add_option("--steps", steps, "Number of steps");
    simulate_cmd->add_option("--every", every, "Write every n-th step")->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--output", kuramoto_output, "csv rows or a json summary")
        ->check(CLI::IsMember({"json", "csv"}))
        ->default_str("csv");

    auto* equilibrium_cmd = kuramoto_cmd->add_subcommand("equilibrium", "Twisted-state equilibrium for identical blocks");
    equilibrium_cmd->add_option("input", network_input, "Join document (default: stdin)");
    std::size_t eq_j = 0;
    std::vector<double> eq_phi;
    std::optional<double> eq_tol;
    equilibrium_cmd->add_option("--j", eq_j, "Fourier index 1 <= j <= k-1")->required();
    equilibrium_cmd->add_option("--phi", eq_phi, "Per-block phase offsets (one per block)")->required();
    equilibrium_cmd->add_option("--tol", eq_tol, "Residual tolerance");
    equilibrium_cmd->add_option("--output", kuramoto_output, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    auto* check_cmd = kuramoto_cmd->add_subcommand("check", "Is a phase state an equilibrium?");
    check_cmd->add_option("input", network_input, "Join document (default: stdin)");
    std::string check_state;
    std::optional<double> check_tol;
    check_cmd->add_option("--state", check_state, "Phase file (JSON array or {\"theta\": [...]})")->required();
    check_cmd->add_option("--tol", check_tol, "Residual tolerance");
    check_cmd->add_option("--output", kuramoto_output, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kParseError;
    }

    try {
        if (spectrum_cmd->parsed()) {
            emit_spectrum(parse_document(read_source(spectrum_input, in)), spectrum_flags, out);
        } else if (graph_cmd->parsed()) {
            const JoinDocument doc = build_graph(graph_kind, graph_parts, graph_n, graph_k, graph_m, graph_directed);
            if (graph_emit == "spec") {
                out << emit_document(doc);
            } else {
                emit_spectrum(doc, graph_flags, out);
            }
        } else if (kuramoto_cmd->parsed()) {
            const JoinDocument doc = parse_document(read_source(network_input, in));
            const kuramoto::KuramotoSystem system(doc.spec, epsilon, omega);
            const auto n = static_cast<Eigen::Index>(system.size());
            if (simulate_cmd->parsed()) {
                std::vector<double> initial = sim_theta;
                if (!sim_state.empty()) initial = parse_phase_state(read_source(sim_state, in));
                RVector theta0 = RVector::Zero(n);
                if (!initial.empty()) {
                    if (static_cast<Eigen::Index>(initial.size()) != n) {
                        throw PreconditionError("initial state has " + std::to_string(initial.size()) +
                                                " phases, network has " + std::to_string(n));
                    }
                    theta0 = Eigen::Map<const RVector>(initial.data(), n);
                }
                const auto traj = kuramoto::integrate(system, theta0, dt, steps);
                if (simulate_cmd->count("--output") > 0 && kuramoto_output == "json") {
                    nlohmann::ordered_json summary;
                    summary["dt"] = dt;
                    summary["steps"] = steps;
                    summary["max_drift"] = traj.max_drift();
                    summary["final_state"] = reals_json(traj.reduced(steps));
                    out << summary.dump(2) << "\n";
                } else {
                    out << "t";
                    for (Eigen::Index i = 0; i < n; ++i) out << ",theta_" << (i + 1);
                    out << "\n";
                    for (std::size_t s = 0; s <= steps; s += every) {
                        const RVector th = traj.reduced(s);
                        out << format_real(traj.time(s));
                        for (Eigen::Index i = 0; i < n; ++i) out << "," << format_real(th(i));
                        out << "\n";
                    }
                    err << "max drift " << format_real(traj.max_drift()) << "\n";
                }
            } else if (equilibrium_cmd->parsed()) {
                const auto eq = kuramoto::build_twisted_equilibrium(system, eq_j, eq_phi);
                const auto verdict = kuramoto::check_equilibrium(system, eq.theta, eq_tol);
                if (kuramoto_output == "csv") {
                    out << "index,theta\n";
                    for (Eigen::Index i = 0; i < n; ++i) out << (i + 1) << "," << format_real(eq.theta(i)) << "\n";
                } else {
                    nlohmann::ordered_json report;
                    report["j"] = eq.j;
                    report["phis"] = eq.phis;
                    report["theta"] = reals_json(eq.theta);
                    report["equilibrium"] = verdict.is_equilibrium;
                    report["residual"] = verdict.residual;
                    report["tolerance"] = verdict.tolerance;
                    out << report.dump(2) << "\n";
                }
                if (!verdict.is_equilibrium) {
                    throw VerificationError("twisted state residual " + format_real(verdict.residual) + " exceeds " +
                                            format_real(verdict.tolerance));
                }
            } else if (check_cmd->parsed()) {
                const auto values = parse_phase_state(read_source(check_state, in));
                if (static_cast<Eigen::Index>(values.size()) != n) {
                    throw PreconditionError("state has " + std::to_string(values.size()) + " phases, network has " +
                                            std::to_string(n));
                }
                const auto verdict =
                    kuramoto::check_equilibrium(system, Eigen::Map<const RVector>(values.data(), n), check_tol);
                if (kuramoto_output == "csv") {
                    out << "equilibrium,residual,tolerance\n"
                        << (verdict.is_equilibrium ? "true" : "false") << "," << format_real(verdict.residual) << ","
                        << format_real(verdict.tolerance) << "\n";
                } else {
                    nlohmann::ordered_json report;
                    report["equilibrium"] = verdict.is_equilibrium;
                    report["residual"] = verdict.residual;
                    report["tolerance"] = verdict.tolerance;
                    out << report.dump(2) << "\n";
                }
            }
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kParseError;
    } catch (const PreconditionError& e) {
        err << "precondition error: " << e.what() << "\n";
        return kPreconditionError;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << "\n";
        return kNumericalError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kSuccess;
}

} // namespace circjoin::cli
