#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphcheck/analytic.hpp"
#include "graphcheck/calibration.hpp"
#include "graphcheck/graph.hpp"
#include "graphcheck/qpe.hpp"
#include "graphcheck/rng.hpp"
#include "graphcheck/spectral.hpp"
#include "graphcheck/tester.hpp"
#include "graphcheck/walk.hpp"

namespace gc = graphcheck;

namespace {

gc::Graph load_graph(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open input file: " + path);
    if (path.size() > 4 && path.compare(path.size() - 4, 4, ".csv") == 0)
        return gc::parse_adjacency_csv(f);
    return gc::parse_edge_list(f);
}

int parse_precision(const std::string& s, int n) {
    if (s == "auto") return gc::qpe::qpe_bits(n);
    const int p = std::stoi(s);
    if (p < 1 || p > gc::qpe::kMaxBits)
        throw std::runtime_error("precision-bits out of range [1, 24]: " + s);
    return p;
}

gc::MarkedSet parse_marks(const std::string& s) {
    std::vector<int> ids;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) ids.push_back(std::stoi(tok));
    return gc::MarkedSet(ids);
}

std::string join_ids(const std::vector<int>& ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(ids[i]);
    }
    return out;
}

int run_test(const std::string& input, std::uint64_t seed, const std::string& mode_str,
             const std::string& precision, const std::string& report_path) {
    const gc::Graph g = load_graph(input);
    const gc::tester::Mode mode = (mode_str == "sampled") ? gc::tester::Mode::sampled
                                                          : gc::tester::Mode::deterministic;
    std::optional<int> p_override;
    if (precision != "auto") p_override = parse_precision(precision, g.n());
    const gc::tester::TestReport r = gc::tester::test_completeness(g, seed, mode, p_override);

    const char* stage = (r.stage_reached == gc::tester::Stage::walk_rejected) ? "walk-rejected"
                                                                              : "qpe-completed";
    std::cout << "verdict=" << (r.verdict ? "true" : "false") << '\n'
              << "stage_reached=" << stage << '\n'
              << "m_star=" << r.m_star << '\n'
              << "t_star=" << r.t_star << '\n'
              << "marked_set=" << join_ids(r.marked_set.members) << '\n';
    if (r.measured_node) std::cout << "measured_node=" << *r.measured_node << '\n';
    if (r.p_bits) std::cout << "p_bits=" << *r.p_bits << '\n';
    if (r.qpe_outcome) std::cout << "qpe_outcome=" << *r.qpe_outcome << '\n';
    if (r.theta2_reference) std::cout << "theta2_reference=" << *r.theta2_reference << '\n';
    std::cout << "seed=" << r.seed << '\n'
              << "mode=" << (r.mode == gc::tester::Mode::sampled ? "sampled" : "deterministic")
              << '\n';

    if (!report_path.empty()) {
        nlohmann::json j;
        j["verdict"] = r.verdict;
        j["stage_reached"] = stage;
        j["m_star"] = r.m_star;
        j["t_star"] = r.t_star;
        j["marked_set"] = r.marked_set.members;
        if (r.measured_node) j["measured_node"] = *r.measured_node;
        if (r.p_bits) j["p_bits"] = *r.p_bits;
        if (r.qpe_outcome) j["qpe_outcome"] = *r.qpe_outcome;
        if (r.theta2_reference) j["theta2_reference"] = *r.theta2_reference;
        j["seed"] = r.seed;
        j["mode"] = (r.mode == gc::tester::Mode::sampled) ? "sampled" : "deterministic";
        std::ofstream out(report_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write report: " + report_path);
        out << j.dump(2) << '\n';
    }
    return r.verdict ? 0 : 1;
}

int run_walk(const std::string& input, const std::string& mark, int steps, int shots,
             std::uint64_t seed) {
    const gc::Graph g = load_graph(input);
    gc::MarkedSet marked;
    if (mark == "auto") {
        const int m_star = gc::optimal_marked_count(g.n(), gc::analytic::solve_a());
        std::vector<int> ids;
        for (int i = g.n() - m_star + 1; i <= g.n(); ++i) ids.push_back(i);
        marked = gc::MarkedSet(ids);
    } else {
        marked = parse_marks(mark);
    }
    const gc::StochasticMatrix p = gc::transition_matrix(g);
    const gc::WalkOperator w = gc::build_walk(gc::mark_nodes(p, marked));
    const gc::WalkState s = gc::evolve(w, gc::initial_state(p), steps);
    std::cout << "marked_probability=" << gc::marked_probability(s, marked) << '\n';
    if (shots > 0) {
        auto rng = gc::make_stream(seed, "walk-shots");
        std::map<int, int> hist;
        for (int i = 0; i < shots; ++i) ++hist[gc::measure_position(s, rng)];
        std::cout << "node,count\n";
        for (const auto& [node, count] : hist) std::cout << node << ',' << count << '\n';
    }
    return 0;
}

int run_spectrum(const std::string& input, const std::string& mark, bool dense) {
    const gc::Graph g = load_graph(input);
    const gc::StochasticMatrix pprime =
        gc::mark_nodes(gc::transition_matrix(g), parse_marks(mark));
    gc::spectral::Spectrum spec = dense ? gc::spectral::walk_spectrum_dense(pprime)
                                        : gc::spectral::walk_spectrum(pprime, false);
    std::stable_sort(spec.entries.begin(), spec.entries.end(),
                     [](const auto& a, const auto& b) { return a.phase < b.phase; });
    std::cout << "phase,weight\n";
    for (const auto& e : spec.entries) std::cout << e.phase << ',' << e.weight << '\n';
    return 0;
}

int run_qpe(const std::string& input, const std::string& precision, int shots,
            std::uint64_t seed) {
    const gc::Graph g = load_graph(input);
    const int n = g.n();
    const int p = parse_precision(precision, n);
    const gc::MarkedSet single({1});  // step-5 convention: one marked node, lowest id
    const gc::StochasticMatrix psecond = gc::mark_nodes(gc::transition_matrix(g), single);
    const gc::spectral::Spectrum spec = gc::spectral::walk_spectrum(psecond, true);
    const gc::WalkState in = gc::spectral::theta2_eigenvector_for(n, single);
    const gc::qpe::QpeDistribution dist = gc::qpe::qpe_distribution(spec, in, p);
    const double theta2 = gc::spectral::reference_theta2(n, 1);

    std::cout << "outcome,count\n";
    if (shots > 0) {
        auto rng = gc::make_stream(seed, "qpe-shots");
        std::map<int, int> hist;
        for (int k : gc::qpe::qpe_sample(dist, rng, shots)) ++hist[k];
        for (const auto& [k, count] : hist) std::cout << k << ',' << count << '\n';
    } else {
        for (std::size_t k = 0; k < dist.mass.size(); ++k)
            if (dist.mass[k] > 1e-12) std::cout << k << ',' << dist.mass[k] << '\n';
    }
    const int modal = dist.modal_outcome();
    std::cout << "modal_outcome=" << modal << '\n'
              << "p_bits=" << p << '\n'
              << "verdict=" << (gc::qpe::phase_match(modal, p, theta2) ? "matched" : "unmatched")
              << '\n';
    return 0;
}

int run_calibrate(int n_min, int n_max, const std::string& policy_str,
                  const std::string& out_dir) {
    const gc::calibration::EdgePolicy policy = (policy_str == "marked")
                                                   ? gc::calibration::EdgePolicy::marked
                                                   : gc::calibration::EdgePolicy::unmarked;
    std::filesystem::create_directories(out_dir);
    std::vector<gc::calibration::SweepRow> rows =
        gc::calibration::worst_case_sweep(n_min, n_max, policy);
    const gc::calibration::PowerLawFit fit = gc::calibration::fit_power_law(rows);
    gc::calibration::assign_f_bits(rows, fit);
    for (const std::string& path : gc::calibration::emit_report(rows, fit, out_dir))
        std::cout << "wrote " << path << '\n';
    std::cout << "c=" << fit.c << '\n'
              << "k=" << fit.k << '\n'
              << "adjusted_c=" << fit.adjusted_c << '\n';
    return 0;
}

int run_constants(const std::string& csv_path) {
    const double a = gc::analytic::solve_a();
    const gc::analytic::OptimalityConstants oc = gc::analytic::t_star_constants(a);
    std::cout.precision(15);
    std::cout << "a=" << oc.a << '\n'
              << "t_star_max=" << oc.t_star_max << '\n'
              << "t_star_second=" << oc.t_star_second << '\n'
              << "t_star=" << oc.t_star << '\n'
              << "p_low=" << oc.p_low << '\n'
              << "p_high=" << oc.p_high << '\n';
    if (!csv_path.empty()) {
        std::ofstream f(csv_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + csv_path);
        f.precision(17);
        f << "a,t_star_max,t_star_second,t_star,p_low,p_high\n"
          << oc.a << ',' << oc.t_star_max << ',' << oc.t_star_second << ',' << oc.t_star << ','
          << oc.p_low << ',' << oc.p_high << '\n';
    }
    return 0;
}

int run_gen(int complete_n, const std::string& remove, const std::string& out_path) {
    gc::Graph g = gc::complete_graph(complete_n);
    if (!remove.empty()) {
        const gc::MarkedSet pair = parse_marks(remove);
        if (pair.m() != 2) throw std::runtime_error("--remove expects exactly two node ids");
        g = gc::remove_edges(g, {gc::Edge(pair.members[0], pair.members[1])});
    }
    std::ostringstream body;
    body << "n " << g.n() << '\n';
    for (const gc::Edge& e : g.edges()) body << e.u << ' ' << e.v << '\n';
    if (out_path.empty() || out_path == "-") {
        std::cout << body.str();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + out_path);
        f << body.str();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Szegedy-walk graph completeness tester.\n"
        "All randomness derives from one 64-bit seed (flag --seed or env "
        "GRAPHCHECK_SEED) split into labeled per-stage streams."};
    app.require_subcommand(1);

    std::string input, mark = "auto", mode = "deterministic", precision = "auto";
    std::string report_path, out_dir = ".", out_path, policy = "unmarked", remove, csv_path;
    std::uint64_t seed = 0;
    int steps = 3, shots = 0, n_min = 4, n_max = 128, complete_n = 0;
    bool dense = false;

    auto add_seed = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "master RNG seed")->envname("GRAPHCHECK_SEED");
    };

    CLI::App* test = app.add_subcommand("test", "run the full completeness test");
    test->add_option("--input", input, "edge list or adjacency CSV")->required();
    add_seed(test);
    test->add_option("--mode", mode)->check(CLI::IsMember({"sampled", "deterministic"}));
    test->add_option("--precision-bits", precision, "auto or integer");
    test->add_option("--report", report_path, "write JSON report here");

    CLI::App* walk = app.add_subcommand("walk", "evolve the marked walk");
    walk->add_option("--input", input)->required();
    walk->add_option("--mark", mark, "comma-separated node ids, or auto for m*");
    walk->add_option("--steps", steps)->check(CLI::NonNegativeNumber);
    walk->add_option("--shots", shots)->check(CLI::NonNegativeNumber);
    add_seed(walk);

    CLI::App* spectrum = app.add_subcommand("spectrum", "walk eigenphases");
    spectrum->add_option("--input", input)->required();
    spectrum->add_option("--mark", mark, "comma-separated node ids")->required();
    spectrum->add_flag("--dense", dense, "full n^2 diagonalization");

    CLI::App* qpe = app.add_subcommand("qpe", "phase estimation stage only");
    qpe->add_option("--input", input)->required();
    qpe->add_option("--precision-bits", precision, "auto or integer");
    qpe->add_option("--shots", shots)->check(CLI::NonNegativeNumber);
    add_seed(qpe);

    CLI::App* calibrate = app.add_subcommand("calibrate", "worst-case sweep and fit");
    calibrate->add_option("--n-min", n_min)->check(CLI::Range(4, 1000));
    calibrate->add_option("--n-max", n_max)->check(CLI::Range(4, 1000));
    calibrate->add_option("--edge-policy", policy)
        ->check(CLI::IsMember({"unmarked", "marked"}));
    calibrate->add_option("--out-dir", out_dir);

    CLI::App* constants = app.add_subcommand("constants", "optimality constants");
    constants->add_option("--csv", csv_path, "also write as CSV");

    CLI::App* gen = app.add_subcommand("gen", "emit a test graph");
    gen->add_option("--complete", complete_n, "complete graph size")->required();
    gen->add_option("--remove", remove, "u,v edge to delete");
    gen->add_option("--out", out_path, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (test->parsed()) return run_test(input, seed, mode, precision, report_path);
        if (walk->parsed()) return run_walk(input, mark, steps, shots, seed);
        if (spectrum->parsed()) return run_spectrum(input, mark, dense);
        if (qpe->parsed()) return run_qpe(input, precision, shots, seed);
        if (calibrate->parsed()) return run_calibrate(n_min, n_max, policy, out_dir);
        if (constants->parsed()) return run_constants(csv_path);
        if (gen->parsed()) return run_gen(complete_n, remove, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
