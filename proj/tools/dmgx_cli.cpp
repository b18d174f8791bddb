#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dmgx/benchgen.hpp"
#include "dmgx/io.hpp"
#include "dmgx/pipeline.hpp"

namespace {

dmgx::Dmg load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open graph file '" + path + "'");
    dmgx::json j;
    in >> j;
    return dmgx::dmg_from_json(j);
}

dmgx::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file '" + path + "'");
    dmgx::json j;
    in >> j;
    return j;
}

void write_text(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write file '" + path + "'");
    out << content;
}

dmgx::PipelineConfig parse_config(const std::string& scenario, const std::string& mode, const std::string& cover,
                                  const std::string& strong, const std::string& step0) {
    dmgx::PipelineConfig cfg;
    cfg.scenario = dmgx::scenario_from_tag(scenario);
    if (mode == "unbounded") {
        cfg.bound.reset();
    } else if (mode.rfind("bounded:", 0) == 0) {
        cfg.bound = std::stoi(mode.substr(8));
    } else {
        throw std::invalid_argument("mode must be 'unbounded' or 'bounded:M'");
    }
    if (cover == "exact") {
        cfg.cover = dmgx::CoverStrategy::Exact;
    } else if (cover == "greedy") {
        cfg.cover = dmgx::CoverStrategy::Greedy;
    } else if (cover == "random" || cover.rfind("random:", 0) == 0) {
        cfg.cover = dmgx::CoverStrategy::Randomized;
        if (cover.size() > 7) cfg.cover_seed = std::stoull(cover.substr(7));
    } else {
        throw std::invalid_argument("cover must be 'exact', 'greedy' or 'random:SEED'");
    }
    if (strong == "exact")
        cfg.strong_coloring = dmgx::StrongColoringStrategy::Exact;
    else if (strong == "greedy")
        cfg.strong_coloring = dmgx::StrongColoringStrategy::Greedy;
    else
        throw std::invalid_argument("strong-coloring must be 'exact' or 'greedy'");
    if (step0 == "auto")
        cfg.step0 = dmgx::Step0Mode::Auto;
    else if (step0 == "faithful")
        cfg.step0 = dmgx::Step0Mode::Faithful;
    else if (step0 == "trusted")
        cfg.step0 = dmgx::Step0Mode::TrustedOracle;
    else
        throw std::invalid_argument("step0 must be 'auto', 'faithful' or 'trusted'");
    return cfg;
}

// exit 0 when the result's recovered graph matches the identifiable part of
// the truth, 2 otherwise
int verify_pair(const std::string& graph_path, const std::string& result_path, std::string& message) {
    dmgx::Dmg truth = load_graph(graph_path);
    dmgx::PipelineResult result = dmgx::result_from_json(load_json(result_path));
    if (result.recovered == dmgx::strip_double_adjacent_bidirected(truth)) return 0;
    message = "mismatch: " + result_path + " does not recover the identifiable part of " + graph_path;
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dmgx: experiment design for discovering directed mixed graphs"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "emit a seeded random graph as JSON");
    int gen_n = 0;
    double gen_pdir = 0.2, gen_pbi = 0.1;
    std::uint64_t gen_seed = 0;
    int gen_cycles = 0;
    std::string gen_out;
    gen->add_option("--n", gen_n, "node count")->required();
    gen->add_option("--p-dir", gen_pdir, "directed edge probability per ordered pair");
    gen->add_option("--p-bi", gen_pbi, "bidirected edge probability per unordered pair");
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("--cycles", gen_cycles, "extra directed cycles to inject");
    gen->add_option("--out", gen_out, "output file (stdout when omitted)");

    // discover
    auto* dis = app.add_subcommand("discover", "run the discovery pipeline against a ground-truth graph");
    std::string dis_graph, dis_scenario = "sigma", dis_mode = "unbounded", dis_cover = "exact",
                dis_strong = "exact", dis_step0 = "auto", dis_out;
    dis->add_option("--graph", dis_graph, "ground-truth graph JSON")->required();
    dis->add_option("--scenario", dis_scenario, "d or sigma (default sigma)");
    dis->add_option("--mode", dis_mode, "unbounded or bounded:M");
    dis->add_option("--cover", dis_cover, "exact, greedy or random:SEED");
    dis->add_option("--strong-coloring", dis_strong, "exact or greedy");
    dis->add_option("--step0", dis_step0, "auto, faithful or trusted");
    dis->add_option("--out", dis_out, "result file (stdout when omitted)");

    // verify
    auto* ver = app.add_subcommand("verify", "check a discovery result against the ground truth");
    std::string ver_graph, ver_result, ver_dir;
    int ver_jobs = 1;
    ver->add_option("--graph", ver_graph, "ground-truth graph JSON");
    ver->add_option("--result", ver_result, "result JSON from discover");
    ver->add_option("--dir", ver_dir, "directory of *.graph.json / *.result.json pairs");
    ver->add_option("--jobs", ver_jobs, "parallel workers for --dir mode");

    // bounds
    auto* bnd = app.add_subcommand("bounds", "run discovery and report counts against the design bounds");
    std::string bnd_graph, bnd_scenario = "sigma", bnd_json;
    bnd->add_option("--graph", bnd_graph, "ground-truth graph JSON")->required();
    bnd->add_option("--scenario", bnd_scenario, "d or sigma");
    bnd->add_option("--json", bnd_json, "also write the report as JSON to this file");

    // export
    auto* exp = app.add_subcommand("export", "re-emit a graph in another format");
    std::string exp_graph, exp_format = "dot", exp_out;
    exp->add_option("--graph", exp_graph, "graph JSON")->required();
    exp->add_option("--format", exp_format, "dot or json");
    exp->add_option("--out", exp_out, "output file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed()) {
            dmgx::GenSpec spec{gen_n, gen_pdir, gen_pbi, gen_cycles, gen_seed};
            write_text(gen_out, dmgx::dmg_to_json(dmgx::random_dmg(spec)).dump(2) + "\n");
            return 0;
        }
        if (dis->parsed()) {
            dmgx::Dmg truth = load_graph(dis_graph);
            dmgx::PipelineConfig cfg = parse_config(dis_scenario, dis_mode, dis_cover, dis_strong, dis_step0);
            dmgx::InterventionalOracle oracle(truth, cfg.scenario);
            dmgx::PipelineResult result = dmgx::discover(oracle, cfg);
            dmgx::json out = dmgx::result_to_json(result);
            out["log"] = dmgx::log_to_json(oracle.log());
            write_text(dis_out, out.dump(2) + "\n");
            return 0;
        }
        if (ver->parsed()) {
            if (!ver_dir.empty()) {
                namespace fs = std::filesystem;
                std::vector<std::pair<std::string, std::string>> pairs;
                for (const auto& entry : fs::directory_iterator(ver_dir)) {
                    const std::string name = entry.path().filename().string();
                    const std::string suffix = ".graph.json";
                    if (name.size() <= suffix.size() || name.substr(name.size() - suffix.size()) != suffix) continue;
                    std::string stem = name.substr(0, name.size() - suffix.size());
                    fs::path result_path = entry.path().parent_path() / (stem + ".result.json");
                    if (!fs::exists(result_path))
                        throw std::invalid_argument("missing result for " + entry.path().string());
                    pairs.emplace_back(entry.path().string(), result_path.string());
                }
                std::sort(pairs.begin(), pairs.end());
                std::mutex mu;
                int worst = 0;
                std::vector<std::thread> workers;
                size_t next = 0;
                auto work = [&]() {
                    for (;;) {
                        size_t i;
                        {
                            std::lock_guard<std::mutex> lock(mu);
                            if (next >= pairs.size()) return;
                            i = next++;
                        }
                        std::string msg;
                        int code = verify_pair(pairs[i].first, pairs[i].second, msg);
                        std::lock_guard<std::mutex> lock(mu);
                        if (code != 0) std::cerr << msg << "\n";
                        worst = std::max(worst, code);
                    }
                };
                for (int t = 0; t < std::max(1, ver_jobs); ++t) workers.emplace_back(work);
                for (auto& w : workers) w.join();
                return worst;
            }
            if (ver_graph.empty() || ver_result.empty())
                throw std::invalid_argument("verify needs --graph and --result (or --dir)");
            std::string msg;
            int code = verify_pair(ver_graph, ver_result, msg);
            if (code != 0) std::cerr << msg << "\n";
            return code;
        }
        if (bnd->parsed()) {
            dmgx::Dmg truth = load_graph(bnd_graph);
            dmgx::PipelineConfig cfg;
            cfg.scenario = dmgx::scenario_from_tag(bnd_scenario);
            // fall back to greedy strategies above the exact-solver guards
            try {
                dmgx::edge_clique_cover_exact(dmgx::component_graph(truth));
            } catch (const std::runtime_error&) {
                cfg.cover = dmgx::CoverStrategy::Greedy;
            }
            try {
                dmgx::strong_edge_coloring_exact(dmgx::directed_skeleton(truth));
            } catch (const std::runtime_error&) {
                cfg.strong_coloring = dmgx::StrongColoringStrategy::Greedy;
            }
            dmgx::InterventionalOracle oracle(truth, cfg.scenario);
            dmgx::PipelineResult result = dmgx::discover(oracle, cfg);
            dmgx::BoundsReport rep = dmgx::bounds_report(truth, result);
            std::cout << dmgx::report_to_table(rep);
            if (!bnd_json.empty()) write_text(bnd_json, dmgx::report_to_json(rep).dump(2) + "\n");
            return 0;
        }
        if (exp->parsed()) {
            dmgx::Dmg g = load_graph(exp_graph);
            if (exp_format == "dot")
                write_text(exp_out, dmgx::dmg_to_dot(g));
            else if (exp_format == "json")
                write_text(exp_out, dmgx::dmg_to_json(g).dump(2) + "\n");
            else
                throw std::invalid_argument("format must be 'dot' or 'json'");
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
