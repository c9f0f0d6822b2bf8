// tcopt.cpp
// Command-line driver: compile circuits to signature tensors, run the
// gadget-aware optimizer, verify decompositions, prove small ranks, generate
// demonstration batches, benchmark a corpus.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tcopt/compiler.hpp"
#include "tcopt/resynth.hpp"
#include "tcopt/search.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace tcopt;

namespace {

constexpr int kExitInputError = 2;
constexpr int kExitVerifyFailure = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out.good()) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string cost_notation(const GameCost& c) {
    std::ostringstream ss;
    ss << c.toffoli << "Tof + " << c.cs << "CS + " << c.t << "T";
    return ss.str();
}

int env_workers(int cli_value) {
    if (const char* env = std::getenv("TCOPT_WORKERS")) {
        int w = std::atoi(env);
        if (w >= 1) return w;
    }
    return cli_value;
}

struct CompileArtifacts {
    std::vector<CompiledTarget> targets;
    std::vector<std::string> tensor_paths;
    std::vector<std::string> init_paths;
    std::string manifest_path;
};

CompileArtifacts run_compile(const std::string& input, const std::string& outdir,
                             const CompileOptions& opt, bool quiet) {
    Circuit circuit = parse_qasm(read_file(input));
    CompileArtifacts art;
    art.targets = compile(circuit, opt);

    fs::create_directories(outdir);
    const std::string stem = fs::path(input).stem().string();
    ordered_json manifest;
    manifest["parts"] = ordered_json::array();
    for (std::size_t i = 0; i < art.targets.size(); ++i) {
        const CompiledTarget& t = art.targets[i];
        std::string tensor_path =
            (fs::path(outdir) / (stem + ".part" + std::to_string(i) + ".tensor.json")).string();
        std::string init_path =
            (fs::path(outdir) / (stem + ".part" + std::to_string(i) + ".init.json")).string();
        write_file(tensor_path, tensor_to_json(t.tensor));
        write_file(init_path, decomposition_to_json(t.initial_decomposition()));
        manifest["parts"].push_back({{"tensor", tensor_path},
                                     {"n", t.n()},
                                     {"initial_r", t.initial_r()},
                                     {"ancillas", t.ancilla_count}});
        art.tensor_paths.push_back(std::move(tensor_path));
        art.init_paths.push_back(std::move(init_path));
        if (!quiet)
            std::cout << "  part " << i << ": n=" << t.n() << " initial_r=" << t.initial_r()
                      << " ancillas=" << t.ancilla_count << "\n";
    }
    manifest["source"] = input;
    art.manifest_path = (fs::path(outdir) / (stem + ".manifest.json")).string();
    write_file(art.manifest_path, manifest.dump(2) + "\n");
    if (!quiet)
        std::cout << stem << ": " << circuit.num_qubits << " qubits, " << art.targets.size()
                  << " part(s) -> " << art.manifest_path << "\n";
    return art;
}

OptimizeResult run_optimize(const SignatureTensor& tensor, const SearchConfig& cfg,
                            const std::vector<std::string>& baseline_paths) {
    std::vector<Decomposition> baselines;
    for (const auto& path : baseline_paths) {
        Decomposition d = decomposition_from_json(read_file(path));
        if (d.n != tensor.n()) throw std::runtime_error("baseline dimension mismatch: " + path);
        baselines.push_back(std::move(d));
    }
    return optimize(tensor, cfg, baselines);
}

void write_report(const std::string& path, const OptimizeResult& res, const SearchConfig& cfg) {
    ordered_json rep;
    rep["equivalent_t"] = res.cost.equivalent_t;
    rep["t"] = res.cost.t;
    rep["toffoli"] = res.cost.toffoli;
    rep["cs"] = res.cost.cs;
    rep["games_played"] = res.games_played;
    rep["seed"] = cfg.seed;
    rep["basis_change_id"] = res.basis_change_id;
    write_file(path, rep.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"T-count optimizer: signature tensors and gadget-aware Waring decompositions"};
    app.require_subcommand(1);

    auto* cmd_compile = app.add_subcommand("compile", "QASM -> tensor parts + manifest");
    std::string compile_input, compile_out = ".";
    CompileOptions copt;
    cmd_compile->add_option("input", compile_input, "OpenQASM 2.0 file")->required();
    cmd_compile->add_option("-o,--out", compile_out, "output directory");
    cmd_compile->add_option("--threshold", copt.threshold, "qubit threshold (0 = unlimited)");
    cmd_compile->add_option("--trials", copt.trials, "random-greedy split trials");
    cmd_compile->add_option("--seed", copt.seed, "split seed");

    auto* cmd_optimize =
        app.add_subcommand("optimize", "search a tensor for a low-cost decomposition");
    std::string opt_input, opt_out, opt_report;
    std::vector<std::string> opt_baselines;
    SearchConfig scfg;
    bool no_seed_baselines = false;
    cmd_optimize->add_option("tensor", opt_input, "tensor JSON")->required();
    cmd_optimize->add_option("-o,--out", opt_out, "decomposition JSON output");
    cmd_optimize->add_option("--report", opt_report, "run report JSON output");
    cmd_optimize->add_option("--games", scfg.games, "number of self-play games");
    cmd_optimize->add_option("--simulations", scfg.simulations, "MCTS simulations per move");
    cmd_optimize->add_option("--seed", scfg.seed, "search seed");
    cmd_optimize->add_option("--max-moves", scfg.max_moves, "game move limit");
    cmd_optimize->add_option("--basis-changes", scfg.basis_changes, "basis-change pool size");
    cmd_optimize->add_option("--workers", scfg.workers, "parallel game workers");
    cmd_optimize->add_flag("--gadgets,!--no-gadgets", scfg.gadgets_enabled,
                           "enable Toffoli/CS gadget rewards");
    cmd_optimize->add_flag("--toffoli-favoring", scfg.toffoli_favoring,
                           "auto-complete Toffoli gadgets after independent triples");
    cmd_optimize->add_option("--baseline", opt_baselines, "baseline decomposition JSON")
        ->take_all();
    cmd_optimize->add_flag("--no-baseline", no_seed_baselines,
                           "do not admit baseline decompositions");

    auto* cmd_verify = app.add_subcommand("verify", "check a decomposition against a tensor");
    std::string ver_tensor, ver_decomp, ver_out;
    cmd_verify->add_option("tensor", ver_tensor, "tensor JSON")->required();
    cmd_verify->add_option("decomposition", ver_decomp, "decomposition JSON")->required();
    cmd_verify->add_option("-o,--out", ver_out, "report JSON output");

    auto* cmd_oracle = app.add_subcommand("oracle", "prove the minimum Waring rank (N <= 8)");
    std::string orc_tensor;
    std::size_t orc_max_rank = 7;
    std::string orc_out;
    cmd_oracle->add_option("tensor", orc_tensor, "tensor JSON")->required();
    cmd_oracle->add_option("--max-rank", orc_max_rank, "search bound (<= 10)");
    cmd_oracle->add_option("-o,--out", orc_out, "witness decomposition JSON output");

    auto* cmd_demo = app.add_subcommand("demo", "generate synthetic demonstrations");
    std::size_t demo_count = 1;
    std::uint64_t demo_seed = 0;
    DemoParams dparams;
    std::string demo_out;
    cmd_demo->add_option("--count", demo_count, "number of demonstrations");
    cmd_demo->add_option("--seed", demo_seed, "base seed");
    cmd_demo->add_option("--n", dparams.n, "tensor dimension");
    cmd_demo->add_option("-o,--out", demo_out, "batch JSON output");

    auto* cmd_bench =
        app.add_subcommand("bench", "compile + optimize every circuit in a directory");
    std::string bench_dir, bench_out = "bench_out";
    SearchConfig bcfg;
    bcfg.games = 8;
    bcfg.simulations = 200;
    CompileOptions bcopt;
    bool bench_favoring = false;
    cmd_bench->add_option("corpus", bench_dir, "directory of .qasm files")->required();
    cmd_bench->add_option("-o,--out", bench_out, "working directory");
    cmd_bench->add_option("--games", bcfg.games, "games per part per mode");
    cmd_bench->add_option("--simulations", bcfg.simulations, "MCTS simulations per move");
    cmd_bench->add_option("--seed", bcfg.seed, "search seed");
    cmd_bench->add_option("--workers", bcfg.workers, "parallel game workers");
    cmd_bench->add_option("--threshold", bcopt.threshold, "compile qubit threshold");
    cmd_bench->add_option("--trials", bcopt.trials, "split trials");
    cmd_bench->add_flag("--toffoli-favoring", bench_favoring, "favor Toffolis in gadget mode");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_compile) {
            run_compile(compile_input, compile_out, copt, false);
            return 0;
        }

        if (*cmd_optimize) {
            scfg.workers = env_workers(scfg.workers);
            scfg.seed_baselines = !no_seed_baselines;
            SignatureTensor tensor = tensor_from_json(read_file(opt_input));
            OptimizeResult res = run_optimize(tensor, scfg, opt_baselines);
            if (!res.found) {
                std::cerr << "no verified decomposition found within the game budget\n";
                return kExitVerifyFailure;
            }
            std::cout << "equivalent T-count " << res.cost.equivalent_t << " ("
                      << cost_notation(res.cost) << ") after " << res.games_played << " games\n";
            if (!opt_out.empty()) write_file(opt_out, decomposition_to_json(res.best));
            if (!opt_report.empty()) write_report(opt_report, res, scfg);
            return 0;
        }

        if (*cmd_verify) {
            SignatureTensor tensor = tensor_from_json(read_file(ver_tensor));
            Decomposition d = decomposition_from_json(read_file(ver_decomp));
            if (tensor.n() != d.n) {
                std::cerr << "dimension mismatch: tensor n=" << tensor.n()
                          << ", decomposition n=" << d.n << "\n";
                return kExitVerifyFailure;
            }
            VerifyReport rep = verify_tensor(tensor, d);
            std::string text = verify_report_to_json(rep);
            std::cout << text;
            if (!ver_out.empty()) write_file(ver_out, text);
            return (rep.tensor_equal && rep.gadgets_valid) ? 0 : kExitVerifyFailure;
        }

        if (*cmd_oracle) {
            SignatureTensor tensor = tensor_from_json(read_file(orc_tensor));
            auto res = min_waring_rank(tensor, orc_max_rank);
            if (!res) {
                std::cout << "no decomposition within max rank " << orc_max_rank << "\n";
                return 0;
            }
            std::cout << "rank = " << res->first << ", proven\n";
            if (!orc_out.empty()) write_file(orc_out, decomposition_to_json(res->second));
            return 0;
        }

        if (*cmd_demo) {
            ordered_json batch = ordered_json::array();
            for (std::size_t i = 0; i < demo_count; ++i) {
                auto [tensor, decomposition] = synthetic_demo(splitmix64(demo_seed + i), dparams);
                batch.push_back(
                    {{"tensor", ordered_json::parse(tensor_to_json(tensor))},
                     {"decomposition", ordered_json::parse(decomposition_to_json(decomposition))}});
            }
            std::string text = batch.dump(2) + "\n";
            if (!demo_out.empty()) write_file(demo_out, text);
            else std::cout << text;
            return 0;
        }

        if (*cmd_bench) {
            bcfg.workers = env_workers(bcfg.workers);
            std::vector<std::string> files;
            for (const auto& entry : fs::directory_iterator(bench_dir))
                if (entry.path().extension() == ".qasm") files.push_back(entry.path().string());
            std::sort(files.begin(), files.end());
            if (files.empty()) {
                std::cerr << "no .qasm files in " << bench_dir << "\n";
                return kExitInputError;
            }
            std::cout << "circuit              orig  compiled  T(no gadgets)  cost(gadgets)\n";
            for (const auto& file : files) {
                Circuit circuit = parse_qasm(read_file(file));
                CompileArtifacts art = run_compile(file, bench_out, bcopt, true);
                std::size_t compiled_qubits = circuit.num_qubits, plain_total = 0;
                std::size_t tof = 0, cs = 0, t_count = 0;
                for (const CompiledTarget& target : art.targets) {
                    compiled_qubits = std::max(compiled_qubits, target.n());
                    std::vector<Decomposition> base{target.initial_decomposition()};

                    SearchConfig plain = bcfg;
                    plain.gadgets_enabled = false;
                    auto r1 = optimize(target.tensor, plain, base);
                    plain_total += r1.cost.equivalent_t;

                    SearchConfig gadget = bcfg;
                    gadget.gadgets_enabled = true;
                    gadget.toffoli_favoring = bench_favoring;
                    auto r2 = optimize(target.tensor, gadget, base);
                    tof += r2.cost.toffoli;
                    cs += r2.cost.cs;
                    t_count += r2.cost.t;
                }
                GameCost with_gadgets{t_count, tof, cs, t_count + 2 * tof + 2 * cs};
                std::ostringstream row;
                row << std::left;
                row.width(20);
                row << fs::path(file).stem().string();
                row << " " << circuit.num_qubits << "     " << compiled_qubits << "         "
                    << plain_total << "              " << with_gadgets.equivalent_t << " ("
                    << cost_notation(with_gadgets) << ")";
                std::cout << row.str() << "\n";
            }
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return 0;
}
