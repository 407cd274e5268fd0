// wvg: exact power indices, quantified-SAT deciders, and control-by-adding-
// players instance tooling for weighted voting games. JSON out, DIMACS in.

#include "wvg/control.hpp"
#include "wvg/errors.hpp"
#include "wvg/json_io.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitCapability = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw wvg::InvalidArgumentError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw wvg::InvalidArgumentError("cannot write " + path);
    out << text;
}

struct Options {
    std::string game_path;
    std::string cnf_path;
    std::string instance_path;
    std::string output;
    std::string engine = "auto";
    std::string problem;
    std::string theorem;
    std::string goal;
    std::string suite_dir;
    int player = 0;
    int k = 0;
    int set_id = 1;
    int threads = 1;
    std::string ell;
    bool validate_only = false;
};

wvg::CountingStrategy strategy_from(const Options& opt) {
    wvg::CountingStrategy s;
    if (opt.engine == "auto")
        s.method = wvg::CountingMethod::Auto;
    else if (opt.engine == "enumerate")
        s.method = wvg::CountingMethod::Enumerate;
    else if (opt.engine == "mitm")
        s.method = wvg::CountingMethod::MeetInTheMiddle;
    else if (opt.engine == "sparse")
        s.method = wvg::CountingMethod::SparseDp;
    else
        throw wvg::InvalidArgumentError("unknown engine \"" + opt.engine + "\"");
    s.threads = opt.threads;
    if (const char* cap = std::getenv("WVG_ENUMERATE_CAP"))
        s.enumerate_player_cap = std::atoi(cap);
    if (const char* cap = std::getenv("WVG_AUTO_ENUMERATE_MAX"))
        s.auto_enumerate_max = std::atoi(cap);
    return s;
}

std::optional<wvg::BigInt> ell_from(const Options& opt) {
    if (opt.ell.empty())
        return std::nullopt;
    return wvg::parse_decimal(opt.ell);
}

std::optional<wvg::ControlGoal> goal_from(const Options& opt) {
    if (opt.goal.empty())
        return std::nullopt;
    return wvg::goal_from_string(opt.goal);
}

int run_index(const Options& opt) {
    const wvg::Game game = wvg::game_from_json(wvg::Json::parse(read_file(opt.game_path)));
    const auto strategy = strategy_from(opt);
    wvg::Json j;
    j["player"] = opt.player;
    j["banzhaf"] = wvg::banzhaf(game, opt.player, strategy).str();
    j["shapley"] = wvg::shapley_shubik(game, opt.player, strategy).str();
    write_output(opt.output, wvg::dump_pretty(j));
    return kExitOk;
}

int run_control(const Options& opt) {
    const wvg::ControlInstance instance =
        wvg::instance_from_json(wvg::Json::parse(read_file(opt.instance_path)));
    if (opt.validate_only) {
        write_output(opt.output, wvg::dump_pretty(wvg::validation_to_json(
                                     wvg::validate_instance(instance))));
        return kExitOk;
    }
    const wvg::ControlDecision decision = wvg::decide_control(instance, strategy_from(opt));
    write_output(opt.output, wvg::dump_pretty(wvg::decision_to_json(decision)));
    return kExitOk;
}

int run_sat(const Options& opt) {
    const wvg::CnfFormula formula = wvg::parse_dimacs(read_file(opt.cnf_path));
    wvg::SatDecision decision;
    if (opt.problem == "emajsat")
        decision = wvg::decide_emajsat(formula, opt.k);
    else if (opt.problem == "eminsat")
        decision = wvg::decide_eminsat(formula, opt.k);
    else if (opt.problem == "eexasat") {
        const auto ell = ell_from(opt);
        if (!ell)
            throw wvg::InvalidArgumentError("eexasat requires --ell");
        decision = wvg::decide_eexasat(formula, opt.k, *ell);
    } else {
        throw wvg::InvalidArgumentError("unknown problem \"" + opt.problem + "\"");
    }
    wvg::Json j = wvg::sat_decision_to_json(decision);
    j["problem"] = opt.problem;
    j["k"] = opt.k;
    write_output(opt.output, wvg::dump_pretty(j));
    return kExitOk;
}

int run_gadget(const Options& opt) {
    const wvg::CnfFormula formula = wvg::parse_dimacs(read_file(opt.cnf_path));
    const wvg::GadgetWeights gadget = wvg::build_weight_set(formula, opt.k, opt.set_id);
    write_output(opt.output, wvg::dump_pretty(wvg::gadget_to_json(gadget)));
    return kExitOk;
}

int run_reduce(const Options& opt) {
    const wvg::CnfFormula formula = wvg::parse_dimacs(read_file(opt.cnf_path));
    const wvg::ControlInstance instance =
        wvg::build_reduction(opt.theorem, formula, opt.k, ell_from(opt), goal_from(opt));
    write_output(opt.output, wvg::dump_pretty(wvg::instance_to_json(instance)));
    return kExitOk;
}

int run_verify(const Options& opt) {
    const wvg::CnfFormula formula = wvg::parse_dimacs(read_file(opt.cnf_path));
    const wvg::ReductionVerification report =
        wvg::verify_reduction(opt.theorem, formula, opt.k, ell_from(opt), strategy_from(opt));
    write_output(opt.output, wvg::dump_pretty(wvg::verification_to_json(report)));
    return kExitOk;
}

int run_seed_suite(const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    wvg::Json manifest = wvg::Json::array();
    for (int n = 1; n <= 3; ++n) {
        const auto formulas = wvg::enumerate_formulas(n, 3);
        int idx = 0;
        for (const auto& formula : formulas) {
            char name[64];
            std::snprintf(name, sizeof(name), "cnf_n%d_m%d_%04d.cnf", n,
                          formula.num_clauses(), idx++);
            const fs::path path = fs::path(dir) / name;
            std::ofstream out(path);
            out << formula.to_dimacs();
            wvg::Json entry;
            entry["file"] = std::string(name);
            entry["n"] = n;
            entry["m"] = formula.num_clauses();
            manifest.push_back(std::move(entry));
        }
    }
    std::ofstream out(fs::path(dir) / "manifest.json");
    out << wvg::dump_pretty(manifest);
    std::cout << "wrote " << manifest.size() << " formulas to " << dir << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact power-index and control toolkit for weighted voting games"};
    app.require_subcommand(0, 1);
    Options opt;

    std::string suite_dir;
    app.add_option("--seed-suite", suite_dir,
                   "write the canonical small-formula corpus (all CNFs with n <= 3, m <= 3) "
                   "to the given directory and exit");
    app.add_option("--threads", opt.threads, "worker threads for the control search")
        ->capture_default_str();

    auto add_engine = [&](CLI::App* cmd) {
        cmd->add_option("--engine", opt.engine, "auto|enumerate|mitm|sparse")
            ->capture_default_str();
    };
    auto add_output = [&](CLI::App* cmd) {
        cmd->add_option("-o,--output", opt.output, "output path (default stdout)");
    };

    CLI::App* index = app.add_subcommand("index", "both power indices of one player");
    index->add_option("--game", opt.game_path, "game JSON file")->required();
    index->add_option("--player", opt.player, "player index (1-based)")->required();
    add_engine(index);
    add_output(index);

    CLI::App* control = app.add_subcommand("control", "decide a control instance");
    control->add_option("--instance", opt.instance_path, "instance JSON file")->required();
    control->add_flag("--validate-only", opt.validate_only,
                      "run the structural audit instead of the decision search");
    add_engine(control);
    add_output(control);

    CLI::App* sat = app.add_subcommand("sat", "decide E-MajSAT / E-MinSAT / E-ExaSAT");
    sat->add_option("--cnf", opt.cnf_path, "DIMACS CNF file")->required();
    sat->add_option("--problem", opt.problem, "emajsat|eminsat|eexasat")->required();
    sat->add_option("--k", opt.k, "prefix length")->required();
    sat->add_option("--ell", opt.ell, "exact extension count (eexasat)");
    add_output(sat);

    CLI::App* gadget = app.add_subcommand("gadget", "build one of the four weight sets");
    gadget->add_option("--cnf", opt.cnf_path, "DIMACS CNF file")->required();
    gadget->add_option("--k", opt.k, "prefix length")->required();
    gadget->add_option("--set", opt.set_id, "weight set 1..4")->required();
    add_output(gadget);

    CLI::App* reduce = app.add_subcommand("reduce", "build a control instance");
    reduce->add_option("--cnf", opt.cnf_path, "DIMACS CNF file")->required();
    reduce->add_option("--theorem", opt.theorem,
                       "thm1|thm3a|thm2|thm3bc_banzhaf|thm3bc_ss|thm3d_banzhaf|thm3d_ss")
        ->required();
    reduce->add_option("--k", opt.k, "prefix length")->required();
    reduce->add_option("--ell", opt.ell, "exact extension count (maintain constructions)");
    reduce->add_option("--goal", opt.goal, "override the default goal");
    add_output(reduce);

    CLI::App* verify = app.add_subcommand("verify", "SAT side vs control side of a construction");
    verify->add_option("--cnf", opt.cnf_path, "DIMACS CNF file")->required();
    verify->add_option("--theorem", opt.theorem, "construction tag (see reduce)")->required();
    verify->add_option("--k", opt.k, "prefix length")->required();
    verify->add_option("--ell", opt.ell, "exact extension count (maintain constructions)");
    add_engine(verify);
    add_output(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (!suite_dir.empty())
            return run_seed_suite(suite_dir);
        if (index->parsed())
            return run_index(opt);
        if (control->parsed())
            return run_control(opt);
        if (sat->parsed())
            return run_sat(opt);
        if (gadget->parsed())
            return run_gadget(opt);
        if (reduce->parsed())
            return run_reduce(opt);
        if (verify->parsed())
            return run_verify(opt);
        std::cerr << app.help();
        return kExitUsage;
    } catch (const wvg::CapabilityError& e) {
        std::cerr << "error (capability): " << e.what() << "\n";
        return kExitCapability;
    } catch (const wvg::InfeasibleError& e) {
        std::cerr << "error (infeasible): " << e.what() << "\n";
        return kExitCapability;
    } catch (const wvg::ParseError& e) {
        std::cerr << "error (parse): " << e.what() << "\n";
        return kExitUsage;
    } catch (const wvg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
