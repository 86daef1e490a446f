// Command-line front end: model parsing, command dispatch, canonical output.
//
// Exit codes: 0 success or decided verdict, 2 unknown verdict or exhausted
// budget, 1 usage or parse errors.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "wsts/analyses.hpp"
#include "wsts/flattening.hpp"
#include "wsts/km_tree.hpp"
#include "wsts/model_io.hpp"

namespace {

wsts::Model load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return wsts::parse_model(buf.str());
}

void print_budgets(const wsts::Budgets& b) {
    std::cout << "# budgets rounds=" << b.rounds << " accel=" << b.accel_steps << "\n";
}

template <typename Fn>
int with_instance(const wsts::Model& model, Fn&& fn) {
    if (const auto* acs = std::get_if<wsts::AcsModel>(&model)) {
        wsts::AcsInstance inst(*acs);
        return fn(inst, acs->initial_state());
    }
    const auto& flcs = std::get<wsts::FlcsModel>(model);
    wsts::FlcsInstance inst(flcs);
    return fn(inst, wsts::flcs_initial_state(flcs));
}

int verdict_exit(const wsts::Verdict& v) {
    std::cout << wsts::render_verdict(v) << "\n";
    return v.answer == wsts::Answer::unknown ? 2 : 0;
}

}  // namespace

namespace {

int run(int argc, char** argv) {
    CLI::App app{"forward coverability analyses over completed WSTS"};
    app.require_subcommand(1);

    std::string file;
    wsts::Budgets budgets;
    bool trace = false;
    std::string target;
    std::vector<std::string> basis;
    std::size_t place_index = 0;
    std::size_t max_nodes = 1000;
    bool dump = false;

    auto add_budget_flags = [&](CLI::App* cmd) {
        cmd->add_option("file", file, "model file")->required();
        cmd->add_option("--budget-rounds", budgets.rounds, "scheduler round budget");
        cmd->add_option("--budget-accel", budgets.accel_steps, "acceleration step budget");
    };

    CLI::App* clover = app.add_subcommand("clover", "compute the clover of the initial state");
    add_budget_flags(clover);
    clover->add_flag("--trace", trace, "print one line per insertion");

    CLI::App* covers = app.add_subcommand("covers", "coverability of a concrete target");
    add_budget_flags(covers);
    covers->add_option("--target", target, "concrete state")->required();

    CLI::App* bounded = app.add_subcommand("bounded", "is the reachability set finite");
    add_budget_flags(bounded);

    CLI::App* place = app.add_subcommand("place-bounded", "is one counter bounded");
    add_budget_flags(place);
    place->add_option("--index", place_index, "counter index")->required();

    CLI::App* ubounded = app.add_subcommand("u-bounded", "is Post* above the basis finite");
    add_budget_flags(ubounded);
    ubounded->add_option("--basis", basis, "concrete basis state (repeatable)")->required();

    CLI::App* kmtree = app.add_subcommand("kmtree", "generalized Karp-Miller tree");
    kmtree->add_option("file", file, "model file")->required();
    kmtree->add_option("--max-nodes", max_nodes, "node budget");
    kmtree->add_flag("--dump", dump, "print the tree");

    CLI::App* flatten = app.add_subcommand("flatten-check", "strong clover-flattability check");
    add_budget_flags(flatten);

    CLI11_PARSE(app, argc, argv);

    try {
        wsts::Model model = load_model(file);

        if (clover->parsed()) {
            return with_instance(model, [&](const auto& inst, const auto& s0) {
                auto run = wsts::run_clover(inst, s0, budgets);
                print_budgets(budgets);
                if (trace)
                    for (const auto& line : run.transcript) std::cout << "trace " << line << "\n";
                bool complete = run.status == wsts::RunStatus::complete;
                std::cout << "# status " << (complete ? "complete" : "budget-exhausted") << "\n";
                for (const auto& s : run.result) std::cout << inst.render(s) << "\n";
                return complete ? 0 : 2;
            });
        }
        if (covers->parsed()) {
            return with_instance(model, [&](const auto& inst, const auto& s0) {
                print_budgets(budgets);
                using Inst = std::decay_t<decltype(inst)>;
                typename Inst::Concrete t;
                if constexpr (std::is_same_v<Inst, wsts::AcsInstance>)
                    t = wsts::parse_acs_concrete(target, inst.model().dimension);
                else
                    t = wsts::parse_flcs_concrete(target, inst.model());
                return verdict_exit(wsts::coverability(inst, s0, t, budgets));
            });
        }
        if (bounded->parsed()) {
            return with_instance(model, [&](const auto& inst, const auto& s0) {
                print_budgets(budgets);
                return verdict_exit(wsts::boundedness(inst, s0, budgets));
            });
        }
        if (place->parsed()) {
            const auto* acs = std::get_if<wsts::AcsModel>(&model);
            if (!acs) throw std::invalid_argument("place-bounded needs a counter system model");
            wsts::AcsInstance inst(*acs);
            print_budgets(budgets);
            return verdict_exit(wsts::place_bounded(inst, acs->initial_state(), place_index, budgets));
        }
        if (ubounded->parsed()) {
            return with_instance(model, [&](const auto& inst, const auto& s0) {
                print_budgets(budgets);
                using Inst = std::decay_t<decltype(inst)>;
                std::vector<typename Inst::Concrete> us;
                for (const auto& b : basis) {
                    if constexpr (std::is_same_v<Inst, wsts::AcsInstance>)
                        us.push_back(wsts::parse_acs_concrete(b, inst.model().dimension));
                    else
                        us.push_back(wsts::parse_flcs_concrete(b, inst.model()));
                }
                return verdict_exit(wsts::u_bounded(inst, s0, us, budgets));
            });
        }
        if (kmtree->parsed()) {
            return with_instance(model, [&](const auto& inst, const auto& s0) {
                auto tree = wsts::build_km_tree(inst, s0, max_nodes);
                std::cout << "# max-nodes " << max_nodes << "\n";
                bool complete = tree.status == wsts::KmStatus::complete;
                std::cout << "# status " << (complete ? "complete" : "node-budget-exhausted")
                          << "\n";
                std::cout << "# nodes " << tree.nodes.size() << "\n";
                if (dump) std::cout << wsts::render_km_tree(inst, tree);
                if (complete)
                    for (const auto& s : wsts::km_max_labels(inst, tree))
                        std::cout << inst.render(s) << "\n";
                return complete ? 0 : 2;
            });
        }
        if (flatten->parsed()) {
            return with_instance(model, [&](const auto& inst, const auto& s0) {
                print_budgets(budgets);
                auto probe = wsts::run_clover(inst, s0, budgets);
                if (probe.status != wsts::RunStatus::complete) {
                    std::cout << "# status budget-exhausted\n";
                    return 2;
                }
                auto report = wsts::flatten_check(inst, s0, budgets);
                std::vector<std::string> names;
                for (std::size_t f = 0; f < inst.num_transitions(); ++f)
                    names.push_back(inst.transition_name(f));
                std::cout << "# automaton " << wsts::render_rlre(report.words, names) << "\n";
                std::cout << "equal " << (report.equal ? "true" : "false") << "\n";
                for (const auto& s : report.original.result) std::cout << inst.render(s) << "\n";
                return 0;
            });
        }
    } catch (const wsts::ParseError& e) {
        std::cerr << "error: " << file << ": " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
