#include "doctest.h"

#include <random>

#include "fixtures.hpp"
#include "wsts/acs.hpp"
#include "wsts/flattening.hpp"
#include "wsts/flcs.hpp"

using namespace wsts;

namespace {

OmegaVec vec(std::vector<std::uint64_t> xs) { return OmegaVec::from_finite(xs); }

}  // namespace

TEST_CASE("rl-automaton recognizes prefixes of the starred chain") {
    // alphabet {0:t1, 1:t2, 2:t3}; words t1 and t2 t3
    auto aut = RLAutomaton::build({{0}, {1, 2}}, 3);
    CHECK(aut.accepts(std::vector<std::size_t>{0, 0, 1}));
    CHECK(aut.accepts(std::vector<std::size_t>{}));
    CHECK_FALSE(aut.accepts(std::vector<std::size_t>{2}));
    CHECK(aut.accepts(std::vector<std::size_t>{0, 1, 2, 1, 2, 1}));
    CHECK_FALSE(aut.accepts(std::vector<std::size_t>{1, 1}));
    CHECK_FALSE(aut.accepts(std::vector<std::size_t>{1, 2, 0}));

    CHECK_THROWS_AS(RLAutomaton::build({{}}, 3), std::invalid_argument);
}

TEST_CASE("synchronized product steps") {
    auto model = fixtures::load_acs("one_counter.wsts");
    AcsInstance inst(model);
    auto aut = RLAutomaton::build({{0}}, 1);
    ProductInstance<AcsInstance> product(inst, aut);
    REQUIRE(product.num_transitions() == 1);

    using PState = ProductInstance<AcsInstance>::State;
    PState s{vec({0}), aut.initial()};
    auto next = product.apply(0, s);
    REQUIRE(next);
    CHECK(next->base == vec({1}));
    CHECK(next->control == aut.initial());

    // monotonicity is inherited from the base instance
    PState bigger{vec({3}), aut.initial()};
    auto next_big = product.apply(0, bigger);
    REQUIRE(next_big);
    CHECK(product.leq(*next, *next_big));

    // transitions whose automaton column is empty are omitted
    auto fig2 = fixtures::load_acs("fig2.wsts");
    AcsInstance inst2(fig2);
    auto aut2 = RLAutomaton::build({{0}}, 4);  // only t1 appears
    ProductInstance<AcsInstance> product2(inst2, aut2);
    CHECK(product2.num_transitions() == 1);
}

TEST_CASE("flatten check on the one-counter net") {
    auto model = fixtures::load_acs("one_counter.wsts");
    AcsInstance inst(model);
    auto report = flatten_check(inst, model.initial_state(), Budgets{});
    CHECK(report.equal);
    REQUIRE(report.words.size() == 1);
    CHECK(report.words[0] == std::vector<std::size_t>{0});
    REQUIRE(report.projected.size() == 1);
    CHECK(report.projected[0].is_limit());
}

TEST_CASE("flatten check on the modified reset net") {
    auto model = fixtures::load_acs("fig2_plus_t5.wsts");
    AcsInstance inst(model);
    auto report = flatten_check(inst, model.initial_state(), Budgets{});
    CHECK(report.equal);
    bool has_t5 = false;
    for (const auto& w : report.words) has_t5 |= w == std::vector<std::size_t>{4};
    CHECK(has_t5);
    CHECK(report.projected == report.original.result);
}

TEST_CASE("flatten check with no transitions at all") {
    AcsModel model;
    model.dimension = 1;
    model.initial = {2};
    AcsInstance inst(model);
    auto report = flatten_check(inst, model.initial_state(), Budgets{});
    CHECK(report.equal);
    CHECK(report.words.empty());
    CHECK(report.original.result == std::vector{vec({2})});
}

TEST_CASE("flatten check requires a completed run") {
    auto model = fixtures::load_acs("fig2.wsts");
    AcsInstance inst(model);
    Budgets b;
    b.rounds = 4;
    CHECK_THROWS_AS(flatten_check(inst, model.initial_state(), b), std::logic_error);
}

TEST_CASE("flatten check on channel systems") {
    for (const char* name : {"flcs_send_loop.wsts", "flcs_send_recv_loop.wsts"}) {
        auto model = fixtures::load_flcs(name);
        FlcsInstance inst(model);
        auto report = flatten_check(inst, flcs_initial_state(model), Budgets{});
        CHECK_MESSAGE(report.equal, name);
    }
}

TEST_CASE("fireable sequences of the product stay in the automaton language") {
    auto model = fixtures::load_acs("fig2_plus_t5.wsts");
    AcsInstance inst(model);
    auto run = run_clover(inst, model.initial_state(), Budgets{});
    REQUIRE(run.status == RunStatus::complete);
    auto aut = RLAutomaton::build(run.accelerated_words, inst.num_transitions());
    ProductInstance<AcsInstance> product(inst, aut);
    using PState = ProductInstance<AcsInstance>::State;

    std::mt19937_64 rng(211);
    std::uniform_int_distribution<std::size_t> pick(0, product.num_transitions() - 1);
    for (int trial = 0; trial < 300; ++trial) {
        PState s{model.initial_state(), aut.initial()};
        std::vector<std::size_t> fired;
        for (int depth = 0; depth < 12; ++depth) {
            std::size_t f = pick(rng);
            auto next = product.apply(f, s);
            if (!next) continue;
            fired.push_back(product.base_transition(f));
            s = std::move(*next);
        }
        CHECK(aut.accepts(fired));
    }
}

TEST_CASE("projection of the product clover never exceeds the original") {
    for (const char* name : {"one_counter.wsts", "two_place.wsts", "fig2_plus_t5.wsts"}) {
        auto model = fixtures::load_acs(name);
        AcsInstance inst(model);
        auto report = flatten_check(inst, model.initial_state(), Budgets{});
        auto leq = [&](const OmegaVec& a, const OmegaVec& b) { return inst.leq(a, b); };
        CHECK_MESSAGE(hoare_leq(report.projected, report.original.result, leq), name);
    }
}

TEST_CASE("rlre syntax round-trips") {
    std::vector<std::string> names{"t1", "t2", "t3"};
    std::vector<std::vector<std::size_t>> words{{0}, {1, 2}};
    auto text = render_rlre(words, names);
    CHECK(text == "t1 ; t2 t3");
    auto parsed = parse_rlre(text, names);
    REQUIRE(parsed);
    CHECK(*parsed == words);
    CHECK_FALSE(parse_rlre("t1 ; nope", names));
    CHECK_FALSE(parse_rlre("t1 ; ; t2", names));
}
