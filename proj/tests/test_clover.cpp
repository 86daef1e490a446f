#include "doctest.h"

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "wsts/acs.hpp"
#include "wsts/clover.hpp"
#include "wsts/km_tree.hpp"

using namespace wsts;

namespace {

OmegaVec vec(std::vector<std::uint64_t> xs) { return OmegaVec::from_finite(xs); }

OmegaVec vec_w(std::vector<std::int64_t> xs) {
    std::vector<OmegaNat> cs;
    for (auto x : xs) cs.push_back(x < 0 ? OmegaNat::omega() : OmegaNat(static_cast<std::uint64_t>(x)));
    return OmegaVec(std::move(cs));
}

bool antichain_ok(const AcsInstance& inst, const std::vector<OmegaVec>& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (i != j && inst.leq(a[i], a[j])) return false;
    return true;
}

}  // namespace

TEST_CASE("post fixpoint test") {
    auto plus = fixtures::load_acs("fig2_plus_t5.wsts");
    AcsInstance inst_plus(plus);
    CHECK(post_flat_test(inst_plus, std::vector{vec_w({-1, -1, -1, -1})}));

    auto fig2 = fixtures::load_acs("fig2.wsts");
    AcsInstance inst(fig2);
    CHECK_FALSE(post_flat_test(inst, std::vector{vec({1, 1, 0, 0})}));
    CHECK(post_flat_test(inst, std::vector<OmegaVec>{}));
}

TEST_CASE("clover of the modified reset net") {
    auto plus = fixtures::load_acs("fig2_plus_t5.wsts");
    AcsInstance inst(plus);
    auto run = run_clover(inst, plus.initial_state(), Budgets{});
    CHECK(run.status == RunStatus::complete);
    REQUIRE(run.result.size() == 1);
    CHECK(run.result[0] == vec_w({-1, -1, -1, -1}));
    CHECK_FALSE(run.inexact_used);
}

TEST_CASE("clover of the one-counter net") {
    auto model = fixtures::load_acs("one_counter.wsts");
    AcsInstance inst(model);
    auto run = run_clover(inst, model.initial_state(), Budgets{});
    CHECK(run.status == RunStatus::complete);
    REQUIRE(run.result.size() == 1);
    CHECK(run.result[0].is_limit());
}

TEST_CASE("the unmodified reset net exhausts its budget") {
    auto fig2 = fixtures::load_acs("fig2.wsts");
    AcsInstance inst(fig2);
    Budgets b;
    b.rounds = 8;
    auto run = run_clover(inst, fig2.initial_state(), b);
    CHECK(run.status == RunStatus::budget_exhausted);
    auto leq = [&](const OmegaVec& x, const OmegaVec& y) { return inst.leq(x, y); };
    CHECK(in_downward_closure(vec({1, 2, 0, 0}), run.result, leq));
    CHECK(in_downward_closure(vec({1, 3, 0, 0}), run.result, leq));
}

TEST_CASE("pair pruning") {
    auto fig2 = fixtures::load_acs("fig2.wsts");
    AcsInstance inst(fig2);
    std::vector<OmegaVec> a{vec({1, 1, 0, 0})};
    // t3 is undefined at the initial marking
    CHECK(prune_pair(inst, std::vector<std::size_t>{2}, a[0], a));
    // the identity word returns the state itself, already inside dn(A)
    AcsModel with_id = fig2;
    with_id.maps.push_back(AffineMap{"id", NatMatrix::identity(4), {0, 0, 0, 0}, {0, 0, 0, 0}});
    AcsInstance inst_id(with_id);
    CHECK(prune_pair(inst_id, std::vector<std::size_t>{4}, a[0], a));
    // a strictly increasing pair is never skipped
    auto plus = fixtures::load_acs("fig2_plus_t5.wsts");
    AcsInstance inst_plus(plus);
    CHECK_FALSE(prune_pair(inst_plus, std::vector<std::size_t>{4}, a[0], a));
}

TEST_CASE("run invariants: monotone growth, antichain, post fixpoint") {
    for (const char* name : {"fig2_plus_t5.wsts", "one_counter.wsts", "two_place.wsts"}) {
        auto model = fixtures::load_acs(name);
        AcsInstance inst(model);
        Budgets b;
        b.record_history = true;
        auto run = run_clover(inst, model.initial_state(), b);
        auto leq = [&](const OmegaVec& x, const OmegaVec& y) { return inst.leq(x, y); };

        std::vector<OmegaVec> prev{model.initial_state()};
        for (const auto& snapshot : run.history) {
            CHECK(antichain_ok(inst, snapshot));
            CHECK(hoare_leq(prev, snapshot, leq));
            prev = snapshot;
        }
        if (run.status == RunStatus::complete) {
            CHECK(post_flat_test(inst, run.result));
            CHECK(in_downward_closure(model.initial_state(), run.result, leq));
        }
    }
}

TEST_CASE("identical budgets give identical transcripts") {
    auto fig2 = fixtures::load_acs("fig2.wsts");
    AcsInstance inst(fig2);
    Budgets b;
    b.rounds = 6;
    auto r1 = run_clover(inst, fig2.initial_state(), b);
    auto r2 = run_clover(inst, fig2.initial_state(), b);
    CHECK(r1.transcript == r2.transcript);
    CHECK(r1.result == r2.result);
    CHECK(r1.accelerated_words == r2.accelerated_words);
}

TEST_CASE("bounded nets: progress and BFS under-approximation") {
    std::mt19937_64 rng(101);
    int bounded_checked = 0;
    for (int trial = 0; trial < 60 && bounded_checked < 10; ++trial) {
        auto model = fixtures::random_petri(rng);
        auto reach = oracles::bfs_reach(model, 10000);
        if (!reach.complete) continue;
        ++bounded_checked;

        AcsInstance inst(model);
        Budgets b;
        b.record_history = true;
        auto run = run_clover(inst, model.initial_state(), b);
        // progress: the value set is finite, so the run must complete
        CHECK(run.status == RunStatus::complete);

        for (const auto& snapshot : run.history) {
            for (const auto& s : snapshot) {
                REQUIRE_FALSE(s.is_limit());
                std::vector<std::uint64_t> xs;
                for (std::size_t i = 0; i < s.dim(); ++i) xs.push_back(s[i].finite());
                CHECK(oracles::bfs_covers(reach, xs));
            }
        }
    }
    CHECK(bounded_checked >= 10);
}

TEST_CASE("reset/transfer nets: soundness of partial and complete runs") {
    std::mt19937_64 rng(109);
    std::uniform_int_distribution<std::size_t> dim_dist(2, 3), count_dist(1, 3);
    int ran = 0, bounded = 0;
    for (int trial = 0; trial < 40 && ran < 15; ++trial) {
        AcsModel model;
        model.dimension = dim_dist(rng);
        model.initial.assign(model.dimension, 3);
        std::size_t count = count_dist(rng);
        for (std::size_t t = 0; t < count; ++t)
            model.maps.push_back(fixtures::random_reset_transfer_map(
                rng, model.dimension, "t" + std::to_string(t + 1)));
        ++ran;

        AcsInstance inst(model);
        Budgets b;
        b.rounds = 6;
        b.record_history = true;
        auto run = run_clover(inst, model.initial_state(), b);
        auto leq = [&](const OmegaVec& x, const OmegaVec& y) { return inst.leq(x, y); };
        std::vector<OmegaVec> prev{model.initial_state()};
        for (const auto& snapshot : run.history) {
            CHECK(antichain_ok(inst, snapshot));
            CHECK(hoare_leq(prev, snapshot, leq));
            prev = snapshot;
        }
        if (run.status == RunStatus::complete) CHECK(post_flat_test(inst, run.result));

        auto reach = oracles::bfs_reach(model, 5000);
        if (!reach.complete) continue;
        ++bounded;
        // finite elements of every snapshot stay inside reachability
        for (const auto& snapshot : run.history) {
            for (const auto& s : snapshot) {
                if (run.inexact_used) continue;
                REQUIRE_FALSE(s.is_limit());
                std::vector<std::uint64_t> xs;
                for (std::size_t i = 0; i < s.dim(); ++i) xs.push_back(s[i].finite());
                CHECK(oracles::bfs_covers(reach, xs));
            }
        }
    }
    CHECK(ran >= 15);
    CHECK(bounded >= 3);
}

TEST_CASE("word length cap limits the schedule") {
    auto plus = fixtures::load_acs("fig2_plus_t5.wsts");
    AcsInstance inst(plus);
    Budgets capped;
    capped.word_len = 1;
    auto run = run_clover(inst, plus.initial_state(), capped);
    CHECK(run.status == RunStatus::complete);  // t5 alone suffices here
    for (const auto& w : run.accelerated_words) CHECK(w.size() == 1);
}

TEST_CASE("km and clover agree on plain petri nets") {
    std::mt19937_64 rng(103);
    int agreed = 0;
    for (int trial = 0; trial < 40 && agreed < 8; ++trial) {
        auto model = fixtures::random_petri(rng);
        AcsInstance inst(model);
        auto tree = build_km_tree(inst, model.initial_state(), 3000);
        if (tree.status != KmStatus::complete) continue;
        ++agreed;
        auto km = km_max_labels(inst, tree);
        auto run = run_clover(inst, model.initial_state(), Budgets{});
        REQUIRE(run.status == RunStatus::complete);
        CHECK(km == run.result);
    }
    CHECK(agreed >= 8);
}
