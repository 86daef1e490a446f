#pragma once

// The generic clover procedure: keep an antichain A, test the one-step
// fixpoint Post(A) <=_flat A, and otherwise lub-accelerate fairly chosen
// pairs (word, member). Fairness is realized by round-based dovetailing:
// at round r every word of length <= r is crossed with every member of A
// present at round start, deduplicated against earlier rounds.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "wsts/order.hpp"

namespace wsts {

template <typename I>
concept WstsInstance = requires(const I& inst, const typename I::State& s,
                                std::span<const std::size_t> w, std::size_t n) {
    { inst.num_transitions() } -> std::convertible_to<std::size_t>;
    { inst.transition_name(n) } -> std::convertible_to<std::string>;
    { *inst.apply(n, s) } -> std::convertible_to<typename I::State>;
    { inst.accelerate(w, s, n)->exact } -> std::convertible_to<bool>;
    { inst.accelerate(w, s, n)->value } -> std::convertible_to<typename I::State>;
    { inst.leq(s, s) } -> std::convertible_to<bool>;
    { inst.is_limit(s) } -> std::convertible_to<bool>;
    { inst.total_less(s, s) } -> std::convertible_to<bool>;
    { inst.render(s) } -> std::convertible_to<std::string>;
};

struct Budgets {
    std::size_t rounds = 12;
    std::size_t word_len = 0;  // cap on word length; 0 follows the round index
    std::size_t accel_steps = 256;
    bool record_history = false;
};

enum class RunStatus { complete, budget_exhausted };

template <typename State>
struct CloverRun {
    std::vector<State> result;  // antichain, canonically sorted
    RunStatus status = RunStatus::budget_exhausted;
    std::size_t rounds = 0;
    // Words whose acceleration strictly enlarged dn(A), in insertion order,
    // deduplicated; input to the flattening construction.
    std::vector<std::vector<std::size_t>> accelerated_words;
    bool inexact_used = false;
    std::vector<std::string> transcript;         // "round, word, source, result"
    std::vector<std::vector<State>> history;     // antichain after each insertion
};

template <WstsInstance I>
std::optional<typename I::State> eval_word(const I& inst, std::span<const std::size_t> word,
                                           const typename I::State& s) {
    typename I::State cur = s;
    for (std::size_t f : word) {
        auto next = inst.apply(f, cur);
        if (!next) return std::nullopt;
        cur = std::move(*next);
    }
    return cur;
}

// Post(A) <=_flat A: every defined one-step successor of a member of A is
// dominated by a member of A.
template <WstsInstance I>
bool post_flat_test(const I& inst, const std::vector<typename I::State>& a) {
    auto leq = [&](const auto& x, const auto& y) { return inst.leq(x, y); };
    for (const auto& s : a) {
        for (std::size_t f = 0; f < inst.num_transitions(); ++f) {
            auto y = inst.apply(f, s);
            if (!y) continue;
            if (!in_downward_closure(*y, a, leq)) return false;
        }
    }
    return true;
}

// Skippable pairs: g undefined at a, or a non-increasing step whose value
// is already dominated. Skipping them never changes any reachable dn(A).
template <WstsInstance I>
bool prune_pair(const I& inst, std::span<const std::size_t> word, const typename I::State& a,
                const std::vector<typename I::State>& acc) {
    auto y = eval_word(inst, word, a);
    if (!y) return true;
    bool strict = inst.leq(a, *y) && !inst.leq(*y, a);
    if (strict) return false;
    auto leq = [&](const auto& x, const auto& z) { return inst.leq(x, z); };
    return in_downward_closure(*y, acc, leq);
}


template <WstsInstance I>
CloverRun<typename I::State> run_clover(
    const I& inst, const typename I::State& s0, const Budgets& budgets,
    const std::function<bool(const std::vector<typename I::State>&)>& stop_early = {}) {
    using State = typename I::State;

    struct Entry {
        State s;
        std::size_t first_round;  // first round start at which this member is present
    };

    CloverRun<State> run;
    std::vector<Entry> acc{{s0, 1}};
    std::set<std::vector<std::size_t>> recorded;

    auto states_of = [&] {
        std::vector<State> out;
        out.reserve(acc.size());
        for (const auto& e : acc) out.push_back(e.s);
        std::sort(out.begin(), out.end(),
                  [&](const State& a, const State& b) { return inst.total_less(a, b); });
        return out;
    };
    auto finish = [&](RunStatus status, std::size_t rounds) {
        run.status = status;
        run.rounds = rounds;
        run.result = states_of();
        return run;
    };

    std::vector<std::size_t> name_order(inst.num_transitions());
    for (std::size_t i = 0; i < name_order.size(); ++i) name_order[i] = i;
    std::sort(name_order.begin(), name_order.end(), [&](std::size_t a, std::size_t b) {
        return inst.transition_name(a) < inst.transition_name(b);
    });

    auto current_states = [&] {
        std::vector<State> out;
        out.reserve(acc.size());
        for (const auto& e : acc) out.push_back(e.s);
        return out;
    };

    if (post_flat_test(inst, current_states())) return finish(RunStatus::complete, 0);
    if (stop_early && stop_early(current_states())) return finish(RunStatus::budget_exhausted, 0);

    for (std::size_t round = 1; round <= budgets.rounds; ++round) {
        std::vector<Entry> snapshot = acc;
        std::sort(snapshot.begin(), snapshot.end(),
                  [&](const Entry& a, const Entry& b) { return inst.total_less(a.s, b.s); });
        bool has_fresh = false;
        for (const auto& e : snapshot) has_fresh |= e.first_round == round;

        // Dispatches one pair; the word's value at a is passed in so
        // pruning costs nothing extra.
        enum class Outcome { next, complete, stopped };
        auto dispatch = [&](const std::vector<std::size_t>& word, const State& a,
                            const State& y) -> Outcome {
            bool strict = inst.leq(a, y) && !inst.leq(y, a);
            if (!strict) {
                for (const auto& e : acc)
                    if (inst.leq(y, e.s)) return Outcome::next;  // prunable pair
            }
            auto accel = inst.accelerate(word, a, budgets.accel_steps);
            const State& v = accel->value;
            for (const auto& e : acc)
                if (inst.leq(v, e.s)) return Outcome::next;
            std::erase_if(acc, [&](const Entry& e) { return inst.leq(e.s, v); });
            acc.push_back(Entry{v, round + 1});

            std::string names;
            for (std::size_t i = 0; i < word.size(); ++i) {
                if (i) names += ' ';
                names += inst.transition_name(word[i]);
            }
            run.transcript.push_back(std::to_string(round) + ", " + names + ", " +
                                     inst.render(a) + ", " + inst.render(v));
            if (recorded.insert(word).second) run.accelerated_words.push_back(word);
            run.inexact_used |= !accel->exact;
            if (budgets.record_history) run.history.push_back(states_of());

            if (post_flat_test(inst, current_states())) return Outcome::complete;
            if (stop_early && stop_early(current_states())) return Outcome::stopped;
            return Outcome::next;
        };

        std::size_t max_len = budgets.word_len ? std::min(round, budgets.word_len) : round;
        for (std::size_t len = 1; len <= max_len; ++len) {
            if (len < round && !has_fresh) continue;
            for (const auto& entry : snapshot) {
                bool fresh = entry.first_round == round;
                if (len < round && !fresh) continue;  // dispatched in an earlier round

                // walk the tree of defined words in name-lex order; an
                // undefined prefix prunes its whole subtree
                std::vector<std::size_t> word;
                std::vector<State> vals{entry.s};
                std::vector<std::size_t> digit{0};
                while (!digit.empty()) {
                    if (word.size() == len) {
                        Outcome o = dispatch(word, entry.s, vals.back());
                        if (o == Outcome::complete) return finish(RunStatus::complete, round);
                        if (o == Outcome::stopped)
                            return finish(RunStatus::budget_exhausted, round);
                        word.pop_back();
                        vals.pop_back();
                        digit.pop_back();
                        continue;
                    }
                    std::size_t d = digit.back();
                    if (d == name_order.size()) {
                        if (!word.empty()) {
                            word.pop_back();
                            vals.pop_back();
                        }
                        digit.pop_back();
                        continue;
                    }
                    ++digit.back();
                    auto next = inst.apply(name_order[d], vals.back());
                    if (!next) continue;
                    word.push_back(name_order[d]);
                    vals.push_back(std::move(*next));
                    digit.push_back(0);
                }
            }
        }
    }
    return finish(RunStatus::budget_exhausted, budgets.rounds);
}

}  // namespace wsts
