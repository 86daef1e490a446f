#pragma once

// Flattening machinery: rl-automata recognizing Pfx(w1* w2* ... wk*), the
// synchronized product of an instance with such an automaton, and the
// constructive strong-flattability check replaying a completed clover run
// against the product built from its accelerated words.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsts/clover.hpp"

namespace wsts {

// Deterministic, all states accepting; the alphabet is the set of
// transition indices of the underlying instance.
class RLAutomaton {
public:
    // Chain of cycles, one per word, with epsilon advancement resolved by
    // subset construction. Component words must be nonempty.
    static RLAutomaton build(const std::vector<std::vector<std::size_t>>& words,
                             std::size_t alphabet_size) {
        for (const auto& w : words)
            if (w.empty()) throw std::invalid_argument("RLAutomaton: empty component word");

        RLAutomaton a;
        a.alphabet_ = alphabet_size;
        if (words.empty()) {
            a.delta_.assign(1, std::vector<std::ptrdiff_t>(alphabet_size, -1));
            return a;
        }

        // NFA: cycle states per word; entering word i's cycle is possible
        // from the cycle head of every earlier word.
        std::vector<std::size_t> base(words.size());
        std::size_t total = 0;
        for (std::size_t i = 0; i < words.size(); ++i) {
            base[i] = total;
            total += words[i].size();
        }
        auto closure = [&](std::vector<std::size_t> set) {
            // heads of later words are reachable by epsilon from any head
            std::vector<bool> in(total, false);
            for (auto s : set) in[s] = true;
            for (std::size_t i = 0; i < words.size(); ++i) {
                if (!in[base[i]]) continue;
                for (std::size_t j = i + 1; j < words.size(); ++j) in[base[j]] = true;
            }
            std::vector<std::size_t> out;
            for (std::size_t s = 0; s < total; ++s)
                if (in[s]) out.push_back(s);
            return out;
        };

        std::map<std::vector<std::size_t>, std::size_t> index;
        std::vector<std::vector<std::size_t>> subsets;
        auto intern = [&](std::vector<std::size_t> set) {
            auto [it, fresh] = index.try_emplace(std::move(set), subsets.size());
            if (fresh) {
                subsets.push_back(it->first);
                a.delta_.emplace_back(alphabet_size, -1);
            }
            return it->second;
        };

        std::size_t q0 = intern(closure({base[0]}));
        for (std::size_t q = q0; q < subsets.size(); ++q) {
            for (std::size_t f = 0; f < alphabet_size; ++f) {
                std::vector<std::size_t> next;
                for (std::size_t s : subsets[q]) {
                    // locate the word owning NFA state s
                    std::size_t i = words.size() - 1;
                    while (base[i] > s) --i;
                    std::size_t pos = s - base[i];
                    if (words[i][pos] == f) next.push_back(base[i] + (pos + 1) % words[i].size());
                }
                if (next.empty()) continue;
                a.delta_[q][f] = static_cast<std::ptrdiff_t>(intern(closure(std::move(next))));
            }
        }
        return a;
    }

    std::size_t num_states() const { return delta_.size(); }
    std::size_t initial() const { return 0; }
    std::size_t alphabet_size() const { return alphabet_; }

    std::optional<std::size_t> delta(std::size_t q, std::size_t f) const {
        std::ptrdiff_t t = delta_[q][f];
        if (t < 0) return std::nullopt;
        return static_cast<std::size_t>(t);
    }

    bool has_column(std::size_t f) const {
        for (const auto& row : delta_)
            if (row[f] >= 0) return true;
        return false;
    }

    bool accepts(std::span<const std::size_t> word) const {
        std::size_t q = 0;
        for (std::size_t f : word) {
            auto t = delta(q, f);
            if (!t) return false;
            q = *t;
        }
        return true;  // all states accepting
    }

private:
    std::size_t alphabet_ = 0;
    std::vector<std::vector<std::ptrdiff_t>> delta_;
};

// "t1 ; t2 t3": words separated by ';', names space-separated.
std::string render_rlre(const std::vector<std::vector<std::size_t>>& words,
                        const std::vector<std::string>& names);
std::optional<std::vector<std::vector<std::size_t>>> parse_rlre(
    const std::string& text, const std::vector<std::string>& names);

// Synchronized product S x A: states (s, q) ordered by s <= s' and q = q',
// transitions f joined with the automaton step. Transitions with an empty
// automaton column are omitted.
template <WstsInstance I>
class ProductInstance {
public:
    struct State {
        typename I::State base;
        std::size_t control = 0;

        bool operator==(const State&) const = default;
    };

    ProductInstance(const I& base, const RLAutomaton& aut) : base_(base), aut_(aut) {
        for (std::size_t f = 0; f < base.num_transitions(); ++f)
            if (aut.has_column(f)) names_.push_back(f);
    }

    std::size_t num_transitions() const { return names_.size(); }
    const std::string& transition_name(std::size_t f) const {
        return base_.transition_name(names_[f]);
    }
    std::size_t base_transition(std::size_t f) const { return names_[f]; }

    std::optional<State> apply(std::size_t f, const State& s) const {
        auto q = aut_.delta(s.control, names_[f]);
        if (!q) return std::nullopt;
        auto b = base_.apply(names_[f], s.base);
        if (!b) return std::nullopt;
        return State{std::move(*b), *q};
    }

    struct Accel {
        State value;
        bool exact = true;
    };

    std::optional<Accel> accelerate(std::span<const std::size_t> word, const State& s,
                                    std::size_t budget) const {
        State cur = s;
        for (std::size_t f : word) {
            auto next = apply(f, cur);
            if (!next) return std::nullopt;
            cur = std::move(*next);
        }
        bool strict = leq(s, cur) && !leq(cur, s);
        if (!strict) return Accel{std::move(cur), true};
        // the word cycles on s.control, so the orbit is the base orbit
        // tagged with a constant control
        std::vector<std::size_t> base_word;
        base_word.reserve(word.size());
        for (std::size_t f : word) base_word.push_back(names_[f]);
        auto accel = base_.accelerate(base_word, s.base, budget);
        if (!accel) return std::nullopt;
        return Accel{State{accel->value, s.control}, accel->exact};
    }

    bool leq(const State& a, const State& b) const {
        return a.control == b.control && base_.leq(a.base, b.base);
    }
    bool is_limit(const State& s) const { return base_.is_limit(s.base); }
    bool total_less(const State& a, const State& b) const {
        if (a.control != b.control) return a.control < b.control;
        return base_.total_less(a.base, b.base);
    }
    std::string render(const State& s) const {
        return base_.render(s.base) + " @q" + std::to_string(s.control);
    }

private:
    const I& base_;
    const RLAutomaton& aut_;
    std::vector<std::size_t> names_;  // base transition per product transition
};

template <WstsInstance I>
struct FlattenReport {
    CloverRun<typename I::State> original;
    CloverRun<typename ProductInstance<I>::State> product;
    std::vector<std::vector<std::size_t>> words;   // automaton components
    std::vector<typename I::State> projected;      // Max pi1(product clover)
    bool equal = false;
};

// Builds the rl-automaton from the accelerated words of a completed run,
// computes the product's clover from (s0, q0), projects it and compares
// with the original clover.
template <WstsInstance I>
FlattenReport<I> flatten_check(const I& inst, const typename I::State& s0,
                               const Budgets& budgets) {
    FlattenReport<I> report;
    report.original = run_clover(inst, s0, budgets);
    if (report.original.status != RunStatus::complete)
        throw std::logic_error("flatten_check: clover run did not complete");
    report.words = report.original.accelerated_words;

    RLAutomaton aut = RLAutomaton::build(report.words, inst.num_transitions());
    ProductInstance<I> product(inst, aut);
    using PState = typename ProductInstance<I>::State;
    report.product = run_clover(product, PState{s0, aut.initial()}, budgets);

    std::vector<typename I::State> projected;
    projected.reserve(report.product.result.size());
    for (const auto& p : report.product.result) projected.push_back(p.base);
    auto leq = [&](const auto& a, const auto& b) { return inst.leq(a, b); };
    report.projected = max_of(projected, leq);
    std::sort(report.projected.begin(), report.projected.end(),
              [&](const auto& a, const auto& b) { return inst.total_less(a, b); });

    report.equal = hoare_leq(report.projected, report.original.result, leq) &&
                   hoare_leq(report.original.result, report.projected, leq);
    return report;
}

}  // namespace wsts
