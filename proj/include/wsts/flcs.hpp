#pragma once

// Functional-lossy channel systems: finite control, channels holding
// words, send/receive rules. The completed semantics replaces each channel
// content by a word product; control states complete to themselves.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wsts/word_product.hpp"

namespace wsts {

struct FlcsRule {
    std::string name;  // r1, r2, ... in file order
    std::size_t source = 0;
    std::size_t target = 0;
    bool is_send = true;
    std::size_t channel = 0;
    char letter = 0;

    bool operator==(const FlcsRule&) const = default;
};

struct FlcsModel {
    std::vector<std::string> controls;
    std::vector<std::string> channels;
    LetterSet alphabet;
    std::size_t initial_control = 0;
    std::vector<std::string> initial_words;  // concrete word per channel, "" for empty
    std::vector<FlcsRule> rules;

    bool operator==(const FlcsModel&) const = default;
};

// Completed state: control index plus one word product per channel.
// Ordered by equal control and componentwise product inclusion.
struct FlcsState {
    std::size_t control = 0;
    std::vector<WordProduct> channels;

    bool operator==(const FlcsState&) const = default;
    bool leq(const FlcsState& other) const;
    bool strictly_less(const FlcsState& other) const { return leq(other) && *this != other; }
    bool is_limit() const;  // some channel denotes an infinite language
};

FlcsState flcs_initial_state(const FlcsModel& model);

// Defined iff the rule's source control matches and, for a receive, the
// channel product contains the letter.
std::optional<FlcsState> flcs_sober_step(const FlcsModel& model, const FlcsRule& rule,
                                         const FlcsState& s);

std::optional<FlcsState> flcs_orbit_idx(const FlcsModel& model, std::span<const std::size_t> word,
                                        const FlcsState& s);

struct FlcsAccel {
    FlcsState value;
    bool exact = true;
};

// Lub-acceleration of a rule word. Non-increasing orbits return the single
// step. Increasing orbits are iterated; when every channel grows by the
// same atom suffix on consecutive rounds, the limit candidate replaces each
// growing channel by product.(letters of the suffix)* and is accepted once
// the post-fixpoint certificate g(L) <= L and s <= L holds. Otherwise the
// last iterate is returned with exact = false.
std::optional<FlcsAccel> flcs_accelerate(const FlcsModel& model, std::span<const std::size_t> word,
                                         const FlcsState& s, std::size_t budget);

// Concrete FLCS state: control plus one plain word per channel.
struct FlcsConcrete {
    std::size_t control = 0;
    std::vector<std::string> words;
};

// Adapter exposing an FLCS to the generic clover engine.
class FlcsInstance {
public:
    using State = FlcsState;
    using Concrete = FlcsConcrete;

    explicit FlcsInstance(const FlcsModel& model) : model_(model) {}

    State eta(const Concrete& x) const {
        State s;
        s.control = x.control;
        s.channels.reserve(x.words.size());
        for (const auto& w : x.words) s.channels.push_back(embed_word(w));
        return s;
    }

    // Infinite section above u below c: u embeds into c and some channel
    // of c denotes an infinite language.
    bool infinite_section(const State& c, const Concrete& u) const {
        return u.control == c.control && eta(u).leq(c) && c.is_limit();
    }

    std::size_t num_transitions() const { return model_.rules.size(); }
    const std::string& transition_name(std::size_t f) const { return model_.rules[f].name; }

    std::optional<State> apply(std::size_t f, const State& s) const {
        return flcs_sober_step(model_, model_.rules[f], s);
    }
    std::optional<FlcsAccel> accelerate(std::span<const std::size_t> word, const State& s,
                                        std::size_t budget) const {
        return flcs_accelerate(model_, word, s, budget);
    }

    bool leq(const State& a, const State& b) const { return a.leq(b); }
    bool is_limit(const State& s) const { return s.is_limit(); }
    bool total_less(const State& a, const State& b) const;
    std::string render(const State& s) const;

    const FlcsModel& model() const { return model_; }

private:
    const FlcsModel& model_;
};

}  // namespace wsts
