#pragma once

// Affine counter systems: transitions x -> Ax + b with a nonnegative
// matrix, an integer offset and an upward-cone guard. Subsumes Petri,
// reset and transfer nets. The completed semantics acts on N_omega^k and
// every composed loop can be lub-accelerated.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wsts/omega.hpp"

namespace wsts {

struct AffineMap {
    std::string name;
    NatMatrix matrix;
    std::vector<std::int64_t> offset;
    std::vector<std::uint64_t> guard;  // domain = upward cone {x : x >= guard}

    std::size_t dim() const { return guard.size(); }

    bool operator==(const AffineMap&) const = default;

    // matrix * guard + offset must be nonnegative, so the map sends its
    // domain into N^k.
    bool well_defined() const;
};

struct AcsModel {
    std::size_t dimension = 0;
    std::vector<std::uint64_t> initial;
    std::vector<AffineMap> maps;

    bool operator==(const AcsModel&) const = default;

    const AffineMap* find_map(const std::string& name) const;
    OmegaVec initial_state() const {
        return OmegaVec::from_finite(initial);
    }
};

struct AccelResult {
    OmegaVec value;
    // True: value is the least upper bound of the orbit. False: value is a
    // finite iterate of the orbit, hence a sound under-approximation.
    bool exact = true;
};

// Completed one-step semantics: defined iff x dominates the guard in
// N_omega^k, in which case the result is matrix * x + offset with
// 0 * omega = 0. Throws std::overflow_error when a counter value leaves
// the representable range.
std::optional<OmegaVec> sober_apply(const AffineMap& f, const OmegaVec& x);

// Sequential application of named maps; undefined as soon as one step is.
std::optional<OmegaVec> orbit_compose(const AcsModel& model, std::span<const std::string> word,
                                      const OmegaVec& x);

inline constexpr std::size_t kMatrixPowerBudget = 64;

// Lub-acceleration of the composed map g = word. If the orbit does not
// strictly increase at x the single step g(x) is returned. Otherwise the
// word is composed into one affine map (A, b); an idempotent power of A
// found within kMatrixPowerBudget distinct powers yields the exact lub in
// closed form. When no idempotent power is found (or values overflow), the
// orbit is iterated pointwise up to `budget` steps and the result is exact
// only if it stabilized.
std::optional<AccelResult> accelerate(const AcsModel& model, std::span<const std::string> word,
                                      const OmegaVec& x, std::size_t budget);

// Index-based variants used by the generic engine.
std::optional<OmegaVec> orbit_compose_idx(const AcsModel& model, std::span<const std::size_t> word,
                                          const OmegaVec& x);
std::optional<AccelResult> accelerate_idx(const AcsModel& model, std::span<const std::size_t> word,
                                          const OmegaVec& x, std::size_t budget);

inline bool is_limit_vec(const OmegaVec& x) { return x.is_limit(); }

// Adapter exposing an ACS to the generic clover engine.
class AcsInstance {
public:
    using State = OmegaVec;
    using Concrete = std::vector<std::uint64_t>;

    explicit AcsInstance(const AcsModel& model);

    State eta(const Concrete& x) const { return OmegaVec::from_finite(x); }

    // The section {x concrete : u <= x <= c} is infinite exactly when c
    // dominates u and has an omega coordinate.
    bool infinite_section(const State& c, const Concrete& u) const {
        return eta(u).leq(c) && c.is_limit();
    }

    std::size_t num_transitions() const { return model_.maps.size(); }
    const std::string& transition_name(std::size_t f) const { return model_.maps[f].name; }

    std::optional<State> apply(std::size_t f, const State& s) const {
        return sober_apply(model_.maps[f], s);
    }
    std::optional<AccelResult> accelerate(std::span<const std::size_t> word, const State& s,
                                          std::size_t budget) const {
        return accelerate_idx(model_, word, s, budget);
    }

    bool leq(const State& a, const State& b) const { return a.leq(b); }
    bool is_limit(const State& s) const { return s.is_limit(); }
    bool total_less(const State& a, const State& b) const { return a.total_less(b); }
    std::string render(const State& s) const { return s.render(); }

    const AcsModel& model() const { return model_; }

private:
    const AcsModel& model_;
};

}  // namespace wsts
