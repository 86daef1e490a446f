#pragma once

// Decision procedures over (possibly partial) clover runs. Positive
// coverability and negative boundedness answers are sound even when the
// run exhausted its budget, since dn(A) only ever grows towards the
// closure of the cover and concrete members of that closure lie in the
// cover itself. The opposite answers need a completed run with exact
// accelerations. Unknown is a first-class verdict.

#include <cstdint>
#include <string>
#include <vector>

#include "wsts/acs.hpp"
#include "wsts/clover.hpp"

namespace wsts {

enum class Answer { yes, no, unknown };

struct Verdict {
    Answer answer = Answer::unknown;
    std::string evidence;
};

inline std::string render_verdict(const Verdict& v) {
    switch (v.answer) {
        case Answer::yes: return "YES " + v.evidence;
        case Answer::no: return "NO " + v.evidence;
        case Answer::unknown: break;
    }
    return "UNKNOWN (budget)";
}

// Is some state above t reachable from below s0?
template <typename I>
Verdict coverability(const I& inst, const typename I::State& s0,
                     const typename I::Concrete& target, const Budgets& budgets) {
    typename I::State t = inst.eta(target);
    auto covered = [&](const std::vector<typename I::State>& a) {
        for (const auto& c : a)
            if (inst.leq(t, c)) return true;
        return false;
    };
    auto run = run_clover(inst, s0, budgets, covered);
    for (const auto& c : run.result)
        if (inst.leq(t, c)) return Verdict{Answer::yes, "dominated by " + inst.render(c)};
    if (run.status == RunStatus::complete && !run.inexact_used)
        return Verdict{Answer::no, "no clover element dominates the target"};
    return Verdict{Answer::unknown, "budget"};
}

// Is the reachability set finite? A limit element anywhere in dn(A)
// witnesses unboundedness.
template <typename I>
Verdict boundedness(const I& inst, const typename I::State& s0, const Budgets& budgets) {
    auto has_limit = [&](const std::vector<typename I::State>& a) {
        for (const auto& c : a)
            if (inst.is_limit(c)) return true;
        return false;
    };
    auto run = run_clover(inst, s0, budgets, has_limit);
    for (const auto& c : run.result)
        if (inst.is_limit(c)) return Verdict{Answer::no, "limit element " + inst.render(c)};
    if (run.status == RunStatus::complete && !run.inexact_used)
        return Verdict{Answer::yes, "clover has no limit element"};
    return Verdict{Answer::unknown, "budget"};
}

// Can counter i grow without bound?
inline Verdict place_bounded(const AcsInstance& inst, const OmegaVec& s0, std::size_t index,
                             const Budgets& budgets) {
    if (index >= inst.model().dimension) throw std::invalid_argument("place index out of range");
    auto has_omega_at = [&](const std::vector<OmegaVec>& a) {
        for (const auto& c : a)
            if (c[index].is_omega()) return true;
        return false;
    };
    auto run = run_clover(inst, s0, budgets, has_omega_at);
    for (const auto& c : run.result)
        if (c[index].is_omega())
            return Verdict{Answer::no, "omega at place " + std::to_string(index) + " in " + c.render()};
    if (run.status == RunStatus::complete && !run.inexact_used)
        return Verdict{Answer::yes, "no clover element has omega at place " + std::to_string(index)};
    return Verdict{Answer::unknown, "budget"};
}

// Is Post* intersected with the upward closure of the basis finite?
template <typename I>
Verdict u_bounded(const I& inst, const typename I::State& s0,
                  const std::vector<typename I::Concrete>& basis, const Budgets& budgets) {
    if (basis.empty()) throw std::invalid_argument("u_bounded: empty basis");
    auto witness = [&](const std::vector<typename I::State>& a) {
        for (const auto& c : a)
            for (const auto& u : basis)
                if (inst.infinite_section(c, u)) return true;
        return false;
    };
    auto run = run_clover(inst, s0, budgets, witness);
    for (const auto& c : run.result)
        for (const auto& u : basis)
            if (inst.infinite_section(c, u))
                return Verdict{Answer::no, "infinite section below " + inst.render(c)};
    if (run.status == RunStatus::complete && !run.inexact_used)
        return Verdict{Answer::yes, "all sections finite"};
    return Verdict{Answer::unknown, "budget"};
}

}  // namespace wsts
