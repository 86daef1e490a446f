#include "wsts/flcs.hpp"

#include <algorithm>
#include <stdexcept>

namespace wsts {

bool FlcsState::leq(const FlcsState& other) const {
    if (control != other.control) return false;
    if (channels.size() != other.channels.size())
        throw std::invalid_argument("FlcsState::leq: channel count mismatch");
    for (std::size_t c = 0; c < channels.size(); ++c)
        if (!wp_leq(channels[c], other.channels[c])) return false;
    return true;
}

bool FlcsState::is_limit() const {
    for (const auto& p : channels)
        if (p.has_star()) return true;
    return false;
}

FlcsState flcs_initial_state(const FlcsModel& model) {
    FlcsState s;
    s.control = model.initial_control;
    s.channels.reserve(model.initial_words.size());
    for (const auto& w : model.initial_words) s.channels.push_back(embed_word(w));
    return s;
}

std::optional<FlcsState> flcs_sober_step(const FlcsModel& model, const FlcsRule& rule,
                                         const FlcsState& s) {
    (void)model;
    if (rule.source != s.control) return std::nullopt;
    FlcsState out = s;
    out.control = rule.target;
    if (rule.is_send) {
        out.channels[rule.channel] = sober_send(rule.letter, s.channels[rule.channel]);
        return out;
    }
    auto recv = sober_recv(rule.letter, s.channels[rule.channel]);
    if (!recv) return std::nullopt;
    out.channels[rule.channel] = std::move(*recv);
    return out;
}

std::optional<FlcsState> flcs_orbit_idx(const FlcsModel& model, std::span<const std::size_t> word,
                                        const FlcsState& s) {
    FlcsState cur = s;
    for (std::size_t f : word) {
        auto next = flcs_sober_step(model, model.rules[f], cur);
        if (!next) return std::nullopt;
        cur = std::move(*next);
    }
    return cur;
}

namespace {

// The per-channel atom suffix appended by one round, or nullopt when the
// previous product is not a prefix of the current one.
std::optional<std::vector<Atom>> round_suffix(const WordProduct& prev, const WordProduct& cur) {
    const auto& ps = prev.atoms();
    const auto& cs = cur.atoms();
    if (ps.size() > cs.size()) return std::nullopt;
    if (!std::equal(ps.begin(), ps.end(), cs.begin())) return std::nullopt;
    return std::vector<Atom>(cs.begin() + static_cast<std::ptrdiff_t>(ps.size()), cs.end());
}

LetterSet suffix_letters(const std::vector<Atom>& suffix) {
    std::string letters;
    for (const Atom& a : suffix) {
        if (a.is_star())
            letters += a.letters.chars();
        else
            letters += a.letter;
    }
    return LetterSet(letters);
}

}  // namespace

std::optional<FlcsAccel> flcs_accelerate(const FlcsModel& model, std::span<const std::size_t> word,
                                         const FlcsState& s, std::size_t budget) {
    auto first = flcs_orbit_idx(model, word, s);
    if (!first) return std::nullopt;
    if (!s.strictly_less(*first)) return FlcsAccel{std::move(*first), true};

    FlcsState prev = s;
    FlcsState cur = std::move(*first);
    std::optional<std::vector<std::optional<std::vector<Atom>>>> last_suffixes;
    for (std::size_t t = 1; t < budget; ++t) {
        std::vector<std::optional<std::vector<Atom>>> suffixes(cur.channels.size());
        for (std::size_t c = 0; c < cur.channels.size(); ++c)
            suffixes[c] = round_suffix(prev.channels[c], cur.channels[c]);

        bool stable = last_suffixes.has_value();
        if (stable) {
            for (std::size_t c = 0; c < suffixes.size() && stable; ++c)
                stable = suffixes[c].has_value() && (*last_suffixes)[c].has_value() &&
                         *suffixes[c] == *(*last_suffixes)[c];
        }
        if (stable) {
            FlcsState limit = cur;
            for (std::size_t c = 0; c < limit.channels.size(); ++c) {
                const auto& e = *suffixes[c];
                if (e.empty()) continue;
                std::vector<Atom> atoms = cur.channels[c].atoms();
                atoms.push_back(Atom::star(suffix_letters(e)));
                limit.channels[c] = WordProduct::normalize(std::move(atoms));
            }
            auto g_limit = flcs_orbit_idx(model, word, limit);
            if (g_limit && g_limit->leq(limit) && s.leq(limit))
                return FlcsAccel{std::move(limit), true};
        }
        last_suffixes = std::move(suffixes);

        auto next = flcs_orbit_idx(model, word, cur);
        if (!next) return FlcsAccel{std::move(cur), false};
        if (*next == cur) return FlcsAccel{std::move(cur), true};
        prev = std::move(cur);
        cur = std::move(*next);
    }
    return FlcsAccel{std::move(cur), false};
}

bool FlcsInstance::total_less(const State& a, const State& b) const {
    if (a.control != b.control) return model_.controls[a.control] < model_.controls[b.control];
    for (std::size_t c = 0; c < a.channels.size() && c < b.channels.size(); ++c) {
        if (a.channels[c] == b.channels[c]) continue;
        return a.channels[c].total_less(b.channels[c]);
    }
    return a.channels.size() < b.channels.size();
}

std::string FlcsInstance::render(const State& s) const {
    std::string out = model_.controls[s.control];
    for (const auto& p : s.channels) {
        out += " ; ";
        out += p.render();
    }
    return out;
}

}  // namespace wsts
