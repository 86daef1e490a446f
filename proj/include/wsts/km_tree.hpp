#pragma once

// The generalized Karp-Miller tree procedure, kept as a comparison
// baseline and as an oracle on plain Petri nets. Extensible leaves are
// expanded in breadth-first order, children per transition in name order.

#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsts/clover.hpp"

namespace wsts {

enum class KmStatus { complete, node_budget_exhausted };

template <typename State>
struct KmNode {
    State label;
    std::ptrdiff_t parent = -1;  // -1 at the root
    std::size_t via = 0;         // transition of the edge from the parent
    bool extensible = true;
};

template <typename State>
struct KmTree {
    std::vector<KmNode<State>> nodes;  // nodes[0] is the root
    KmStatus status = KmStatus::complete;
};

// Expansion cases for the successor s' of a leaf labeled s:
//   - s' equals an ancestor label: closed leaf;
//   - no ancestor label is <= s': ordinary extensible leaf;
//   - some ancestor label is < s': one child per distinct value of the
//     lub-accelerated path word from such an ancestor.
template <WstsInstance I>
KmTree<typename I::State> build_km_tree(const I& inst, const typename I::State& s0,
                                        std::size_t max_nodes, std::size_t accel_steps = 256) {
    using State = typename I::State;
    KmTree<State> tree;
    tree.nodes.push_back(KmNode<State>{s0, -1, 0, true});

    auto eq = [&](const State& a, const State& b) { return inst.leq(a, b) && inst.leq(b, a); };
    auto ancestors_of = [&](std::size_t node) {
        std::vector<std::size_t> up;  // node, parent, ..., root
        std::ptrdiff_t cur = static_cast<std::ptrdiff_t>(node);
        while (cur >= 0) {
            up.push_back(static_cast<std::size_t>(cur));
            cur = tree.nodes[static_cast<std::size_t>(cur)].parent;
        }
        return up;
    };

    std::vector<std::size_t> name_order(inst.num_transitions());
    for (std::size_t i = 0; i < name_order.size(); ++i) name_order[i] = i;
    std::sort(name_order.begin(), name_order.end(), [&](std::size_t a, std::size_t b) {
        return inst.transition_name(a) < inst.transition_name(b);
    });

    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        std::size_t node = queue.front();
        queue.pop_front();
        std::vector<std::size_t> chain = ancestors_of(node);

        for (std::size_t f : name_order) {
            auto next = inst.apply(f, tree.nodes[node].label);
            if (!next) continue;
            const State& succ = *next;

            bool equal_ancestor = false;
            std::vector<std::size_t> smaller;  // shallowest first
            for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
                const State& lbl = tree.nodes[*it].label;
                if (eq(lbl, succ))
                    equal_ancestor = true;
                else if (inst.leq(lbl, succ))
                    smaller.push_back(*it);
            }

            auto add_node = [&](const State& label, bool extensible) -> bool {
                if (tree.nodes.size() >= max_nodes) {
                    tree.status = KmStatus::node_budget_exhausted;
                    return false;
                }
                tree.nodes.push_back(
                    KmNode<State>{label, static_cast<std::ptrdiff_t>(node), f, extensible});
                if (extensible) queue.push_back(tree.nodes.size() - 1);
                return true;
            };

            if (equal_ancestor) {
                if (!add_node(succ, false)) return tree;
            } else if (smaller.empty()) {
                if (!add_node(succ, true)) return tree;
            } else {
                std::vector<State> values;
                for (std::size_t anc : smaller) {
                    // path word from the ancestor down to this node, then f
                    std::vector<std::size_t> word;
                    std::ptrdiff_t cur = static_cast<std::ptrdiff_t>(node);
                    while (cur >= 0 && static_cast<std::size_t>(cur) != anc) {
                        word.push_back(tree.nodes[static_cast<std::size_t>(cur)].via);
                        cur = tree.nodes[static_cast<std::size_t>(cur)].parent;
                    }
                    std::reverse(word.begin(), word.end());
                    word.push_back(f);
                    auto accel =
                        inst.accelerate(word, tree.nodes[anc].label, accel_steps);
                    if (!accel) continue;  // guard moved the word out of the small label's domain
                    bool seen = false;
                    for (const State& v : values) seen |= eq(v, accel->value);
                    if (!seen) values.push_back(accel->value);
                }
                if (values.empty()) {
                    // every candidate orbit left its domain; keep the plain successor
                    if (!add_node(succ, true)) return tree;
                }
                for (const State& v : values) {
                    bool closed = false;
                    for (std::size_t anc : chain) closed |= eq(tree.nodes[anc].label, v);
                    if (!add_node(v, !closed)) return tree;
                }
            }
        }
    }
    return tree;
}

// Max of all node labels; only meaningful on a completed tree.
template <WstsInstance I>
std::vector<typename I::State> km_max_labels(const I& inst, const KmTree<typename I::State>& tree) {
    if (tree.status != KmStatus::complete)
        throw std::logic_error("km_max_labels: tree is node-budget exhausted");
    std::vector<typename I::State> labels;
    labels.reserve(tree.nodes.size());
    for (const auto& n : tree.nodes) labels.push_back(n.label);
    auto maxima = max_of(labels, [&](const auto& a, const auto& b) { return inst.leq(a, b); });
    std::sort(maxima.begin(), maxima.end(),
              [&](const auto& a, const auto& b) { return inst.total_less(a, b); });
    return maxima;
}

// Indented dump, one line per node: "label [extensible|closed] via <name>".
template <WstsInstance I>
std::string render_km_tree(const I& inst, const KmTree<typename I::State>& tree) {
    std::vector<std::vector<std::size_t>> children(tree.nodes.size());
    for (std::size_t i = 1; i < tree.nodes.size(); ++i)
        children[static_cast<std::size_t>(tree.nodes[i].parent)].push_back(i);
    std::string out;
    auto emit = [&](auto&& self, std::size_t node, std::size_t depth) -> void {
        const auto& n = tree.nodes[node];
        out.append(2 * depth, ' ');
        out += inst.render(n.label);
        out += n.extensible ? " [extensible]" : " [closed]";
        if (n.parent >= 0) {
            out += " via ";
            out += inst.transition_name(n.via);
        }
        out += '\n';
        for (std::size_t c : children[node]) self(self, c, depth + 1);
    };
    if (!tree.nodes.empty()) emit(emit, 0, 0);
    return out;
}

}  // namespace wsts
