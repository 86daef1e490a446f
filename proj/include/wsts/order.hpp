#pragma once

// Ordering utilities shared by every state domain: Hoare comparison of
// finite sets, extraction of maximal elements, and antichain maintenance.
// Leq is passed as a callable so the same machinery serves counter vectors,
// word products and product states alike.

#include <cstdint>
#include <vector>

namespace wsts {

// A <=_flat B: every element of A is below some element of B,
// i.e. the downward closures satisfy dn(A) included in dn(B).
template <typename E, typename Leq>
bool hoare_leq(const std::vector<E>& a, const std::vector<E>& b, Leq&& leq) {
    for (const E& x : a) {
        bool dominated = false;
        for (const E& y : b) {
            if (leq(x, y)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) return false;
    }
    return true;
}

template <typename E, typename Leq>
bool in_downward_closure(const E& x, const std::vector<E>& a, Leq&& leq) {
    for (const E& y : a)
        if (leq(x, y)) return true;
    return false;
}

// Maximal elements of a finite set; the result is an antichain with the
// same downward closure. Duplicates under leq-equality are dropped.
template <typename E, typename Leq>
std::vector<E> max_of(const std::vector<E>& a, Leq&& leq) {
    std::vector<E> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        bool keep = true;
        for (std::size_t j = 0; j < a.size() && keep; ++j) {
            if (i == j) continue;
            if (!leq(a[i], a[j])) continue;
            if (leq(a[j], a[i]))
                keep = j > i;  // leq-equal: keep the first occurrence
            else
                keep = false;
        }
        if (keep) out.push_back(a[i]);
    }
    return out;
}

// Inserts x into the antichain a. Returns false (a unchanged) when x is
// already dominated; otherwise removes the members below x, appends x and
// returns true. Preserves the antichain property and grows dn(a) exactly
// by dn(x).
template <typename E, typename Leq>
bool insert_reduced(std::vector<E>& a, const E& x, Leq&& leq) {
    for (const E& y : a)
        if (leq(x, y)) return false;
    std::erase_if(a, [&](const E& y) { return leq(y, x); });
    a.push_back(x);
    return true;
}

// Rado's structure: pairs (m, n) with m < n, ordered so that the ideal
// completion acquires an infinite antichain. Test fixture for the failure
// mode of non-omega^2 wqos; never used by the analyses themselves.
struct RadoPair {
    std::uint64_t m = 0;
    std::uint64_t n = 1;

    bool operator==(const RadoPair&) const = default;
    bool valid() const { return m < n; }
};

// (m,n) <= (m',n') iff m = m' and n <= n', or n < m'.
inline bool rado_leq(RadoPair p, RadoPair q) {
    return (p.m == q.m && p.n <= q.n) || p.n < q.m;
}

// Membership in the ideal omega_i = {(i, n) | n >= i+1} plus the lower
// triangle {(m, n) | n <= i-1}.
inline bool rado_omega_ideal_member(std::uint64_t i, RadoPair p) {
    if (p.m == i && p.n >= i + 1) return true;
    return i >= 1 && p.n <= i - 1;
}

}  // namespace wsts
