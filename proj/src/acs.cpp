#include "wsts/acs.hpp"

#include <stdexcept>

namespace wsts {

namespace {

enum class StepStatus { ok, undefined, overflow };

// One completed step without throwing; overflow is reported to the caller.
StepStatus apply_raw(const AffineMap& f, const OmegaVec& x, OmegaVec& out) {
    if (x.dim() != f.dim()) throw std::invalid_argument("sober_apply: dimension mismatch");
    for (std::size_t i = 0; i < f.dim(); ++i)
        if (!OmegaNat(f.guard[i]).leq(x[i])) return StepStatus::undefined;
    auto ax = f.matrix.checked_apply(x);
    if (!ax) return StepStatus::overflow;
    std::vector<OmegaNat> cs(f.dim());
    for (std::size_t i = 0; i < f.dim(); ++i) {
        switch (checked_add_signed((*ax)[i], f.offset[i], cs[i])) {
            case AddSignedStatus::ok: break;
            case AddSignedStatus::negative:
                // ruled out by the well-definedness invariant
                throw std::logic_error("sober_apply: map leaves N_omega^k");
            case AddSignedStatus::overflow: return StepStatus::overflow;
        }
    }
    out = OmegaVec(std::move(cs));
    return StepStatus::ok;
}

StepStatus orbit_raw(const AcsModel& model, std::span<const std::size_t> word, const OmegaVec& x,
                     OmegaVec& out) {
    OmegaVec cur = x;
    for (std::size_t f : word) {
        OmegaVec next;
        StepStatus st = apply_raw(model.maps[f], cur, next);
        if (st != StepStatus::ok) return st;
        cur = std::move(next);
    }
    out = std::move(cur);
    return StepStatus::ok;
}

std::optional<std::vector<std::int64_t>> mat_int_apply(const NatMatrix& a,
                                                       const std::vector<std::int64_t>& v) {
    std::size_t n = a.dim();
    std::vector<std::int64_t> out(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < n; ++j) {
            std::uint64_t c = a.at(i, j);
            if (c > static_cast<std::uint64_t>(INT64_MAX)) return std::nullopt;
            std::int64_t p;
            if (__builtin_mul_overflow(static_cast<std::int64_t>(c), v[j], &p)) return std::nullopt;
            if (__builtin_add_overflow(acc, p, &acc)) return std::nullopt;
        }
        out[i] = acc;
    }
    return out;
}

struct ComposedAffine {
    NatMatrix matrix;
    std::vector<std::int64_t> offset;
};

std::optional<ComposedAffine> compose_word(const AcsModel& model, std::span<const std::size_t> word) {
    ComposedAffine g{NatMatrix::identity(model.dimension),
                     std::vector<std::int64_t>(model.dimension, 0)};
    for (std::size_t fi : word) {
        const AffineMap& f = model.maps[fi];
        auto m = f.matrix.checked_mul(g.matrix);
        if (!m) return std::nullopt;
        auto b = mat_int_apply(f.matrix, g.offset);
        if (!b) return std::nullopt;
        for (std::size_t i = 0; i < model.dimension; ++i)
            if (__builtin_add_overflow((*b)[i], f.offset[i], &(*b)[i])) return std::nullopt;
        g.matrix = std::move(*m);
        g.offset = std::move(*b);
    }
    return g;
}

// Closed-form lub for a strictly increasing orbit of g(x) = Ax + b: find an
// idempotent power M = A^j with the offset c of g^j; then g^(jn)(x) is
// Mx + c + (n-1)Mc, so coordinate i diverges exactly when (Mc)_i > 0 or it
// already picked up an omega.
std::optional<OmegaVec> try_idempotent_lub(const AcsModel& model, std::span<const std::size_t> word,
                                           const OmegaVec& x) {
    auto g = compose_word(model, word);
    if (!g) return std::nullopt;

    std::vector<NatMatrix> powers{g->matrix};
    std::size_t m = 0, n = 0;
    while (powers.size() < kMatrixPowerBudget) {
        auto next = powers.back().checked_mul(g->matrix);
        if (!next) return std::nullopt;
        bool found = false;
        for (std::size_t t = 0; t < powers.size(); ++t) {
            if (powers[t] == *next) {
                m = t + 1;
                n = powers.size() + 1;
                found = true;
                break;
            }
        }
        powers.push_back(std::move(*next));
        if (found) break;
    }
    if (n == 0) return std::nullopt;

    std::size_t period = n - m;
    std::size_t j = period * ((m + period - 1) / period);
    const NatMatrix& idem = powers[j - 1];

    // offset of g^j
    std::vector<std::int64_t> c(model.dimension, 0);
    for (std::size_t t = 0; t < j; ++t) {
        auto ac = mat_int_apply(g->matrix, c);
        if (!ac) return std::nullopt;
        for (std::size_t i = 0; i < model.dimension; ++i)
            if (__builtin_add_overflow((*ac)[i], g->offset[i], &(*ac)[i])) return std::nullopt;
        c = std::move(*ac);
    }

    auto mx = idem.checked_apply(x);
    if (!mx) return std::nullopt;
    std::vector<OmegaNat> fixed(model.dimension);
    for (std::size_t i = 0; i < model.dimension; ++i) {
        if (checked_add_signed((*mx)[i], c[i], fixed[i]) != AddSignedStatus::ok) return std::nullopt;
    }
    auto mc = mat_int_apply(idem, c);
    if (!mc) return std::nullopt;

    std::vector<OmegaNat> out(model.dimension);
    for (std::size_t i = 0; i < model.dimension; ++i)
        out[i] = (fixed[i].is_omega() || (*mc)[i] > 0) ? OmegaNat::omega() : fixed[i];
    return OmegaVec(std::move(out));
}

std::vector<std::size_t> resolve_word(const AcsModel& model, std::span<const std::string> word) {
    std::vector<std::size_t> idx;
    idx.reserve(word.size());
    for (const auto& name : word) {
        bool found = false;
        for (std::size_t i = 0; i < model.maps.size(); ++i) {
            if (model.maps[i].name == name) {
                idx.push_back(i);
                found = true;
                break;
            }
        }
        if (!found) throw std::invalid_argument("unknown map name: " + name);
    }
    return idx;
}

}  // namespace

bool AffineMap::well_defined() const {
    if (matrix.dim() != dim() || offset.size() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i) {
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < dim(); ++j) {
            std::uint64_t p;
            if (__builtin_mul_overflow(matrix.at(i, j), guard[j], &p)) return false;
            if (__builtin_add_overflow(acc, p, &acc)) return false;
        }
        if (offset[i] < 0 && acc < static_cast<std::uint64_t>(-offset[i])) return false;
    }
    return true;
}

const AffineMap* AcsModel::find_map(const std::string& name) const {
    for (const auto& f : maps)
        if (f.name == name) return &f;
    return nullptr;
}

std::optional<OmegaVec> sober_apply(const AffineMap& f, const OmegaVec& x) {
    OmegaVec out;
    switch (apply_raw(f, x, out)) {
        case StepStatus::ok: return out;
        case StepStatus::undefined: return std::nullopt;
        case StepStatus::overflow: throw std::overflow_error("sober_apply: counter overflow");
    }
    return std::nullopt;
}

std::optional<OmegaVec> orbit_compose_idx(const AcsModel& model, std::span<const std::size_t> word,
                                          const OmegaVec& x) {
    OmegaVec out;
    switch (orbit_raw(model, word, x, out)) {
        case StepStatus::ok: return out;
        case StepStatus::undefined: return std::nullopt;
        case StepStatus::overflow: throw std::overflow_error("orbit_compose: counter overflow");
    }
    return std::nullopt;
}

std::optional<OmegaVec> orbit_compose(const AcsModel& model, std::span<const std::string> word,
                                      const OmegaVec& x) {
    auto idx = resolve_word(model, word);
    return orbit_compose_idx(model, idx, x);
}

std::optional<AccelResult> accelerate_idx(const AcsModel& model, std::span<const std::size_t> word,
                                          const OmegaVec& x, std::size_t budget) {
    OmegaVec y;
    switch (orbit_raw(model, word, x, y)) {
        case StepStatus::undefined: return std::nullopt;
        case StepStatus::overflow: throw std::overflow_error("accelerate: counter overflow");
        case StepStatus::ok: break;
    }
    if (!x.strictly_less(y)) return AccelResult{y, true};

    if (auto closed = try_idempotent_lub(model, word, x)) return AccelResult{*closed, true};

    // Budgeted pointwise iteration; the orbit is increasing, so stopping
    // early still yields a reachable under-approximation.
    OmegaVec cur = y;
    for (std::size_t t = 1; t < budget; ++t) {
        OmegaVec next;
        if (orbit_raw(model, word, cur, next) != StepStatus::ok) return AccelResult{cur, false};
        if (next == cur) return AccelResult{cur, true};
        cur = std::move(next);
    }
    return AccelResult{cur, false};
}

std::optional<AccelResult> accelerate(const AcsModel& model, std::span<const std::string> word,
                                      const OmegaVec& x, std::size_t budget) {
    auto idx = resolve_word(model, word);
    return accelerate_idx(model, idx, x, budget);
}

AcsInstance::AcsInstance(const AcsModel& model) : model_(model) {}

}  // namespace wsts
