#include "wsts/omega.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace wsts {

namespace {

constexpr std::uint64_t kMaxFinite = UINT64_MAX - 1;

}  // namespace

std::optional<OmegaNat> checked_add(OmegaNat a, OmegaNat b) {
    if (a.is_omega() || b.is_omega()) return OmegaNat::omega();
    std::uint64_t r;
    if (__builtin_add_overflow(a.finite(), b.finite(), &r) || r > kMaxFinite) return std::nullopt;
    return OmegaNat(r);
}

std::optional<OmegaNat> checked_mul(std::uint64_t c, OmegaNat x) {
    if (c == 0) return OmegaNat(0);  // 0 * omega = 0
    if (x.is_omega()) return OmegaNat::omega();
    std::uint64_t r;
    if (__builtin_mul_overflow(c, x.finite(), &r) || r > kMaxFinite) return std::nullopt;
    return OmegaNat(r);
}

AddSignedStatus checked_add_signed(OmegaNat a, std::int64_t d, OmegaNat& out) {
    if (a.is_omega()) {
        out = OmegaNat::omega();
        return AddSignedStatus::ok;
    }
    if (d >= 0) {
        std::uint64_t r;
        if (__builtin_add_overflow(a.finite(), static_cast<std::uint64_t>(d), &r) || r > kMaxFinite)
            return AddSignedStatus::overflow;
        out = OmegaNat(r);
        return AddSignedStatus::ok;
    }
    std::uint64_t mag = static_cast<std::uint64_t>(-(d + 1)) + 1;
    if (a.finite() < mag) return AddSignedStatus::negative;
    out = OmegaNat(a.finite() - mag);
    return AddSignedStatus::ok;
}

OmegaVec OmegaVec::from_finite(std::span<const std::uint64_t> xs) {
    std::vector<OmegaNat> cs;
    cs.reserve(xs.size());
    for (auto x : xs) cs.emplace_back(x);
    return OmegaVec(std::move(cs));
}

bool OmegaVec::leq(const OmegaVec& other) const {
    if (dim() != other.dim()) throw std::invalid_argument("OmegaVec::leq: dimension mismatch");
    for (std::size_t i = 0; i < dim(); ++i)
        if (!coords_[i].leq(other.coords_[i])) return false;
    return true;
}

bool OmegaVec::strictly_less(const OmegaVec& other) const {
    return leq(other) && coords_ != other.coords_;
}

bool OmegaVec::total_less(const OmegaVec& other) const {
    if (dim() != other.dim()) return dim() < other.dim();
    for (std::size_t i = 0; i < dim(); ++i) {
        if (coords_[i] == other.coords_[i]) continue;
        return coords_[i].total_less(other.coords_[i]);
    }
    return false;
}

bool OmegaVec::is_limit() const {
    for (auto c : coords_)
        if (c.is_omega()) return true;
    return false;
}

std::string OmegaVec::render() const {
    std::string out;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (i) out += ' ';
        if (coords_[i].is_omega())
            out += 'w';
        else
            out += std::to_string(coords_[i].finite());
    }
    return out;
}

std::optional<OmegaVec> OmegaVec::parse(const std::string& text) {
    std::istringstream in(text);
    std::vector<OmegaNat> cs;
    std::string tok;
    while (in >> tok) {
        if (tok == "w") {
            cs.push_back(OmegaNat::omega());
            continue;
        }
        try {
            std::size_t pos = 0;
            std::uint64_t v = std::stoull(tok, &pos);
            if (pos != tok.size() || v > UINT64_MAX - 1) return std::nullopt;
            cs.emplace_back(v);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    if (cs.empty()) return std::nullopt;
    return OmegaVec(std::move(cs));
}

std::optional<OmegaVec> ovec_add(const OmegaVec& x, std::span<const std::int64_t> b) {
    if (x.dim() != b.size()) throw std::invalid_argument("ovec_add: dimension mismatch");
    std::vector<OmegaNat> cs(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) {
        switch (checked_add_signed(x[i], b[i], cs[i])) {
            case AddSignedStatus::ok: break;
            case AddSignedStatus::negative: return std::nullopt;
            case AddSignedStatus::overflow: throw std::overflow_error("ovec_add: counter overflow");
        }
    }
    return OmegaVec(std::move(cs));
}

OmegaVec ovec_lub(std::span<const OmegaVec> chain, std::span<const std::size_t> diverging) {
    if (chain.empty()) throw std::invalid_argument("ovec_lub: empty chain");
    OmegaVec out = chain.back();
    for (auto i : diverging) out[i] = OmegaNat::omega();
    return out;
}

NatMatrix::NatMatrix(std::size_t n, std::vector<std::uint64_t> cells) : n_(n), a_(std::move(cells)) {
    if (a_.size() != n_ * n_) throw std::invalid_argument("NatMatrix: wrong cell count");
}

NatMatrix NatMatrix::identity(std::size_t n) {
    std::vector<std::uint64_t> cells(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) cells[i * n + i] = 1;
    return NatMatrix(n, std::move(cells));
}

bool NatMatrix::is_identity() const {
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if (at(i, j) != (i == j ? 1u : 0u)) return false;
    return true;
}

std::optional<NatMatrix> NatMatrix::checked_mul(const NatMatrix& rhs) const {
    if (n_ != rhs.n_) throw std::invalid_argument("NatMatrix::checked_mul: dimension mismatch");
    std::vector<std::uint64_t> cells(n_ * n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) {
            std::uint64_t acc = 0;
            for (std::size_t l = 0; l < n_; ++l) {
                std::uint64_t p;
                if (__builtin_mul_overflow(at(i, l), rhs.at(l, j), &p)) return std::nullopt;
                if (__builtin_add_overflow(acc, p, &acc)) return std::nullopt;
            }
            cells[i * n_ + j] = acc;
        }
    return NatMatrix(n_, std::move(cells));
}

std::optional<OmegaVec> NatMatrix::checked_apply(const OmegaVec& x) const {
    if (x.dim() != n_) throw std::invalid_argument("NatMatrix::checked_apply: dimension mismatch");
    std::vector<OmegaNat> cs(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        OmegaNat acc(0);
        for (std::size_t j = 0; j < n_; ++j) {
            auto p = wsts::checked_mul(at(i, j), x[j]);
            if (!p) return std::nullopt;
            auto s = wsts::checked_add(acc, *p);
            if (!s) return std::nullopt;
            acc = *s;
        }
        cs[i] = acc;
    }
    return OmegaVec(std::move(cs));
}

OmegaVec mat_apply(const NatMatrix& a, const OmegaVec& x) {
    auto r = a.checked_apply(x);
    if (!r) throw std::overflow_error("mat_apply: counter overflow");
    return *r;
}

}  // namespace wsts
