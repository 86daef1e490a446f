#pragma once

// Counter values completed with a top element: N_omega and its finite
// powers N_omega^k, with componentwise ordering and omega-aware affine
// arithmetic under the convention 0 * omega = 0.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wsts {

// A natural number or the top element omega.
class OmegaNat {
public:
    constexpr OmegaNat() = default;
    constexpr explicit OmegaNat(std::uint64_t n) : v_(n) {}

    static constexpr OmegaNat omega() {
        OmegaNat x;
        x.v_ = kOmega;
        return x;
    }

    constexpr bool is_omega() const { return v_ == kOmega; }

    // Finite value; only meaningful when !is_omega().
    constexpr std::uint64_t finite() const { return v_; }

    constexpr bool operator==(const OmegaNat&) const = default;

    constexpr bool leq(OmegaNat other) const {
        return other.is_omega() || (!is_omega() && v_ <= other.v_);
    }

    // Total tie-break order: omega above every natural.
    constexpr bool total_less(OmegaNat other) const {
        if (is_omega()) return false;
        if (other.is_omega()) return true;
        return v_ < other.v_;
    }

private:
    static constexpr std::uint64_t kOmega = UINT64_MAX;
    std::uint64_t v_ = 0;
};

// nullopt on unsigned overflow (finite results must stay below the sentinel).
std::optional<OmegaNat> checked_add(OmegaNat a, OmegaNat b);
std::optional<OmegaNat> checked_mul(std::uint64_t c, OmegaNat x);
// omega absorbs; nullopt when a finite value would go negative.
// Overflow reported separately so callers can distinguish it from
// leaving the domain.
enum class AddSignedStatus { ok, negative, overflow };
AddSignedStatus checked_add_signed(OmegaNat a, std::int64_t d, OmegaNat& out);

// Element of N_omega^k.
class OmegaVec {
public:
    OmegaVec() = default;
    explicit OmegaVec(std::vector<OmegaNat> coords) : coords_(std::move(coords)) {}

    static OmegaVec from_finite(std::span<const std::uint64_t> xs);

    std::size_t dim() const { return coords_.size(); }
    OmegaNat operator[](std::size_t i) const { return coords_[i]; }
    OmegaNat& operator[](std::size_t i) { return coords_[i]; }
    const std::vector<OmegaNat>& coords() const { return coords_; }

    bool operator==(const OmegaVec&) const = default;

    // Componentwise; throws std::invalid_argument on dimension mismatch.
    bool leq(const OmegaVec& other) const;
    bool strictly_less(const OmegaVec& other) const;

    // Lexicographic with omega above every natural; used for canonical output.
    bool total_less(const OmegaVec& other) const;

    bool is_limit() const;  // some coordinate is omega

    // "1 w 0 0" with the ASCII token "w" for omega.
    std::string render() const;
    static std::optional<OmegaVec> parse(const std::string& text);

private:
    std::vector<OmegaNat> coords_;
};

// Translation by an integer vector; nullopt when a finite component would
// go negative. Throws std::overflow_error if a value exceeds the
// representable range.
std::optional<OmegaVec> ovec_add(const OmegaVec& x, std::span<const std::int64_t> b);

// Lub of a sampled ascending chain: coordinate i goes to omega when marked
// diverging, otherwise keeps the last sampled value.
OmegaVec ovec_lub(std::span<const OmegaVec> chain, std::span<const std::size_t> diverging);

// Square matrix over the naturals, row-major.
class NatMatrix {
public:
    NatMatrix() = default;
    NatMatrix(std::size_t n, std::vector<std::uint64_t> cells);

    static NatMatrix identity(std::size_t n);

    std::size_t dim() const { return n_; }
    std::uint64_t at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    std::uint64_t& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    bool is_identity() const;

    bool operator==(const NatMatrix&) const = default;

    // nullopt on overflow.
    std::optional<NatMatrix> checked_mul(const NatMatrix& rhs) const;
    std::optional<OmegaVec> checked_apply(const OmegaVec& x) const;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> a_;
};

// (Ax)_i with 0 * omega = 0; throws std::overflow_error on overflow.
OmegaVec mat_apply(const NatMatrix& a, const OmegaVec& x);

}  // namespace wsts
