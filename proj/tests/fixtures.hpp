#pragma once

// Corpus loading and seeded random model generators shared by the unit and
// acceptance suites.

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "wsts/model_io.hpp"

#ifndef WSTS_MODELS_DIR
#define WSTS_MODELS_DIR "models"
#endif

namespace fixtures {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline wsts::Model load(const std::string& name, const std::string& dir = WSTS_MODELS_DIR) {
    return wsts::parse_model(read_file(dir + "/" + name));
}

inline wsts::AcsModel load_acs(const std::string& name, const std::string& dir = WSTS_MODELS_DIR) {
    return std::get<wsts::AcsModel>(load(name, dir));
}

inline wsts::FlcsModel load_flcs(const std::string& name,
                                 const std::string& dir = WSTS_MODELS_DIR) {
    return std::get<wsts::FlcsModel>(load(name, dir));
}

// Plain Petri net: identity matrices, offsets in [-3,3], guards exactly the
// negative part of the offset, initial marking in [0,3]^k.
inline wsts::AcsModel random_petri(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> dim_dist(2, 4), count_dist(1, 4);
    std::uniform_int_distribution<int> entry_dist(-3, 3), init_dist(0, 3);
    wsts::AcsModel model;
    model.dimension = dim_dist(rng);
    for (std::size_t i = 0; i < model.dimension; ++i)
        model.initial.push_back(static_cast<std::uint64_t>(init_dist(rng)));
    std::size_t count = count_dist(rng);
    for (std::size_t t = 0; t < count; ++t) {
        wsts::AffineMap f;
        f.name = "t" + std::to_string(t + 1);
        f.matrix = wsts::NatMatrix::identity(model.dimension);
        bool nonzero = false;
        for (std::size_t i = 0; i < model.dimension; ++i) {
            int b = entry_dist(rng);
            nonzero |= b != 0;
            f.offset.push_back(b);
            f.guard.push_back(b < 0 ? static_cast<std::uint64_t>(-b) : 0);
        }
        if (!nonzero) f.offset[0] = 1;
        model.maps.push_back(std::move(f));
    }
    return model;
}

// Reset/transfer map: a 0/1 matrix with at most one nonzero per column,
// an offset in [-2,2] and a guard making the map well defined.
inline wsts::AffineMap random_reset_transfer_map(std::mt19937_64& rng, std::size_t dim,
                                                 const std::string& name) {
    std::uniform_int_distribution<int> col_kind(0, 6), row_dist(0, static_cast<int>(dim) - 1);
    std::uniform_int_distribution<int> off_dist(-2, 2), extra_dist(0, 2);
    wsts::AffineMap f;
    f.name = name;
    std::vector<std::uint64_t> cells(dim * dim, 0);
    for (std::size_t j = 0; j < dim; ++j) {
        int kind = col_kind(rng);
        if (kind <= 3)
            cells[j * dim + j] = 1;  // keep the place
        else if (kind <= 5)
            cells[static_cast<std::size_t>(row_dist(rng)) * dim + j] = 1;  // transfer
        // else reset: the column stays zero
    }
    f.matrix = wsts::NatMatrix(dim, std::move(cells));
    for (std::size_t i = 0; i < dim; ++i) {
        std::uint64_t row_sum = 0;
        for (std::size_t j = 0; j < dim; ++j) row_sum += f.matrix.at(i, j);
        int b = off_dist(rng);
        if (row_sum == 0 && b < 0) b = -b;  // rows that reset cannot pay a debit
        f.offset.push_back(b);
    }
    for (std::size_t i = 0; i < dim; ++i)
        f.guard.push_back(2 + static_cast<std::uint64_t>(extra_dist(rng)));
    return f;
}

}  // namespace fixtures
