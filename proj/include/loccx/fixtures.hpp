#pragma once

#include "loccx/state_set.hpp"

namespace loccx {
namespace detail {

inline LocalVector basis(std::size_t dim, std::size_t k) {
    LocalVector v(dim, complex{0.0, 0.0});
    v.at(k) = complex{1.0, 0.0};
    return v;
}

// (e_a + sign * e_b), normalized by the StateSet constructor.
inline LocalVector basis_pair(std::size_t dim, std::size_t a, std::size_t b, double sign) {
    LocalVector v(dim, complex{0.0, 0.0});
    v.at(a) = complex{1.0, 0.0};
    v.at(b) = complex{sign, 0.0};
    return v;
}

} // namespace detail

// Nine-state two-qutrit tiling set: four +/- domino pairs around the edge of
// the 3x3 grid plus the center cell.
inline StateSet domino_states() {
    using detail::basis;
    using detail::basis_pair;
    std::vector<Partite> parts{{"A", 3}, {"B", 3}};
    std::vector<ProductState> states{
        {"phi1", {basis(3, 0), basis_pair(3, 0, 1, +1.0)}},
        {"phi2", {basis(3, 0), basis_pair(3, 0, 1, -1.0)}},
        {"phi3", {basis_pair(3, 0, 1, +1.0), basis(3, 2)}},
        {"phi4", {basis_pair(3, 0, 1, -1.0), basis(3, 2)}},
        {"phi5", {basis(3, 2), basis_pair(3, 1, 2, +1.0)}},
        {"phi6", {basis(3, 2), basis_pair(3, 1, 2, -1.0)}},
        {"phi7", {basis_pair(3, 1, 2, +1.0), basis(3, 0)}},
        {"phi8", {basis_pair(3, 1, 2, -1.0), basis(3, 0)}},
        {"phi9", {basis(3, 1), basis(3, 1)}},
    };
    return StateSet(std::move(parts), std::move(states));
}

// Four three-qubit product states that no sequential local protocol can fully
// distinguish, although any three of them can be told apart.
inline StateSet lemma2_states() {
    using detail::basis;
    using detail::basis_pair;
    std::vector<Partite> parts{{"A", 2}, {"B", 2}, {"C", 2}};
    std::vector<ProductState> states{
        {"phi1", {basis(2, 0), basis(2, 0), basis(2, 0)}},
        {"phi2", {basis(2, 1), basis_pair(2, 0, 1, -1.0), basis_pair(2, 0, 1, +1.0)}},
        {"phi3", {basis_pair(2, 0, 1, +1.0), basis_pair(2, 0, 1, +1.0), basis(2, 1)}},
        {"phi4", {basis_pair(2, 0, 1, -1.0), basis_pair(2, 0, 1, +1.0), basis(2, 1)}},
    };
    return StateSet(std::move(parts), std::move(states));
}

} // namespace loccx
