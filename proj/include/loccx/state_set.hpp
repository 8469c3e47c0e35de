#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "loccx/errors.hpp"

namespace loccx {

using complex = std::complex<double>;
using LocalVector = std::vector<complex>;

// Numerical thresholds used by validation, exclusion and simulation.
struct Tolerance {
    double orth = 1e-9; // |<u|v>| below this counts as orthogonal
    double norm = 1e-9; // allowed deviation from unit norm in checks
    double prob = 1e-9; // probabilities below this count as impossible

    void validate() const {
        for (double v : {orth, norm, prob}) {
            if (!(v > 0.0) || !(v < 1e-3))
                throw validation_error("tolerance values must lie in (0, 1e-3)");
        }
    }
};

struct Partite {
    std::string name;
    std::size_t dim = 0;
};

// One multipartite product state: one local vector per partite.
struct ProductState {
    std::string label;
    std::vector<LocalVector> locals;
};

// <u|v>, conjugate-linear in the first argument.
inline complex inner_product(const LocalVector& u, const LocalVector& v) {
    if (u.size() != v.size())
        throw validation_error("inner_product: dimension mismatch");
    complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < u.size(); ++i)
        acc += std::conj(u[i]) * v[i];
    return acc;
}

inline double norm_of(const LocalVector& v) {
    double acc = 0.0;
    for (const complex& a : v) acc += std::norm(a);
    return std::sqrt(acc);
}

// A mutually orthogonal set of normalized product states over fixed partites.
// Local vectors are normalized on construction; pairwise orthogonality of the
// full products is a class invariant.
class StateSet {
public:
    StateSet(std::vector<Partite> partites, std::vector<ProductState> states,
             Tolerance tol = {})
        : partites_(std::move(partites)), states_(std::move(states)), tol_(tol) {
        validate_and_normalize();
    }

    std::size_t partite_count() const { return partites_.size(); }
    std::size_t size() const { return states_.size(); }
    const std::vector<Partite>& partites() const { return partites_; }
    const ProductState& state(std::size_t i) const { return states_.at(i); }
    const std::vector<ProductState>& states() const { return states_; }
    const Tolerance& tolerance() const { return tol_; }

    // <x_i|x_j> restricted to partite p.
    complex local_inner(std::size_t i, std::size_t j, std::size_t p) const {
        return inner_product(states_.at(i).locals.at(p), states_.at(j).locals.at(p));
    }

    bool orthogonal_in(std::size_t i, std::size_t j, std::size_t p) const {
        return std::abs(local_inner(i, j, p)) < tol_.orth;
    }

    // Product of the per-partite inner products; zero iff the full product
    // states are orthogonal.
    complex global_overlap(std::size_t i, std::size_t j) const {
        complex acc{1.0, 0.0};
        for (std::size_t p = 0; p < partites_.size(); ++p)
            acc *= local_inner(i, j, p);
        return acc;
    }

    // Subset restriction. `indices` must be strictly increasing.
    StateSet select(const std::vector<std::size_t>& indices) const {
        std::vector<ProductState> sub;
        sub.reserve(indices.size());
        for (std::size_t k = 0; k < indices.size(); ++k) {
            if (indices[k] >= states_.size())
                throw validation_error("select: state index out of range");
            if (k > 0 && indices[k] <= indices[k - 1])
                throw validation_error("select: indices must be strictly increasing");
            sub.push_back(states_[indices[k]]);
        }
        return StateSet(partites_, std::move(sub), tol_);
    }

private:
    std::vector<Partite> partites_;
    std::vector<ProductState> states_;
    Tolerance tol_;

    void validate_and_normalize() {
        tol_.validate();
        if (partites_.size() < 2)
            throw validation_error("state set needs at least 2 partites");
        std::set<std::string> pnames;
        for (const Partite& p : partites_) {
            if (p.name.empty())
                throw validation_error("partite name must be non-empty");
            if (p.dim < 2)
                throw validation_error("partite '" + p.name + "' needs dimension >= 2");
            if (!pnames.insert(p.name).second)
                throw validation_error("duplicate partite name '" + p.name + "'");
        }
        if (states_.empty())
            throw validation_error("state set needs at least 1 state");

        for (std::size_t i = 0; i < states_.size(); ++i) {
            ProductState& st = states_[i];
            if (st.label.empty())
                st.label = "phi" + std::to_string(i + 1);
            if (st.locals.size() != partites_.size())
                throw validation_error("state '" + st.label + "' has " +
                                       std::to_string(st.locals.size()) +
                                       " locals, expected " +
                                       std::to_string(partites_.size()));
            for (std::size_t p = 0; p < partites_.size(); ++p) {
                LocalVector& v = st.locals[p];
                if (v.size() != partites_[p].dim)
                    throw validation_error("state '" + st.label + "' partite '" +
                                           partites_[p].name + "': dimension " +
                                           std::to_string(v.size()) + " != " +
                                           std::to_string(partites_[p].dim));
                double n = norm_of(v);
                if (n < 1e-12)
                    throw validation_error("state '" + st.label + "' partite '" +
                                           partites_[p].name + "': zero vector");
                // skip near-unit norms so ingest is idempotent at the bit level
                if (std::abs(n - 1.0) > 1e-12)
                    for (complex& a : v) a /= n;
            }
        }

        std::set<std::string> labels;
        for (const ProductState& st : states_)
            if (!labels.insert(st.label).second)
                throw validation_error("duplicate state label '" + st.label + "'");

        for (std::size_t i = 0; i < states_.size(); ++i) {
            for (std::size_t j = i + 1; j < states_.size(); ++j) {
                double mag = std::abs(global_overlap(i, j));
                if (mag >= tol_.orth) {
                    std::ostringstream os;
                    os << "states (" << i + 1 << "," << j + 1
                       << ") are not orthogonal: |overlap| = " << mag;
                    throw validation_error(os.str());
                }
            }
        }
    }
};

} // namespace loccx
