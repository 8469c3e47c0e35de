#pragma once

#include <algorithm>
#include <array>
#include <random>
#include <set>

#include "loccx/fixtures.hpp"
#include "loccx/ortho_graph.hpp"

namespace loccx {

enum class Family { domino_like, clique_mix, p4_forced };

inline Family family_from_string(const std::string& f) {
    if (f == "domino_like") return Family::domino_like;
    if (f == "clique_mix") return Family::clique_mix;
    if (f == "p4_forced") return Family::p4_forced;
    throw validation_error("unknown family '" + f +
                           "' (expected domino_like, clique_mix or p4_forced)");
}

inline std::string family_to_string(Family f) {
    switch (f) {
        case Family::domino_like: return "domino_like";
        case Family::clique_mix: return "clique_mix";
        case Family::p4_forced: return "p4_forced";
    }
    return "?";
}

struct GeneratorParams {
    std::vector<std::size_t> dims;
    std::size_t n_states = 0;
    std::uint64_t seed = 0;
    Family family = Family::domino_like;
};

namespace detail {

constexpr double kGenericMargin = 1e-6;

inline std::string partite_name(std::size_t i) {
    if (i < 26) return std::string(1, static_cast<char>('A' + i));
    return "P" + std::to_string(i + 1);
}

inline std::vector<Partite> make_partites(const std::vector<std::size_t>& dims) {
    std::vector<Partite> parts;
    for (std::size_t i = 0; i < dims.size(); ++i)
        parts.push_back(Partite{partite_name(i), dims[i]});
    return parts;
}

inline complex gaussian_complex(std::mt19937_64& rng) {
    double u1 = std::max(unit_double(rng), 1e-300);
    double u2 = unit_double(rng);
    double r = std::sqrt(-2.0 * std::log(u1));
    constexpr double tau = 6.283185307179586;
    return complex{r * std::cos(tau * u2), r * std::sin(tau * u2)};
}

inline LocalVector gaussian_vector(std::mt19937_64& rng, std::size_t dim) {
    LocalVector v(dim);
    for (complex& a : v) a = gaussian_complex(rng);
    return v;
}

// v -= <u|v> u for unit u.
inline void project_out(LocalVector& v, const LocalVector& u) {
    complex c = inner_product(u, v);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * u[i];
}

// Removes the component of v inside span{vs}; the vs need not be orthogonal.
inline void project_out_span(LocalVector& v, const std::vector<const LocalVector*>& vs) {
    std::vector<LocalVector> basis;
    for (const LocalVector* u : vs) {
        LocalVector t = *u;
        for (const LocalVector& b : basis) project_out(t, b);
        double n = norm_of(t);
        if (n < 1e-10) continue;
        for (complex& a : t) a /= n;
        basis.push_back(std::move(t));
    }
    for (const LocalVector& b : basis) project_out(v, b);
}

inline bool try_normalize(LocalVector& v) {
    double n = norm_of(v);
    if (n < 1e-8) return false;
    for (complex& a : v) a /= n;
    return true;
}

inline LocalVector random_unit(std::mt19937_64& rng, std::size_t dim) {
    for (;;) {
        LocalVector v = gaussian_vector(rng, dim);
        if (try_normalize(v)) return v;
    }
}

// Orthonormal k-frame drawn from seeded Gaussians.
inline std::vector<LocalVector> random_frame(std::mt19937_64& rng, std::size_t dim,
                                             std::size_t k) {
    if (k > dim) throw validation_error("random_frame: k exceeds dimension");
    std::vector<LocalVector> out;
    while (out.size() < k) {
        LocalVector v = gaussian_vector(rng, dim);
        for (const LocalVector& u : out) project_out(v, u);
        if (try_normalize(v)) out.push_back(std::move(v));
    }
    return out;
}

inline void check_common_params(const GeneratorParams& gp) {
    if (gp.dims.size() < 2)
        throw validation_error("generator needs at least 2 partites");
    for (std::size_t d : gp.dims)
        if (d < 2) throw validation_error("generator needs every dimension >= 2");
    if (gp.n_states < 2 || gp.n_states > 64)
        throw validation_error("generator supports 2..64 states");
}

// --- disjoint tiling family -------------------------------------------------

inline StateSet gen_domino_like(const GeneratorParams& gp, std::mt19937_64& rng) {
    const std::vector<std::size_t>& dims = gp.dims;
    std::size_t P = dims.size();
    double cell_count = 1.0;
    for (std::size_t d : dims) cell_count *= static_cast<double>(d);
    if (static_cast<double>(gp.n_states) > cell_count)
        throw validation_error("n_states exceeds the number of grid cells");

    std::vector<std::vector<std::size_t>> cells;
    std::vector<std::size_t> cur(P, 0);
    for (;;) {
        cells.push_back(cur);
        std::size_t a = 0;
        while (a < P) {
            if (++cur[a] < dims[a]) break;
            cur[a] = 0;
            ++a;
        }
        if (a == P) break;
    }
    for (std::size_t i = cells.size(); i > 1; --i)
        std::swap(cells[i - 1], cells[rng() % i]);

    auto linear = [&](const std::vector<std::size_t>& c) {
        std::uint64_t idx = 0;
        for (std::size_t p = 0; p < P; ++p) idx = idx * dims[p] + c[p];
        return idx;
    };
    std::set<std::uint64_t> occupied;

    auto basis_state = [&](const std::vector<std::size_t>& c) {
        ProductState st;
        for (std::size_t p = 0; p < P; ++p) st.locals.push_back(basis(dims[p], c[p]));
        return st;
    };

    std::vector<ProductState> states;
    for (const std::vector<std::size_t>& cell : cells) {
        if (states.size() >= gp.n_states) break;
        if (occupied.count(linear(cell))) continue;
        bool placed = false;
        if (gp.n_states - states.size() >= 2 && unit_double(rng) < 0.7) {
            std::vector<std::size_t> axes(P);
            for (std::size_t p = 0; p < P; ++p) axes[p] = p;
            for (std::size_t i = P; i > 1; --i) std::swap(axes[i - 1], axes[rng() % i]);
            for (std::size_t axis : axes) {
                int first = unit_double(rng) < 0.5 ? 1 : -1;
                for (int delta : {first, -first}) {
                    if (delta < 0 && cell[axis] == 0) continue;
                    if (delta > 0 && cell[axis] + 1 >= dims[axis]) continue;
                    std::vector<std::size_t> partner = cell;
                    partner[axis] = static_cast<std::size_t>(
                        static_cast<long long>(cell[axis]) + delta);
                    if (occupied.count(linear(partner))) continue;
                    std::size_t lo = std::min(cell[axis], partner[axis]);
                    std::size_t hi = std::max(cell[axis], partner[axis]);
                    for (double sign : {+1.0, -1.0}) {
                        ProductState st;
                        for (std::size_t p = 0; p < P; ++p)
                            st.locals.push_back(p == axis
                                                    ? basis_pair(dims[p], lo, hi, sign)
                                                    : basis(dims[p], cell[p]));
                        states.push_back(std::move(st));
                    }
                    occupied.insert(linear(cell));
                    occupied.insert(linear(partner));
                    placed = true;
                    break;
                }
                if (placed) break;
            }
        }
        if (!placed) {
            states.push_back(basis_state(cell));
            occupied.insert(linear(cell));
        }
    }
    return StateSet(make_partites(dims), std::move(states));
}

// --- clique plus superposition pairs ----------------------------------------

inline StateSet gen_clique_mix(const GeneratorParams& gp, std::mt19937_64& rng) {
    const std::vector<std::size_t>& dims = gp.dims;
    std::size_t P = dims.size();
    std::size_t n = gp.n_states;
    std::size_t m = std::min(dims[0], n);
    std::size_t fills = n - m;
    std::size_t pairs = fills / 2;
    std::size_t singles = fills % 2;
    std::size_t groups = pairs + singles;
    if (groups > dims[1] - 1)
        throw validation_error("clique_mix infeasible: needs ceil((n-m)/2) <= dims[1]-1");

    // group_of[i] >= 0 marks fill states; -1 marks clique states.
    std::vector<int> group_of(n, -1);
    std::vector<int> pair_of(n, -1);

    for (std::size_t attempt = 0; attempt < 50; ++attempt) {
        std::vector<ProductState> states(n);
        std::vector<LocalVector> frame0 = random_frame(rng, dims[0], m);
        std::vector<LocalVector> wbase;
        {
            std::vector<LocalVector> reduced = random_frame(rng, dims[1] - 1, groups);
            for (LocalVector& r : reduced) {
                LocalVector w(dims[1], complex{0.0, 0.0});
                for (std::size_t t = 0; t < r.size(); ++t) w[t + 1] = r[t];
                wbase.push_back(std::move(w));
            }
        }
        for (std::size_t i = 0; i < m; ++i) {
            states[i].locals.push_back(frame0[i]);
            states[i].locals.push_back(basis(dims[1], 0));
            group_of[i] = -1;
        }
        std::size_t next = m;
        for (std::size_t g = 0; g < pairs; ++g) {
            std::vector<LocalVector> pq = random_frame(rng, dims[0], 2);
            for (double sign : {+1.0, -1.0}) {
                LocalVector v(dims[0]);
                for (std::size_t t = 0; t < dims[0]; ++t)
                    v[t] = pq[0][t] + sign * pq[1][t];
                states[next].locals.push_back(std::move(v));
                states[next].locals.push_back(wbase[g]);
                group_of[next] = static_cast<int>(g);
                pair_of[next] = static_cast<int>(g);
                ++next;
            }
        }
        if (singles) {
            states[next].locals.push_back(random_unit(rng, dims[0]));
            states[next].locals.push_back(wbase[pairs]);
            group_of[next] = static_cast<int>(pairs);
            ++next;
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t p = 2; p < P; ++p)
                states[i].locals.push_back(random_unit(rng, dims[p]));

        // intended orthogonality: partite 0 for clique pairs and +/- pairs,
        // partite 1 between different fill groups and fill vs clique
        auto intended = [&](std::size_t p, std::size_t i, std::size_t j) {
            if (p == 0)
                return (group_of[i] < 0 && group_of[j] < 0) ||
                       (pair_of[i] >= 0 && pair_of[i] == pair_of[j]);
            if (p == 1)
                return (group_of[i] >= 0 || group_of[j] >= 0) &&
                       group_of[i] != group_of[j];
            return false;
        };
        bool generic = true;
        for (std::size_t i = 0; i < n && generic; ++i)
            for (std::size_t j = i + 1; j < n && generic; ++j)
                for (std::size_t p = 0; p < P && generic; ++p) {
                    if (intended(p, i, j)) continue;
                    LocalVector a = states[i].locals[p], b = states[j].locals[p];
                    double na = norm_of(a), nb = norm_of(b);
                    if (std::abs(inner_product(a, b)) < kGenericMargin * na * nb)
                        generic = false;
                }
        if (!generic) continue;

        StateSet s(make_partites(dims), std::move(states));
        if (max_local_clique(s, 0).size() != m) continue;
        return s;
    }
    throw validation_error("clique_mix: no generic instance found for this seed");
}

// --- seven states whose local graphs are triangle-free cycles ----------------

inline std::array<std::vector<std::uint64_t>, 3> seven_cycle_adjacency() {
    std::array<std::vector<std::uint64_t>, 3> adj;
    for (std::size_t r = 0; r < 3; ++r) {
        adj[r].assign(7, 0);
        std::size_t seq[8] = {6,
                              r,
                              (r + 1) % 6,
                              (r + 5) % 6,
                              (r + 2) % 6,
                              (r + 4) % 6,
                              (r + 3) % 6,
                              6};
        for (std::size_t e = 0; e < 7; ++e) {
            std::size_t u = seq[e], v = seq[e + 1];
            adj[r][u] |= std::uint64_t{1} << v;
            adj[r][v] |= std::uint64_t{1} << u;
        }
    }
    return adj;
}

inline StateSet gen_p4_forced(const GeneratorParams& gp, std::mt19937_64& rng) {
    const std::vector<std::size_t>& dims = gp.dims;
    std::size_t P = dims.size();
    if (gp.n_states != 7)
        throw validation_error("p4_forced generates exactly 7 states");
    if (P < 3)
        throw validation_error("p4_forced needs at least 3 partites");
    for (std::size_t p = 0; p < 3; ++p)
        if (dims[p] < 3)
            throw validation_error("p4_forced needs dimension >= 3 in the first 3 partites");

    std::array<std::vector<std::uint64_t>, 3> adj = seven_cycle_adjacency();

    for (std::size_t attempt = 0; attempt < 200; ++attempt) {
        std::vector<std::vector<LocalVector>> locals(P, std::vector<LocalVector>(7));
        bool ok = true;

        // first three partites: faithful representations of the cycle classes
        for (std::size_t p = 0; p < 3 && ok; ++p) {
            for (std::size_t v = 0; v < 7 && ok; ++v) {
                LocalVector w = gaussian_vector(rng, dims[p]);
                std::vector<const LocalVector*> earlier;
                for (std::size_t u = 0; u < v; ++u)
                    if ((adj[p][v] >> u) & 1) earlier.push_back(&locals[p][u]);
                project_out_span(w, earlier);
                if (!try_normalize(w)) { ok = false; break; }
                locals[p][v] = std::move(w);
            }
            for (std::size_t v = 0; v < 7 && ok; ++v)
                for (std::size_t u = 0; u < v && ok; ++u)
                    if (!((adj[p][v] >> u) & 1) &&
                        std::abs(inner_product(locals[p][u], locals[p][v])) < kGenericMargin)
                        ok = false;
        }
        // remaining partites: generic, nowhere orthogonal
        for (std::size_t p = 3; p < P && ok; ++p) {
            for (std::size_t v = 0; v < 7; ++v) locals[p][v] = random_unit(rng, dims[p]);
            for (std::size_t v = 0; v < 7 && ok; ++v)
                for (std::size_t u = 0; u < v && ok; ++u)
                    if (std::abs(inner_product(locals[p][u], locals[p][v])) < kGenericMargin)
                        ok = false;
        }
        if (!ok) continue;

        std::vector<ProductState> states(7);
        for (std::size_t v = 0; v < 7; ++v)
            for (std::size_t p = 0; p < P; ++p)
                states[v].locals.push_back(locals[p][v]);
        return StateSet(make_partites(dims), std::move(states));
    }
    throw validation_error("p4_forced: no generic instance found for this seed");
}

} // namespace detail

// Deterministic seeded instance generator. Every family produces a valid
// mutually orthogonal product set; unintended inner products are kept away
// from zero so the case analysis of the instance is stable.
inline StateSet generate(const GeneratorParams& gp) {
    detail::check_common_params(gp);
    std::mt19937_64 rng(gp.seed);
    switch (gp.family) {
        case Family::domino_like: return detail::gen_domino_like(gp, rng);
        case Family::clique_mix: return detail::gen_clique_mix(gp, rng);
        case Family::p4_forced: return detail::gen_p4_forced(gp, rng);
    }
    throw validation_error("unknown family");
}

} // namespace loccx
