#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "k3dual/lattice.hpp"

namespace k3dual {

struct SearchLimits {
    long bound = 8;                        // max |coordinate| for indefinite searches
    std::uint64_t max_nodes = 20000000;    // deterministic work cap
    std::optional<std::chrono::steady_clock::time_point> deadline;
    const std::atomic<bool>* cancel = nullptr;
};

long default_search_bound();  // K3DUAL_SEARCH_BOUND or 8

enum class SearchStatus {
    Found,
    NotFound,   // nothing within the bound; not a proof of nonexistence
    Rejected,   // invariants differ, so no solution exists
    Aborted,    // node cap, deadline or cancellation
};
const char* search_status_name(SearchStatus s);

// Calls visit(x, norm) for every nonzero x with x·Q·x^T <= radius, Q positive
// definite. visit returns false to stop early.
enum class EnumerationOutcome { Completed, Stopped, Aborted };
EnumerationOutcome enumerate_short_vectors(const IntMatrix& q, const Integer& radius, const SearchLimits& limits,
                                           const std::function<bool(const IntVector&, const Integer&)>& visit);

struct EmbeddingResult {
    SearchStatus status = SearchStatus::NotFound;
    std::optional<IntMatrix> rows;  // B with B·G_host·B^T = G_pattern
    bool exhaustive = false;        // definite hosts are searched completely
    std::string detail;
};

EmbeddingResult find_embedding(const GramLattice& pattern, const GramLattice& host, const SearchLimits& limits);

struct IsometryResult {
    SearchStatus status = SearchStatus::NotFound;
    std::optional<IntMatrix> witness;  // unimodular B with B·G1·B^T = G2
    std::string detail;
};

IsometryResult find_isometry(const GramLattice& from, const GramLattice& to, const SearchLimits& limits);
bool is_isometry_witness(const GramLattice& from, const GramLattice& to, const IntMatrix& b);

struct Complement {
    IntMatrix basis;  // rows
    GramLattice lattice;
};

// Orthogonal complement of the span of `rows` computed over the integers.
Complement orthogonal_complement(const GramLattice& l, const IntMatrix& rows);

struct HyperbolicPlane {
    IntVector e, f;
    Complement complement;
};

// Splits off span(e, f) for given e, f with e^2 = f^2 = 0, e·f = 1.
HyperbolicPlane hyperbolic_split(const GramLattice& l, const IntVector& e, const IntVector& f);

// Given primitive isotropic e with gcd(G·e) = 1, builds a partner f.
std::optional<IntVector> hyperbolic_partner(const GramLattice& l, const IntVector& e);

struct HyperbolicPlaneResult {
    SearchStatus status = SearchStatus::NotFound;
    std::optional<HyperbolicPlane> plane;
    std::string detail;
};

// Searches an isotropic e with |e_i| <= bound that spans a copy of U.
HyperbolicPlaneResult find_hyperbolic_plane(const GramLattice& l, const SearchLimits& limits);

bool is_hyperbolic_plane(const GramLattice& l, const HyperbolicPlane& p);

}  // namespace k3dual
