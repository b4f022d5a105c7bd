#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "k3dual/json_io.hpp"
#include "k3dual/polytope.hpp"
#include "k3dual/weight_system.hpp"

namespace k3dual {

// Rows are coefficients over the kept rays of one side; the resulting Gram
// is compared against the lattice expression `target`.
struct BasisChange {
    IntMatrix rows;
    std::string target;
};

struct SideConfig {
    std::optional<std::vector<LatticeVector>> ordering;
    std::optional<std::array<std::size_t, 3>> dropped;  // 0-based
};

struct SideExpectation {
    std::optional<long> rho;
    std::optional<std::string> picard;               // lattice expression
    std::vector<std::string> alternative_picard;     // other printed identifications
    std::optional<Integer> det;
    std::optional<SignaturePair> signature;
    std::optional<long> discriminant_length;         // printed l(A)
    std::optional<long> negative_gap;                // printed l- - t-
    std::optional<long> rank_gap;                    // printed rk(ambient) - rk
    bool split_u = false;
    std::optional<long> complement_rank;
    std::optional<Integer> complement_det;
    std::vector<BasisChange> basis_changes;
};

struct CaseExpectation {
    std::optional<Integer> abs_discriminant;
    std::optional<std::vector<Integer>> invariant_factors;
    SideExpectation delta, delta_prime;
};

struct CaseNote {
    int step = 0;
    std::string text;
};

struct CaseDefinition {
    std::string name;
    std::string singularity;        // B
    std::string dual_singularity;   // B'
    PolytopeInput delta, delta_prime;
    SideConfig delta_config, delta_prime_config;
    CaseExpectation expected;
    std::vector<CaseNote> notes;
};

CaseDefinition case_from_json(const Json& j, const std::string& where);
Json case_to_json(const CaseDefinition& c);

// The four builtin cases, polytopes rebuilt from the printed ray lists.
// Throws if a hull does not reproduce its printed ray list.
const std::vector<CaseDefinition>& builtin_cases();
std::optional<CaseDefinition> builtin_case(const std::string& name);

// Printed ray lists, in printed order.
struct PrintedRays {
    std::string case_name;
    std::vector<LatticeVector> delta, delta_prime;
};
const std::vector<PrintedRays>& printed_rays();

struct MonomialCheck {
    std::string name;
    std::array<Integer, 4> exponents;
    LatticeVector expected;
};

// The worked example of a polar pair with its weight systems.
struct WorkedExample {
    std::vector<LatticeVector> delta;
    std::vector<LatticeVector> delta_prime;
    std::vector<LatticeVector> printed_dual;  // vertices of the dual of delta_prime
    IntMatrix printed_transform;              // maps delta onto printed_dual, row action
    WeightSystem weights;
    WeightSystem weights_prime;
    std::vector<MonomialCheck> monomials;
    std::vector<MonomialCheck> monomials_prime;
};

const WorkedExample& worked_example();

}  // namespace k3dual
