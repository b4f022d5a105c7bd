#pragma once

#include <string>
#include <vector>

#include "k3dual/dataset.hpp"
#include "k3dual/polytope.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) { return std::string(K3DUAL_TEST_DATA) + "/" + name; }

inline std::vector<k3dual::LatticeVector> cube_points(long s = 1) {
    std::vector<k3dual::LatticeVector> pts;
    for (long x : {-s, s})
        for (long y : {-s, s})
            for (long z : {-s, s}) pts.push_back({x, y, z});
    return pts;
}

inline std::vector<k3dual::LatticeVector> octahedron_points() {
    return {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
}

struct NamedPolytope {
    std::string name;
    std::string side;  // "delta" or "delta_prime"
    std::vector<k3dual::LatticeVector> printed_rays;
};

// The eight polytopes of the builtin cases with their printed ray lists.
inline std::vector<NamedPolytope> builtin_polytopes() {
    std::vector<NamedPolytope> out;
    for (const auto& p : k3dual::printed_rays()) {
        out.push_back({p.case_name, "delta", p.delta});
        out.push_back({p.case_name, "delta_prime", p.delta_prime});
    }
    return out;
}

}  // namespace fixtures
