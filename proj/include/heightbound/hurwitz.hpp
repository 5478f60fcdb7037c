#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "heightbound/rational.hpp"

namespace hb {

// Preimages of one branch point sharing a ramification index.
struct Fiber {
    Integer index;  // e_p >= 1
    Integer count;  // >= 1
};

struct BranchEntry {
    std::string label;
    std::vector<Fiber> fibers;
};

struct RamificationProfile {
    std::vector<BranchEntry> branches;
};

struct CheckedBranch {
    std::string label;
    Integer ramification;  // sum of (e_p - 1) over the fiber
};

struct CheckedProfile {
    Integer degree;
    RamificationProfile profile;
    std::vector<CheckedBranch> branches;
    Integer total_ramification;
};

// Every fiber must have total multiplicity `degree`. Throws DomainError
// naming the first offending branch.
CheckedProfile validate_profile(const Integer& degree, const RamificationProfile& profile);

// Genus of the cover from 2 - 2g = deg (2 - 2 g_base) - sum (e_p - 1).
Integer hurwitz_genus(const Integer& degree, const Integer& base_genus, const RamificationProfile& profile);

// c0 + c1 * n, used for profiles that depend on a family parameter. Parses
// "6n", "6n-6", "2n", "n", "-n+3", "12".
struct LinearInN {
    Integer constant = 0;
    Integer slope = 0;

    Integer at(const Integer& n) const { return constant + slope * n; }
    std::string to_string() const;
};
LinearInN parse_linear_in_n(std::string_view text);

struct FiberTemplate {
    LinearInN index;
    LinearInN count;
};
struct BranchTemplate {
    std::string label;
    std::vector<FiberTemplate> fibers;
};
struct ProfileTemplate {
    LinearInN degree;
    Integer base_genus = 0;
    std::vector<BranchTemplate> branches;

    // Concrete profile at parameter n (n >= 1).
    RamificationProfile instantiate(const Integer& n) const;
};

// Ramification of the degree-6n map from the curve x1^n + 1 = y2 inside
// E x E to P^1: four points with 2n double preimages, the point 1 with six
// preimages of index n, three points with three double preimages, and a
// totally ramified point at infinity.
ProfileTemplate family_profile_template();

}  // namespace hb
