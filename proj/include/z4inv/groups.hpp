#pragma once

// The four named groups: G and G8 acting on t0..t3, and the two small groups
// "appB-G" (2 variables) and "appB-H" (3 variables).

#include <string>
#include <vector>

#include "z4inv/matgroup.hpp"

namespace z4inv {

struct NamedGroup {
    std::string name;
    std::string variant;  // which generator normalization closed (H only differs)
    FiniteMatrixGroup group;
    CosetSystem cosets;
    RationalFormula molien_formula;
    unsigned step = 1;          // weight step of the generator scan (named groups: 4, 8, 2, 2)
    unsigned search_bound = 0;  // largest weight scanned for E-ring generators
};

std::vector<std::string> named_group_names();
bool is_named_group(const std::string& name);

/// Generators as printed.
std::vector<CycMatrix> named_generators(const std::string& name);

/// Closed group with cosets; cached for the process lifetime.  For appB-H the
/// printed generators are closed first and, if that exceeds the cap, the
/// first generator is rescaled by 1/sqrt(5) and closure is retried.
const NamedGroup& named_group(const std::string& name);

/// Builds an unnamed group from user generators (no closed-form series).  The
/// step is the number of scalar matrices in the group: phi_k vanishes unless
/// it divides k.
NamedGroup make_group(const std::string& name, const std::vector<CycMatrix>& generators,
                      std::size_t cap = kDefaultClosureCap);

/// Wraps an already closed group (e.g. one loaded from a cache).  Named
/// groups get their closed-form series and fixed step.
NamedGroup assemble_group(const std::string& name, std::string variant, FiniteMatrixGroup group);

/// Seeds the process cache used by named_group; an existing entry wins.
void preload_named_group(NamedGroup g);

}  // namespace z4inv
