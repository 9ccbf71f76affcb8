#pragma once

#include <vector>

namespace atlas {

/// Integer exponent vector / lattice point in Z^n.
using LatticePoint = std::vector<int>;

/// Point in R^n.
using RealPoint = std::vector<double>;

inline RealPoint to_real(const LatticePoint& p) {
    return RealPoint(p.begin(), p.end());
}

} // namespace atlas
