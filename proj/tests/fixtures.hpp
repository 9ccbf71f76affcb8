#pragma once

#include <string>
#include <vector>

namespace fixtures {

inline const std::string kLine = "1+x+y";
inline const std::string kNoHole = "x+y+x^2*y^2+x*y/2";
inline const std::string kHole = "x+y+x^2*y^2+2*x*y";
inline const std::string kDiamond = "x+y+x*y^2+x^2*y+5*x*y";
inline const std::string kFive = "x+30*x*y+20*x^2*y+x^3*y+y^2";
inline const std::string kLacking = "1+3*x+3*y+x^2*y+4*x^3*y+x*y^2+10*x^2*y^2+4*x*y^3";
inline const std::string kEleven = "x+x^2+y+x*y^3+x^4*y^2+3*x^3*y+10*x*y+10*x^2*y+10*x*y^2+15*x^2*y^2+10*x^3*y^2";

inline const std::vector<std::string> kSix = {kNoHole, kHole, kDiamond, kFive, kLacking, kEleven};

/// Fixtures for which every hypothesis of the limit theorem holds.
inline const std::vector<std::string> kEligible = {kHole, kDiamond, kFive};

} // namespace fixtures
