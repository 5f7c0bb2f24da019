#pragma once

#include "magsplit/profile.hpp"

#include <string>
#include <vector>

namespace magsplit {

struct VerifyCheck {
    std::string name;
    bool ok = false;
    std::string detail;
};

/// Fast identity suite: closed forms against their independent quadrature
/// routes, structural inequalities, and exact symmetries.
std::vector<VerifyCheck> run_verify_suite(const MagneticProfile& p, const WellGeometry& g);

bool all_ok(const std::vector<VerifyCheck>& checks);

} // namespace magsplit
