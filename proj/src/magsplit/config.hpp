#pragma once

#include "magsplit/grid2d.hpp"
#include "magsplit/interaction.hpp"
#include "magsplit/profile.hpp"
#include "magsplit/radial.hpp"

#include <string>
#include <vector>

namespace magsplit {

/// Flat key=value run configuration with dotted section prefixes.
struct RunConfig {
    // profile.*
    double b0 = 1.0, b1 = 2.0, a = 1.0, L = 5.0, kappa = 1.0;
    std::string profile_table; // optional two-column CSV u,beta

    // radial.*
    RadialSolverConfig radial;

    // quadrature.*
    QuadratureConfig quad;

    // grid2d.*
    Grid2DParams grid;
    double grid_h = 0.5;

    // run.*
    std::vector<double> h_list{0.1, 0.05, 0.025};
    bool require_theorem_hypothesis = false;
    int jobs = 1;

    std::vector<std::string> warnings;

    MagneticProfile make_profile() const;
    WellGeometry make_geometry() const;
};

/// Parses and validates; throws std::invalid_argument listing every violated
/// invariant and unknown key at once.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::string& path);

/// Shortest round-trip decimal rendering (deterministic CSV floats).
std::string format_double(double v);

} // namespace magsplit
