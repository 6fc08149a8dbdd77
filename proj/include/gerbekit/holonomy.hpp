#pragma once

#include <complex>
#include <vector>

#include "gerbekit/cochain.hpp"
#include "gerbekit/covers.hpp"

namespace gerbekit {

struct HolonomyResult {
    double value = 0.0;
    int cells_used = 0;
};

// Signed sum over the faces of the decomposition of the cell integrals of the
// cochain components picked out by rho. The cocycle condition is checked
// unless `check` is false.
HolonomyResult holonomy_detail(const DiffCochain& w, const DualCellDecomposition& dec, const std::vector<int>& rho,
                               bool check = true);
double holonomy(const DiffCochain& w, const DualCellDecomposition& dec, const std::vector<int>& rho);
std::complex<double> holonomy_phase(const DiffCochain& w, const DualCellDecomposition& dec,
                                    const std::vector<int>& rho);
double invariance_defect(const DiffCochain& w, const DualCellDecomposition& dec, const std::vector<int>& rho,
                         const std::vector<int>& rho_prime);

// Distance from x to the nearest element of 2*pi*Z.
double distance_to_2pi_z(double x);

// Class of a flat 2-cocycle on T^2 as its holonomy over the fundamental
// cycle, reduced to [0, 2*pi).
double classify_flat_2cocycle(const DiffCochain& w, const DualCellDecomposition& dec, const std::vector<int>& rho);

// Flat 1-cocycle on a circle cover with zero local 1-forms and constant
// transitions whose holonomy is theta (mod 2*pi).
DiffCochain flat_circle_cocycle(const CoverPtr& cover, double theta);

}  // namespace gerbekit
