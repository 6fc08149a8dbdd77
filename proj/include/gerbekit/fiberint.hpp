#pragma once

#include <vector>

#include "gerbekit/cochain.hpp"
#include "gerbekit/covers.hpp"

namespace gerbekit {

// Monotone lattice paths in the rectangular network {0..r-1} x {0..k-1} from
// (0,0) to (r-1,k-1). Steps along the a-axis are horizontal.
struct LatticePath {
    std::vector<std::pair<int, int>> nodes;  // (a position, b position)
    int area = 0;
};

enum class AreaConvention {
    LeftOfPath,   // unit squares between the path and the b-axis
    BelowPath,    // unit squares between the path and the a-axis
};

struct PathNetwork {
    int r = 0, k = 0;
    std::vector<LatticePath> paths;
};

PathNetwork make_path_network(int r, int k, AreaConvention conv = AreaConvention::LeftOfPath);
long long binomial(int n, int k);

// Product X x E with the cover of X x E built as product_cover(X, E); the
// fiber E is decomposed by `dec`.
struct ProductSetup {
    CoverPtr X;
    CoverPtr E;
    CoverPtr XE;
    DecompositionPtr dec;

    ProductSetup(CoverPtr x, CoverPtr e, DecompositionPtr d);
    int pair(int a, int b) const { return a * E->size() + b; }
    int base_dim() const { return X->num_factors(); }
    int fiber_dim() const { return E->num_factors(); }
    std::vector<int> fiber_axes() const;
};

struct PushforwardOptions {
    AreaConvention area = AreaConvention::LeftOfPath;
};

// Path-sum symbol: sum over monotone paths of (-1)^{A(path)} w at the node
// sequence. Returns a form; for total length n+2 use t_symbol_integer.
TrigForm t_symbol(const MultiIndex& a, const MultiIndex& b, const DiffCochain& w, const ProductSetup& s,
                  const PushforwardOptions& opt = {});
long long t_symbol_integer(const MultiIndex& a, const MultiIndex& b, const DiffCochain& w, const ProductSetup& s,
                           const PushforwardOptions& opt = {});

DiffCochain pushforward(const DiffCochain& w, const ProductSetup& s, const std::vector<int>& rho,
                        const PushforwardOptions& opt = {});
double pushforward_commutes_defect(const DiffCochain& w, const ProductSetup& s, const std::vector<int>& rho,
                                   const PushforwardOptions& opt = {});
DiffCochain pushforward_homotopy(const DiffCochain& w, const ProductSetup& s, const std::vector<int>& rho,
                                 const std::vector<int>& rho_prime, const PushforwardOptions& opt = {});
// max | int_rho - int_rho' - (d k(w) + k(d w)) |
double pushforward_homotopy_residual(const DiffCochain& w, const ProductSetup& s, const std::vector<int>& rho,
                                     const std::vector<int>& rho_prime, const PushforwardOptions& opt = {});

// Pull a cochain on E back to X x E along the projection.
DiffCochain pullback_from_fiber(const DiffCochain& w, const ProductSetup& s);

}  // namespace gerbekit
