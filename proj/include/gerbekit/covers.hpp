#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "gerbekit/trigform.hpp"

namespace gerbekit {

// Open arc (center - half_width, center + half_width) on R / 2piZ.
struct Arc {
    double center = 0.0;
    double half_width = 0.0;
};

bool arc_contains_interval(const Arc& arc, double lo, double hi);

// Product cover of a torus: one list of arcs per circle factor, pieces are the
// boxes indexed lexicographically (first factor slowest).
class Cover {
public:
    Cover(std::vector<std::vector<Arc>> factors, std::string id);

    const std::string& id() const { return id_; }
    int num_factors() const { return int(factors_.size()); }
    const std::vector<Arc>& factor(int f) const { return factors_[f]; }
    int size() const { return size_; }

    std::vector<int> box_index(int piece) const;
    int piece_index(const std::vector<int>& box) const;
    Arc arc(int piece, int f) const { return factors_[f][box_index(piece)[f]]; }

    // Nonempty common intersection of the listed pieces (repeats allowed).
    bool intersects(const std::vector<int>& pieces) const;
    bool contains_point(int piece, const std::vector<double>& x) const;

    // Tuples of length `len` with nonempty intersection. Ordered tuples allow
    // repeats and any order; otherwise strictly increasing tuples only.
    const std::vector<std::vector<int>>& nerve(int len, bool ordered) const;

private:
    std::vector<std::vector<Arc>> factors_;
    std::string id_;
    int size_ = 1;
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, bool>, std::vector<std::vector<int>>> nerve_cache_;
};

using CoverPtr = std::shared_ptr<const Cover>;

CoverPtr make_circle_cover(int N, double overlap);
CoverPtr make_torus_cover(int N, int M, double overlap);
CoverPtr product_cover(const CoverPtr& a, const CoverPtr& b);

struct Subordination {
    CoverPtr source;  // the refinement V
    CoverPtr target;  // the cover U
    std::vector<int> map;
};

bool is_valid_subordination(const Subordination& s);
Subordination identity_subordination(const CoverPtr& c);

struct Refinement {
    CoverPtr cover;
    Subordination sigma;
    Subordination sigma_prime;
};

Refinement refine(const CoverPtr& c, int factor);

// Cell complex dual to a triangulation of S^1 or T^2. Top cells are indexed
// 0..n-1 in construction order; faces are keyed by strictly decreasing
// multi-indices and carry the orientation induced as a boundary component of
// the face obtained by dropping the last index.
class DualCellDecomposition {
public:
    DualCellDecomposition(int dim, std::vector<Cell> top, std::map<std::vector<int>, Cell> faces, std::string id);

    int dim() const { return dim_; }
    const std::string& id() const { return id_; }
    int num_top() const { return int(top_.size()); }
    const Cell& top(int i) const { return top_[i]; }
    // All decreasing multi-indices of length k (1 <= k <= dim + 1).
    const std::vector<std::vector<int>>& faces_of_length(int k) const { return by_len_.at(k); }
    // Face for a multi-index in any order; the orientation picks up the sign of
    // the sorting permutation. Throws if the cells do not meet.
    Cell face(const std::vector<int>& idx) const;

private:
    int dim_;
    std::vector<Cell> top_;
    std::map<std::vector<int>, Cell> faces_;
    std::map<int, std::vector<std::vector<int>>> by_len_;
    std::string id_;
};

using DecompositionPtr = std::shared_ptr<const DualCellDecomposition>;

DecompositionPtr make_circle_decomposition(int N);
DecompositionPtr make_torus_hex_decomposition(int N);

// Cover pieces containing each top cell.
std::vector<std::vector<int>> containing_pieces(const DualCellDecomposition& dec, const Cover& cover);
// Default subordination: the first containing piece; throws if some cell is
// not contained in any piece.
std::vector<int> subordinate(const DualCellDecomposition& dec, const Cover& cover);
bool is_subordinate(const DualCellDecomposition& dec, const Cover& cover, const std::vector<int>& rho);

double cell_volume(const Cell& c);
std::string describe(const Cover& c);
std::string describe(const DualCellDecomposition& d);

// Rebuild covers and decompositions from their ids, e.g.
// "circle(N=3,ov=0.3)xtorus(N=3,M=3,ov=0.9)" or "torus_hex(N=9)".
std::vector<CoverPtr> cover_components_from_id(const std::string& id);
CoverPtr cover_from_id(const std::string& id);
DecompositionPtr decomposition_from_id(const std::string& id);

}  // namespace gerbekit
