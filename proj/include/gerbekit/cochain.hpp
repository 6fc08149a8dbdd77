#pragma once

#include <map>
#include <optional>
#include <vector>

#include "gerbekit/covers.hpp"
#include "gerbekit/trigform.hpp"

namespace gerbekit {

using MultiIndex = std::vector<int>;

// Multiplet (H, w^n_a, w^{n-1}_{ab}, ..., w^{-1}) over a cover of a torus.
// Level r holds forms of degree n - r on (r+1)-fold multi-indices; level n+1
// holds integers m standing for the constants 2*pi*m.
//
// An alternating cochain stores strictly increasing multi-indices only; other
// orders are recovered with the permutation sign and repeated indices read as
// zero. A general (ordered) cochain stores every multi-index explicitly.
class DiffCochain {
public:
    DiffCochain(int degree, CoverPtr cover, bool alternating = true);

    int degree() const { return n_; }
    int dim() const { return cover_->num_factors(); }
    const CoverPtr& cover() const { return cover_; }
    bool alternating() const { return alternating_; }

    bool is_flat() const { return !field_strength_.has_value(); }
    const std::optional<TrigForm>& field_strength() const { return field_strength_; }
    void set_field_strength(std::optional<TrigForm> h);

    // Form degree of the components at multi-index length `len`.
    int form_degree(int len) const { return n_ + 1 - len; }

    TrigForm component(const MultiIndex& idx) const;
    long long integer(const MultiIndex& idx) const;
    void set_component(const MultiIndex& idx, TrigForm f);
    void set_integer(const MultiIndex& idx, long long m);

    const std::map<MultiIndex, TrigForm>& level(int r) const { return forms_.at(r); }
    const std::map<MultiIndex, long long>& integers() const { return ints_; }

    // General (ordered) copy of an alternating cochain.
    DiffCochain to_ordered() const;

    double max_abs() const;

    DiffCochain& operator+=(const DiffCochain& o);
    DiffCochain& operator-=(const DiffCochain& o);
    friend DiffCochain operator+(DiffCochain a, const DiffCochain& b) { return a += b; }
    friend DiffCochain operator-(DiffCochain a, const DiffCochain& b) { return a -= b; }

private:
    void check_index(const MultiIndex& idx, int len) const;

    int n_;
    CoverPtr cover_;
    bool alternating_;
    std::optional<TrigForm> field_strength_;
    std::vector<std::map<MultiIndex, TrigForm>> forms_;
    std::map<MultiIndex, long long> ints_;
};

// Cech coboundary of every level, packaged as a cochain one degree up whose
// level r+1 holds delta of level r (and whose level 0 is empty).
DiffCochain cech_delta(const DiffCochain& w);
// Total differential: level r of the result is delta(level r-1) + (-1)^{r+1} d(level r),
// where the field strength counts as level -1 (delta = restriction) and d on
// the integer level is the inclusion of 2*pi*m as constants.
DiffCochain total_d(const DiffCochain& w);
bool is_cocycle(const DiffCochain& w, double tol = 1e-10);

DiffCochain from_global_form(const TrigForm& T, const CoverPtr& cover);
DiffCochain restrict(const DiffCochain& w, const Subordination& s);
// Homotopy between the two restrictions: d k + k d = s1^* - s2^*.
DiffCochain homotopy_k(const DiffCochain& w, const Subordination& s1, const Subordination& s2);

nlohmann::json to_json(const DiffCochain& w);
DiffCochain cochain_from_json(const nlohmann::json& j, const CoverPtr& cover);

}  // namespace gerbekit
