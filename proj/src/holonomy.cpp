#include "gerbekit/holonomy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gerbekit {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

HolonomyResult holonomy_detail(const DiffCochain& w, const DualCellDecomposition& dec, const std::vector<int>& rho,
                               bool check) {
    const int n = w.degree();
    if (dec.dim() != n || w.dim() != n) throw std::invalid_argument("holonomy: cochain degree must equal the dimension");
    if (n < 1 || n > 2) throw std::invalid_argument("holonomy: only S^1 and T^2 are supported");
    if (!is_subordinate(dec, *w.cover(), rho)) throw std::invalid_argument("holonomy: decomposition not subordinate to the cover");
    if (check && !is_cocycle(w, 1e-9 * std::max(1.0, w.max_abs())))
        throw std::invalid_argument("holonomy: input is not a cocycle");
    HolonomyResult res;
    std::complex<double> total = 0.0;
    for (int k = 1; k <= n + 1; ++k) {
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        for (const auto& idx : dec.faces_of_length(k)) {
            MultiIndex u;
            for (int i : idx) u.push_back(rho[i]);
            TrigForm f = w.component(u);
            ++res.cells_used;
            if (f.is_zero()) continue;
            total += sign * integrate_cell(f, dec.face(idx));
        }
    }
    res.value = total.real();
    return res;
}

double holonomy(const DiffCochain& w, const DualCellDecomposition& dec, const std::vector<int>& rho) {
    return holonomy_detail(w, dec, rho).value;
}

std::complex<double> holonomy_phase(const DiffCochain& w, const DualCellDecomposition& dec,
                                    const std::vector<int>& rho) {
    return std::polar(1.0, holonomy(w, dec, rho));
}

double invariance_defect(const DiffCochain& w, const DualCellDecomposition& dec, const std::vector<int>& rho,
                         const std::vector<int>& rho_prime) {
    return holonomy(w, dec, rho) - holonomy(w, dec, rho_prime);
}

double distance_to_2pi_z(double x) { return std::abs(x - kTwoPi * std::round(x / kTwoPi)); }

double classify_flat_2cocycle(const DiffCochain& w, const DualCellDecomposition& dec, const std::vector<int>& rho) {
    if (w.degree() != 2 || w.dim() != 2) throw std::invalid_argument("classify: expected a 2-cochain on T^2");
    if (w.field_strength() && w.field_strength()->max_abs() > 1e-12)
        throw std::invalid_argument("classify: cochain is not flat");
    double h = holonomy(w, dec, rho);
    double r = std::fmod(h, kTwoPi);
    return r < 0 ? r + kTwoPi : r;
}

DiffCochain flat_circle_cocycle(const CoverPtr& cover, double theta) {
    if (cover->num_factors() != 1) throw std::invalid_argument("flat_circle_cocycle: needs a circle cover");
    const int N = cover->size();
    DiffCochain w(1, cover, true);
    // With the orientation conventions of make_circle_decomposition the
    // holonomy is the sum of h_{j+1, j} over the circle.
    for (int j = 0; j < N; ++j) {
        int nxt = (j + 1) % N;
        if (!cover->intersects({nxt, j})) throw std::invalid_argument("flat_circle_cocycle: consecutive arcs must meet");
        TrigForm c = TrigForm::constant(1, theta / N);
        w.set_component({nxt, j}, c);
    }
    return w;
}

}  // namespace gerbekit
