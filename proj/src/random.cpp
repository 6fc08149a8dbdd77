#include "gerbekit/random.hpp"

#include <algorithm>
#include <numeric>

namespace gerbekit {

Rng split_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x9e3779b9u};
    return Rng(seq);
}

TrigForm random_trigform(Rng& rng, int ambient_dim, int degree, const RandomFormShape& shape) {
    TrigForm out(ambient_dim, degree);
    if (degree > ambient_dim) return out;
    std::uniform_int_distribution<int> nterms(1, shape.max_terms), fq(-shape.max_freq, shape.max_freq);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<int> idx(ambient_dim);
    std::iota(idx.begin(), idx.end(), 0);
    const int count = nterms(rng);
    for (int t = 0; t < count; ++t) {
        Freq k{};
        for (int i = 0; i < ambient_dim; ++i) k[i] = fq(rng);
        std::shuffle(idx.begin(), idx.end(), rng);
        std::vector<int> axes(idx.begin(), idx.begin() + degree);
        std::sort(axes.begin(), axes.end());
        cd c(u(rng), u(rng));
        std::uint32_t mask = axes_mask(axes);
        if (shape.hermitian) {
            // c e^{ikx} + conj(c) e^{-ikx} is real
            Freq mk{};
            for (int i = 0; i < ambient_dim; ++i) mk[i] = -k[i];
            out.add_term(k, mask, c);
            out.add_term(mk, mask, std::conj(c));
        } else {
            out.add_term(k, mask, c);
        }
    }
    out.normalize();
    return out;
}

DiffCochain random_cochain(Rng& rng, int degree, const CoverPtr& cover, bool flat, const RandomFormShape& shape) {
    const int dim = cover->num_factors();
    DiffCochain w(degree, cover, true);
    if (!flat) w.set_field_strength(random_trigform(rng, dim, degree + 1, shape));
    for (int len = 1; len <= degree + 1; ++len) {
        const int p = degree + 1 - len;
        if (p > dim) continue;
        for (const auto& idx : cover->nerve(len, false)) {
            TrigForm f = random_trigform(rng, dim, p, shape);
            if (!f.is_zero()) w.set_component(idx, f);
        }
    }
    std::uniform_int_distribution<int> m(-2, 2);
    for (const auto& idx : cover->nerve(degree + 2, false)) {
        int v = m(rng);
        if (v != 0) w.set_integer(idx, v);
    }
    return w;
}

DiffCochain random_cocycle(Rng& rng, int degree, const CoverPtr& cover, const RandomFormShape& shape) {
    const int dim = cover->num_factors();
    DiffCochain w = from_global_form(random_trigform(rng, dim, degree, shape), cover);
    if (degree >= 1) w += total_d(random_cochain(rng, degree - 1, cover, true, shape));
    return w;
}

DiffCochain random_flat_coboundary(Rng& rng, int degree, const CoverPtr& cover, const RandomFormShape& shape) {
    if (degree < 1) throw std::invalid_argument("random_flat_coboundary: degree must be >= 1");
    return total_d(random_cochain(rng, degree - 1, cover, true, shape));
}

}  // namespace gerbekit
