#include "gerbekit/fiberint.hpp"

#include <map>
#include <stdexcept>
#include <tuple>

namespace gerbekit {

namespace {

void paths_rec(int r, int k, int a, int b, std::vector<std::pair<int, int>>& cur, int area_left, int area_below,
               AreaConvention conv, std::vector<LatticePath>& out) {
    cur.emplace_back(a, b);
    if (a == r - 1 && b == k - 1) {
        out.push_back({cur, conv == AreaConvention::LeftOfPath ? area_left : area_below});
    } else {
        if (a + 1 < r) paths_rec(r, k, a + 1, b, cur, area_left, area_below + b, conv, out);
        if (b + 1 < k) paths_rec(r, k, a, b + 1, cur, area_left + a, area_below, conv, out);
    }
    cur.pop_back();
}

int parity_sign(long long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

PathNetwork make_path_network(int r, int k, AreaConvention conv) {
    if (r < 1 || k < 1) throw std::invalid_argument("path network needs r, k >= 1");
    PathNetwork net{r, k, {}};
    std::vector<std::pair<int, int>> cur;
    paths_rec(r, k, 0, 0, cur, 0, 0, conv, net.paths);
    return net;
}

ProductSetup::ProductSetup(CoverPtr x, CoverPtr e, DecompositionPtr d)
    : X(std::move(x)), E(std::move(e)), XE(product_cover(X, E)), dec(std::move(d)) {
    if (dec->dim() != E->num_factors()) throw std::invalid_argument("fiber decomposition and fiber cover differ in dimension");
}

std::vector<int> ProductSetup::fiber_axes() const {
    std::vector<int> ax;
    for (int i = 0; i < fiber_dim(); ++i) ax.push_back(base_dim() + i);
    return ax;
}

namespace {

void check_product(const DiffCochain& w, const ProductSetup& s) {
    if (w.cover() != s.XE) throw std::invalid_argument("cochain does not live on the product cover of the setup");
}

template <class F>
void for_each_path(const MultiIndex& a, const MultiIndex& b, const ProductSetup& s, const PushforwardOptions& opt,
                   F&& f) {
    static thread_local std::map<std::tuple<int, int, int>, PathNetwork> cache;
    auto key = std::make_tuple(int(a.size()), int(b.size()), int(opt.area));
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, make_path_network(int(a.size()), int(b.size()), opt.area)).first;
    MultiIndex tuple;
    for (const auto& p : it->second.paths) {
        tuple.clear();
        for (const auto& [i, j] : p.nodes) tuple.push_back(s.pair(a[i], b[j]));
        f(tuple, parity_sign(p.area));
    }
}

}  // namespace

TrigForm t_symbol(const MultiIndex& a, const MultiIndex& b, const DiffCochain& w, const ProductSetup& s,
                  const PushforwardOptions& opt) {
    check_product(w, s);
    int len = int(a.size() + b.size()) - 1;
    if (len > w.degree() + 1) throw std::invalid_argument("t_symbol: this length is the integer level");
    TrigForm acc(w.dim(), w.form_degree(len));
    for_each_path(a, b, s, opt, [&](const MultiIndex& t, int sign) {
        TrigForm f = w.component(t);
        if (!f.is_zero()) acc += double(sign) * f;
    });
    return acc;
}

long long t_symbol_integer(const MultiIndex& a, const MultiIndex& b, const DiffCochain& w, const ProductSetup& s,
                           const PushforwardOptions& opt) {
    check_product(w, s);
    int len = int(a.size() + b.size()) - 1;
    if (len != w.degree() + 2) throw std::invalid_argument("t_symbol_integer: length must be n+2");
    long long acc = 0;
    for_each_path(a, b, s, opt, [&](const MultiIndex& t, int sign) { acc += sign * w.integer(t); });
    return acc;
}

DiffCochain pushforward(const DiffCochain& w, const ProductSetup& s, const std::vector<int>& rho,
                        const PushforwardOptions& opt) {
    check_product(w, s);
    const int n = w.degree(), d = s.fiber_dim(), m = s.base_dim();
    if (d < 1 || d > 2) throw std::invalid_argument("pushforward: fiber must be S^1 or T^2");
    if (n < d) throw std::invalid_argument("pushforward: degree smaller than fiber dimension");
    if (!is_subordinate(*s.dec, *s.E, rho)) throw std::invalid_argument("pushforward: decomposition not subordinate");
    const auto fa = s.fiber_axes();
    DiffCochain out(n - d, s.X, false);
    if (w.field_strength()) out.set_field_strength(fiber_integrate_global(*w.field_strength(), fa));
    auto rho_of = [&](const MultiIndex& idx) {
        MultiIndex b;
        for (int i : idx) b.push_back(rho[i]);
        return b;
    };
    for (int r = 1; r <= n - d + 1; ++r)
        for (const auto& a : s.X->nerve(r, true)) {
            TrigForm acc(m, n - d + 1 - r);
            for (int k = 1; k <= d + 1; ++k) {
                const double sgn = parity_sign(static_cast<long long>(n - d + 1) * (k + 1));
                for (const auto& idx : s.dec->faces_of_length(k)) {
                    TrigForm T = t_symbol(a, rho_of(idx), w, s, opt);
                    if (T.is_zero()) continue;
                    acc += sgn * integrate_over_cell(T, s.dec->face(idx), fa);
                }
            }
            if (!acc.is_zero()) out.set_component(a, acc);
        }
    const int r = n - d + 2;
    const int sgn = parity_sign(static_cast<long long>(n - d + 1) * d);
    for (const auto& a : s.X->nerve(r, true)) {
        long long acc = 0;
        for (const auto& idx : s.dec->faces_of_length(d + 1))
            acc += sgn * s.dec->face(idx).sign * t_symbol_integer(a, rho_of(idx), w, s, opt);
        if (acc != 0) out.set_integer(a, acc);
    }
    return out;
}

double pushforward_commutes_defect(const DiffCochain& w, const ProductSetup& s, const std::vector<int>& rho,
                                   const PushforwardOptions& opt) {
    DiffCochain lhs = pushforward(total_d(w), s, rho, opt);
    DiffCochain rhs = total_d(pushforward(w, s, rho, opt));
    return (lhs - rhs).max_abs();
}

DiffCochain pushforward_homotopy(const DiffCochain& w, const ProductSetup& s, const std::vector<int>& rho,
                                 const std::vector<int>& rho_prime, const PushforwardOptions& opt) {
    check_product(w, s);
    const int n = w.degree(), d = s.fiber_dim(), m = s.base_dim();
    if (n < d + 1) throw std::invalid_argument("pushforward_homotopy: needs degree >= fiber dimension + 1");
    if (!is_subordinate(*s.dec, *s.E, rho) || !is_subordinate(*s.dec, *s.E, rho_prime))
        throw std::invalid_argument("pushforward_homotopy: decomposition not subordinate");
    const auto fa = s.fiber_axes();
    DiffCochain out(n - d - 1, s.X, false);
    auto prism = [&](const MultiIndex& idx, int t) {
        MultiIndex b;
        for (int i = 0; i <= t; ++i) b.push_back(rho[idx[i]]);
        for (int i = t; i < int(idx.size()); ++i) b.push_back(rho_prime[idx[i]]);
        return b;
    };
    for (int r = 1; r <= n - d; ++r)
        for (const auto& a : s.X->nerve(r, true)) {
            TrigForm acc(m, n - d - r);
            for (int k = 1; k <= d + 1; ++k) {
                // overall minus sign, as for homotopy_k
                const double sgn = -parity_sign(static_cast<long long>(n - d) * (k + 1));
                for (const auto& idx : s.dec->faces_of_length(k)) {
                    TrigForm T(w.dim(), w.form_degree(r + k));
                    for (int t = 0; t < k; ++t) {
                        TrigForm f = t_symbol(a, prism(idx, t), w, s, opt);
                        T += (t % 2 == 0) ? f : -f;
                    }
                    if (T.is_zero()) continue;
                    acc += sgn * integrate_over_cell(T, s.dec->face(idx), fa);
                }
            }
            if (!acc.is_zero()) out.set_component(a, acc);
        }
    const int r = n - d + 1;
    const int sgn = -parity_sign(static_cast<long long>(n - d) * (d + 2));
    for (const auto& a : s.X->nerve(r, true)) {
        long long acc = 0;
        for (const auto& idx : s.dec->faces_of_length(d + 1)) {
            long long T = 0;
            for (int t = 0; t < d + 1; ++t) {
                long long v = t_symbol_integer(a, prism(idx, t), w, s, opt);
                T += (t % 2 == 0) ? v : -v;
            }
            acc += sgn * s.dec->face(idx).sign * T;
        }
        if (acc != 0) out.set_integer(a, acc);
    }
    return out;
}

double pushforward_homotopy_residual(const DiffCochain& w, const ProductSetup& s, const std::vector<int>& rho,
                                     const std::vector<int>& rho_prime, const PushforwardOptions& opt) {
    DiffCochain lhs = pushforward(w, s, rho, opt) - pushforward(w, s, rho_prime, opt);
    DiffCochain rhs = total_d(pushforward_homotopy(w, s, rho, rho_prime, opt)) +
                      pushforward_homotopy(total_d(w), s, rho, rho_prime, opt);
    return (lhs - rhs).max_abs();
}

DiffCochain pullback_from_fiber(const DiffCochain& w, const ProductSetup& s) {
    if (w.cover() != s.E) throw std::invalid_argument("pullback_from_fiber: cochain does not live on the fiber cover");
    const int m = s.base_dim(), d = s.fiber_dim(), n = w.degree();
    std::vector<std::vector<double>> L(d, std::vector<double>(m + d, 0.0));
    for (int i = 0; i < d; ++i) L[i][m + i] = 1.0;
    AffineTorusMap proj(m + d, d, L, std::vector<double>(d, 0.0));
    DiffCochain out(n, s.XE, w.alternating());
    if (w.field_strength()) out.set_field_strength(pullback(*w.field_strength(), proj));
    const int Esize = s.E->size();
    auto fiber_part = [&](const MultiIndex& idx) {
        MultiIndex b;
        for (int p : idx) b.push_back(p % Esize);
        return b;
    };
    const bool ordered = !w.alternating();
    for (int len = 1; len <= n + 1; ++len)
        for (const auto& idx : s.XE->nerve(len, ordered)) {
            TrigForm f = w.component(fiber_part(idx));
            if (!f.is_zero()) out.set_component(idx, pullback(f, proj));
        }
    for (const auto& idx : s.XE->nerve(n + 2, ordered)) {
        long long v = w.integer(fiber_part(idx));
        if (v != 0) out.set_integer(idx, v);
    }
    return out;
}

}  // namespace gerbekit
