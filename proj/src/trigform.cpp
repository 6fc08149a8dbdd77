#include "gerbekit/trigform.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gerbekit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool key_less(const Term& a, const Term& b) {
    if (a.axes != b.axes) return a.axes < b.axes;
    return a.freq < b.freq;
}

bool key_equal(const Term& a, const Term& b) { return a.axes == b.axes && a.freq == b.freq; }

void check_dim(int n) {
    if (n < 0 || n > kMaxDim)
        throw std::invalid_argument("ambient dimension out of range: " + std::to_string(n));
}

// (e^x - 1)/x, accurate near 0.
cd phi1(cd x) {
    if (std::abs(x) < 0.5) {
        cd term = 1.0, sum = 1.0;
        for (int k = 2; k < 30; ++k) {
            term *= x / double(k);
            sum += term;
            if (std::abs(term) < 1e-18) break;
        }
        return sum;
    }
    return (std::exp(x) - 1.0) / x;
}

// Divided difference exp[z0, z1, z2], i.e. the integral of exp over the
// standard simplex after an affine change of variables.
cd exp_divdiff3(cd z0, cd z1, cd z2) {
    double d01 = std::abs(z1 - z0), d02 = std::abs(z2 - z0), d12 = std::abs(z2 - z1);
    double dmax = std::max({d01, d02, d12});
    if (dmax < 1.0) {
        cd u = z1 - z0, w = z2 - z0;
        // sum_n h_n(u, w) / (n + 2)!
        cd sum = 0.0;
        std::vector<cd> upow{1.0}, wpow{1.0};
        double fact = 2.0;
        for (int n = 0; n < 40; ++n) {
            if (n > 0) {
                upow.push_back(upow.back() * u);
                wpow.push_back(wpow.back() * w);
                fact *= double(n + 2);
            }
            cd h = 0.0;
            for (int p = 0; p <= n; ++p) h += upow[p] * wpow[n - p];
            sum += h / fact;
            if (std::abs(h) / fact < 1e-19 && n > 2) break;
        }
        return std::exp(z0) * sum;
    }
    cd a, b, c;
    if (dmax == d12) {
        a = z0; b = z1; c = z2;
    } else if (dmax == d02) {
        a = z1; b = z0; c = z2;
    } else {
        a = z2; b = z0; c = z1;
    }
    return std::exp(a) * (phi1(b - a) - phi1(c - a)) / (b - c);
}

}  // namespace

int popcount(std::uint32_t m) { return std::popcount(m); }

std::vector<int> axes_list(std::uint32_t mask) {
    std::vector<int> out;
    for (int j = 0; j < 32; ++j)
        if (mask & (1u << j)) out.push_back(j);
    return out;
}

std::uint32_t axes_mask(const std::vector<int>& axes) {
    std::uint32_t m = 0;
    int prev = -1;
    for (int a : axes) {
        if (a <= prev || a >= kMaxDim) throw std::invalid_argument("axes must be strictly increasing and in range");
        m |= 1u << a;
        prev = a;
    }
    return m;
}

int merge_sign(std::uint32_t a, std::uint32_t b) {
    int inversions = 0;
    for (int j = 0; j < 32; ++j)
        if (b & (1u << j)) inversions += std::popcount(a >> (j + 1));
    return (inversions & 1) ? -1 : 1;
}

TrigForm::TrigForm(int ambient_dim, int degree) : n_(ambient_dim), p_(degree) {
    check_dim(ambient_dim);
    if (degree < 0) throw std::invalid_argument("negative form degree");
}

TrigForm TrigForm::constant(int ambient_dim, cd value) {
    TrigForm f(ambient_dim, 0);
    if (value != 0.0) f.terms_.push_back(Term{Freq{}, 0, value});
    return f;
}

TrigForm TrigForm::monomial(int ambient_dim, const std::vector<int>& freq, const std::vector<int>& axes, cd c) {
    check_dim(ambient_dim);
    if (int(freq.size()) != ambient_dim) throw std::invalid_argument("frequency length does not match ambient dimension");
    std::uint32_t m = axes_mask(axes);
    if (!axes.empty() && axes.back() >= ambient_dim) throw std::invalid_argument("axis index out of range");
    TrigForm f(ambient_dim, int(axes.size()));
    Freq k{};
    std::copy(freq.begin(), freq.end(), k.begin());
    if (c != 0.0) f.terms_.push_back(Term{k, m, c});
    return f;
}

void TrigForm::add_term(const Freq& k, std::uint32_t axes, cd c) {
    Term t{k, axes, c};
    auto it = std::lower_bound(terms_.begin(), terms_.end(), t, key_less);
    if (it != terms_.end() && key_equal(*it, t)) {
        it->coef += c;
        if (it->coef == 0.0) terms_.erase(it);
    } else if (c != 0.0) {
        terms_.insert(it, t);
    }
}

void TrigForm::normalize() {
    std::sort(terms_.begin(), terms_.end(), key_less);
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms_.size();) {
        Term acc = terms_[i];
        std::size_t j = i + 1;
        for (; j < terms_.size() && key_equal(terms_[j], acc); ++j) acc.coef += terms_[j].coef;
        if (acc.coef != 0.0) terms_[out++] = acc;
        i = j;
    }
    terms_.resize(out);
}

double TrigForm::max_abs() const {
    double m = 0.0;
    for (const auto& t : terms_) m = std::max(m, std::abs(t.coef));
    return m;
}

bool TrigForm::is_hermitian(double tol) const {
    for (const auto& t : terms_) {
        Term neg = t;
        for (int j = 0; j < n_; ++j) neg.freq[j] = -t.freq[j];
        auto it = std::lower_bound(terms_.begin(), terms_.end(), neg, key_less);
        cd partner = (it != terms_.end() && key_equal(*it, neg)) ? it->coef : cd(0.0);
        if (std::abs(partner - std::conj(t.coef)) > tol) return false;
    }
    return true;
}

cd TrigForm::evaluate_coefficient(std::uint32_t axes, const std::vector<double>& x) const {
    if (int(x.size()) != n_) throw std::invalid_argument("point dimension mismatch");
    cd s = 0.0;
    for (const auto& t : terms_) {
        if (t.axes != axes) continue;
        double phase = 0.0;
        for (int j = 0; j < n_; ++j) phase += t.freq[j] * x[j];
        s += t.coef * std::polar(1.0, phase);
    }
    return s;
}

TrigForm& TrigForm::operator+=(const TrigForm& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) {
        if (n_ != o.n_ || p_ != o.p_) {
            if (n_ == 0 && p_ == 0) {
                n_ = o.n_;
                p_ = o.p_;
            } else {
                throw std::invalid_argument("adding forms of different shape");
            }
        }
        terms_ = o.terms_;
        return *this;
    }
    if (n_ != o.n_ || p_ != o.p_) throw std::invalid_argument("adding forms of different shape");
    std::vector<Term> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    std::merge(terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(), std::back_inserter(merged),
               key_less);
    terms_ = std::move(merged);
    normalize();
    return *this;
}

TrigForm& TrigForm::operator-=(const TrigForm& o) { return *this += -o; }

TrigForm& TrigForm::operator*=(cd s) {
    if (s == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coef *= s;
    return *this;
}

TrigForm TrigForm::operator-() const {
    TrigForm r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

TrigForm wedge(const TrigForm& a, const TrigForm& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("wedge: ambient dimension mismatch");
    const int n = a.ambient_dim();
    if (a.degree() + b.degree() > n) throw std::invalid_argument("wedge: degree exceeds ambient dimension");
    TrigForm r(n, a.degree() + b.degree());
    for (const auto& s : a.terms())
        for (const auto& t : b.terms()) {
            if (s.axes & t.axes) continue;
            Term u;
            for (int j = 0; j < n; ++j) u.freq[j] = s.freq[j] + t.freq[j];
            u.axes = s.axes | t.axes;
            u.coef = double(merge_sign(s.axes, t.axes)) * s.coef * t.coef;
            r.push_raw(u);
        }
    r.normalize();
    return r;
}

TrigForm exterior_d(const TrigForm& a) {
    const int n = a.ambient_dim();
    TrigForm r(n, a.degree() + 1);
    for (const auto& t : a.terms())
        for (int j = 0; j < n; ++j) {
            if (t.freq[j] == 0 || (t.axes & (1u << j))) continue;
            Term u = t;
            u.axes = t.axes | (1u << j);
            u.coef = double(merge_sign(1u << j, t.axes)) * cd(0.0, double(t.freq[j])) * t.coef;
            r.push_raw(u);
        }
    r.normalize();
    return r;
}

cd integrate_torus(const TrigForm& a) {
    const int n = a.ambient_dim();
    if (a.degree() != n) throw std::invalid_argument("integrate_torus: form degree must equal the torus dimension");
    for (const auto& t : a.terms()) {
        bool zero_freq = true;
        for (int j = 0; j < n; ++j) zero_freq = zero_freq && t.freq[j] == 0;
        if (zero_freq) return t.coef * std::pow(kTwoPi, n);
    }
    return 0.0;
}

TrigForm integrate_over_cell(const TrigForm& a, const Cell& cell, const std::vector<int>& cell_axes) {
    const int n = a.ambient_dim();
    const int ca = int(cell_axes.size());
    if (cell.dim < 0 || cell.dim > 2) throw std::invalid_argument("integrate_over_cell: cell dimension must be 0, 1 or 2");
    if (ca < 1 || ca > 2 || cell.dim > ca) throw std::invalid_argument("integrate_over_cell: cell axes do not fit the cell");
    if (ca == 2 && cell_axes[0] >= cell_axes[1]) throw std::invalid_argument("integrate_over_cell: cell axes must increase");
    std::uint32_t cmask = 0;
    for (int ax : cell_axes) {
        if (ax < 0 || ax >= n) throw std::invalid_argument("integrate_over_cell: cell axis out of range");
        cmask |= 1u << ax;
    }
    if (cell.dim == 0 && cell.points.size() != 1) throw std::invalid_argument("0-cell needs one point");
    if (cell.dim == 1 && cell.points.size() != 2) throw std::invalid_argument("1-cell needs two points");
    if (cell.dim == 2 && cell.points.size() < 3) throw std::invalid_argument("2-cell needs at least three points");

    std::vector<int> rest;
    for (int j = 0; j < n; ++j)
        if (!(cmask & (1u << j))) rest.push_back(j);
    const int out_deg = a.degree() - cell.dim;
    TrigForm r(int(rest.size()), std::max(out_deg, 0));
    if (out_deg < 0) return r;

    auto phase_at = [&](const Term& t, const std::array<double, 2>& p) {
        double s = 0.0;
        for (int c = 0; c < ca; ++c) s += t.freq[cell_axes[c]] * p[c];
        return cd(0.0, s);
    };

    for (const auto& t : a.terms()) {
        std::uint32_t J = t.axes & cmask;
        if (popcount(J) != cell.dim) continue;
        std::uint32_t I = t.axes & ~cmask;
        cd val = 0.0;
        if (cell.dim == 0) {
            val = double(cell.sign) * std::exp(phase_at(t, cell.points[0]));
        } else if (cell.dim == 1) {
            const auto& p = cell.points[0];
            const auto& q = cell.points[1];
            int slot = (ca == 1 || (J & (1u << cell_axes[0]))) ? 0 : 1;
            cd z0 = phase_at(t, p), z1 = phase_at(t, q);
            val = double(cell.sign) * (q[slot] - p[slot]) * std::exp(z0) * phi1(z1 - z0);
        } else {
            const auto& v0 = cell.points[0];
            cd z0 = phase_at(t, v0);
            for (std::size_t i = 1; i + 1 < cell.points.size(); ++i) {
                const auto& v1 = cell.points[i];
                const auto& v2 = cell.points[i + 1];
                double det = (v1[0] - v0[0]) * (v2[1] - v0[1]) - (v1[1] - v0[1]) * (v2[0] - v0[0]);
                val += det * exp_divdiff3(z0, phase_at(t, v1), phase_at(t, v2));
            }
            val *= double(cell.sign);
        }
        Term u;
        for (std::size_t j = 0; j < rest.size(); ++j) u.freq[j] = t.freq[rest[j]];
        std::uint32_t newI = 0;
        for (std::size_t j = 0; j < rest.size(); ++j)
            if (I & (1u << rest[j])) newI |= 1u << j;
        u.axes = newI;
        u.coef = double(merge_sign(I, J)) * t.coef * val;
        r.push_raw(u);
    }
    r.normalize();
    return r;
}

cd integrate_cell(const TrigForm& a, const Cell& cell) {
    const int n = a.ambient_dim();
    if (n < 1 || n > 2) throw std::invalid_argument("integrate_cell: cells live in T^1 or T^2");
    if (a.degree() != cell.dim) throw std::invalid_argument("integrate_cell: form degree must equal cell dimension");
    std::vector<int> axes(n);
    for (int j = 0; j < n; ++j) axes[j] = j;
    TrigForm r = integrate_over_cell(a, cell, axes);
    cd s = 0.0;
    for (const auto& t : r.terms()) s += t.coef;
    return s;
}

TrigForm fiber_integrate_global(const TrigForm& a, const std::vector<int>& fiber_axes) {
    const int n = a.ambient_dim();
    std::uint32_t F = 0;
    for (int ax : fiber_axes) {
        if (ax < 0 || ax >= n) throw std::invalid_argument("fiber axis out of range");
        if (F & (1u << ax)) throw std::invalid_argument("repeated fiber axis");
        F |= 1u << ax;
    }
    const int d = int(fiber_axes.size());
    std::vector<int> rest;
    for (int j = 0; j < n; ++j)
        if (!(F & (1u << j))) rest.push_back(j);
    TrigForm r(n - d, std::max(a.degree() - d, 0));
    if (a.degree() < d) return r;
    const double vol = std::pow(kTwoPi, d);
    for (const auto& t : a.terms()) {
        if ((t.axes & F) != F) continue;
        bool zero = true;
        for (int ax : fiber_axes) zero = zero && t.freq[ax] == 0;
        if (!zero) continue;
        std::uint32_t I = t.axes & ~F;
        Term u;
        std::uint32_t newI = 0;
        for (std::size_t j = 0; j < rest.size(); ++j) {
            u.freq[j] = t.freq[rest[j]];
            if (I & (1u << rest[j])) newI |= 1u << j;
        }
        u.axes = newI;
        u.coef = double(merge_sign(I, F)) * vol * t.coef;
        r.push_raw(u);
    }
    r.normalize();
    return r;
}

AffineTorusMap::AffineTorusMap(int source_dim, int target_dim, const std::vector<std::vector<double>>& linear,
                               std::vector<double> shift)
    : src_(source_dim), tgt_(target_dim), shift_(std::move(shift)) {
    check_dim(source_dim);
    check_dim(target_dim);
    if (int(linear.size()) != target_dim || int(shift_.size()) != target_dim)
        throw std::invalid_argument("affine map: row count must equal target dimension");
    lin_.assign(target_dim, std::vector<int>(source_dim, 0));
    for (int i = 0; i < target_dim; ++i) {
        if (int(linear[i].size()) != source_dim) throw std::invalid_argument("affine map: column count mismatch");
        for (int j = 0; j < source_dim; ++j) {
            double v = linear[i][j];
            if (v != std::round(v)) throw std::invalid_argument("affine map: linear part must be integral");
            lin_[i][j] = int(std::lround(v));
        }
    }
}

AffineTorusMap AffineTorusMap::identity(int dim) {
    std::vector<std::vector<double>> L(dim, std::vector<double>(dim, 0.0));
    for (int i = 0; i < dim; ++i) L[i][i] = 1.0;
    return AffineTorusMap(dim, dim, L, std::vector<double>(dim, 0.0));
}

AffineTorusMap AffineTorusMap::compose(const AffineTorusMap& inner) const {
    if (inner.tgt_ != src_) throw std::invalid_argument("affine map composition: dimension mismatch");
    std::vector<std::vector<double>> L(tgt_, std::vector<double>(inner.src_, 0.0));
    std::vector<double> s(tgt_, 0.0);
    for (int i = 0; i < tgt_; ++i) {
        s[i] = shift_[i];
        for (int k = 0; k < src_; ++k) {
            s[i] += lin_[i][k] * inner.shift_[k];
            for (int j = 0; j < inner.src_; ++j) L[i][j] += double(lin_[i][k] * inner.lin_[k][j]);
        }
    }
    return AffineTorusMap(inner.src_, tgt_, L, s);
}

TrigForm pullback(const TrigForm& a, const AffineTorusMap& m) {
    if (a.ambient_dim() != m.target_dim()) throw std::invalid_argument("pullback: form lives on a different torus");
    const int ns = m.source_dim(), nt = m.target_dim();
    TrigForm r(ns, a.degree());
    if (a.degree() > ns) return r;
    for (const auto& t : a.terms()) {
        // wedge of the pulled-back coordinate differentials, as mask -> coefficient
        std::vector<std::pair<std::uint32_t, double>> acc{{0u, 1.0}};
        for (int j : axes_list(t.axes)) {
            std::vector<std::pair<std::uint32_t, double>> next;
            for (const auto& [mask, c] : acc)
                for (int l = 0; l < ns; ++l) {
                    int L = m.linear(j, l);
                    if (L == 0 || (mask & (1u << l))) continue;
                    next.emplace_back(mask | (1u << l), c * L * merge_sign(mask, 1u << l));
                }
            acc = std::move(next);
        }
        Term u;
        double phase = 0.0;
        for (int j = 0; j < nt; ++j) phase += t.freq[j] * m.shift(j);
        for (int l = 0; l < ns; ++l) {
            int s = 0;
            for (int j = 0; j < nt; ++j) s += t.freq[j] * m.linear(j, l);
            u.freq[l] = s;
        }
        cd base = t.coef * std::polar(1.0, phase);
        for (const auto& [mask, c] : acc) {
            u.axes = mask;
            u.coef = base * c;
            r.push_raw(u);
        }
    }
    r.normalize();
    return r;
}

nlohmann::json to_json(const TrigForm& a) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : a.terms()) {
        nlohmann::json rec;
        rec["freq"] = std::vector<int>(t.freq.begin(), t.freq.begin() + a.ambient_dim());
        rec["axes"] = axes_list(t.axes);
        rec["re"] = t.coef.real();
        rec["im"] = t.coef.imag();
        terms.push_back(rec);
    }
    nlohmann::json j;
    j["ambient_dim"] = a.ambient_dim();
    j["degree"] = a.degree();
    j["terms"] = terms;
    return j;
}

TrigForm trigform_from_json(const nlohmann::json& j) {
    int n = j.at("ambient_dim").get<int>();
    int p = j.at("degree").get<int>();
    TrigForm f(n, p);
    for (const auto& rec : j.at("terms")) {
        auto freq = rec.at("freq").get<std::vector<int>>();
        auto axes = rec.at("axes").get<std::vector<int>>();
        if (int(freq.size()) != n) throw std::invalid_argument("term frequency length mismatch");
        if (int(axes.size()) != p) throw std::invalid_argument("term degree mismatch");
        Term t;
        std::copy(freq.begin(), freq.end(), t.freq.begin());
        t.axes = axes_mask(axes);
        if (!axes.empty() && axes.back() >= n) throw std::invalid_argument("axis index out of range");
        t.coef = cd(rec.at("re").get<double>(), rec.at("im").get<double>());
        f.push_raw(t);
    }
    f.normalize();
    return f;
}

}  // namespace gerbekit
