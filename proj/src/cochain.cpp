#include "gerbekit/cochain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gerbekit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Sorts ascending; returns 0 on a repeated entry, else the permutation sign.
int sort_with_sign(MultiIndex& v) {
    int sign = 1;
    for (std::size_t i = 1; i < v.size(); ++i)
        for (std::size_t j = i; j > 0 && v[j - 1] >= v[j]; --j) {
            if (v[j - 1] == v[j]) return 0;
            std::swap(v[j - 1], v[j]);
            sign = -sign;
        }
    return sign;
}

MultiIndex drop(const MultiIndex& v, std::size_t j) {
    MultiIndex out;
    out.reserve(v.size() - 1);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (i != j) out.push_back(v[i]);
    return out;
}

}  // namespace

DiffCochain::DiffCochain(int degree, CoverPtr cover, bool alternating)
    : n_(degree), cover_(std::move(cover)), alternating_(alternating), forms_(degree + 1) {
    if (degree < 0) throw std::invalid_argument("cochain degree must be non-negative");
    if (!cover_) throw std::invalid_argument("cochain needs a cover");
}

void DiffCochain::set_field_strength(std::optional<TrigForm> h) {
    if (h && (h->ambient_dim() != dim() || h->degree() != n_ + 1))
        throw std::invalid_argument("field strength must be a global form of degree n+1");
    field_strength_ = std::move(h);
}

void DiffCochain::check_index(const MultiIndex& idx, int len) const {
    if (int(idx.size()) != len) throw std::invalid_argument("multi-index has the wrong length");
    for (int i : idx)
        if (i < 0 || i >= cover_->size()) throw std::out_of_range("multi-index entry outside the cover");
}

TrigForm DiffCochain::component(const MultiIndex& idx) const {
    int len = int(idx.size());
    if (len < 1 || len > n_ + 1) throw std::invalid_argument("component: multi-index length out of range");
    const auto& lvl = forms_[len - 1];
    if (alternating_) {
        MultiIndex key = idx;
        int s = sort_with_sign(key);
        if (s == 0) return TrigForm(dim(), form_degree(len));
        auto it = lvl.find(key);
        if (it == lvl.end()) return TrigForm(dim(), form_degree(len));
        return s > 0 ? it->second : -it->second;
    }
    auto it = lvl.find(idx);
    if (it == lvl.end()) return TrigForm(dim(), form_degree(len));
    return it->second;
}

long long DiffCochain::integer(const MultiIndex& idx) const {
    if (int(idx.size()) != n_ + 2) throw std::invalid_argument("integer: multi-index length must be n+2");
    if (alternating_) {
        MultiIndex key = idx;
        int s = sort_with_sign(key);
        if (s == 0) return 0;
        auto it = ints_.find(key);
        return it == ints_.end() ? 0 : s * it->second;
    }
    auto it = ints_.find(idx);
    return it == ints_.end() ? 0 : it->second;
}

void DiffCochain::set_component(const MultiIndex& idx, TrigForm f) {
    int len = int(idx.size());
    if (len < 1 || len > n_ + 1) throw std::invalid_argument("set_component: multi-index length out of range");
    check_index(idx, len);
    if (f.ambient_dim() != dim() || f.degree() != form_degree(len)) {
        if (!f.is_zero()) throw std::invalid_argument("set_component: form has the wrong degree");
        f = TrigForm(dim(), form_degree(len));
    }
    if (!cover_->intersects(idx)) throw std::invalid_argument("set_component: empty intersection");
    MultiIndex key = idx;
    if (alternating_) {
        int s = sort_with_sign(key);
        if (s == 0) {
            if (!f.is_zero()) throw std::invalid_argument("alternating cochain: repeated index must carry zero");
            return;
        }
        if (s < 0) f = -f;
    }
    if (f.is_zero())
        forms_[len - 1].erase(key);
    else
        forms_[len - 1][key] = std::move(f);
}

void DiffCochain::set_integer(const MultiIndex& idx, long long m) {
    check_index(idx, n_ + 2);
    if (!cover_->intersects(idx)) throw std::invalid_argument("set_integer: empty intersection");
    MultiIndex key = idx;
    if (alternating_) {
        int s = sort_with_sign(key);
        if (s == 0) {
            if (m != 0) throw std::invalid_argument("alternating cochain: repeated index must carry zero");
            return;
        }
        m *= s;
    }
    if (m == 0)
        ints_.erase(key);
    else
        ints_[key] = m;
}

DiffCochain DiffCochain::to_ordered() const {
    if (!alternating_) return *this;
    DiffCochain out(n_, cover_, false);
    out.field_strength_ = field_strength_;
    for (int len = 1; len <= n_ + 1; ++len)
        for (const auto& idx : cover_->nerve(len, true)) {
            TrigForm f = component(idx);
            if (!f.is_zero()) out.forms_[len - 1][idx] = f;
        }
    for (const auto& idx : cover_->nerve(n_ + 2, true)) {
        long long m = integer(idx);
        if (m != 0) out.ints_[idx] = m;
    }
    return out;
}

double DiffCochain::max_abs() const {
    double m = field_strength_ ? field_strength_->max_abs() : 0.0;
    for (const auto& lvl : forms_)
        for (const auto& [k, f] : lvl) m = std::max(m, f.max_abs());
    for (const auto& [k, v] : ints_) m = std::max(m, kTwoPi * std::abs(double(v)));
    return m;
}

DiffCochain& DiffCochain::operator+=(const DiffCochain& o) {
    if (o.n_ != n_ || o.cover_ != cover_) throw std::invalid_argument("adding cochains of different shape");
    if (alternating_ != o.alternating_) {
        if (alternating_) {
            *this = to_ordered();
            return *this += o;
        }
        return *this += o.to_ordered();
    }
    if (o.field_strength_) {
        if (field_strength_)
            *field_strength_ += *o.field_strength_;
        else
            field_strength_ = o.field_strength_;
    }
    for (int r = 0; r <= n_; ++r)
        for (const auto& [k, f] : o.forms_[r]) {
            auto it = forms_[r].find(k);
            if (it == forms_[r].end()) {
                forms_[r][k] = f;
            } else {
                it->second += f;
                if (it->second.is_zero()) forms_[r].erase(it);
            }
        }
    for (const auto& [k, v] : o.ints_) {
        long long s = ints_[k] + v;
        if (s == 0)
            ints_.erase(k);
        else
            ints_[k] = s;
    }
    return *this;
}

DiffCochain& DiffCochain::operator-=(const DiffCochain& o) {
    DiffCochain neg = o;
    if (neg.field_strength_) neg.field_strength_ = -*neg.field_strength_;
    for (auto& lvl : neg.forms_)
        for (auto& [k, f] : lvl) f = -f;
    for (auto& [k, v] : neg.ints_) v = -v;
    return *this += neg;
}

namespace {

DiffCochain differential(const DiffCochain& w, bool with_d) {
    const int n = w.degree();
    const auto& cover = w.cover();
    const bool ordered = !w.alternating();
    DiffCochain out(n + 1, cover, w.alternating());
    if (with_d && w.field_strength()) out.set_field_strength(exterior_d(*w.field_strength()));
    const int dim = w.dim();
    for (int len = 1; len <= n + 2; ++len) {
        const int r = len - 1;
        const double eps = (r % 2 == 0) ? -1.0 : 1.0;  // (-1)^{r+1}
        for (const auto& idx : cover->nerve(len, ordered)) {
            TrigForm acc(dim, out.form_degree(len));
            if (r == 0) {
                if (with_d && w.field_strength()) acc += *w.field_strength();
            } else {
                for (int j = 0; j < len; ++j) {
                    TrigForm f = w.component(drop(idx, j));
                    acc += (j % 2 == 0) ? f : -f;
                }
            }
            if (with_d) {
                if (r <= n) {
                    acc += eps * exterior_d(w.component(idx));
                } else {
                    long long m = w.integer(idx);
                    if (m != 0) acc += TrigForm::constant(dim, eps * kTwoPi * double(m));
                }
            }
            if (!acc.is_zero()) out.set_component(idx, acc);
        }
    }
    for (const auto& idx : cover->nerve(n + 3, ordered)) {
        long long s = 0;
        for (int j = 0; j < n + 3; ++j) {
            long long m = w.integer(drop(idx, j));
            s += (j % 2 == 0) ? m : -m;
        }
        if (s != 0) out.set_integer(idx, s);
    }
    return out;
}

}  // namespace

DiffCochain cech_delta(const DiffCochain& w) { return differential(w, false); }

DiffCochain total_d(const DiffCochain& w) { return differential(w, true); }

bool is_cocycle(const DiffCochain& w, double tol) { return total_d(w).max_abs() <= tol; }

DiffCochain from_global_form(const TrigForm& T, const CoverPtr& cover) {
    if (T.ambient_dim() != cover->num_factors()) throw std::invalid_argument("global form lives on a different torus");
    if (T.degree() > T.ambient_dim() + 1) throw std::invalid_argument("global form degree too large");
    DiffCochain w(T.degree(), cover, true);
    w.set_field_strength(exterior_d(T));
    if (!T.is_zero())
        for (int a = 0; a < cover->size(); ++a) w.set_component({a}, T);
    return w;
}

DiffCochain restrict(const DiffCochain& w, const Subordination& s) {
    if (s.target != w.cover()) throw std::invalid_argument("restrict: subordination targets a different cover");
    const int n = w.degree();
    DiffCochain out(n, s.source, w.alternating());
    out.set_field_strength(w.field_strength());
    const bool ordered = !w.alternating();
    auto image = [&](const MultiIndex& idx) {
        MultiIndex m;
        for (int j : idx) m.push_back(s.map[j]);
        return m;
    };
    for (int len = 1; len <= n + 1; ++len)
        for (const auto& idx : s.source->nerve(len, ordered)) {
            TrigForm f = w.component(image(idx));
            if (!f.is_zero()) out.set_component(idx, f);
        }
    for (const auto& idx : s.source->nerve(n + 2, ordered)) {
        long long m = w.integer(image(idx));
        if (m != 0) out.set_integer(idx, m);
    }
    return out;
}

DiffCochain homotopy_k(const DiffCochain& w, const Subordination& s1, const Subordination& s2) {
    if (s1.source != s2.source || s1.target != s2.target) throw std::invalid_argument("homotopy_k: mismatched subordinations");
    if (s1.target != w.cover()) throw std::invalid_argument("homotopy_k: subordinations target a different cover");
    const int n = w.degree();
    if (n == 0) throw std::invalid_argument("homotopy_k: degree 0 has no homotopy");
    DiffCochain out(n - 1, s1.source, false);
    auto prism = [&](const MultiIndex& idx, int t) {
        MultiIndex m;
        for (int i = 0; i <= t; ++i) m.push_back(s1.map[idx[i]]);
        for (int i = t; i < int(idx.size()); ++i) m.push_back(s2.map[idx[i]]);
        return m;
    };
    for (int len = 1; len <= n; ++len)
        for (const auto& idx : s1.source->nerve(len, true)) {
            TrigForm acc(w.dim(), out.form_degree(len));
            for (int t = 0; t < len; ++t) {
                TrigForm f = w.component(prism(idx, t));
                // overall minus sign so that d k + k d = s1^* - s2^*
                acc += (t % 2 == 0) ? -f : f;
            }
            if (!acc.is_zero()) out.set_component(idx, acc);
        }
    for (const auto& idx : s1.source->nerve(n + 1, true)) {
        long long acc = 0;
        for (int t = 0; t < n + 1; ++t) {
            long long m = w.integer(prism(idx, t));
            acc += (t % 2 == 0) ? -m : m;
        }
        if (acc != 0) out.set_integer(idx, acc);
    }
    return out;
}

nlohmann::json to_json(const DiffCochain& w) {
    nlohmann::json j;
    j["degree"] = w.degree();
    j["cover_id"] = w.cover()->id();
    j["alternating"] = w.alternating();
    j["field_strength"] = w.field_strength() ? to_json(*w.field_strength()) : nlohmann::json(nullptr);
    nlohmann::json comps = nlohmann::json::array();
    for (int r = 0; r <= w.degree(); ++r)
        for (const auto& [idx, f] : w.level(r)) comps.push_back({{"indices", idx}, {"form", to_json(f)}});
    j["components"] = comps;
    nlohmann::json ints = nlohmann::json::array();
    for (const auto& [idx, m] : w.integers()) ints.push_back({{"indices", idx}, {"m", m}});
    j["integer_components"] = ints;
    return j;
}

DiffCochain cochain_from_json(const nlohmann::json& j, const CoverPtr& cover) {
    int n = j.at("degree").get<int>();
    bool alt = j.value("alternating", true);
    DiffCochain w(n, cover, alt);
    if (j.contains("field_strength") && !j.at("field_strength").is_null())
        w.set_field_strength(trigform_from_json(j.at("field_strength")));
    for (const auto& c : j.at("components"))
        w.set_component(c.at("indices").get<MultiIndex>(), trigform_from_json(c.at("form")));
    for (const auto& c : j.at("integer_components"))
        w.set_integer(c.at("indices").get<MultiIndex>(), c.at("m").get<long long>());
    return w;
}

}  // namespace gerbekit
