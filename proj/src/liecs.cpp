#include "gerbekit/liecs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gerbekit {

namespace {

bool key_less(const MatTerm& a, const MatTerm& b) {
    if (a.freq != b.freq) return a.freq < b.freq;
    return a.axes < b.axes;
}

bool key_equal(const MatTerm& a, const MatTerm& b) { return a.freq == b.freq && a.axes == b.axes; }

Mat identity(int m) { return Mat::Identity(m, m); }

void check_same(const MatForm& a, const MatForm& b, const char* what) {
    if (a.ambient_dim() != b.ambient_dim() || a.matrix_dim() != b.matrix_dim())
        throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

}  // namespace

MatForm::MatForm(int ambient_dim, int degree, int matrix_dim) : n_(ambient_dim), p_(degree), m_(matrix_dim) {
    if (ambient_dim < 1 || ambient_dim > kMaxDim) throw std::invalid_argument("ambient dimension out of range");
    if (degree < 0) throw std::invalid_argument("negative degree");
    if (matrix_dim < 1) throw std::invalid_argument("matrix dimension must be positive");
}

MatForm MatForm::monomial(int ambient_dim, const std::vector<int>& freq, const std::vector<int>& axes, const Mat& m) {
    if (int(freq.size()) != ambient_dim) throw std::invalid_argument("frequency length differs from dimension");
    if (m.rows() != m.cols()) throw std::invalid_argument("coefficient must be square");
    for (std::size_t i = 1; i < axes.size(); ++i)
        if (axes[i] <= axes[i - 1]) throw std::invalid_argument("axes must be strictly increasing");
    MatForm out(ambient_dim, int(axes.size()), int(m.rows()));
    Freq k{};
    std::copy(freq.begin(), freq.end(), k.begin());
    out.add_term(k, axes_mask(axes), m);
    return out;
}

MatForm MatForm::constant(int ambient_dim, const Mat& m) {
    return monomial(ambient_dim, std::vector<int>(ambient_dim, 0), {}, m);
}

MatForm MatForm::from_scalar(const TrigForm& f, const Mat& m) {
    MatForm out(f.ambient_dim(), f.degree(), int(m.rows()));
    for (const auto& t : f.terms()) out.terms_.push_back({t.freq, t.axes, t.coef * m});
    out.normalize();
    return out;
}

void MatForm::add_term(const Freq& k, std::uint32_t axes, const Mat& c) {
    if (popcount(axes) != p_) throw std::invalid_argument("term degree differs from form degree");
    if (c.rows() != m_ || c.cols() != m_) throw std::invalid_argument("coefficient has the wrong size");
    MatTerm t{k, axes, c};
    auto it = std::lower_bound(terms_.begin(), terms_.end(), t, key_less);
    if (it != terms_.end() && key_equal(*it, t)) {
        it->coef += c;
        if (it->coef.isZero(0.0)) terms_.erase(it);
    } else if (!c.isZero(0.0)) {
        terms_.insert(it, std::move(t));
    }
}

void MatForm::normalize() {
    std::sort(terms_.begin(), terms_.end(), key_less);
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms_.size();) {
        MatTerm acc = terms_[i];
        std::size_t j = i + 1;
        for (; j < terms_.size() && key_equal(terms_[j], acc); ++j) acc.coef += terms_[j].coef;
        if (!acc.coef.isZero(0.0)) terms_[out++] = std::move(acc);
        i = j;
    }
    terms_.resize(out);
}

double MatForm::max_abs() const {
    double m = 0.0;
    for (const auto& t : terms_) m = std::max(m, t.coef.cwiseAbs().maxCoeff());
    return m;
}

Mat MatForm::evaluate(std::uint32_t axes, const std::vector<double>& x) const {
    Mat acc = Mat::Zero(m_, m_);
    for (const auto& t : terms_) {
        if (t.axes != axes) continue;
        double phase = 0.0;
        for (int j = 0; j < n_; ++j) phase += t.freq[j] * x[j];
        acc += std::polar(1.0, phase) * t.coef;
    }
    return acc;
}

MatForm MatForm::adjoint() const {
    MatForm out(n_, p_, m_);
    for (const auto& t : terms_) {
        MatTerm u{t.freq, t.axes, t.coef.adjoint()};
        for (int j = 0; j < n_; ++j) u.freq[j] = -u.freq[j];
        out.terms_.push_back(std::move(u));
    }
    out.normalize();
    return out;
}

bool MatForm::in_su(double tol) const {
    MatForm sum = *this + adjoint();
    if (sum.max_abs() > tol) return false;
    for (const auto& t : terms_)
        if (std::abs(t.coef.trace()) > tol) return false;
    return true;
}

MatForm& MatForm::operator+=(const MatForm& o) {
    if (o.m_ == 0) return *this;
    if (m_ == 0) return *this = o;
    check_same(*this, o, "add");
    if (o.p_ != p_) throw std::invalid_argument("adding forms of different degree");
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    normalize();
    return *this;
}

MatForm& MatForm::operator-=(const MatForm& o) { return *this += -o; }

MatForm& MatForm::operator*=(cd s) {
    for (auto& t : terms_) t.coef *= s;
    normalize();
    return *this;
}

MatForm MatForm::operator-() const {
    MatForm out = *this;
    for (auto& t : out.terms_) t.coef = -t.coef;
    return out;
}

MatForm matrix_wedge(const MatForm& a, const MatForm& b) {
    check_same(a, b, "matrix_wedge");
    MatForm out(a.ambient_dim(), a.degree() + b.degree(), a.matrix_dim());
    if (a.degree() + b.degree() > a.ambient_dim()) return out;
    for (const auto& s : a.terms())
        for (const auto& t : b.terms()) {
            if (s.axes & t.axes) continue;
            Freq k{};
            for (int j = 0; j < a.ambient_dim(); ++j) k[j] = s.freq[j] + t.freq[j];
            out.push_raw({k, s.axes | t.axes, double(merge_sign(s.axes, t.axes)) * (s.coef * t.coef)});
        }
    out.normalize();
    return out;
}

MatForm exterior_d(const MatForm& a) {
    MatForm out(a.ambient_dim(), a.degree() + 1, a.matrix_dim());
    if (a.degree() + 1 > a.ambient_dim()) return out;
    for (const auto& t : a.terms())
        for (int j = 0; j < a.ambient_dim(); ++j) {
            if (t.freq[j] == 0 || (t.axes >> j & 1u)) continue;
            out.push_raw({t.freq, t.axes | (1u << j),
                          double(merge_sign(1u << j, t.axes)) * cd(0.0, double(t.freq[j])) * t.coef});
        }
    out.normalize();
    return out;
}

MatForm graded_bracket(const MatForm& a, const MatForm& b) {
    const double s = ((a.degree() * b.degree()) % 2) ? -1.0 : 1.0;
    return matrix_wedge(a, b) - s * matrix_wedge(b, a);
}

TrigForm trace(const MatForm& a) {
    TrigForm out(a.ambient_dim(), a.degree());
    for (const auto& t : a.terms()) out.push_raw({t.freq, t.axes, t.coef.trace()});
    out.normalize();
    return out;
}

TrigForm pairing(const MatForm& a, const MatForm& b, double kappa) {
    return -kappa * trace(matrix_wedge(a, b));
}

MatForm curvature(const MatForm& A) {
    if (A.degree() != 1) throw std::invalid_argument("curvature: connection must be a 1-form");
    return exterior_d(A) + 0.5 * graded_bracket(A, A);
}

MatForm bianchi_residual(const MatForm& A) {
    MatForm F = curvature(A);
    return exterior_d(F) + graded_bracket(A, F);
}

MatForm bianchi_residual_half(const MatForm& A) {
    MatForm F = curvature(A);
    return exterior_d(F) + 0.5 * graded_bracket(A, F);
}

TrigForm cs_form(const MatForm& A, double kappa) {
    if (A.degree() != 1) throw std::invalid_argument("cs_form: connection must be a 1-form");
    return pairing(A, exterior_d(A) + (1.0 / 3.0) * graded_bracket(A, A), kappa);
}

TrigForm cs_form_via_curvature(const MatForm& A, double kappa) {
    return pairing(A, curvature(A) - (1.0 / 6.0) * graded_bracket(A, A), kappa);
}

GaugeMap::GaugeMap(int ambient_dim, int matrix_dim)
    : n_(ambient_dim), md_(matrix_dim), t_(MatForm::constant(ambient_dim, identity(matrix_dim))) {}

GaugeMap& GaugeMap::times_constant(const Mat& U) {
    if (U.rows() != md_ || U.cols() != md_) throw std::invalid_argument("gauge factor has the wrong size");
    if ((U.adjoint() * U - identity(md_)).norm() > 1e-12) throw std::invalid_argument("gauge factor is not unitary");
    t_ = matrix_wedge(t_, MatForm::constant(n_, U));
    return *this;
}

GaugeMap& GaugeMap::times_exp(int axis, int m, const Mat& X) {
    if (axis < 0 || axis >= n_) throw std::invalid_argument("gauge factor axis out of range");
    if (X.rows() != md_ || X.cols() != md_) throw std::invalid_argument("gauge generator has the wrong size");
    if ((X * X + identity(md_)).norm() > 1e-12) throw std::invalid_argument("gauge generator must square to -1");
    if ((X + X.adjoint()).norm() > 1e-12) throw std::invalid_argument("gauge generator must be anti-Hermitian");
    std::vector<int> kp(n_, 0), km(n_, 0);
    kp[axis] = m;
    km[axis] = -m;
    const Mat I = identity(md_);
    // cos(m x) + sin(m x) X with cos = (e^+ + e^-)/2 and sin = (e^+ - e^-)/(2i)
    MatForm f = MatForm::monomial(n_, kp, {}, 0.5 * I + cd(0.0, -0.5) * X) +
                MatForm::monomial(n_, km, {}, 0.5 * I + cd(0.0, 0.5) * X);
    t_ = matrix_wedge(t_, f);
    return *this;
}

MatForm GaugeMap::maurer_cartan() const { return matrix_wedge(t_inv(), exterior_d(t_)); }

MatForm GaugeMap::right_maurer_cartan() const { return matrix_wedge(exterior_d(t_), t_inv()); }

double GaugeMap::unitarity_defect(int samples) const {
    double worst = 0.0;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int s = 0; s < samples; ++s) {
        std::vector<double> x(n_);
        for (int j = 0; j < n_; ++j) x[j] = 2 * std::numbers::pi * std::fmod((s + 1) * g * (j + 1) + 0.1 * j, 1.0);
        Mat t = t_.evaluate(0, x);
        worst = std::max(worst, (t.adjoint() * t - identity(md_)).norm());
    }
    return worst;
}

MatForm adjoint_action(const MatForm& A, const GaugeMap& t) {
    return matrix_wedge(matrix_wedge(t.t_inv(), A), t.t());
}

MatForm gauge_transform(const MatForm& A, const GaugeMap& t) {
    if (A.ambient_dim() != t.ambient_dim() || A.matrix_dim() != t.matrix_dim())
        throw std::invalid_argument("gauge_transform: dimension mismatch");
    return adjoint_action(A, t) + t.maurer_cartan();
}

TrigForm pulled_back_wzw(const GaugeMap& t, double kappa) {
    MatForm th = t.maurer_cartan();
    return (-1.0 / 6.0) * pairing(th, graded_bracket(th, th), kappa);
}

double gauge_variation_defect(const MatForm& A, const GaugeMap& t, double kappa) {
    TrigForm lhs = cs_form(gauge_transform(A, t), kappa) - cs_form(A, kappa);
    TrigForm rhs = exterior_d(pairing(adjoint_action(A, t), t.maurer_cartan(), kappa)) + pulled_back_wzw(t, kappa);
    return (lhs - rhs).max_abs();
}

std::vector<Mat> su2_basis() {
    const cd i(0, 1);
    Mat a(2, 2), b(2, 2), c(2, 2);
    a << 0, i, i, 0;
    b << 0, 1, -1, 0;
    c << i, 0, 0, -i;
    return {a, b, c};
}

std::vector<Mat> su3_basis() {
    const cd i(0, 1);
    std::vector<Mat> out;
    auto put = [&](std::initializer_list<std::tuple<int, int, cd>> entries) {
        Mat m = Mat::Zero(3, 3);
        for (const auto& [r, c, v] : entries) m(r, c) = v;
        out.push_back(i * m);
    };
    put({{0, 1, 1.0}, {1, 0, 1.0}});
    put({{0, 1, -i}, {1, 0, i}});
    put({{0, 0, 1.0}, {1, 1, -1.0}});
    put({{0, 2, 1.0}, {2, 0, 1.0}});
    put({{0, 2, -i}, {2, 0, i}});
    put({{1, 2, 1.0}, {2, 1, 1.0}});
    put({{1, 2, -i}, {2, 1, i}});
    const double r3 = 1.0 / std::sqrt(3.0);
    put({{0, 0, r3}, {1, 1, r3}, {2, 2, -2 * r3}});
    return out;
}

MatForm random_su_form(Rng& rng, int ambient_dim, int degree, int m, const RandomFormShape& shape) {
    std::vector<Mat> basis;
    if (m == 2)
        basis = su2_basis();
    else if (m == 3)
        basis = su3_basis();
    else
        throw std::invalid_argument("random_su_form: only su(2) and su(3) are provided");
    MatForm out(ambient_dim, degree, m);
    if (degree > ambient_dim) return out;
    std::uniform_int_distribution<int> nterms(1, shape.max_terms), fq(-shape.max_freq, shape.max_freq);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<int> idx(ambient_dim);
    for (int i = 0; i < ambient_dim; ++i) idx[i] = i;
    const int count = nterms(rng);
    for (int t = 0; t < count; ++t) {
        Freq k{}, mk{};
        for (int i = 0; i < ambient_dim; ++i) {
            k[i] = fq(rng);
            mk[i] = -k[i];
        }
        std::shuffle(idx.begin(), idx.end(), rng);
        std::vector<int> axes(idx.begin(), idx.begin() + degree);
        std::sort(axes.begin(), axes.end());
        Mat M = Mat::Zero(m, m);
        for (const auto& B : basis) M += cd(u(rng), u(rng)) * B;
        out.add_term(k, axes_mask(axes), M);
        out.add_term(mk, axes_mask(axes), -Mat(M.adjoint()));
    }
    return out;
}

GaugeMap random_su2_gauge(Rng& rng, int ambient_dim, int factors) {
    std::uniform_real_distribution<double> u(-1.0, 1.0), ang(0.0, 2 * std::numbers::pi);
    std::uniform_int_distribution<int> ax(0, ambient_dim - 1), mm(1, 2), sgn(0, 1);
    const auto B = su2_basis();
    auto unit_generator = [&] {
        double v[3];
        double nrm = 0;
        do {
            nrm = 0;
            for (double& c : v) {
                c = u(rng);
                nrm += c * c;
            }
        } while (nrm < 1e-2);
        nrm = std::sqrt(nrm);
        return Mat(v[0] / nrm * B[0] + v[1] / nrm * B[1] + v[2] / nrm * B[2]);
    };
    GaugeMap g(ambient_dim, 2);
    for (int f = 0; f < factors; ++f) {
        Mat X = unit_generator();
        double th = ang(rng);
        g.times_constant(Mat(std::cos(th) * Mat::Identity(2, 2) + std::sin(th) * X));
        int m = mm(rng) * (sgn(rng) ? 1 : -1);
        g.times_exp(ax(rng), m, unit_generator());
    }
    return g;
}

}  // namespace gerbekit
