#include "gerbekit/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "gerbekit/parallel.hpp"

namespace gerbekit {

namespace {

IntMatrix gram_from_frame(const IntMatrix& frame, long long scale) {
    IntMatrix g = frame * frame.transpose();
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        if (g.data()[i] % (scale * scale) != 0) throw std::invalid_argument("frame does not give an integral Gram matrix");
        g.data()[i] /= scale * scale;
    }
    return g;
}

IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix out = IntMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

// Bourbaki simple roots of E8 in orthonormal coordinates, doubled.
IntMatrix e8_frame() {
    IntMatrix f = IntMatrix::Zero(8, 8);
    f.row(0) << 1, -1, -1, -1, -1, -1, -1, 1;
    f(1, 0) = 2;
    f(1, 1) = 2;
    f(2, 0) = -2;
    f(2, 1) = 2;
    // e3-e2, ..., e7-e6
    for (int k = 3; k < 8; ++k) {
        f(k, k - 1) = 2;
        f(k, k - 2) = -2;
    }
    return f;
}

// Simple roots of D8: e1-e2, ..., e7-e8, e7+e8.
IntMatrix d8_frame() {
    IntMatrix f = IntMatrix::Zero(8, 8);
    for (int k = 0; k < 7; ++k) {
        f(k, k) = 1;
        f(k, k + 1) = -1;
    }
    f(7, 6) = 1;
    f(7, 7) = 1;
    return f;
}

// The D16 simple roots e2-e3, ..., e15-e16, e15+e16 with e1-e2 replaced by the
// glue vector (1/2, ..., 1/2), doubled. The coefficient of e1-e2 in twice the
// glue vector is 1, so this is a basis of D16+.
IntMatrix d16plus_frame() {
    IntMatrix f = IntMatrix::Zero(16, 16);
    f.row(0).setOnes();
    for (int k = 1; k < 15; ++k) {
        f(k, k) = 2;
        f(k, k + 1) = -2;
    }
    f(15, 14) = 2;
    f(15, 15) = 2;
    return f;
}

struct Enumerator {
    const IntMatrix& G;
    int n;
    std::vector<std::vector<double>> q;  // Fincke-Pohst quadratic form
    double bound;
    long long max_norm;

    Enumerator(const IntMatrix& gram, long long maxn) : G(gram), n(int(gram.rows())), max_norm(maxn) {
        q.assign(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) q[i][j] = double(G(i, j));
        for (int i = 0; i < n; ++i) {
            if (q[i][i] <= 0) throw std::invalid_argument("Gram matrix is not positive definite");
            for (int j = i + 1; j < n; ++j) {
                q[j][i] = q[i][j];
                q[i][j] /= q[i][i];
            }
            for (int k = i + 1; k < n; ++k)
                for (int l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
        }
        bound = double(max_norm) + 0.5;
    }

    std::pair<long long, long long> range(int i, const std::vector<long long>& x, double remaining) const {
        double c = 0.0;
        for (int j = i + 1; j < n; ++j) c -= q[i][j] * double(x[j]);
        double r = std::sqrt(std::max(0.0, remaining) / q[i][i]);
        return {(long long)std::ceil(c - r - 1e-9), (long long)std::floor(c + r + 1e-9)};
    }

    double used(int i, const std::vector<long long>& x) const {
        double s = double(x[i]);
        for (int j = i + 1; j < n; ++j) s += q[i][j] * double(x[j]);
        return q[i][i] * s * s;
    }

    // Exact norm bookkeeping: partial[i] = norm of the vector restricted to
    // coordinates >= i; cross[k] = sum_{j >= i} G_kj x_j for k < i.
    template <class Visit>
    void recurse(int i, std::vector<long long>& x, double remaining, long long partial, std::vector<long long>& cross,
                 Visit& visit) const {
        auto [lo, hi] = range(i, x, remaining);
        for (long long v = lo; v <= hi; ++v) {
            x[i] = v;
            double rem = remaining - used(i, x);
            if (rem < -1e-9) continue;
            long long p = partial + G(i, i) * v * v + 2 * v * cross[i];
            if (i == 0) {
                if (p <= max_norm) visit(x, p);
            } else {
                for (int k = 0; k < i; ++k) cross[k] += G(k, i) * v;
                recurse(i - 1, x, rem, p, cross, visit);
                for (int k = 0; k < i; ++k) cross[k] -= G(k, i) * v;
            }
        }
        x[i] = 0;
    }

    template <class MakeVisit>
    void run(MakeVisit&& make) const {
        std::vector<long long> x(n, 0);
        auto [lo, hi] = range(n - 1, x, bound);
        const std::size_t slices = std::size_t(hi - lo + 1);
        parallel_for(slices, [&](std::size_t s) {
            auto visit = make(s);
            std::vector<long long> xs(n, 0), cross(n, 0);
            const long long v = lo + (long long)s;
            xs[n - 1] = v;
            double rem = bound - used(n - 1, xs);
            if (rem < -1e-9) return;
            long long p = G(n - 1, n - 1) * v * v;
            if (n == 1) {
                if (p <= max_norm) visit(xs, p);
                return;
            }
            for (int k = 0; k < n - 1; ++k) cross[k] = G(k, n - 1) * v;
            recurse(n - 2, xs, rem, p, cross, visit);
        });
    }
};

}  // namespace

IntegralLattice::IntegralLattice(std::string name, IntMatrix gram) : name_(std::move(name)), gram_(std::move(gram)) {
    if (gram_.rows() != gram_.cols() || gram_.rows() == 0) throw std::invalid_argument("Gram matrix must be square");
    if (gram_ != gram_.transpose()) throw std::invalid_argument("Gram matrix must be symmetric");
    Eigen::LLT<Eigen::MatrixXd> llt(gram_.cast<double>());
    if (llt.info() != Eigen::Success) throw std::invalid_argument("Gram matrix is not positive definite");
}

IntegralLattice::IntegralLattice(std::string name, IntMatrix gram, IntMatrix frame, long long frame_scale)
    : IntegralLattice(std::move(name), std::move(gram)) {
    if (frame.rows() != gram_.rows()) throw std::invalid_argument("frame rows must match the rank");
    if (gram_from_frame(frame, frame_scale) != gram_) throw std::invalid_argument("frame does not match the Gram matrix");
    frame_ = std::move(frame);
    scale_ = frame_scale;
}

long long IntegralLattice::inner(const LatticeVector& u, const LatticeVector& v) const {
    if (int(u.size()) != rank() || int(v.size()) != rank()) throw std::invalid_argument("vector length differs from rank");
    long long s = 0;
    for (int i = 0; i < rank(); ++i)
        for (int j = 0; j < rank(); ++j) s += u[i] * gram_(i, j) * v[j];
    return s;
}

long long IntegralLattice::determinant() const {
    // Bareiss fraction-free elimination
    const int n = rank();
    std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = gram_(i, j);
    __int128 prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * (long long)a[n - 1][n - 1];
}

bool IntegralLattice::is_even() const {
    for (int i = 0; i < rank(); ++i)
        if (gram_(i, i) % 2 != 0) return false;
    return true;
}

std::vector<long long> IntegralLattice::scaled_coordinates(const LatticeVector& v) const {
    if (!has_frame()) throw std::invalid_argument("lattice has no orthonormal frame");
    if (int(v.size()) != rank()) throw std::invalid_argument("vector length differs from rank");
    std::vector<long long> out(frame_.cols(), 0);
    for (int i = 0; i < rank(); ++i)
        for (Eigen::Index c = 0; c < frame_.cols(); ++c) out[c] += v[i] * frame_(i, c);
    return out;
}

IntegralLattice builtin(const std::string& name) {
    if (name == "e8") {
        IntMatrix f = e8_frame();
        return IntegralLattice("e8", gram_from_frame(f, 2), f, 2);
    }
    if (name == "e8e8") {
        IntMatrix f = block_diag(e8_frame(), e8_frame());
        return IntegralLattice("e8e8", gram_from_frame(f, 2), f, 2);
    }
    if (name == "d16plus") {
        IntMatrix f = d16plus_frame();
        return IntegralLattice("d16plus", gram_from_frame(f, 2), f, 2);
    }
    if (name == "spin16_coroot") {
        IntMatrix f = d8_frame();
        return IntegralLattice("spin16_coroot", gram_from_frame(f, 1), f, 1);
    }
    if (name == "a1") return IntegralLattice("a1", IntMatrix::Constant(1, 1, 2));
    throw std::invalid_argument("unknown lattice: " + name);
}

void for_each_vector(const IntegralLattice& L, long long max_norm,
                     const std::function<void(const LatticeVector&, long long)>& visit) {
    if (max_norm < 0) throw std::invalid_argument("max_norm must be non-negative");
    Enumerator e(L.gram(), max_norm);
    std::mutex mu;
    e.run([&](std::size_t) {
        return [&](const LatticeVector& x, long long nrm) {
            std::lock_guard<std::mutex> lock(mu);
            visit(x, nrm);
        };
    });
}

std::size_t vector_slices(const IntegralLattice& L, long long max_norm) {
    if (max_norm < 0) throw std::invalid_argument("max_norm must be non-negative");
    Enumerator e(L.gram(), max_norm);
    std::vector<long long> x(L.rank(), 0);
    auto [lo, hi] = e.range(L.rank() - 1, x, e.bound);
    return std::size_t(hi - lo + 1);
}

void for_each_vector_in_slices(const IntegralLattice& L, long long max_norm,
                               const std::function<void(std::size_t, const LatticeVector&, long long)>& visit) {
    if (max_norm < 0) throw std::invalid_argument("max_norm must be non-negative");
    Enumerator e(L.gram(), max_norm);
    e.run([&](std::size_t s) { return [&visit, s](const LatticeVector& v, long long nrm) { visit(s, v, nrm); }; });
}

std::map<long long, std::vector<LatticeVector>> enumerate_by_norm(const IntegralLattice& L, long long max_norm) {
    if (max_norm < 0) throw std::invalid_argument("max_norm must be non-negative");
    Enumerator e(L.gram(), max_norm);
    std::vector<long long> x(L.rank(), 0);
    auto [lo, hi] = e.range(L.rank() - 1, x, e.bound);
    std::vector<std::map<long long, std::vector<LatticeVector>>> parts(std::size_t(hi - lo + 1));
    e.run([&](std::size_t s) {
        return [&parts, s](const LatticeVector& v, long long nrm) { parts[s][nrm].push_back(v); };
    });
    std::map<long long, std::vector<LatticeVector>> out;
    for (auto& p : parts)
        for (auto& [nrm, vs] : p) {
            auto& dst = out[nrm];
            dst.insert(dst.end(), vs.begin(), vs.end());
        }
    for (auto& [nrm, vs] : out) std::sort(vs.begin(), vs.end());
    return out;
}

std::map<long long, long long> count_by_norm(const IntegralLattice& L, long long max_norm) {
    if (max_norm < 0) throw std::invalid_argument("max_norm must be non-negative");
    Enumerator e(L.gram(), max_norm);
    std::vector<long long> x(L.rank(), 0);
    auto [lo, hi] = e.range(L.rank() - 1, x, e.bound);
    std::vector<std::vector<long long>> parts(std::size_t(hi - lo + 1), std::vector<long long>(max_norm + 1, 0));
    e.run([&](std::size_t s) { return [&parts, s](const LatticeVector&, long long nrm) { parts[s][nrm]++; }; });
    std::map<long long, long long> out;
    for (long long k = 0; k <= max_norm; ++k) {
        long long c = 0;
        for (const auto& p : parts) c += p[k];
        if (c) out[k] = c;
    }
    return out;
}

std::vector<LatticeVector> roots(const IntegralLattice& L) {
    auto by = enumerate_by_norm(L, 2);
    auto it = by.find(2);
    return it == by.end() ? std::vector<LatticeVector>{} : it->second;
}

LatticeVector reflect(const IntegralLattice& L, const LatticeVector& root, const LatticeVector& v) {
    if (L.norm(root) != 2) throw std::invalid_argument("reflect: not a root (norm must be 2)");
    const long long c = L.inner(v, root);
    LatticeVector out = v;
    for (int i = 0; i < L.rank(); ++i) out[i] -= c * root[i];
    return out;
}

Rational coxeter_from_roots(const IntegralLattice& L) {
    const auto rs = roots(L);
    if (rs.empty()) throw std::invalid_argument("coxeter_from_roots: lattice has no roots");
    const int n = L.rank();
    // <r, e_i> = (G r)_i
    std::vector<std::vector<long long>> gr;
    gr.reserve(rs.size());
    for (const auto& r : rs) {
        std::vector<long long> g(n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g[i] += L.gram()(i, j) * r[j];
        gr.push_back(std::move(g));
    }
    // irreducibility: the roots must form one class under non-orthogonality
    {
        std::vector<int> comp(rs.size(), -1), stack;
        comp[0] = 0;
        stack.push_back(0);
        std::size_t seen = 1;
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            for (std::size_t b = 0; b < rs.size(); ++b) {
                if (comp[b] >= 0) continue;
                long long ip = 0;
                for (int i = 0; i < n; ++i) ip += gr[a][i] * rs[b][i];
                if (ip != 0) {
                    comp[b] = 0;
                    stack.push_back(int(b));
                    ++seen;
                }
            }
        }
        if (seen != rs.size()) throw std::invalid_argument("coxeter_from_roots: reducible root system");
    }
    std::optional<Rational> c;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            long long s = 0;
            for (const auto& g : gr) s += g[i] * g[j];
            const long long gij = L.gram()(i, j);
            if (gij == 0) {
                if (s != 0) throw std::invalid_argument("coxeter_from_roots: inconsistent ratios (reducible lattice?)");
                continue;
            }
            long long num = s, den = 2 * gij;
            if (den < 0) {
                num = -num;
                den = -den;
            }
            long long g = std::gcd(num, den);
            Rational r{num / g, den / g};
            if (!c)
                c = r;
            else if (!(*c == r))
                throw std::invalid_argument("coxeter_from_roots: inconsistent ratios (reducible lattice?)");
        }
    return *c;
}

std::vector<long long> spin16_weights(const LatticeVector& v) {
    static const IntegralLattice S = builtin("spin16_coroot");
    return S.scaled_coordinates(v);
}

LatticeVector spin16_embedding(const LatticeVector& v) {
    static const IntegralLattice E = builtin("e8");
    // orthonormal coordinates x of the image; E8 coordinates c solve G c = B x
    // with B = frame / 2.
    const auto x = spin16_weights(v);
    Eigen::Matrix<long long, Eigen::Dynamic, 1> bx = Eigen::Matrix<long long, Eigen::Dynamic, 1>::Zero(8);
    for (int i = 0; i < 8; ++i)
        for (int k = 0; k < 8; ++k) bx(i) += E.frame()(i, k) * x[k];
    Eigen::VectorXd c = E.gram().cast<double>().ldlt().solve(bx.cast<double>() / 2.0);
    LatticeVector out(8);
    for (int i = 0; i < 8; ++i) {
        out[i] = std::llround(c(i));
        if (std::abs(c(i) - double(out[i])) > 1e-9) throw std::invalid_argument("spin16_embedding: image not in e8");
    }
    if (E.scaled_coordinates(out) != [&] {
            std::vector<long long> y(8);
            for (int k = 0; k < 8; ++k) y[k] = 2 * x[k];
            return y;
        }())
        throw std::logic_error("spin16_embedding: round trip failed");
    return out;
}

WeightIdentityResult weight_identity_check() {
    const IntegralLattice S = builtin("spin16_coroot");
    WeightIdentityResult res;
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            LatticeVector ea(8, 0), eb(8, 0);
            ea[a] = 1;
            eb[b] = 1;
            const auto xa = spin16_weights(ea), xb = spin16_weights(eb);
            long long over_weights = 0, half = 0;
            for (int i = 0; i < 8; ++i) {
                // weights +x_i and -x_i
                over_weights += xa[i] * xb[i] + (-xa[i]) * (-xb[i]);
                half += xa[i] * xb[i];
            }
            const long long g = S.inner(ea, eb);
            res.residual = std::max(res.residual, std::abs(over_weights - 2 * g));
            res.literal_residual = std::max(res.literal_residual, std::abs(2 * half - g));
        }
    return res;
}

long long weyl_order_e8() {
    // product of the degrees 2, 8, 12, 14, 18, 20, 24, 30
    long long p = 1;
    for (long long d : {2, 8, 12, 14, 18, 20, 24, 30}) p *= d;
    return p;
}

long long weyl_order_d8() {
    long long f = 1;
    for (int i = 2; i <= 8; ++i) f *= i;
    return (1LL << 7) * f;
}

long long weyl_index_arithmetic() {
    const long long a = weyl_order_e8(), b = weyl_order_d8();
    if (a % b != 0) throw std::logic_error("Weyl group orders are not divisible");
    return a / b;
}

AnomalyExponents anomaly_exponents(const std::string& which) {
    AnomalyExponents e;
    if (which == "e8e8_adjoint")
        e = {30, 464, 496, 10};
    else if (which == "spin16_rho" || which == "spin32_rho")
        e = {1, 0, 32, 10};
    else
        throw std::invalid_argument("unknown anomaly case: " + which);
    if (!e.holds()) throw std::logic_error("anomaly relation fails");
    return e;
}

}  // namespace gerbekit
