#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gerbekit/random.hpp"
#include "gerbekit/trigform.hpp"

namespace gerbekit {

using Mat = Eigen::MatrixXcd;

struct MatTerm {
    Freq freq{};
    std::uint32_t axes = 0;
    Mat coef;
};

// Matrix-valued form on T^n with trigonometric polynomial coefficients. Used
// both for Lie-algebra-valued forms and for group-valued functions.
class MatForm {
public:
    MatForm() = default;
    MatForm(int ambient_dim, int degree, int matrix_dim);

    static MatForm monomial(int ambient_dim, const std::vector<int>& freq, const std::vector<int>& axes, const Mat& m);
    static MatForm constant(int ambient_dim, const Mat& m);
    // Scalar form times a fixed matrix.
    static MatForm from_scalar(const TrigForm& f, const Mat& m);

    int ambient_dim() const { return n_; }
    int degree() const { return p_; }
    int matrix_dim() const { return m_; }
    const std::vector<MatTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Freq& k, std::uint32_t axes, const Mat& c);
    void push_raw(MatTerm t) { terms_.push_back(std::move(t)); }
    void normalize();

    double max_abs() const;
    Mat evaluate(std::uint32_t axes, const std::vector<double>& x) const;
    // Pointwise conjugate transpose (frequencies negate, coefficients adjoint).
    MatForm adjoint() const;
    // Coefficients anti-Hermitian at every point and traceless.
    bool in_su(double tol = 1e-12) const;

    MatForm& operator+=(const MatForm& o);
    MatForm& operator-=(const MatForm& o);
    MatForm& operator*=(cd s);
    friend MatForm operator+(MatForm a, const MatForm& b) { return a += b; }
    friend MatForm operator-(MatForm a, const MatForm& b) { return a -= b; }
    friend MatForm operator*(cd s, MatForm a) { return a *= s; }
    MatForm operator-() const;

private:
    int n_ = 0, p_ = 0, m_ = 0;
    std::vector<MatTerm> terms_;
};

using LieValuedForm = MatForm;

// a ^ b with matrix multiplication of coefficients. Forms above the ambient
// dimension vanish, so overflow yields the zero form.
MatForm matrix_wedge(const MatForm& a, const MatForm& b);
MatForm exterior_d(const MatForm& a);
// [a, b] = a ^ b - (-1)^{pq} b ^ a, i.e. [X alpha, Y beta] = [X, Y] alpha ^ beta.
MatForm graded_bracket(const MatForm& a, const MatForm& b);
// <a, b> = -kappa tr(a ^ b)
TrigForm pairing(const MatForm& a, const MatForm& b, double kappa = 1.0);
TrigForm trace(const MatForm& a);

MatForm curvature(const MatForm& A);
// dF + [A, F]
MatForm bianchi_residual(const MatForm& A);
// dF + 1/2 [A, F]
MatForm bianchi_residual_half(const MatForm& A);

// <A, dA + 1/3 [A, A]>
TrigForm cs_form(const MatForm& A, double kappa = 1.0);
// <A, F - 1/6 [A, A]>
TrigForm cs_form_via_curvature(const MatForm& A, double kappa = 1.0);

// t : T^n -> U(m) as an ordered product of factors, each either a constant
// unitary matrix or exp(m x_j X) with X^2 = -1 (so the exponential is
// cos(m x_j) + sin(m x_j) X).
class GaugeMap {
public:
    GaugeMap(int ambient_dim, int matrix_dim);
    GaugeMap& times_constant(const Mat& U);
    GaugeMap& times_exp(int axis, int m, const Mat& X);

    int ambient_dim() const { return n_; }
    int matrix_dim() const { return md_; }
    const MatForm& t() const { return t_; }
    MatForm t_inv() const { return t_.adjoint(); }
    // t^{-1} dt
    MatForm maurer_cartan() const;
    // dt t^{-1}
    MatForm right_maurer_cartan() const;
    // max over sample points of |t^* t - 1| and |det t - 1| (when special)
    double unitarity_defect(int samples = 16) const;

private:
    int n_, md_;
    MatForm t_;
};

// t^{-1} A t + t^{-1} dt
MatForm gauge_transform(const MatForm& A, const GaugeMap& t);
MatForm adjoint_action(const MatForm& A, const GaugeMap& t);
// -1/6 <theta, [theta, theta]> for theta = t^{-1} dt
TrigForm pulled_back_wzw(const GaugeMap& t, double kappa = 1.0);
// max | CS(A^t) - CS(A) - d<t^{-1} A t, t^{-1} dt> - t^* W |
double gauge_variation_defect(const MatForm& A, const GaugeMap& t, double kappa = 1.0);

// Pauli-type basis of su(2): i sigma_1, i sigma_2, i sigma_3.
std::vector<Mat> su2_basis();
std::vector<Mat> su3_basis();
// Random su(m)-valued form with Hermitian-paired terms, frequencies up to
// shape.max_freq.
MatForm random_su_form(Rng& rng, int ambient_dim, int degree, int m, const RandomFormShape& shape = {});
// Random SU(2) gauge map with nonconstant factors exp(m x_j X), |m| in {1, 2}.
GaugeMap random_su2_gauge(Rng& rng, int ambient_dim, int factors = 2);

}  // namespace gerbekit
