#include "fdp/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace fdp {

namespace {

using Complex = std::complex<double>;
using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

// DFT matrix W[u][x] = exp(-2*pi*i*u*x/n); inverse uses the conjugate / n.
CMatrix dft_matrix(int n, bool inverse) {
    const double sign = inverse ? 1.0 : -1.0;
    CMatrix w(n, n);
    for (int u = 0; u < n; ++u)
        for (int x = 0; x < n; ++x) {
            const double angle = sign * 2.0 * std::numbers::pi * u * x / n;
            w(u, x) = Complex(std::cos(angle), std::sin(angle));
        }
    return w;
}

Plane fftshift(const Plane& m) {
    const int n = static_cast<int>(m.rows());
    const int h = n / 2;
    Plane out(n, n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            out((u + h) % n, (v + h) % n) = m(u, v);
    return out;
}

Plane ifftshift(const Plane& m) {
    const int n = static_cast<int>(m.rows());
    const int h = (n + 1) / 2;
    Plane out(n, n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            out((u + h) % n, (v + h) % n) = m(u, v);
    return out;
}

}  // namespace

Spectrum fft2(const Plane& plane) {
    const int n = static_cast<int>(plane.rows());
    if (n < 4 || plane.cols() != n)
        throw DimensionTooSmall("fft2 requires a square plane with n >= 4");

    const CMatrix w = dft_matrix(n, false);
    const CMatrix f = w * plane.cast<Complex>() * w.transpose();

    Plane amplitude(n, n), phase(n, n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            amplitude(u, v) = std::abs(f(u, v));
            phase(u, v) = std::arg(f(u, v));
        }
    return Spectrum{fftshift(amplitude), fftshift(phase)};
}

Plane ifft2(const Spectrum& spectrum, double* imag_residual) {
    const int n = static_cast<int>(spectrum.amplitude.rows());
    if (spectrum.amplitude.cols() != n || spectrum.phase.rows() != n ||
        spectrum.phase.cols() != n)
        throw ShapeMismatch("ifft2: amplitude/phase shapes disagree");

    const Plane amp = ifftshift(spectrum.amplitude);
    const Plane ph = ifftshift(spectrum.phase);
    CMatrix f(n, n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            f(u, v) = std::polar(amp(u, v), ph(u, v));

    const CMatrix w = dft_matrix(n, true);
    const CMatrix x = (w * f * w.transpose()) / (static_cast<double>(n) * n);

    Plane out(n, n);
    double residual = 0.0;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            out(r, c) = x(r, c).real();
            residual = std::max(residual, std::abs(x(r, c).imag()));
        }
    if (imag_residual) *imag_residual = residual;
    return out;
}

SubbandLevel haar_analysis(const Plane& plane) {
    const int n = static_cast<int>(plane.rows());
    if (n % 2 != 0 || plane.cols() != n)
        throw OddDimension("haar analysis requires an even square plane");
    const int h = n / 2;
    SubbandLevel out{Plane(h, h), Plane(h, h), Plane(h, h), Plane(h, h)};
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j) {
            const double a = plane(2 * i, 2 * j);
            const double b = plane(2 * i, 2 * j + 1);
            const double c = plane(2 * i + 1, 2 * j);
            const double d = plane(2 * i + 1, 2 * j + 1);
            out.ll(i, j) = (a + b + c + d) / 2.0;
            out.hl(i, j) = (a - b + c - d) / 2.0;  // column difference: vertical edges
            out.lh(i, j) = (a + b - c - d) / 2.0;  // row difference: horizontal edges
            out.hh(i, j) = (a - b - c + d) / 2.0;
        }
    return out;
}

Plane haar_synthesis(const SubbandLevel& level) {
    const int h = static_cast<int>(level.ll.rows());
    if (level.hl.rows() != h || level.lh.rows() != h || level.hh.rows() != h ||
        level.ll.cols() != h || level.hl.cols() != h || level.lh.cols() != h ||
        level.hh.cols() != h)
        throw ShapeMismatch("haar synthesis: subband shapes disagree");
    Plane out(2 * h, 2 * h);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j) {
            const double ll = level.ll(i, j), hl = level.hl(i, j);
            const double lh = level.lh(i, j), hh = level.hh(i, j);
            out(2 * i, 2 * j) = (ll + hl + lh + hh) / 2.0;
            out(2 * i, 2 * j + 1) = (ll - hl + lh - hh) / 2.0;
            out(2 * i + 1, 2 * j) = (ll + hl - lh - hh) / 2.0;
            out(2 * i + 1, 2 * j + 1) = (ll - hl - lh + hh) / 2.0;
        }
    return out;
}

SubbandPyramid dwt2(const Plane& plane) {
    const int n = static_cast<int>(plane.rows());
    if (n % 4 != 0 || plane.cols() != n)
        throw OddDimension("dwt2 requires n divisible by 4");
    SubbandPyramid pyr;
    pyr.level1 = haar_analysis(plane);
    pyr.level2 = haar_analysis(pyr.level1.ll);
    return pyr;
}

Plane idwt2(const SubbandPyramid& pyramid) {
    SubbandLevel level1 = pyramid.level1;
    level1.ll = haar_synthesis(pyramid.level2);
    if (level1.ll.rows() != pyramid.level1.ll.rows())
        throw ShapeMismatch("idwt2: level2 does not reconstruct level1.ll");
    return haar_synthesis(level1);
}

SvdTriple svd(const Eigen::MatrixXd& matrix) {
    if (!matrix.allFinite()) throw NonFiniteInput("svd: non-finite entries");
    Eigen::JacobiSVD<Eigen::MatrixXd> solver(matrix,
                                             Eigen::ComputeFullU | Eigen::ComputeFullV);
    SvdTriple out;
    out.u = solver.matrixU();
    out.d = solver.singularValues();
    out.vt = solver.matrixV().transpose();
    // Largest-magnitude entry of each left singular vector forced non-negative.
    for (int k = 0; k < out.u.cols(); ++k) {
        int arg = 0;
        out.u.col(k).cwiseAbs().maxCoeff(&arg);
        if (out.u(arg, k) < 0.0) {
            out.u.col(k) = -out.u.col(k);
            if (k < out.vt.rows()) out.vt.row(k) = -out.vt.row(k);
        }
    }
    return out;
}

Eigen::MatrixXd recompose(const Eigen::MatrixXd& u, const Eigen::VectorXd& d,
                          const Eigen::MatrixXd& vt) {
    if (u.cols() != d.size() || vt.rows() != d.size())
        throw ShapeMismatch("recompose: factor shapes disagree");
    if (!d.allFinite()) throw NonFiniteInput("recompose: non-finite singular values");
    return u * d.asDiagonal() * vt;
}

}  // namespace fdp
