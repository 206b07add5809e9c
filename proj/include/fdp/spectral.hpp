#pragma once

#include <Eigen/Dense>

#include "fdp/errors.hpp"

namespace fdp {

using Plane = Eigen::MatrixXd;

// Amplitude/phase split of a 2-D DFT, center-shifted: the DC coefficient sits
// at index (n/2, n/2) of the amplitude plane.
struct Spectrum {
    Plane amplitude;  // |DFT|, non-negative
    Plane phase;      // arg(DFT), radians
};

struct SubbandLevel {
    Plane ll, hl, lh, hh;  // approximation, vertical-edge, horizontal-edge, diagonal
};

// Two-level orthonormal Haar decomposition; level2 decomposes level1.ll.
struct SubbandPyramid {
    SubbandLevel level1;
    SubbandLevel level2;
};

struct SvdTriple {
    Eigen::MatrixXd u;
    Eigen::VectorXd d;  // descending, non-negative
    Eigen::MatrixXd vt;
};

Spectrum fft2(const Plane& plane);

// Recombines amplitude * e^{i phase}, inverse DFT, returns the real part.
// If imag_residual is non-null it receives the max |imaginary part| dropped.
Plane ifft2(const Spectrum& spectrum, double* imag_residual = nullptr);

SubbandPyramid dwt2(const Plane& plane);
Plane idwt2(const SubbandPyramid& pyramid);

// Single-level helpers, used by both the pyramid and the tests.
SubbandLevel haar_analysis(const Plane& plane);
Plane haar_synthesis(const SubbandLevel& level);

// Sign convention: the largest-magnitude entry of each left singular vector is
// forced non-negative, so factors are deterministic.
SvdTriple svd(const Eigen::MatrixXd& matrix);

Eigen::MatrixXd recompose(const Eigen::MatrixXd& u, const Eigen::VectorXd& d,
                          const Eigen::MatrixXd& vt);

}  // namespace fdp
