#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "ejmnet/errors.hpp"
#include "ejmnet/tetra.hpp"

namespace ejmnet {

using Complex = std::complex<double>;
using Vec2c = Eigen::Vector2cd;
using Vec4c = Eigen::Vector4cd;
using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;

inline const Mat2c& pauli(int k) {
    static const std::array<Mat2c, 3> sigma = [] {
        std::array<Mat2c, 3> s;
        s[0] << 0, 1, 1, 0;
        s[1] << 0, Complex(0, -1), Complex(0, 1), 0;
        s[2] << 1, 0, 0, -1;
        return s;
    }();
    return sigma[static_cast<std::size_t>(k)];
}

struct QubitKet {
    Vec2c amplitudes;

    std::array<double, 3> bloch() const {
        std::array<double, 3> v{};
        for (int k = 0; k < 3; ++k)
            v[static_cast<std::size_t>(k)] =
                (amplitudes.adjoint() * pauli(k) * amplitudes)(0).real();
        return v;
    }
};

// Ket with Bloch vector sign*v/|v|, in the half-angle parametrization
// with eta = v3/|v|, phi = atan2(v2, v1).
inline QubitKet bloch_ket(const std::array<double, 3>& v, int sign) {
    double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (norm < 1e-14) throw DomainError("bloch_ket: zero direction vector");
    if (sign != 1 && sign != -1) throw DomainError("bloch_ket: sign must be +1 or -1");
    double eta = v[2] / norm;
    double phi = std::atan2(v[1], v[0]);
    double s = static_cast<double>(sign);
    Complex em = std::exp(Complex(0, -phi / 2));
    Complex ep = std::exp(Complex(0, phi / 2));
    QubitKet ket;
    ket.amplitudes << std::sqrt((1 + s * eta) / 2) * em,
        s * std::sqrt((1 - s * eta) / 2) * ep;
    return ket;
}

inline QubitKet bloch_ket(const TetraVertex& vert, int sign) {
    const std::array<double, 3> v = {static_cast<double>(vert.m[0]),
                                     static_cast<double>(vert.m[1]),
                                     static_cast<double>(vert.m[2])};
    return bloch_ket(v, sign);
}

// The theta family of iso-entangled two-qubit bases. theta=0 gives the
// elegant joint measurement (reduced Bloch length sqrt(3)/2); theta=pi/2
// is Bell-state-like (reduced states maximally mixed).
struct EjmBasis {
    double theta = 0.0;
    std::array<Vec4c, 4> kets;
};

inline EjmBasis ejm_basis(double theta) {
    if (!(theta >= -1e-12 && theta <= std::numbers::pi / 2 + 1e-12))
        throw DomainError("ejm_basis: theta outside [0, pi/2]");
    EjmBasis basis;
    basis.theta = theta;
    const double s3 = std::sqrt(3.0);
    const Complex eit = std::exp(Complex(0, theta));
    const Complex cp = (s3 + eit) / (2 * std::sqrt(2.0));
    const Complex cm = (s3 - eit) / (2 * std::sqrt(2.0));
    for (std::size_t b = 0; b < 4; ++b) {
        const auto& vert = tetra_vertices()[b];
        Vec2c mp = bloch_ket(vert, +1).amplitudes;
        Vec2c mm = bloch_ket(vert, -1).amplitudes;
        Vec4c ket = Vec4c::Zero();
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                ket(2 * i + j) = cp * mp(i) * mm(j) + cm * mm(i) * mp(j);
        basis.kets[b] = ket;
    }
    return basis;
}

// Reduced single-qubit Bloch length common to all four basis kets.
inline double ejm_reduced_bloch_length(double theta) {
    return std::sqrt(3.0) / 2 * std::cos(theta);
}

struct WernerState {
    double V = 1.0;
    Mat4c rho;
};

inline WernerState werner(double V) {
    if (!(V >= -1e-12 && V <= 1 + 1e-12)) throw DomainError("werner: V outside [0,1]");
    Vec4c psi_minus;
    psi_minus << 0, 1 / std::sqrt(2.0), -1 / std::sqrt(2.0), 0;
    WernerState w;
    w.V = V;
    w.rho = V * (psi_minus * psi_minus.adjoint()) +
            (1 - V) / 4 * Mat4c::Identity();
    return w;
}

struct DichotomicSetting {
    std::array<double, 3> n{0, 0, 1};

    Mat2c observable() const {
        Mat2c o = Mat2c::Zero();
        for (int k = 0; k < 3; ++k) o += n[static_cast<std::size_t>(k)] * pauli(k);
        return o;
    }

    // Projector onto outcome a (+1 or -1).
    Mat2c projector(int a) const {
        return (Mat2c::Identity() + static_cast<double>(a) * observable()) / 2;
    }
};

using SettingTriple = std::array<DichotomicSetting, 3>;

inline DichotomicSetting make_setting(std::array<double, 3> v) {
    double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (std::abs(norm - 1) > 1e-12)
        throw DomainError("setting Bloch vector must have unit norm");
    return DichotomicSetting{v};
}

inline const SettingTriple& pauli_settings() {
    static const SettingTriple s{{{{1, 0, 0}}, {{0, 1, 0}}, {{0, 0, 1}}}};
    return s;
}

// (sigma3+sigma1)/sqrt2, sigma2, (sigma3-sigma1)/sqrt2
inline const SettingTriple& rotated_settings() {
    static const SettingTriple s = [] {
        const double r = 1 / std::sqrt(2.0);
        return SettingTriple{{{{r, 0, r}}, {{0, 1, 0}}, {{-r, 0, r}}}};
    }();
    return s;
}

inline const SettingTriple& settings_preset(const std::string& name) {
    if (name == "pauli") return pauli_settings();
    if (name == "rotated") return rotated_settings();
    throw UsageError("unknown settings preset: " + name + " (use pauli|rotated)");
}

struct BsmCheckReport {
    std::array<int, 4> relabeling{};  // basis ket -> Bell state index
    double maxInfidelity = 1.0;
    bool pass = false;
};

inline const std::array<Vec4c, 4>& bell_states() {
    static const std::array<Vec4c, 4> bells = [] {
        std::array<Vec4c, 4> b;
        const double r = 1 / std::sqrt(2.0);
        b[0] << r, 0, 0, r;    // Phi+
        b[1] << r, 0, 0, -r;   // Phi-
        b[2] << 0, r, r, 0;    // Psi+
        b[3] << 0, r, -r, 0;   // Psi-
        return b;
    }();
    return bells;
}

// Applies 1 x exp(i 2pi/3 (s1+s2+s3)/sqrt3) to the theta=pi/2 basis and
// checks each image ket matches a Bell state up to global phase.
inline BsmCheckReport bsm_local_unitary_check(double theta = std::numbers::pi / 2) {
    const double ang = 2 * std::numbers::pi / 3;
    Mat2c n_sigma = (pauli(0) + pauli(1) + pauli(2)) / std::sqrt(3.0);
    Mat2c u2 = std::cos(ang) * Mat2c::Identity() + Complex(0, std::sin(ang)) * n_sigma;
    Mat4c u = Mat4c::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    u(2 * i + k, 2 * j + l) =
                        (i == j ? Complex(1, 0) : Complex(0, 0)) * u2(k, l);
    EjmBasis basis = ejm_basis(theta);
    BsmCheckReport report;
    double min_fid = 1.0;
    std::array<bool, 4> used{};
    bool is_perm = true;
    for (std::size_t b = 0; b < 4; ++b) {
        Vec4c image = u * basis.kets[b];
        double best = -1.0;
        int best_idx = 0;
        for (int k = 0; k < 4; ++k) {
            double ov = std::abs(bell_states()[static_cast<std::size_t>(k)].dot(image));
            if (ov > best) {
                best = ov;
                best_idx = k;
            }
        }
        report.relabeling[b] = best_idx;
        if (used[static_cast<std::size_t>(best_idx)]) is_perm = false;
        used[static_cast<std::size_t>(best_idx)] = true;
        min_fid = std::min(min_fid, best * best);
    }
    report.maxInfidelity = 1.0 - min_fid;
    report.pass = is_perm && report.maxInfidelity < 1e-10;
    return report;
}

}
