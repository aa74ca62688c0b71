#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "ejmnet/errors.hpp"
#include "ejmnet/quantum.hpp"

namespace ejmnet {

struct TwoQubitUnitary {
    Mat4c u = Mat4c::Identity();

    bool is_unitary(double tol = 1e-12) const {
        return (u.adjoint() * u - Mat4c::Identity()).cwiseAbs().maxCoeff() <= tol;
    }
};

namespace detail {

inline Mat2c hadamard() {
    Mat2c h;
    const double r = 1.0 / std::sqrt(2.0);
    h << r, r, r, -r;
    return h;
}

inline Mat2c phase_gate(double phi) {
    Mat2c r = Mat2c::Identity();
    r(1, 1) = std::exp(Complex(0.0, phi));
    return r;
}

inline Mat4c kron2(const Mat2c& a, const Mat2c& b) {
    Mat4c out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

}  // namespace detail

// Standard 4x4 gates on the (first ⊗ second) qubit ordering. Supported
// names: "CNOT" (control = first), "CNOT_rev" (control = second), "HxI",
// "IxH", "Rphi_first", "Rphi_second", "CRphi" (phase on |11⟩).
inline TwoQubitUnitary gate(const std::string& name, double phi = 0.0) {
    TwoQubitUnitary g;
    if (name == "CNOT") {
        g.u.setZero();
        g.u(0, 0) = g.u(1, 1) = g.u(3, 2) = g.u(2, 3) = 1.0;
    } else if (name == "CNOT_rev") {
        g.u.setZero();
        g.u(0, 0) = g.u(3, 1) = g.u(2, 2) = g.u(1, 3) = 1.0;
    } else if (name == "HxI") {
        g.u = detail::kron2(detail::hadamard(), Mat2c::Identity());
    } else if (name == "IxH") {
        g.u = detail::kron2(Mat2c::Identity(), detail::hadamard());
    } else if (name == "Rphi_first") {
        g.u = detail::kron2(detail::phase_gate(phi), Mat2c::Identity());
    } else if (name == "Rphi_second") {
        g.u = detail::kron2(Mat2c::Identity(), detail::phase_gate(phi));
    } else if (name == "CRphi") {
        g.u = Mat4c::Identity();
        g.u(3, 3) = std::exp(Complex(0.0, phi));
    } else {
        throw UsageError("unknown gate name: " + name);
    }
    return g;
}

// The measurement circuit: CNOT, Hadamard on the control wire, controlled
// phase R_{pi/2 - theta}, then R_{pi/2} followed by H on each wire. The
// control wire is Bob's first qubit unless swap_wires is set.
inline TwoQubitUnitary ejm_circuit(double theta, bool swap_wires = false) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 2.0 + 1e-12))
        throw DomainError("theta must lie in [0, pi/2]");
    const Mat2c hr = detail::hadamard() * detail::phase_gate(std::numbers::pi / 2.0);
    TwoQubitUnitary out;
    out.u = detail::kron2(hr, hr) * gate("CRphi", std::numbers::pi / 2.0 - theta).u *
            gate("HxI").u * gate(swap_wires ? "CNOT_rev" : "CNOT").u;
    return out;
}

struct CircuitVerdict {
    double theta = 0.0;
    // permutation[b] = computational basis index (0..3) receiving basis ket b.
    std::array<int, 4> permutation{};
    double maxInfidelity = 1.0;
    bool pass = false;
    bool wiresSwapped = false;
};

namespace detail {

inline CircuitVerdict try_circuit(double theta, bool swapped) {
    CircuitVerdict verdict;
    verdict.theta = theta;
    verdict.wiresSwapped = swapped;
    const TwoQubitUnitary u = ejm_circuit(theta, swapped);
    const EjmBasis basis = ejm_basis(theta);
    std::array<bool, 4> used{};
    double min_overlap = 1.0;
    bool is_permutation = true;
    for (int b = 0; b < 4; ++b) {
        const Vec4c mapped = u.u * basis.kets[static_cast<std::size_t>(b)];
        int arg = 0;
        double best = 0.0;
        for (int k = 0; k < 4; ++k) {
            const double ov = std::norm(mapped(k));
            if (ov > best) {
                best = ov;
                arg = k;
            }
        }
        if (used[arg]) is_permutation = false;
        used[arg] = true;
        verdict.permutation[b] = arg;
        min_overlap = std::min(min_overlap, best);
    }
    verdict.maxInfidelity = 1.0 - min_overlap;
    verdict.pass = is_permutation && verdict.maxInfidelity <= 1e-10;
    return verdict;
}

}  // namespace detail

// Checks that the circuit maps the four measurement kets onto distinct
// computational basis states (global phases ignored). The default wire
// assignment is tried first; if it fails, the swapped one is reported.
inline CircuitVerdict verify_circuit(double theta) {
    CircuitVerdict verdict = detail::try_circuit(theta, false);
    if (!verdict.pass) {
        CircuitVerdict swapped = detail::try_circuit(theta, true);
        if (swapped.pass) return swapped;
    }
    return verdict;
}

// Batch verification: besides the per-theta checks, the relabelling must be
// the same permutation (and the same wire assignment) across the whole grid.
// A non-uniform permutation downgrades the offending verdicts to failures.
inline std::vector<CircuitVerdict> verify_circuit(const std::vector<double>& thetas) {
    std::vector<CircuitVerdict> verdicts;
    verdicts.reserve(thetas.size());
    for (double th : thetas) verdicts.push_back(verify_circuit(th));
    const CircuitVerdict* reference = nullptr;
    for (const CircuitVerdict& v : verdicts)
        if (v.pass) {
            reference = &v;
            break;
        }
    if (reference) {
        for (CircuitVerdict& v : verdicts)
            if (v.pass && (v.permutation != reference->permutation ||
                           v.wiresSwapped != reference->wiresSwapped))
                v.pass = false;
    }
    return verdicts;
}

}  // namespace ejmnet
