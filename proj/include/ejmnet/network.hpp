#pragma once

#include <Eigen/Dense>

#include "ejmnet/correlators.hpp"
#include "ejmnet/quantum.hpp"

namespace ejmnet {

// Born-rule distribution of the two-source network. Qubit order is
// (Alice, Bob-left, Bob-right, Charlie); Bob's projector acts on the
// middle two qubits, i.e. the second qubit of source 1 and the first
// qubit of source 2.
inline TripartiteDistribution network_distribution(double theta, double V1, double V2,
                                                   const SettingTriple& settingsA,
                                                   const SettingTriple& settingsC) {
    const Mat4c rho1 = werner(V1).rho;
    const Mat4c rho2 = werner(V2).rho;
    const EjmBasis basis = ejm_basis(theta);

    // rho = rho1 (x) rho2 on qubits (A, BL, BR, C)
    Eigen::Matrix<Complex, 16, 16> rho;
    for (int r1 = 0; r1 < 4; ++r1)
        for (int c1 = 0; c1 < 4; ++c1)
            for (int r2 = 0; r2 < 4; ++r2)
                for (int c2 = 0; c2 < 4; ++c2)
                    rho(4 * r1 + r2, 4 * c1 + c2) = rho1(r1, c1) * rho2(r2, c2);

    TripartiteDistribution dist;
    for (int x = 0; x < 3; ++x) {
        for (int a = 0; a < 2; ++a) {
            Mat2c projA = settingsA[static_cast<std::size_t>(x)].projector(a == 0 ? 1 : -1);
            for (int z = 0; z < 3; ++z) {
                for (int c = 0; c < 2; ++c) {
                    Mat2c projC =
                        settingsC[static_cast<std::size_t>(z)].projector(c == 0 ? 1 : -1);
                    for (int b = 0; b < 4; ++b) {
                        const Vec4c& phi = basis.kets[static_cast<std::size_t>(b)];
                        // effect = projA (x) |phi><phi| (x) projC, laid out on
                        // bit order (A, BL, BR, C)
                        Complex tr = 0;
                        for (int iA = 0; iA < 2; ++iA)
                            for (int jA = 0; jA < 2; ++jA)
                                for (int iB = 0; iB < 4; ++iB)
                                    for (int jB = 0; jB < 4; ++jB)
                                        for (int iC = 0; iC < 2; ++iC)
                                            for (int jC = 0; jC < 2; ++jC) {
                                                Complex e = projA(iA, jA) * phi(iB) *
                                                            std::conj(phi(jB)) *
                                                            projC(iC, jC);
                                                if (e == Complex(0, 0)) continue;
                                                int row = 8 * iA + 2 * iB + iC;
                                                int col = 8 * jA + 2 * jB + jC;
                                                tr += e * rho(col, row);
                                            }
                        dist.at(x, z, a, b, c) = tr.real();
                    }
                }
            }
        }
    }
    return dist;
}

}
