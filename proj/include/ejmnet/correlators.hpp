#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "ejmnet/errors.hpp"
#include "ejmnet/tetra.hpp"

namespace ejmnet {

// p(a,b,c|x,z) with x,z in {0,1,2}, a,c in {0:+1, 1:-1}, b in {0..3}.
// Stored flat; 3*3*2*4*2 = 144 entries.
struct TripartiteDistribution {
    static constexpr std::size_t kSize = 144;
    std::array<double, kSize> p{};

    static constexpr std::size_t index(int x, int z, int a, int b, int c) {
        return static_cast<std::size_t>((((x * 3 + z) * 2 + a) * 4 + b) * 2 + c);
    }
    double& at(int x, int z, int a, int b, int c) { return p[index(x, z, a, b, c)]; }
    double at(int x, int z, int a, int b, int c) const { return p[index(x, z, a, b, c)]; }

    void validate(double neg_tol = 1e-9, double norm_tol = 1e-10) const {
        for (int x = 0; x < 3; ++x)
            for (int z = 0; z < 3; ++z) {
                double total = 0;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 4; ++b)
                        for (int c = 0; c < 2; ++c) {
                            double v = at(x, z, a, b, c);
                            if (v < -neg_tol)
                                throw ValidityError(
                                    "negative probability at (x,z,a,b,c)=(" +
                                    std::to_string(x + 1) + "," + std::to_string(z + 1) +
                                    "," + std::to_string(a == 0 ? 1 : -1) + "," +
                                    std::to_string(b + 1) + "," +
                                    std::to_string(c == 0 ? 1 : -1) + ")");
                            total += v;
                        }
                if (std::abs(total - 1) > norm_tol)
                    throw ValidityError("distribution block (x,z)=(" +
                                        std::to_string(x + 1) + "," + std::to_string(z + 1) +
                                        ") sums to " + std::to_string(total));
            }
    }

    bool is_valid(double neg_tol = 1e-9, double norm_tol = 1e-10) const {
        try {
            validate(neg_tol, norm_tol);
            return true;
        } catch (const ValidityError&) {
            return false;
        }
    }
};

// The 63 correlators of the 3x3-setting experiment. Bob's outcome enters
// through the +-1 triple m_b, so <B^y> etc. use b^y = (m_b)_y.
struct CorrelatorSet {
    std::array<double, 3> A{}, B{}, C{};
    std::array<std::array<double, 3>, 3> AB{}, BC{}, AC{};  // AB[x][y], BC[y][z], AC[x][z]
    std::array<std::array<std::array<double, 3>, 3>, 3> ABC{};  // ABC[x][y][z]

    double max_abs() const {
        double m = 0;
        for (int i = 0; i < 3; ++i) {
            m = std::max({m, std::abs(A[i]), std::abs(B[i]), std::abs(C[i])});
            for (int j = 0; j < 3; ++j) {
                m = std::max({m, std::abs(AB[i][j]), std::abs(BC[i][j]), std::abs(AC[i][j])});
                for (int k = 0; k < 3; ++k) m = std::max(m, std::abs(ABC[i][j][k]));
            }
        }
        return m;
    }
};

inline double max_correlator_difference(const CorrelatorSet& u, const CorrelatorSet& v) {
    double m = 0;
    for (int i = 0; i < 3; ++i) {
        m = std::max({m, std::abs(u.A[i] - v.A[i]), std::abs(u.B[i] - v.B[i]),
                      std::abs(u.C[i] - v.C[i])});
        for (int j = 0; j < 3; ++j) {
            m = std::max({m, std::abs(u.AB[i][j] - v.AB[i][j]),
                          std::abs(u.BC[i][j] - v.BC[i][j]),
                          std::abs(u.AC[i][j] - v.AC[i][j])});
            for (int k = 0; k < 3; ++k)
                m = std::max(m, std::abs(u.ABC[i][j][k] - v.ABC[i][j][k]));
        }
    }
    return m;
}

// 1/16 expansion of the probability in correlators, with b encoded as the
// triple m_b (product of entries +1).
inline TripartiteDistribution correlators_to_distribution(const CorrelatorSet& corr,
                                                          bool check = true) {
    TripartiteDistribution dist;
    for (int x = 0; x < 3; ++x)
        for (int z = 0; z < 3; ++z)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 4; ++b)
                    for (int c = 0; c < 2; ++c) {
                        double av = a == 0 ? 1.0 : -1.0;
                        double cv = c == 0 ? 1.0 : -1.0;
                        const auto& mb = tetra_vertices()[static_cast<std::size_t>(b)].m;
                        double value = 1.0 + av * corr.A[x] + cv * corr.C[z] +
                                       av * cv * corr.AC[x][z];
                        for (int y = 0; y < 3; ++y) {
                            double by = mb[static_cast<std::size_t>(y)];
                            value += by * corr.B[y] + av * by * corr.AB[x][y] +
                                     by * cv * corr.BC[y][z] +
                                     av * by * cv * corr.ABC[x][y][z];
                        }
                        dist.at(x, z, a, b, c) = value / 16.0;
                    }
    if (check) dist.validate();
    return dist;
}

inline CorrelatorSet distribution_to_correlators(const TripartiteDistribution& dist) {
    CorrelatorSet corr;
    for (int x = 0; x < 3; ++x)
        for (int z = 0; z < 3; ++z)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 4; ++b)
                    for (int c = 0; c < 2; ++c) {
                        double w = dist.at(x, z, a, b, c);
                        double av = a == 0 ? 1.0 : -1.0;
                        double cv = c == 0 ? 1.0 : -1.0;
                        const auto& mb = tetra_vertices()[static_cast<std::size_t>(b)].m;
                        corr.A[x] += w * av / 3.0;      // averaged over z
                        corr.C[z] += w * cv / 3.0;      // averaged over x
                        corr.AC[x][z] += w * av * cv;
                        for (int y = 0; y < 3; ++y) {
                            double by = mb[static_cast<std::size_t>(y)];
                            corr.B[y] += w * by / 9.0;  // averaged over x,z
                            corr.AB[x][y] += w * av * by / 3.0;
                            corr.BC[y][z] += w * by * cv / 3.0;
                            corr.ABC[x][y][z] += w * av * by * cv;
                        }
                    }
    return corr;
}

// Analytic correlators of the quantum experiment with Pauli settings:
// <A_x B^y> = -(V1/2) cos(theta) delta_xy, <B^y C_z> = (V2/2) cos(theta) delta_yz,
// <A_x B^y C_z> = -(V1 V2/2)(1 +- sin(theta)) on the two orientation classes of
// distinct (x,y,z), all other correlators zero.
inline CorrelatorSet closed_form_correlators(double theta, double V1, double V2) {
    CorrelatorSet corr;
    double ct = std::cos(theta), st = std::sin(theta);
    for (int i = 0; i < 3; ++i) {
        corr.AB[i][i] = -(V1 / 2) * ct;
        corr.BC[i][i] = (V2 / 2) * ct;
    }
    // cyclic (even) orientation gets 1+sin, anticyclic 1-sin
    const int even[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    const int odd[3][3] = {{0, 2, 1}, {1, 0, 2}, {2, 1, 0}};
    for (const auto& t : even) corr.ABC[t[0]][t[1]][t[2]] = -(V1 * V2 / 2) * (1 + st);
    for (const auto& t : odd) corr.ABC[t[0]][t[1]][t[2]] = -(V1 * V2 / 2) * (1 - st);
    return corr;
}

}
