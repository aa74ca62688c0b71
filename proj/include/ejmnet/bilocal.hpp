#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "ejmnet/correlators.hpp"
#include "ejmnet/errors.hpp"
#include "ejmnet/tetra.hpp"

namespace ejmnet {

// Hidden-variable model with two independent sources. Both local variables
// range over the 8 vectors +-m_1..+-m_4 (see local_variable_vector); Alice
// outputs a = alpha_x and Charlie c = gamma_z deterministically, while the
// middle party samples b from response[8*ia + ig].
struct BilocalModel {
    std::array<double, 8> q1{}, q2{};
    std::array<std::array<double, 4>, 64> response{};

    static std::size_t pair_index(std::size_t ia, std::size_t ig) { return ia * 8 + ig; }

    void validate(double tol = 1e-10) const {
        double s1 = 0, s2 = 0;
        for (std::size_t i = 0; i < 8; ++i) {
            if (q1[i] < -tol || q2[i] < -tol)
                throw ValidityError("bilocal model: negative source weight");
            s1 += q1[i];
            s2 += q2[i];
        }
        if (std::abs(s1 - 1) > tol || std::abs(s2 - 1) > tol)
            throw ValidityError("bilocal model: source weights must sum to 1");
        for (std::size_t r = 0; r < 64; ++r) {
            double s = 0;
            for (double v : response[r]) {
                if (v < -tol) throw ValidityError("bilocal model: negative response entry");
                s += v;
            }
            if (std::abs(s - 1) > tol)
                throw ValidityError("bilocal model: response row " + std::to_string(r) +
                                    " sums to " + std::to_string(s));
        }
    }

    static BilocalModel uniform() {
        BilocalModel m;
        m.q1.fill(1.0 / 8);
        m.q2.fill(1.0 / 8);
        for (auto& row : m.response) row.fill(0.25);
        return m;
    }
};

inline TripartiteDistribution eval_bilocal(const BilocalModel& model, bool check = true) {
    if (check) model.validate();
    TripartiteDistribution dist;
    // outcome bit tables: bit[i][x] = 0 if component x of variable i is +1
    static const auto bits = [] {
        std::array<std::array<int, 3>, 8> t{};
        for (std::size_t i = 0; i < 8; ++i)
            for (int x = 0; x < 3; ++x) t[i][static_cast<std::size_t>(x)] =
                local_variable_outcome_bit(i, x);
        return t;
    }();
    for (std::size_t ia = 0; ia < 8; ++ia) {
        if (model.q1[ia] == 0) continue;
        for (std::size_t ig = 0; ig < 8; ++ig) {
            double w = model.q1[ia] * model.q2[ig];
            if (w == 0) continue;
            const auto& row = model.response[BilocalModel::pair_index(ia, ig)];
            for (int x = 0; x < 3; ++x) {
                int a = bits[ia][static_cast<std::size_t>(x)];
                for (int z = 0; z < 3; ++z) {
                    int c = bits[ig][static_cast<std::size_t>(z)];
                    for (int b = 0; b < 4; ++b)
                        dist.at(x, z, a, b, c) += w * row[static_cast<std::size_t>(b)];
                }
            }
        }
    }
    return dist;
}

// Explicit model reproducing the theta=pi/2 quantum correlations with Pauli
// settings at visibilities (V1, V2): alpha uniform over the -m_b, gamma
// uniform over the +m_b, and p(b|alpha,gamma) raised to (1+3V1V2)/4 when
// -alpha = m_b = gamma or det(-alpha, m_b, gamma) > 0, lowered to
// (1-V1V2)/4 otherwise (rows of the determinant in that order).
inline BilocalModel bsm_bilocal_model(double V1, double V2) {
    if (!(V1 >= -1e-12 && V1 <= 1 + 1e-12 && V2 >= -1e-12 && V2 <= 1 + 1e-12))
        throw DomainError("bsm_bilocal_model: visibilities outside [0,1]");
    BilocalModel model;
    for (std::size_t i = 0; i < 4; ++i) {
        model.q1[4 + i] = 0.25;  // -m_{i+1}
        model.q2[i] = 0.25;      // +m_{i+1}
    }
    double hi = (1 + 3 * V1 * V2) / 4;
    double lo = (1 - V1 * V2) / 4;
    auto det3 = [](const std::array<int, 3>& r0, const std::array<int, 3>& r1,
                   const std::array<int, 3>& r2) {
        return r0[0] * (r1[1] * r2[2] - r1[2] * r2[1]) -
               r0[1] * (r1[0] * r2[2] - r1[2] * r2[0]) +
               r0[2] * (r1[0] * r2[1] - r1[1] * r2[0]);
    };
    for (std::size_t ia = 0; ia < 8; ++ia) {
        for (std::size_t ig = 0; ig < 8; ++ig) {
            auto& row = model.response[BilocalModel::pair_index(ia, ig)];
            if (ia < 4 || ig >= 4) {
                row.fill(0.25);  // outside the model's support; any valid row
                continue;
            }
            auto alpha = local_variable_vector(ia);
            auto gamma = local_variable_vector(ig);
            std::array<int, 3> minus_alpha{-alpha[0], -alpha[1], -alpha[2]};
            for (std::size_t b = 0; b < 4; ++b) {
                const auto& mb = tetra_vertices()[b].m;
                bool coincide = minus_alpha == mb && mb == gamma;
                bool positive = det3(minus_alpha, mb, gamma) > 0;
                row[b] = (coincide || positive) ? hi : lo;
            }
        }
    }
    return model;
}

}
