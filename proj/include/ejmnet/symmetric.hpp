#pragma once

#include <array>
#include <cmath>
#include <string>

#include "ejmnet/bilocal.hpp"
#include "ejmnet/correlators.hpp"
#include "ejmnet/errors.hpp"

namespace ejmnet {

// Response parameters of one (tau_alpha, tau_gamma) sector of the
// tetrahedrally symmetric model family:
//   qSame  = p(b = vtx | alpha-tilde = gamma-tilde = vtx)
//   qAlpha = p(b = alpha-tilde vertex | alpha-tilde != gamma-tilde)
//   qGamma = p(b = gamma-tilde vertex | alpha-tilde != gamma-tilde)
// The remaining probability is split evenly over the unnamed outcomes.
struct SectorResponse {
    double qSame = 0.25;
    double qAlpha = 0.25;
    double qGamma = 0.25;
};

struct SymmetricModelParams {
    double qPlus1 = 0.5;  // source-1 weight of the +m_b tetrahedron
    double qPlus2 = 0.5;
    // sector[ta][tg]; index 0 is tau=+ (variable in the +m_b set), 1 is tau=-
    std::array<std::array<SectorResponse, 2>, 2> sector{};

    void validate() const {
        auto in01 = [](double v) { return v >= -1e-12 && v <= 1 + 1e-12; };
        if (!in01(qPlus1) || !in01(qPlus2))
            throw ValidityError("symmetric params: tetrahedron weights outside [0,1]");
        for (const auto& row : sector)
            for (const auto& s : row) {
                if (!in01(s.qSame) || !in01(s.qAlpha) || !in01(s.qGamma))
                    throw ValidityError("symmetric params: response parameter outside [0,1]");
                if (s.qAlpha + s.qGamma > 1 + 1e-12)
                    throw ValidityError("symmetric params: qAlpha + qGamma exceeds 1");
            }
    }
};

inline BilocalModel expand_symmetric(const SymmetricModelParams& params) {
    params.validate();
    BilocalModel model;
    for (std::size_t v = 0; v < 4; ++v) {
        model.q1[v] = params.qPlus1 / 4;
        model.q1[4 + v] = (1 - params.qPlus1) / 4;
        model.q2[v] = params.qPlus2 / 4;
        model.q2[4 + v] = (1 - params.qPlus2) / 4;
    }
    for (std::size_t ia = 0; ia < 8; ++ia) {
        std::size_t ta = ia < 4 ? 0 : 1;
        std::size_t va = ia % 4;  // alpha-tilde vertex
        for (std::size_t ig = 0; ig < 8; ++ig) {
            std::size_t tg = ig < 4 ? 0 : 1;
            std::size_t vg = ig % 4;
            const SectorResponse& s = params.sector[ta][tg];
            auto& row = model.response[BilocalModel::pair_index(ia, ig)];
            if (va == vg) {
                for (std::size_t b = 0; b < 4; ++b)
                    row[b] = b == va ? s.qSame : (1 - s.qSame) / 3;
            } else {
                for (std::size_t b = 0; b < 4; ++b) {
                    if (b == va)
                        row[b] = s.qAlpha;
                    else if (b == vg)
                        row[b] = s.qGamma;
                    else
                        row[b] = (1 - s.qAlpha - s.qGamma) / 2;
                }
            }
        }
    }
    return model;
}

// Pattern correlators of a symmetric model: every diagonal <A_x B^x> equals
// `ab`, every <B^y C_y> equals `bc`, every all-distinct <A_x B^y C_z> equals
// `abc`, and all other correlators vanish.
struct SymmetricCorrelatorTriple {
    double ab = 0, bc = 0, abc = 0;
};

inline SymmetricCorrelatorTriple symmetric_correlator_triple(
    const SymmetricModelParams& params) {
    params.validate();
    SymmetricCorrelatorTriple t;
    const double w1[2] = {params.qPlus1, 1 - params.qPlus1};
    const double w2[2] = {params.qPlus2, 1 - params.qPlus2};
    const double sign[2] = {1.0, -1.0};
    for (int ta = 0; ta < 2; ++ta)
        for (int tg = 0; tg < 2; ++tg) {
            const SectorResponse& s =
                params.sector[static_cast<std::size_t>(ta)][static_cast<std::size_t>(tg)];
            double w = w1[ta] * w2[tg];
            t.ab += w * sign[ta] * (s.qAlpha - (1 - s.qSame) / 3);
            t.bc += w * sign[tg] * (s.qGamma - (1 - s.qSame) / 3);
            t.abc += w * sign[ta] * sign[tg] *
                     (0.5 - (1 - s.qSame) / 3 - (s.qAlpha + s.qGamma) / 2);
        }
    return t;
}

inline CorrelatorSet symmetric_correlators(const SymmetricModelParams& params) {
    SymmetricCorrelatorTriple t = symmetric_correlator_triple(params);
    CorrelatorSet corr;
    for (int i = 0; i < 3; ++i) {
        corr.AB[i][i] = t.ab;
        corr.BC[i][i] = t.bc;
    }
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            for (int z = 0; z < 3; ++z)
                if (x != y && y != z && x != z) corr.ABC[x][y][z] = t.abc;
    return corr;
}

// Boundary model along the V1 >= V2 branch: corner response assignments
// plus the analytic (qPlus, q0, V2) values. Valid for V1 in
// [symmetric_crit_visibility(), 1].
struct BoundaryModel {
    SymmetricModelParams params;
    double V2 = 0;
    double q0 = 0;
};

inline BoundaryModel analytic_boundary(double V1) {
    if (!(V1 <= 1 + 1e-12)) throw DomainError("analytic_boundary: V1 > 1");
    if (2 * V1 - 8.0 / 9 < 0)
        throw DomainError("analytic_boundary: V1 below validity range (needs 2V1 >= 8/9)");
    double r = std::sqrt(2 * V1 - 8.0 / 9);
    double V2 = (58 + 9 * V1 - 12 * r) / (27 * (1 + 2 * V1));
    double qPlus = 2.0 / 3 - r / 2;
    double q0 = (6 * r + 9 * V2 - 9 * V1 - 2) / (3 * r + 8 - 9 * V1);
    if (q0 < -1e-12 || q0 > 1 + 1e-12)
        throw DomainError("analytic_boundary: q0 outside [0,1] at V1=" + std::to_string(V1));
    if (qPlus < -1e-12 || qPlus > 1 + 1e-12)
        throw DomainError("analytic_boundary: qPlus outside [0,1]");
    BoundaryModel out;
    out.V2 = V2;
    out.q0 = q0;
    out.params.qPlus1 = qPlus;
    out.params.qPlus2 = qPlus;
    out.params.sector[0][0] = {0.0, 0.0, 1.0};
    out.params.sector[0][1] = {1.0, 0.0, 0.0};
    out.params.sector[1][0] = {1.0, 0.0, q0};
    out.params.sector[1][1] = {0.0, 1.0, 0.0};
    return out;
}

// Fixed point of the boundary curve on the V1 = V2 diagonal, solved by
// bisection on [4/9, 1] to 1e-10.
inline double symmetric_crit_visibility() {
    auto f = [](double V) {
        double r = std::sqrt(std::max(0.0, 2 * V - 8.0 / 9));
        return (58 + 9 * V - 12 * r) / (27 * (1 + 2 * V)) - V;
    };
    double lo = 4.0 / 9, hi = 1.0;
    for (int iter = 0; iter < 200 && hi - lo > 1e-10; ++iter) {
        double mid = (lo + hi) / 2;
        if (f(mid) > 0)
            lo = mid;
        else
            hi = mid;
    }
    return (lo + hi) / 2;
}

}
