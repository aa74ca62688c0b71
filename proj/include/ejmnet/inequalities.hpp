#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>

#include "ejmnet/correlators.hpp"
#include "ejmnet/errors.hpp"
#include "ejmnet/symmetric.hpp"
#include "ejmnet/tetra.hpp"

namespace ejmnet {

// Bilocal bound of the 48-term square-root expression: 12*sqrt(3) + 2*sqrt(15).
inline constexpr double kBprimeBilocalBound = 28.530576383241368;

// Quantum bound on the same expression under uniform Bob outcomes. Reported
// value from external semidefinite relaxations; stored, never recomputed.
inline constexpr double kBprimeQuantumBound = 30.70;

// A violation must exceed the bound by more than this to be flagged, so that
// boundary-saturating models are not reported as violations.
inline constexpr double kViolationTol = 1e-12;

struct StzValues {
    double S = 0.0;
    double T = 0.0;
    double Z = 0.0;
    // Refinement: S = S_BC - S_AB and T = R_plus + R_minus.
    double S_AB = 0.0;
    double S_BC = 0.0;
    double R_plus = 0.0;
    double R_minus = 0.0;
};

// S aggregates the diagonal two-party correlators, T the all-distinct
// three-party ones, and Z is the largest magnitude among every correlator
// that enters neither S nor T:
//   - the 3 + 4 + 3 one-party terms <A_x>, <B^y>, <C_z>,
//   - the 9 <A_x C_z>,
//   - the 6 + 6 off-diagonal <A_x B^y> and <B^y C_z>,
//   - the 21 three-party terms with a repeated index.
inline StzValues stz(const CorrelatorSet& corr) {
    StzValues out;
    for (int x = 0; x < 3; ++x) out.S_AB += corr.AB[x][x];
    for (int y = 0; y < 3; ++y) out.S_BC += corr.BC[y][y];
    out.S = out.S_BC - out.S_AB;

    constexpr int even[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    constexpr int odd[3][3] = {{0, 2, 1}, {1, 0, 2}, {2, 1, 0}};
    for (const auto& p : even) out.R_plus += corr.ABC[p[0]][p[1]][p[2]];
    for (const auto& p : odd) out.R_minus += corr.ABC[p[0]][p[1]][p[2]];
    out.T = out.R_plus + out.R_minus;

    double z = 0.0;
    for (int x = 0; x < 3; ++x) z = std::max(z, std::abs(corr.A[x]));
    for (int y = 0; y < 3; ++y) z = std::max(z, std::abs(corr.B[y]));
    for (int zz = 0; zz < 3; ++zz) z = std::max(z, std::abs(corr.C[zz]));
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) {
            if (x != y) z = std::max(z, std::abs(corr.AB[x][y]));
            if (x != y) z = std::max(z, std::abs(corr.BC[x][y]));
            z = std::max(z, std::abs(corr.AC[x][y]));
        }
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            for (int zz = 0; zz < 3; ++zz) {
                if (x != y && y != zz && x != zz) continue;
                z = std::max(z, std::abs(corr.ABC[x][y][zz]));
            }
    out.Z = z;
    return out;
}

struct BellReport {
    double value = 0.0;
    double bound = 0.0;
    bool violated = false;
};

// Bilocal inequality S/3 - T <= 3 + 5Z.
inline BellReport eval_B(const CorrelatorSet& corr) {
    const StzValues v = stz(corr);
    BellReport rep;
    rep.value = v.S / 3.0 - v.T;
    rep.bound = 3.0 + 5.0 * v.Z;
    rep.violated = rep.value > rep.bound + kViolationTol;
    return rep;
}

struct SliceMargin {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    double margin = 0.0;
    bool violated = false;
};

// The twelve linear facets bounding the (S,T)-plane projections at Z=0:
// six for the bilocal set, six for the local set. margin = bound - value;
// a negative margin flags a violation.
inline std::array<SliceMargin, 12> slice_margins(const CorrelatorSet& corr) {
    const StzValues v = stz(corr);
    const double S = v.S;
    const double T = v.T;
    struct Row {
        const char* name;
        double value;
        double bound;
    };
    const Row rows[12] = {
        {"bilocal: S/3 - T <= 3", S / 3.0 - T, 3.0},
        {"bilocal: -S/3 - T <= 3", -S / 3.0 - T, 3.0},
        {"bilocal: S <= 3", S, 3.0},
        {"bilocal: -S <= 3", -S, 3.0},
        {"bilocal: S + T <= 3", S + T, 3.0},
        {"bilocal: -S + T <= 3", -S + T, 3.0},
        {"local: S <= 3", S, 3.0},
        {"local: -S <= 3", -S, 3.0},
        {"local: T <= 4", T, 4.0},
        {"local: -T <= 4", -T, 4.0},
        {"local: S + T/2 <= 3", S + T / 2.0, 3.0},
        {"local: -S + T/2 <= 3", -S + T / 2.0, 3.0},
    };
    std::array<SliceMargin, 12> out;
    for (int i = 0; i < 12; ++i) {
        out[i].name = rows[i].name;
        out[i].value = rows[i].value;
        out[i].bound = rows[i].bound;
        out[i].margin = rows[i].bound - rows[i].value;
        out[i].violated = out[i].margin < -kViolationTol;
    }
    return out;
}

struct ConditionalCorrelators {
    std::array<double, 4> pB{};
    double EA[4][3] = {};
    double EC[4][3] = {};
    double EAC[4][3][3] = {};
};

// Correlators of Alice and Charlie conditioned on Bob's outcome. Alice's
// conditional marginal must not depend on Charlie's setting (and vice
// versa); a dependence beyond 1e-9 is a signalling violation and raises
// ValidityError. Outcomes with p(b) = 0 get E = 0 by convention.
inline ConditionalCorrelators conditional_correlators(const TripartiteDistribution& dist,
                                                      double signalling_tol = 1e-9) {
    ConditionalCorrelators out;

    // p(b) and the joint weights p(a,c,b|x,z).
    for (int b = 0; b < 4; ++b) {
        double pb = 0.0;
        for (int a = 0; a < 2; ++a)
            for (int c = 0; c < 2; ++c) pb += dist.at(0, 0, a, b, c);
        out.pB[b] = pb;
    }

    auto sum_ac = [&dist](int x, int z, int b, bool use_a, bool use_c) {
        double s = 0.0;
        for (int a = 0; a < 2; ++a)
            for (int c = 0; c < 2; ++c) {
                double w = dist.at(x, z, a, b, c);
                if (use_a) w *= (a == 0 ? 1.0 : -1.0);
                if (use_c) w *= (c == 0 ? 1.0 : -1.0);
                s += w;
            }
        return s;
    };

    char msg[128];
    for (int b = 0; b < 4; ++b) {
        const double pb = out.pB[b];
        for (int x = 0; x < 3; ++x) {
            double vals[3];
            for (int z = 0; z < 3; ++z) vals[z] = sum_ac(x, z, b, true, false);
            const double spread = *std::max_element(vals, vals + 3) -
                                  *std::min_element(vals, vals + 3);
            if (spread > signalling_tol * std::max(1.0, pb)) {
                std::snprintf(msg, sizeof(msg),
                              "conditional Alice correlator for outcome %d, setting x=%d "
                              "depends on Charlie's setting (spread %.3g)",
                              b + 1, x + 1, spread);
                throw ValidityError(msg);
            }
            out.EA[b][x] = pb > 0.0 ? (vals[0] + vals[1] + vals[2]) / (3.0 * pb) : 0.0;
        }
        for (int z = 0; z < 3; ++z) {
            double vals[3];
            for (int x = 0; x < 3; ++x) vals[x] = sum_ac(x, z, b, false, true);
            const double spread = *std::max_element(vals, vals + 3) -
                                  *std::min_element(vals, vals + 3);
            if (spread > signalling_tol * std::max(1.0, pb)) {
                std::snprintf(msg, sizeof(msg),
                              "conditional Charlie correlator for outcome %d, setting z=%d "
                              "depends on Alice's setting (spread %.3g)",
                              b + 1, z + 1, spread);
                throw ValidityError(msg);
            }
            out.EC[b][z] = pb > 0.0 ? (vals[0] + vals[1] + vals[2]) / (3.0 * pb) : 0.0;
        }
        for (int x = 0; x < 3; ++x)
            for (int z = 0; z < 3; ++z)
                out.EAC[b][x][z] = pb > 0.0 ? sum_ac(x, z, b, true, true) / pb : 0.0;
    }
    return out;
}

namespace detail {

// sqrt with clamping of tiny negative round-off. Anything below -1e-12 is a
// genuine inconsistency and raises.
inline double sqrt_clamped(double radicand) {
    if (radicand < 0.0) {
        if (radicand < -1e-12) {
            char msg[96];
            std::snprintf(msg, sizeof(msg),
                          "negative radicand %.6g in square-root Bell expression", radicand);
            throw ValidityError(msg);
        }
        radicand = 0.0;
    }
    return std::sqrt(radicand);
}

}  // namespace detail

struct BprimeReport {
    double value = 0.0;
    double bilocalBound = kBprimeBilocalBound;
    double quantumBound = kBprimeQuantumBound;
    // The quantum bound is only established for uniform Bob outcomes; the
    // flag records whether pB was uniform within 1e-6.
    bool quantumBoundApplies = false;
    bool violatesBilocal = false;
    bool violatesQuantum = false;
};

// The 48-term square-root Bell expression: 12 Alice terms, 12 Charlie terms
// and 24 Alice-Charlie terms, each sqrt(p(b) * (1 -+ sign * E)).
inline BprimeReport eval_Bprime(const TripartiteDistribution& dist) {
    const ConditionalCorrelators cc = conditional_correlators(dist);
    BprimeReport rep;

    const auto& verts = tetra_vertices();
    double total = 0.0;
    for (int b = 0; b < 4; ++b) {
        const double pb = cc.pB[b];
        const auto& m = verts[b].m;
        for (int x = 0; x < 3; ++x)
            total += detail::sqrt_clamped(pb * (1.0 - m[x] * cc.EA[b][x]));
        for (int z = 0; z < 3; ++z)
            total += detail::sqrt_clamped(pb * (1.0 + m[z] * cc.EC[b][z]));
        for (int x = 0; x < 3; ++x)
            for (int z = 0; z < 3; ++z) {
                if (x == z) continue;
                total += detail::sqrt_clamped(pb * (1.0 - m[x] * m[z] * cc.EAC[b][x][z]));
            }
    }
    rep.value = total;

    double uniform_dev = 0.0;
    for (int b = 0; b < 4; ++b) uniform_dev = std::max(uniform_dev, std::abs(cc.pB[b] - 0.25));
    rep.quantumBoundApplies = uniform_dev <= 1e-6;
    rep.violatesBilocal = rep.value > rep.bilocalBound + kViolationTol;
    rep.violatesQuantum = rep.quantumBoundApplies && rep.value > rep.quantumBound + kViolationTol;
    return rep;
}

// Closed form of the square-root expression on the quantum family:
// 6 sqrt(1 + V1/2 cos t) + 6 sqrt(1 + V2/2 cos t)
//   + 6 sqrt(1 + V1 V2/2 (1 + sin t)) + 6 sqrt(1 + V1 V2/2 (1 - sin t)).
inline double Bprime_closed_form(double theta, double V1, double V2) {
    if (!(V1 >= 0.0 && V1 <= 1.0 && V2 >= 0.0 && V2 <= 1.0))
        throw DomainError("visibilities must lie in [0, 1]");
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    return 6.0 * std::sqrt(1.0 + 0.5 * V1 * ct) + 6.0 * std::sqrt(1.0 + 0.5 * V2 * ct) +
           6.0 * std::sqrt(1.0 + 0.5 * V1 * V2 * (1.0 + st)) +
           6.0 * std::sqrt(1.0 + 0.5 * V1 * V2 * (1.0 - st));
}

struct BprimeLinReport {
    double linValue = 0.0;
    double concavityBound = 0.0;
};

// Linearization of the square-root expression: the sum of all 48 radicands,
// including the p(b) weights, so that the concavity bound
// value <= sqrt(48 * linValue) holds for every distribution (for uniform
// Bob outcomes the weights reduce to 1/4 each).
inline BprimeLinReport Bprime_lin(const TripartiteDistribution& dist) {
    const ConditionalCorrelators cc = conditional_correlators(dist);
    const auto& verts = tetra_vertices();
    double lin = 0.0;
    for (int b = 0; b < 4; ++b) {
        const double pb = cc.pB[b];
        const auto& m = verts[b].m;
        for (int x = 0; x < 3; ++x) lin += pb * (1.0 - m[x] * cc.EA[b][x]);
        for (int z = 0; z < 3; ++z) lin += pb * (1.0 + m[z] * cc.EC[b][z]);
        for (int x = 0; x < 3; ++x)
            for (int z = 0; z < 3; ++z) {
                if (x == z) continue;
                lin += pb * (1.0 - m[x] * m[z] * cc.EAC[b][x][z]);
            }
    }
    BprimeLinReport rep;
    rep.linValue = lin;
    rep.concavityBound = std::sqrt(48.0 * std::max(0.0, lin));
    return rep;
}

// A local correlation that satisfies all twelve slice facets yet violates
// the square-root expression's bilocal bound: diagonal two-party
// correlators -+ 1/2 and all-distinct three-party correlators -1/3.
inline CorrelatorSet bprime_only_violation_example() {
    CorrelatorSet corr;
    for (int x = 0; x < 3; ++x) {
        corr.AB[x][x] = -0.5;
        corr.BC[x][x] = 0.5;
    }
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            for (int z = 0; z < 3; ++z)
                if (x != y && y != z && x != z) corr.ABC[x][y][z] = -1.0 / 3.0;
    return corr;
}

// The four per-sector square brackets whose weighted sum gives S/3 - T for
// symmetric models. Order: (tau_alpha, tau_gamma) = (+,+), (+,-), (-,+), (-,-).
inline std::array<double, 4> symmetric_B_brackets(const SymmetricModelParams& params) {
    params.validate();
    std::array<double, 4> out{};
    const int taus[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    for (int i = 0; i < 4; ++i) {
        const SectorResponse& s = params.sector[taus[i][0]][taus[i][1]];
        const double ta = taus[i][0] == 0 ? 1.0 : -1.0;
        const double tg = taus[i][1] == 0 ? 1.0 : -1.0;
        const double rest = (1.0 - s.qSame) / 3.0;
        // Per-sector value of S/3 - T, i.e. (3bc - 3ab)/3 - 6abc with the
        // sector's signed pattern correlators.
        const double ab = ta * (s.qAlpha - rest);
        const double bc = tg * (s.qGamma - rest);
        const double abc = ta * tg * (0.5 - rest - 0.5 * (s.qAlpha + s.qGamma));
        out[i] = bc - ab - 6.0 * abc;
    }
    return out;
}

}  // namespace ejmnet
