#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "ejmnet/bilocal.hpp"
#include "ejmnet/correlators.hpp"
#include "ejmnet/errors.hpp"
#include "ejmnet/parallel.hpp"
#include "ejmnet/rng.hpp"
#include "ejmnet/symmetric.hpp"

namespace ejmnet {

enum class Parametrization { direct, symmetric14 };

struct FitOptions {
    int restarts = 64;
    int maxIters = 2000;
    // Feasibility threshold on the L-infinity distance over the 144
    // probability entries. The search itself minimizes the L2 distance.
    double tolResidual = 1e-5;
    std::uint64_t seed = 1;
    Parametrization parametrization = Parametrization::direct;
    int threads = 0;  // 0 = environment default

    void validate() const {
        if (restarts < 1) throw UsageError("FitOptions: restarts must be >= 1");
        if (maxIters < 1) throw UsageError("FitOptions: maxIters must be >= 1");
        if (!(tolResidual > 0)) throw UsageError("FitOptions: tolResidual must be > 0");
    }
};

struct FitResult {
    BilocalModel model = BilocalModel::uniform();
    double residual = std::numeric_limits<double>::infinity();
    bool feasible = false;
    int itersUsed = 0;
    int restartsUsed = 0;
};

namespace detail {

// Euclidean projection onto the probability simplex.
inline void project_simplex(double* v, std::size_t n) {
    double u[8];
    std::copy(v, v + n, u);
    std::sort(u, u + n, std::greater<double>());
    double css = 0.0;
    double theta = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        css += u[k];
        const double cand = (css - 1.0) / static_cast<double>(k + 1);
        if (u[k] - cand > 0.0) theta = cand;
    }
    for (std::size_t k = 0; k < n; ++k) v[k] = std::max(v[k] - theta, 0.0);
}

struct WorkModel {
    std::array<double, 8> q1{}, q2{};
    std::array<double, 256> R{};  // response rows, 64 x 4

    static WorkModel from(const BilocalModel& m) {
        WorkModel w;
        w.q1 = m.q1;
        w.q2 = m.q2;
        for (std::size_t r = 0; r < 64; ++r)
            for (std::size_t b = 0; b < 4; ++b) w.R[4 * r + b] = m.response[r][b];
        return w;
    }
    BilocalModel to_model() const {
        BilocalModel m;
        m.q1 = q1;
        m.q2 = q2;
        for (std::size_t r = 0; r < 64; ++r)
            for (std::size_t b = 0; b < 4; ++b) m.response[r][b] = R[4 * r + b];
        return m;
    }
};

inline const std::array<std::array<int, 3>, 8>& outcome_bits() {
    static const std::array<std::array<int, 3>, 8> bits = [] {
        std::array<std::array<int, 3>, 8> t{};
        for (std::size_t i = 0; i < 8; ++i)
            for (int x = 0; x < 3; ++x) t[i][static_cast<std::size_t>(x)] = local_variable_outcome_bit(i, x);
        return t;
    }();
    return bits;
}

inline void model_distribution(const WorkModel& m, std::array<double, TripartiteDistribution::kSize>& out) {
    out.fill(0.0);
    const auto& bits = outcome_bits();
    for (std::size_t i = 0; i < 8; ++i) {
        if (m.q1[i] == 0.0) continue;
        for (std::size_t j = 0; j < 8; ++j) {
            const double w = m.q1[i] * m.q2[j];
            if (w == 0.0) continue;
            const double* row = &m.R[4 * (8 * i + j)];
            for (int x = 0; x < 3; ++x) {
                const int a = bits[i][static_cast<std::size_t>(x)];
                for (int z = 0; z < 3; ++z) {
                    const int c = bits[j][static_cast<std::size_t>(z)];
                    const std::size_t base = TripartiteDistribution::index(x, z, a, 0, c);
                    for (std::size_t b = 0; b < 4; ++b) out[base + 2 * b] += w * row[b];
                }
            }
        }
    }
}

inline double linf_distance(const std::array<double, TripartiteDistribution::kSize>& u, const std::array<double, TripartiteDistribution::kSize>& v) {
    double m = 0.0;
    for (std::size_t k = 0; k < TripartiteDistribution::kSize; ++k) m = std::max(m, std::abs(u[k] - v[k]));
    return m;
}

// One restart of the alternating block search: accelerated projected
// gradient on the response table, then on each source distribution in
// turn. Returns the L-infinity residual; *sweeps_used reports the number
// of alternating sweeps consumed.
inline double fit_sweeps(WorkModel& m, const std::array<double, TripartiteDistribution::kSize>& target, int max_sweeps,
                         double tol, int* sweeps_used, int fista_response_iters = 8) {
    const auto& bits = outcome_bits();
    std::array<double, TripartiteDistribution::kSize> p{};
    std::array<double, 256> Y{}, Rk{}, Rn{}, grad{};
    double best = std::numeric_limits<double>::infinity();
    int stall = 0;
    int sweep = 0;

    for (sweep = 0; sweep < max_sweeps; ++sweep) {
        // Response block.
        double q1max = 0, q2max = 0;
        for (std::size_t i = 0; i < 8; ++i) {
            q1max = std::max(q1max, m.q1[i]);
            q2max = std::max(q2max, m.q2[i]);
        }
        const double L = 18.0 * q1max * q2max + 1e-12;
        Y = m.R;
        Rk = m.R;
        double tk = 1.0;
        WorkModel trial = m;
        for (int it = 0; it < fista_response_iters; ++it) {
            trial.R = Y;
            model_distribution(trial, p);
            for (std::size_t k = 0; k < TripartiteDistribution::kSize; ++k) p[k] -= target[k];
            for (std::size_t i = 0; i < 8; ++i)
                for (std::size_t j = 0; j < 8; ++j) {
                    const double w = 2.0 * m.q1[i] * m.q2[j];
                    double* g = &grad[4 * (8 * i + j)];
                    g[0] = g[1] = g[2] = g[3] = 0.0;
                    for (int x = 0; x < 3; ++x) {
                        const int a = bits[i][static_cast<std::size_t>(x)];
                        for (int z = 0; z < 3; ++z) {
                            const int c = bits[j][static_cast<std::size_t>(z)];
                            const std::size_t base = TripartiteDistribution::index(x, z, a, 0, c);
                            for (std::size_t b = 0; b < 4; ++b) g[b] += p[base + 2 * b];
                        }
                    }
                    g[0] *= w;
                    g[1] *= w;
                    g[2] *= w;
                    g[3] *= w;
                }
            for (std::size_t r = 0; r < 64; ++r) {
                double* row = &Rn[4 * r];
                for (std::size_t b = 0; b < 4; ++b) row[b] = Y[4 * r + b] - grad[4 * r + b] / L;
                project_simplex(row, 4);
            }
            const double tn = (1.0 + std::sqrt(1.0 + 4.0 * tk * tk)) / 2.0;
            for (std::size_t k = 0; k < 256; ++k) {
                const double step = Rn[k] + ((tk - 1.0) / tn) * (Rn[k] - Rk[k]);
                Rk[k] = Rn[k];
                Y[k] = step;
            }
            tk = tn;
        }
        m.R = Rk;

        // Source blocks: the distribution is linear in each source weight
        // vector, so each block is a simplex-constrained least squares.
        for (int which = 0; which < 2; ++which) {
            double basis[8][TripartiteDistribution::kSize];
            for (auto& rowv : basis) std::fill(rowv, rowv + TripartiteDistribution::kSize, 0.0);
            for (std::size_t i = 0; i < 8; ++i)
                for (std::size_t j = 0; j < 8; ++j) {
                    const std::size_t free_idx = which == 0 ? i : j;
                    const double w = which == 0 ? m.q2[j] : m.q1[i];
                    if (w == 0.0) continue;
                    const double* row = &m.R[4 * (8 * i + j)];
                    double* dst = basis[free_idx];
                    for (int x = 0; x < 3; ++x) {
                        const int a = bits[i][static_cast<std::size_t>(x)];
                        for (int z = 0; z < 3; ++z) {
                            const int c = bits[j][static_cast<std::size_t>(z)];
                            const std::size_t base = TripartiteDistribution::index(x, z, a, 0, c);
                            for (std::size_t b = 0; b < 4; ++b) dst[base + 2 * b] += w * row[b];
                        }
                    }
                }
            double gram[8][8];
            double lin[8];
            for (std::size_t i = 0; i < 8; ++i) {
                lin[i] = 0.0;
                for (std::size_t k = 0; k < TripartiteDistribution::kSize; ++k) lin[i] += basis[i][k] * target[k];
                lin[i] *= 2.0;
                for (std::size_t j = 0; j <= i; ++j) {
                    double s = 0.0;
                    for (std::size_t k = 0; k < TripartiteDistribution::kSize; ++k) s += basis[i][k] * basis[j][k];
                    gram[i][j] = gram[j][i] = 2.0 * s;
                }
            }
            // Step size from a power-iteration estimate of the largest
            // Gram eigenvalue, padded for safety.
            double vec[8];
            std::fill(vec, vec + 8, 1.0);
            double lam = 1.0;
            for (int it = 0; it < 40; ++it) {
                double nv[8];
                for (std::size_t i = 0; i < 8; ++i) {
                    nv[i] = 0.0;
                    for (std::size_t j = 0; j < 8; ++j) nv[i] += gram[i][j] * vec[j];
                }
                double norm = 0.0;
                for (double x : nv) norm += x * x;
                norm = std::sqrt(norm);
                if (norm < 1e-300) break;
                lam = norm;
                for (std::size_t i = 0; i < 8; ++i) vec[i] = nv[i] / norm;
            }
            const double Lq = lam * 1.02 + 1e-12;
            double* q = which == 0 ? m.q1.data() : m.q2.data();
            double y[8], qk[8], qn[8];
            std::copy(q, q + 8, y);
            std::copy(q, q + 8, qk);
            double tq = 1.0;
            for (int it = 0; it < 25; ++it) {
                for (std::size_t i = 0; i < 8; ++i) {
                    double g = -lin[i];
                    for (std::size_t j = 0; j < 8; ++j) g += gram[i][j] * y[j];
                    qn[i] = y[i] - g / Lq;
                }
                project_simplex(qn, 8);
                const double tn = (1.0 + std::sqrt(1.0 + 4.0 * tq * tq)) / 2.0;
                for (std::size_t i = 0; i < 8; ++i) {
                    y[i] = qn[i] + ((tq - 1.0) / tn) * (qn[i] - qk[i]);
                    qk[i] = qn[i];
                }
                tq = tn;
            }
            std::copy(qk, qk + 8, q);
        }

        model_distribution(m, p);
        const double linf = linf_distance(p, target);
        if (linf < tol) {
            *sweeps_used = sweep + 1;
            return linf;
        }
        if (linf > best - 1e-15) {
            if (++stall > 150) break;
        } else {
            stall = 0;
            best = linf;
        }
    }
    *sweeps_used = std::min(sweep + 1, max_sweeps);
    model_distribution(m, p);
    return linf_distance(p, target);
}

// ---- symmetric 14-parameter family fitter ----

// Per-sector map from (qSame, qAlpha, qGamma) to the sector's unsigned
// pattern correlator contributions (fA, fG, fT).
inline std::array<double, 3> sector_f(const SectorResponse& s) {
    const double rest = (1.0 - s.qSame) / 3.0;
    return {s.qAlpha - rest, s.qGamma - rest, 0.5 - rest - 0.5 * (s.qAlpha + s.qGamma)};
}

// f = kSectorLin * (qSame, qAlpha, qGamma)^T + kSectorOffset
inline constexpr double kSectorLin[3][3] = {
    {1.0 / 3.0, 1.0, 0.0}, {1.0 / 3.0, 0.0, 1.0}, {1.0 / 3.0, -0.5, -0.5}};
inline constexpr double kSectorOffset[3] = {-1.0 / 3.0, -1.0 / 3.0, 1.0 / 6.0};

// Weighted L2 objective on the pattern correlator triple; the weights are
// the multiplicities (3,3,6) of the pattern entries scaled by the 1/16
// expansion, so the objective equals the squared L2 distance between the
// corresponding distributions.
inline constexpr double kTripleWeight[3] = {9.0 / 16.0, 9.0 / 16.0, 6.0 / 16.0};

// Projection onto {0<=qSame<=1} x {qAlpha,qGamma>=0, qAlpha+qGamma<=1}.
inline void project_sector(double* v) {
    v[0] = std::clamp(v[0], 0.0, 1.0);
    double qa = std::max(v[1], 0.0);
    double qg = std::max(v[2], 0.0);
    if (qa + qg > 1.0) {
        const double d = (qa + qg - 1.0) / 2.0;
        qa -= d;
        qg -= d;
        if (qa < 0.0) {
            qg += qa;
            qa = 0.0;
        }
        if (qg < 0.0) {
            qa += qg;
            qg = 0.0;
        }
    }
    v[1] = qa;
    v[2] = qg;
}

struct SymSectorState {
    // sector parameters in order (qSame, qAlpha, qGamma) for
    // (ta,tg) = (+,+), (+,-), (-,+), (-,-)
    double P[4][3];
};

// Convex inner fit: with the tetrahedron weights fixed, minimize the
// weighted L2 distance of the pattern correlator triple to the target
// over the 12 sector parameters by accelerated projected gradient.
inline double sym_inner_fit(double q1p, double q2p, const SymmetricCorrelatorTriple& target,
                            int iters, SymSectorState* state) {
    const double w[4] = {q1p * q2p, q1p * (1 - q2p), (1 - q1p) * q2p, (1 - q1p) * (1 - q2p)};
    const double sgnA[4] = {1, 1, -1, -1};
    const double sgnG[4] = {1, -1, 1, -1};
    const double sgnT[4] = {1, -1, -1, 1};
    const double tgt[3] = {target.ab, target.bc, target.abc};

    double P[4][3], Y[4][3], Pk[4][3];
    for (int s = 0; s < 4; ++s)
        for (int k = 0; k < 3; ++k) P[s][k] = 0.25;
    std::copy(&P[0][0], &P[0][0] + 12, &Y[0][0]);
    std::copy(&P[0][0], &P[0][0] + 12, &Pk[0][0]);

    double frob = 0.0;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) frob += kSectorLin[r][c] * kSectorLin[r][c];
    double lsum = 0.0;
    for (int s = 0; s < 4; ++s) lsum += w[s] * w[s] * frob;
    const double L = 2.0 * (9.0 / 16.0) * lsum * 4.0 + 1e-9;

    auto corr = [&](const double Q[4][3], double c[3]) {
        c[0] = c[1] = c[2] = 0.0;
        for (int s = 0; s < 4; ++s) {
            double f[3];
            for (int r = 0; r < 3; ++r)
                f[r] = kSectorLin[r][0] * Q[s][0] + kSectorLin[r][1] * Q[s][1] +
                       kSectorLin[r][2] * Q[s][2] + kSectorOffset[r];
            c[0] += w[s] * sgnA[s] * f[0];
            c[1] += w[s] * sgnG[s] * f[1];
            c[2] += w[s] * sgnT[s] * f[2];
        }
    };

    double tk = 1.0;
    for (int it = 0; it < iters; ++it) {
        double c[3];
        corr(Y, c);
        double r[3];
        for (int k = 0; k < 3; ++k) r[k] = 2.0 * kTripleWeight[k] * (c[k] - tgt[k]);
        double Pn[4][3];
        for (int s = 0; s < 4; ++s) {
            const double g3[3] = {r[0] * sgnA[s] * w[s], r[1] * sgnG[s] * w[s],
                                  r[2] * sgnT[s] * w[s]};
            for (int k = 0; k < 3; ++k) {
                const double grad = kSectorLin[0][k] * g3[0] + kSectorLin[1][k] * g3[1] +
                                    kSectorLin[2][k] * g3[2];
                Pn[s][k] = Y[s][k] - grad / L;
            }
            project_sector(Pn[s]);
        }
        const double tn = (1.0 + std::sqrt(1.0 + 4.0 * tk * tk)) / 2.0;
        for (int s = 0; s < 4; ++s)
            for (int k = 0; k < 3; ++k) {
                Y[s][k] = Pn[s][k] + ((tk - 1.0) / tn) * (Pn[s][k] - Pk[s][k]);
                Pk[s][k] = Pn[s][k];
            }
        tk = tn;
    }
    double c[3];
    corr(Pk, c);
    double obj = 0.0;
    for (int k = 0; k < 3; ++k) obj += kTripleWeight[k] * (c[k] - tgt[k]) * (c[k] - tgt[k]);
    if (state) std::copy(&Pk[0][0], &Pk[0][0] + 12, &state->P[0][0]);
    return obj;
}

inline SymmetricModelParams sym_state_to_params(double q1p, double q2p,
                                                const SymSectorState& st) {
    SymmetricModelParams params;
    params.qPlus1 = q1p;
    params.qPlus2 = q2p;
    const int order[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    for (int s = 0; s < 4; ++s) {
        SectorResponse& sec = params.sector[static_cast<std::size_t>(order[s][0])]
                                           [static_cast<std::size_t>(order[s][1])];
        sec.qSame = st.P[s][0];
        sec.qAlpha = st.P[s][1];
        sec.qGamma = st.P[s][2];
    }
    return params;
}

struct SymFitOutcome {
    SymmetricModelParams params;
    double objective = std::numeric_limits<double>::infinity();
    int innerIters = 0;
};

// Outer search over the two tetrahedron weights: coarse grid plus a
// pattern-refinement descent. Deterministic.
inline SymFitOutcome fit_symmetric14(const SymmetricCorrelatorTriple& target, int grid_n = 13,
                                     int coarse_iters = 800, int refine_iters = 2500) {
    SymFitOutcome best;
    double bq1 = 0.5, bq2 = 0.5;
    SymSectorState state{};
    int total_iters = 0;
    for (int gi = 0; gi < grid_n; ++gi)
        for (int gj = 0; gj < grid_n; ++gj) {
            const double q1p = static_cast<double>(gi) / (grid_n - 1);
            const double q2p = static_cast<double>(gj) / (grid_n - 1);
            const double obj = sym_inner_fit(q1p, q2p, target, coarse_iters, &state);
            total_iters += coarse_iters;
            if (obj < best.objective) {
                best.objective = obj;
                best.params = sym_state_to_params(q1p, q2p, state);
                bq1 = q1p;
                bq2 = q2p;
            }
        }
    double step = 0.5 / (grid_n - 1);
    for (int round = 0; round < 40 && step > 1e-7; ++round) {
        bool improved = false;
        for (int di = -1; di <= 1; ++di)
            for (int dj = -1; dj <= 1; ++dj) {
                const double q1p = std::clamp(bq1 + di * step, 0.0, 1.0);
                const double q2p = std::clamp(bq2 + dj * step, 0.0, 1.0);
                const double obj = sym_inner_fit(q1p, q2p, target, refine_iters, &state);
                total_iters += refine_iters;
                if (obj < best.objective - 1e-18) {
                    best.objective = obj;
                    best.params = sym_state_to_params(q1p, q2p, state);
                    bq1 = q1p;
                    bq2 = q2p;
                    improved = true;
                }
            }
        if (!improved) step /= 2;
    }
    best.innerIters = total_iters;
    return best;
}

// Pattern means of a correlator set: averages of the diagonal two-party
// and all-distinct three-party entries.
inline SymmetricCorrelatorTriple pattern_triple(const CorrelatorSet& corr) {
    SymmetricCorrelatorTriple t;
    for (int i = 0; i < 3; ++i) {
        t.ab += corr.AB[i][i] / 3.0;
        t.bc += corr.BC[i][i] / 3.0;
    }
    int n = 0;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            for (int z = 0; z < 3; ++z)
                if (x != y && y != z && x != z) {
                    t.abc += corr.ABC[x][y][z];
                    ++n;
                }
    t.abc /= n;
    return t;
}

// True when every correlator outside the symmetric pattern vanishes and
// the pattern entries are uniform across settings, within tol.
inline bool has_symmetric_pattern(const CorrelatorSet& corr, double tol = 1e-9) {
    const SymmetricCorrelatorTriple t = pattern_triple(corr);
    CorrelatorSet sym;
    for (int i = 0; i < 3; ++i) {
        sym.AB[i][i] = t.ab;
        sym.BC[i][i] = t.bc;
    }
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            for (int z = 0; z < 3; ++z)
                if (x != y && y != z && x != z) sym.ABC[x][y][z] = t.abc;
    return max_correlator_difference(corr, sym) <= tol;
}

}  // namespace detail

// Heuristic search for a bilocal model reproducing `target`. feasible=true
// is a one-sided certificate (the returned model reproduces the target to
// tolResidual in L-infinity); feasible=false only means the search failed.
// Supplied warm-start models are tried before the built-in seeds.
inline FitResult fit_bilocal(const TripartiteDistribution& target, const FitOptions& opts = {},
                             const std::vector<BilocalModel>& warm_starts = {}) {
    opts.validate();
    target.validate();

    const CorrelatorSet target_corr = distribution_to_correlators(target);
    const SymmetricCorrelatorTriple triple = detail::pattern_triple(target_corr);

    if (opts.parametrization == Parametrization::symmetric14) {
        const detail::SymFitOutcome sym = detail::fit_symmetric14(triple);
        FitResult res;
        res.model = expand_symmetric(sym.params);
        const TripartiteDistribution fitted = eval_bilocal(res.model, false);
        res.residual = detail::linf_distance(fitted.p, target.p);
        res.feasible = res.residual <= opts.tolResidual;
        res.itersUsed = sym.innerIters;
        res.restartsUsed = 1;
        return res;
    }

    // Structured seeds: caller-provided warm starts, a symmetric-family
    // fit when the target has the symmetric pattern, the entanglement
    // swapping model matched to the target's three-party strength, and
    // the uniform model.
    std::vector<detail::WorkModel> seeds;
    for (const BilocalModel& m : warm_starts) {
        m.validate();
        seeds.push_back(detail::WorkModel::from(m));
    }
    if (detail::has_symmetric_pattern(target_corr)) {
        const detail::SymFitOutcome sym = detail::fit_symmetric14(triple, 9, 400, 1500);
        seeds.push_back(detail::WorkModel::from(expand_symmetric(sym.params)));
    }
    {
        double t_sum = 0.0;
        constexpr int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                    {0, 2, 1}, {1, 0, 2}, {2, 1, 0}};
        for (const auto& pr : perm) t_sum += target_corr.ABC[pr[0]][pr[1]][pr[2]];
        const double v_hat = std::clamp(-t_sum / 3.0, 0.0, 1.0);
        seeds.push_back(detail::WorkModel::from(bsm_bilocal_model(1.0, v_hat)));
    }
    seeds.push_back(detail::WorkModel::from(BilocalModel::uniform()));

    struct RestartOutcome {
        double residual = std::numeric_limits<double>::infinity();
        int sweeps = 0;
        detail::WorkModel model{};
    };
    auto run_restart = [&](std::size_t k) {
        detail::WorkModel m;
        if (k < seeds.size()) {
            m = seeds[k];
        } else {
            Rng rng = Rng::stream(opts.seed, k);
            const auto d1 = rng.dirichlet_array<8>();
            const auto d2 = rng.dirichlet_array<8>();
            std::copy(d1.begin(), d1.end(), m.q1.begin());
            std::copy(d2.begin(), d2.end(), m.q2.begin());
            for (std::size_t r = 0; r < 64; ++r) {
                const auto row = rng.dirichlet_array<4>();
                std::copy(row.begin(), row.end(), m.R.begin() + 4 * r);
            }
        }
        RestartOutcome out;
        out.residual =
            detail::fit_sweeps(m, target.p, opts.maxIters, opts.tolResidual, &out.sweeps);
        out.model = m;
        return out;
    };

    // Restarts run in fixed-width waves so results do not depend on the
    // thread count; the search stops at the end of the first wave that
    // reached the tolerance.
    constexpr std::size_t kWave = 8;
    FitResult result;
    double best_res = std::numeric_limits<double>::infinity();
    std::size_t executed = 0;
    const std::size_t total = static_cast<std::size_t>(opts.restarts);
    for (std::size_t start = 0; start < total; start += kWave) {
        const std::size_t count = std::min(kWave, total - start);
        std::vector<RestartOutcome> wave =
            parallel_map<RestartOutcome>(count, [&](std::size_t w) { return run_restart(start + w); },
                                         opts.threads);
        executed += count;
        for (std::size_t w = 0; w < count; ++w) {
            if (wave[w].residual < best_res) {
                best_res = wave[w].residual;
                result.model = wave[w].model.to_model();
                result.residual = wave[w].residual;
                result.itersUsed = wave[w].sweeps;
            }
        }
        if (best_res <= opts.tolResidual) break;
    }
    result.restartsUsed = static_cast<int>(executed);
    result.feasible = result.residual <= opts.tolResidual;
    return result;
}

}  // namespace ejmnet
