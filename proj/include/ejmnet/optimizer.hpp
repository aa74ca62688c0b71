#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "ejmnet/bilocal.hpp"
#include "ejmnet/correlators.hpp"
#include "ejmnet/errors.hpp"
#include "ejmnet/fit.hpp"
#include "ejmnet/inequalities.hpp"
#include "ejmnet/network.hpp"
#include "ejmnet/parallel.hpp"
#include "ejmnet/quantum.hpp"
#include "ejmnet/rng.hpp"
#include "ejmnet/symmetric.hpp"

namespace ejmnet {

inline constexpr double kBisectionResolution = 1e-3;

struct CriticalVisibilityResult {
    double V = 0.0;
    bool alwaysFeasible = false;
    bool neverFeasible = false;
    // Residual of the best fit at the last feasible level.
    double residual = 0.0;
};

namespace detail {

// Bisection on v in [0,1] for the largest feasible visibility of a
// one-parameter family of targets. Feasible models are carried as warm
// starts up the chain; a level counts as infeasible only after the fit's
// full restart budget has been spent.
inline CriticalVisibilityResult bisect_visibility(
    const std::function<TripartiteDistribution(double)>& target_at, const FitOptions& opts) {
    CriticalVisibilityResult out;
    std::vector<BilocalModel> warm;

    FitResult top = fit_bilocal(target_at(1.0), opts, warm);
    if (top.feasible) {
        out.V = 1.0;
        out.alwaysFeasible = true;
        out.residual = top.residual;
        return out;
    }
    FitResult bottom = fit_bilocal(target_at(0.0), opts, warm);
    if (!bottom.feasible) {
        out.V = 0.0;
        out.neverFeasible = true;
        out.residual = bottom.residual;
        return out;
    }
    warm.push_back(bottom.model);
    out.residual = bottom.residual;

    double lo = 0.0, hi = 1.0;
    while (hi - lo > kBisectionResolution) {
        const double mid = (lo + hi) / 2.0;
        FitResult fr = fit_bilocal(target_at(mid), opts, warm);
        if (fr.feasible) {
            lo = mid;
            out.residual = fr.residual;
            warm.clear();
            warm.push_back(fr.model);
        } else {
            hi = mid;
        }
    }
    out.V = (lo + hi) / 2.0;
    return out;
}

}  // namespace detail

// Largest V with a bilocal model for the symmetric-visibility quantum
// correlation at the given measurement angle and settings (used for both
// outer wings). Resolution 1e-3; the returned V is the midpoint of the
// final bracket. When the whole range is feasible or infeasible the
// corresponding flag is set and V is 1 or 0.
inline CriticalVisibilityResult critical_visibility_symmetricV(double theta,
                                                               const SettingTriple& settings,
                                                               const FitOptions& opts = {}) {
    return detail::bisect_visibility(
        [&](double v) { return network_distribution(theta, v, v, settings, settings); }, opts);
}

struct BoundaryPoint {
    double V1 = 0.0;
    double V2crit = 0.0;
    double residual = 0.0;
    bool alwaysFeasible = false;
    bool neverFeasible = false;
    bool failed = false;
    std::string error;
};

// For each V1 in the grid, the largest V2 (resolution 1e-3) whose quantum
// correlation admits a bilocal model. Rows come back in input order; a
// failure at one grid point is recorded in its row and does not abort the
// scan.
inline std::vector<BoundaryPoint> boundary_scan(double theta, const SettingTriple& settings,
                                                const std::vector<double>& V1grid,
                                                const FitOptions& opts = {}) {
    for (double v1 : V1grid)
        if (!(v1 >= 0.0 && v1 <= 1.0)) throw UsageError("boundary_scan: V1 outside [0,1]");
    return parallel_map<BoundaryPoint>(
        V1grid.size(),
        [&](std::size_t i) {
            BoundaryPoint row;
            row.V1 = V1grid[i];
            try {
                const CriticalVisibilityResult r = detail::bisect_visibility(
                    [&](double v2) {
                        return network_distribution(theta, row.V1, v2, settings, settings);
                    },
                    opts);
                row.V2crit = r.V;
                row.residual = r.residual;
                row.alwaysFeasible = r.alwaysFeasible;
                row.neverFeasible = r.neverFeasible;
            } catch (const std::exception& e) {
                row.failed = true;
                row.error = e.what();
            }
            return row;
        },
        opts.threads);
}

struct MaxExpressionResult {
    double value = -std::numeric_limits<double>::infinity();
    BilocalModel model = BilocalModel::uniform();
    double Z = 0.0;
};

namespace detail {

// p-space weight vectors of linear correlator functionals. lambda values
// multiply the respective correlators; the result w satisfies
// sum_k w[k] p[k] = sum lambda_corr * <corr>(p).
struct CorrelatorWeights {
    std::array<double, 3> A{}, B{}, C{};
    std::array<std::array<double, 3>, 3> AB{}, BC{}, AC{};
    std::array<std::array<std::array<double, 3>, 3>, 3> ABC{};
};

inline std::array<double, TripartiteDistribution::kSize> p_space_weights(const CorrelatorWeights& lam) {
    std::array<double, TripartiteDistribution::kSize> w{};
    const auto& verts = tetra_vertices();
    for (int x = 0; x < 3; ++x)
        for (int z = 0; z < 3; ++z)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 4; ++b)
                    for (int c = 0; c < 2; ++c) {
                        const double sa = a == 0 ? 1.0 : -1.0;
                        const double sc = c == 0 ? 1.0 : -1.0;
                        const auto& m = verts[b].m;
                        double val = 0.0;
                        val += sa * lam.A[x] / 3.0;
                        val += sc * lam.C[z] / 3.0;
                        for (int y = 0; y < 3; ++y) {
                            val += m[y] * lam.B[y] / 9.0;
                            val += sa * m[y] * lam.AB[x][y] / 3.0;
                            val += sc * m[y] * lam.BC[y][z] / 3.0;
                            val += sa * sc * m[y] * lam.ABC[x][y][z];
                        }
                        val += sa * sc * lam.AC[x][z];
                        w[TripartiteDistribution::index(x, z, a, b, c)] = val;
                    }
    return w;
}

inline CorrelatorWeights expression_lambda(const std::string& expr) {
    CorrelatorWeights lam;
    auto add_S = [&](double s) {
        for (int i = 0; i < 3; ++i) {
            lam.BC[i][i] += s;
            lam.AB[i][i] -= s;
        }
    };
    auto add_T = [&](double s) {
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y)
                for (int z = 0; z < 3; ++z)
                    if (x != y && y != z && x != z) lam.ABC[x][y][z] += s;
    };
    if (expr == "S/3-T") {
        add_S(1.0 / 3.0);
        add_T(-1.0);
    } else if (expr == "-S/3-T") {
        add_S(-1.0 / 3.0);
        add_T(-1.0);
    } else if (expr == "S") {
        add_S(1.0);
    } else if (expr == "-S") {
        add_S(-1.0);
    } else if (expr == "S+T") {
        add_S(1.0);
        add_T(1.0);
    } else if (expr == "-S+T") {
        add_S(-1.0);
        add_T(1.0);
    } else {
        throw UsageError("unknown expression name: " + expr);
    }
    return lam;
}

inline double linear_expression_value(const std::string& expr, const StzValues& v) {
    if (expr == "S/3-T") return v.S / 3.0 - v.T;
    if (expr == "-S/3-T") return -v.S / 3.0 - v.T;
    if (expr == "S") return v.S;
    if (expr == "-S") return -v.S;
    if (expr == "S+T") return v.S + v.T;
    if (expr == "-S+T") return -v.S + v.T;
    throw UsageError("unknown expression name: " + expr);
}

// Largest magnitude among correlators outside the S/T pattern.
inline double off_pattern_Z(const CorrelatorSet& corr) { return stz(corr).Z; }

// The symmetric-family candidates: both tetrahedron weights at 0 or 1 and
// every sector response at one of the six vertices of the per-sector
// response polytope.
inline std::vector<SymmetricModelParams> symmetric_corner_candidates() {
    static const double verts[6][3] = {{0, 0, 0}, {0, 1, 0}, {0, 0, 1},
                                       {1, 0, 0}, {1, 1, 0}, {1, 0, 1}};
    std::vector<SymmetricModelParams> out;
    for (int w1 = 0; w1 <= 1; ++w1)
        for (int w2 = 0; w2 <= 1; ++w2)
            for (const auto& v : verts) {
                SymmetricModelParams p;
                p.qPlus1 = w1;
                p.qPlus2 = w2;
                for (auto& row : p.sector)
                    for (auto& s : row) {
                        s.qSame = v[0];
                        s.qAlpha = v[1];
                        s.qGamma = v[2];
                    }
                out.push_back(p);
            }
    return out;
}

// Projected gradient ascent of a linear p-space functional over the model
// blocks, with a quadratic penalty on off-pattern correlators exceeding
// zcap. Returns honest candidates through `consider`.
inline void penalty_ascent(const std::array<double, TripartiteDistribution::kSize>& wexpr, double zcap,
                           std::uint64_t seed, int restarts, int sweeps,
                           const std::function<void(const BilocalModel&)>& consider) {
    const auto& bits = outcome_bits();
    for (int rs = 0; rs < restarts; ++rs) {
        WorkModel m;
        if (rs == 0) {
            m = WorkModel::from(expand_symmetric(symmetric_corner_candidates()[5]));
        } else {
            Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(rs) + 7001);
            const auto d1 = rng.dirichlet_array<8>();
            const auto d2 = rng.dirichlet_array<8>();
            std::copy(d1.begin(), d1.end(), m.q1.begin());
            std::copy(d2.begin(), d2.end(), m.q2.begin());
            for (std::size_t r = 0; r < 64; ++r) {
                const auto row = rng.dirichlet_array<4>();
                std::copy(row.begin(), row.end(), m.R.begin() + 4 * r);
            }
        }
        std::array<double, TripartiteDistribution::kSize> p{};
        for (double mu : {50.0, 500.0, 5000.0}) {
            for (int sweep = 0; sweep < sweeps; ++sweep) {
                model_distribution(m, p);
                TripartiteDistribution dist;
                dist.p = p;
                const CorrelatorSet corr = distribution_to_correlators(dist);

                // Effective p-space gradient: expression weights minus the
                // penalty pull on every off-pattern correlator above zcap.
                CorrelatorWeights lam;
                bool any_excess = false;
                auto push = [&](double val, double& slot) {
                    const double excess = std::abs(val) - zcap;
                    if (excess > 0.0) {
                        slot -= 2.0 * mu * excess * (val >= 0.0 ? 1.0 : -1.0);
                        any_excess = true;
                    }
                };
                for (int i = 0; i < 3; ++i) {
                    push(corr.A[i], lam.A[i]);
                    push(corr.B[i], lam.B[i]);
                    push(corr.C[i], lam.C[i]);
                }
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) {
                        if (i != j) {
                            push(corr.AB[i][j], lam.AB[i][j]);
                            push(corr.BC[i][j], lam.BC[i][j]);
                        }
                        push(corr.AC[i][j], lam.AC[i][j]);
                    }
                for (int x = 0; x < 3; ++x)
                    for (int y = 0; y < 3; ++y)
                        for (int z = 0; z < 3; ++z)
                            if (!(x != y && y != z && x != z)) push(corr.ABC[x][y][z], lam.ABC[x][y][z]);

                std::array<double, TripartiteDistribution::kSize> g = wexpr;
                if (any_excess) {
                    const std::array<double, TripartiteDistribution::kSize> gpen = p_space_weights(lam);
                    for (std::size_t k = 0; k < TripartiteDistribution::kSize; ++k) g[k] += gpen[k];
                }

                // Response ascent step.
                const double etaR = 0.2 / (1.0 + mu * 0.01);
                for (std::size_t i = 0; i < 8; ++i)
                    for (std::size_t j = 0; j < 8; ++j) {
                        const double w = m.q1[i] * m.q2[j];
                        double* row = &m.R[4 * (8 * i + j)];
                        double gr[4] = {0, 0, 0, 0};
                        for (int x = 0; x < 3; ++x) {
                            const int a = bits[i][static_cast<std::size_t>(x)];
                            for (int z = 0; z < 3; ++z) {
                                const int c = bits[j][static_cast<std::size_t>(z)];
                                const std::size_t base =
                                    TripartiteDistribution::index(x, z, a, 0, c);
                                for (std::size_t b = 0; b < 4; ++b) gr[b] += g[base + 2 * b];
                            }
                        }
                        for (std::size_t b = 0; b < 4; ++b) row[b] += etaR * w * gr[b];
                        project_simplex(row, 4);
                    }

                // Source ascent steps.
                for (int which = 0; which < 2; ++which) {
                    double gq[8] = {0, 0, 0, 0, 0, 0, 0, 0};
                    for (std::size_t i = 0; i < 8; ++i)
                        for (std::size_t j = 0; j < 8; ++j) {
                            const std::size_t free_idx = which == 0 ? i : j;
                            const double w = which == 0 ? m.q2[j] : m.q1[i];
                            const double* row = &m.R[4 * (8 * i + j)];
                            double acc = 0.0;
                            for (int x = 0; x < 3; ++x) {
                                const int a = bits[i][static_cast<std::size_t>(x)];
                                for (int z = 0; z < 3; ++z) {
                                    const int c = bits[j][static_cast<std::size_t>(z)];
                                    const std::size_t base =
                                        TripartiteDistribution::index(x, z, a, 0, c);
                                    for (std::size_t b = 0; b < 4; ++b)
                                        acc += row[b] * g[base + 2 * b];
                                }
                            }
                            gq[free_idx] += w * acc;
                        }
                    double* q = which == 0 ? m.q1.data() : m.q2.data();
                    const double etaQ = 0.1 / (1.0 + mu * 0.01);
                    for (std::size_t i = 0; i < 8; ++i) q[i] += etaQ * gq[i];
                    project_simplex(q, 8);
                }
            }
            consider(m.to_model());
        }
    }
}

}  // namespace detail

// Best found maximum of a linear (S,T)-expression or of the square-root
// Bell expression over bilocal models, optionally restricted to Z = 0
// (for the linear expressions). Lower bound on the true supremum; the
// witness model is returned and can be re-verified.
inline MaxExpressionResult max_expression_over_bilocal(const std::string& expr,
                                                       bool enforceZ0 = true,
                                                       const FitOptions& opts = {}) {
    MaxExpressionResult best;
    const bool is_bprime = expr == "Bprime";
    auto evaluate = [&](const BilocalModel& model) {
        const TripartiteDistribution dist = eval_bilocal(model, false);
        const CorrelatorSet corr = distribution_to_correlators(dist);
        const StzValues v = stz(corr);
        if (is_bprime) {
            if (enforceZ0 && v.Z > 1e-9) return;
            const double val = eval_Bprime(dist).value;
            if (val > best.value) best = {val, model, v.Z};
            return;
        }
        if (enforceZ0 && v.Z > 1e-9) return;
        const double val = detail::linear_expression_value(expr, v);
        if (val > best.value) best = {val, model, v.Z};
    };
    if (!is_bprime) detail::expression_lambda(expr);  // validates the name

    for (const SymmetricModelParams& params : detail::symmetric_corner_candidates())
        evaluate(expand_symmetric(params));

    if (!is_bprime) {
        const std::array<double, TripartiteDistribution::kSize> w = detail::p_space_weights(detail::expression_lambda(expr));
        const double zcap = enforceZ0 ? 0.0 : 1.0;
        const int restarts = std::max(2, opts.restarts / 8);
        detail::penalty_ascent(w, zcap, opts.seed, restarts, 120, evaluate);
    }
    return best;
}

// Best found maximum of S/3 - T over bilocal models whose off-pattern
// correlators stay within [-Zcap, Zcap]. Lower bound on the true maximum.
inline MaxExpressionResult max_B_given_Z(double Zcap, const FitOptions& opts = {}) {
    if (Zcap < 0) throw UsageError("max_B_given_Z: Zcap must be >= 0");
    MaxExpressionResult best;
    auto evaluate = [&](const BilocalModel& model) {
        const TripartiteDistribution dist = eval_bilocal(model, false);
        const CorrelatorSet corr = distribution_to_correlators(dist);
        const StzValues v = stz(corr);
        if (v.Z > Zcap + 1e-9) return;
        const double val = v.S / 3.0 - v.T;
        if (val > best.value) best = {val, model, v.Z};
    };
    for (const SymmetricModelParams& params : detail::symmetric_corner_candidates())
        evaluate(expand_symmetric(params));
    const std::array<double, TripartiteDistribution::kSize> w =
        detail::p_space_weights(detail::expression_lambda("S/3-T"));
    const int restarts = std::max(2, opts.restarts / 8);
    detail::penalty_ascent(w, Zcap, opts.seed, restarts, 150, evaluate);
    return best;
}

}  // namespace ejmnet
