#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include <ejmnet/ejmnet.hpp>

using namespace ejmnet;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("tetrahedron vertices: +-1 triples with pairwise overlap -1") {
    const auto& verts = tetra_vertices();
    REQUIRE(verts.size() == 4);
    std::array<int, 3> total{};
    for (std::size_t i = 0; i < 4; ++i) {
        int prod = 1;
        for (int k = 0; k < 3; ++k) {
            const int entry = verts[i].m[static_cast<std::size_t>(k)];
            CHECK((entry == 1 || entry == -1));
            prod *= entry;
            total[static_cast<std::size_t>(k)] += entry;
        }
        CHECK(prod == 1);
        CHECK(verts[i].b == static_cast<int>(i) + 1);
        for (std::size_t j = i + 1; j < 4; ++j) {
            int dot = 0;
            for (int k = 0; k < 3; ++k)
                dot += verts[i].m[static_cast<std::size_t>(k)] *
                       verts[j].m[static_cast<std::size_t>(k)];
            CHECK(dot == -1);
        }
    }
    for (int k = 0; k < 3; ++k) CHECK(total[static_cast<std::size_t>(k)] == 0);
}

TEST_CASE("local variable vectors enumerate +m and -m with matching outcome bits") {
    for (std::size_t i = 0; i < 8; ++i) {
        const auto v = local_variable_vector(i);
        const auto w = local_variable_vector((i + 4) % 8);
        for (int x = 0; x < 3; ++x) {
            CHECK(v[static_cast<std::size_t>(x)] + w[static_cast<std::size_t>(x)] == 0);
            const int bit = local_variable_outcome_bit(i, x);
            CHECK(bit == (v[static_cast<std::size_t>(x)] > 0 ? 0 : 1));
        }
    }
}

TEST_CASE("measurement basis is orthonormal and complete across theta") {
    for (double theta : {0.0, 0.2, kPi / 6, kPi / 4, kPi / 3, 1.3, kPi / 2}) {
        const EjmBasis basis = ejm_basis(theta);
        Mat4c completeness = Mat4c::Zero();
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                const Complex ip = basis.kets[static_cast<std::size_t>(i)].dot(
                    basis.kets[static_cast<std::size_t>(j)]);
                const double expect = i == j ? 1.0 : 0.0;
                CHECK(std::abs(ip - Complex(expect, 0)) < 1e-12);
            }
            completeness += basis.kets[static_cast<std::size_t>(i)] *
                            basis.kets[static_cast<std::size_t>(i)].adjoint();
        }
        CHECK((completeness - Mat4c::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("reduced single-qubit Bloch length interpolates sqrt(3)/2 down to 0") {
    CHECK(std::abs(ejm_reduced_bloch_length(0.0) - std::sqrt(3.0) / 2.0) < 1e-12);
    CHECK(std::abs(ejm_reduced_bloch_length(kPi / 2)) < 1e-12);
    // Reduced states of the basis kets actually have that Bloch length.
    for (double theta : {0.0, 0.7, kPi / 2}) {
        const EjmBasis basis = ejm_basis(theta);
        for (int b = 0; b < 4; ++b) {
            const Vec4c& phi = basis.kets[static_cast<std::size_t>(b)];
            Mat2c red = Mat2c::Zero();
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (int k = 0; k < 2; ++k)
                        red(i, j) += phi(2 * i + k) * std::conj(phi(2 * j + k));
            double len = 0;
            for (int s = 0; s < 3; ++s) {
                const double comp = (red * pauli(s)).trace().real();
                len += comp * comp;
            }
            CHECK(std::abs(std::sqrt(len) - ejm_reduced_bloch_length(theta)) < 1e-12);
        }
    }
}

TEST_CASE("basis rejects parameters outside the quarter period") {
    CHECK_THROWS_AS(ejm_basis(-0.1), DomainError);
    CHECK_THROWS_AS(ejm_basis(kPi / 2 + 0.1), DomainError);
}

TEST_CASE("noisy singlet state has the right spectrum and marginals") {
    const Mat4c rho_half = werner(0.5).rho;
    Eigen::SelfAdjointEigenSolver<Mat4c> es(rho_half);
    const auto eigs = es.eigenvalues();
    CHECK(std::abs(eigs(0) - 0.125) < 1e-12);
    CHECK(std::abs(eigs(1) - 0.125) < 1e-12);
    CHECK(std::abs(eigs(2) - 0.125) < 1e-12);
    CHECK(std::abs(eigs(3) - 0.625) < 1e-12);
    CHECK(std::abs(rho_half.trace().real() - 1.0) < 1e-14);

    const Mat4c rho_zero = werner(0.0).rho;
    CHECK((rho_zero - Mat4c::Identity() / 4).cwiseAbs().maxCoeff() < 1e-14);

    CHECK_THROWS_AS(werner(-0.01), DomainError);
    CHECK_THROWS_AS(werner(1.01), DomainError);
}

TEST_CASE("settings presets give unit Bloch vectors and valid observables") {
    for (const char* name : {"pauli", "rotated"}) {
        const SettingTriple& triple = settings_preset(name);
        for (const DichotomicSetting& s : triple) {
            double norm2 = 0;
            for (double comp : s.n) norm2 += comp * comp;
            CHECK(std::abs(norm2 - 1.0) < 1e-12);
            const Mat2c obs = s.observable();
            CHECK((obs * obs - Mat2c::Identity()).cwiseAbs().maxCoeff() < 1e-12);
            const Mat2c sum = s.projector(1) + s.projector(-1);
            CHECK((sum - Mat2c::Identity()).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
    CHECK_THROWS_AS(settings_preset("diagonal"), UsageError);
    CHECK_THROWS_AS(make_setting({0.5, 0.0, 0.0}), DomainError);
}

TEST_CASE("pauli preset measures the three coordinate axes") {
    const SettingTriple& triple = pauli_settings();
    for (int x = 0; x < 3; ++x) {
        const Mat2c diff = triple[static_cast<std::size_t>(x)].observable() - pauli(x);
        CHECK(diff.cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("Bell states are orthonormal") {
    const auto& bells = bell_states();
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const Complex ip = bells[i].dot(bells[j]);
            CHECK(std::abs(ip - Complex(i == j ? 1.0 : 0.0, 0)) < 1e-14);
        }
}

TEST_CASE("one-sided local unitary turns the extremal basis into the Bell basis") {
    const BsmCheckReport report = bsm_local_unitary_check();
    CHECK(report.pass);
    CHECK(report.maxInfidelity < 1e-10);
    std::array<bool, 4> used{};
    for (int r : report.relabeling) {
        REQUIRE(r >= 0);
        REQUIRE(r < 4);
        used[static_cast<std::size_t>(r)] = true;
    }
    for (bool u : used) CHECK(u);
}

TEST_CASE("network distribution is a valid no-signalling distribution") {
    const TripartiteDistribution dist =
        network_distribution(0.4, 0.7, 0.9, pauli_settings(), rotated_settings());
    dist.validate();
    double total = 0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 2; ++c) total += dist.at(1, 2, a, b, c);
    CHECK(std::abs(total - 1.0) < 1e-12);
}

TEST_CASE("network distribution reproduces the closed-form correlators") {
    for (double theta : {0.0, kPi / 4, kPi / 2}) {
        for (double v1 : {0.0, 0.6, 1.0}) {
            for (double v2 : {0.3, 1.0}) {
                const CorrelatorSet born = distribution_to_correlators(
                    network_distribution(theta, v1, v2, pauli_settings(), pauli_settings()));
                const CorrelatorSet closed = closed_form_correlators(theta, v1, v2);
                CHECK(max_correlator_difference(born, closed) < 1e-10);
            }
        }
    }
}

TEST_CASE("closed-form correlators match the printed example values") {
    const CorrelatorSet c = closed_form_correlators(0.0, 1.0, 1.0);
    CHECK(std::abs(c.AB[0][0] + 0.5) < 1e-15);
    CHECK(std::abs(c.AB[1][1] + 0.5) < 1e-15);
    CHECK(std::abs(c.BC[2][2] - 0.5) < 1e-15);
    CHECK(std::abs(c.AB[0][1]) < 1e-15);
    CHECK(std::abs(c.ABC[0][1][2] + 0.5) < 1e-15);
    CHECK(std::abs(c.ABC[0][2][1] + 0.5) < 1e-15);
    CHECK(std::abs(c.ABC[0][0][1]) < 1e-15);
    const CorrelatorSet zero = closed_form_correlators(0.7, 0.0, 0.0);
    CHECK(zero.max_abs() < 1e-15);
}

TEST_CASE("wings remain uncorrelated: two-party Alice-Charlie term factorizes") {
    Rng rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const double theta = rng.next_double() * kPi / 2;
        const double v1 = rng.next_double();
        const double v2 = rng.next_double();
        const CorrelatorSet corr = distribution_to_correlators(
            network_distribution(theta, v1, v2, pauli_settings(), pauli_settings()));
        for (int x = 0; x < 3; ++x)
            for (int z = 0; z < 3; ++z)
                CHECK(std::abs(corr.AC[x][z] - corr.A[x] * corr.C[z]) < 1e-12);
    }
}

TEST_CASE("distribution round-trips through its correlator expansion") {
    Rng rng(123);
    for (int trial = 0; trial < 10; ++trial) {
        const double theta = rng.next_double() * kPi / 2;
        const TripartiteDistribution dist = network_distribution(
            theta, rng.next_double(), rng.next_double(), pauli_settings(), pauli_settings());
        const TripartiteDistribution back =
            correlators_to_distribution(distribution_to_correlators(dist));
        double maxdiff = 0;
        for (std::size_t i = 0; i < TripartiteDistribution::kSize; ++i)
            maxdiff = std::max(maxdiff, std::abs(dist.p[i] - back.p[i]));
        CHECK(maxdiff < 1e-12);
    }
}

TEST_CASE("distribution validation names the offending entry") {
    TripartiteDistribution dist =
        network_distribution(0.3, 0.5, 0.5, pauli_settings(), pauli_settings());
    dist.at(1, 2, 0, 3, 1) = -0.2;
    try {
        dist.validate();
        FAIL("expected a validity error");
    } catch (const ValidityError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("(2,3,") != std::string::npos);
    }
}
