#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include <ejmnet/ejmnet.hpp>

using namespace ejmnet;

namespace {

constexpr double kPi = std::numbers::pi;

// Rebuilds the Born rule with the circuit in place of the projective basis:
// Bob applies the gate sequence, measures in the computational basis, and
// relabels outcomes by the verified permutation.
TripartiteDistribution circuit_distribution(double theta, double v1, double v2) {
    const CircuitVerdict verdict = verify_circuit(theta);
    REQUIRE(verdict.pass);
    const TwoQubitUnitary u = ejm_circuit(theta, verdict.wiresSwapped);
    const Mat4c rho1 = werner(v1).rho;
    const Mat4c rho2 = werner(v2).rho;
    const SettingTriple& settings = pauli_settings();

    Eigen::Matrix<Complex, 16, 16> rho;
    for (int r1 = 0; r1 < 4; ++r1)
        for (int c1 = 0; c1 < 4; ++c1)
            for (int r2 = 0; r2 < 4; ++r2)
                for (int c2 = 0; c2 < 4; ++c2)
                    rho(4 * r1 + r2, 4 * c1 + c2) = rho1(r1, c1) * rho2(r2, c2);

    TripartiteDistribution dist;
    for (int b = 0; b < 4; ++b) {
        // Measuring k after the circuit is the projector U^dag |k><k| U.
        const Vec4c psi = u.u.adjoint().col(verdict.permutation[static_cast<std::size_t>(b)]);
        for (int x = 0; x < 3; ++x)
            for (int a = 0; a < 2; ++a) {
                const Mat2c projA =
                    settings[static_cast<std::size_t>(x)].projector(a == 0 ? 1 : -1);
                for (int z = 0; z < 3; ++z)
                    for (int c = 0; c < 2; ++c) {
                        const Mat2c projC =
                            settings[static_cast<std::size_t>(z)].projector(c == 0 ? 1 : -1);
                        Complex tr = 0;
                        for (int iA = 0; iA < 2; ++iA)
                            for (int jA = 0; jA < 2; ++jA)
                                for (int iB = 0; iB < 4; ++iB)
                                    for (int jB = 0; jB < 4; ++jB)
                                        for (int iC = 0; iC < 2; ++iC)
                                            for (int jC = 0; jC < 2; ++jC) {
                                                const Complex e = projA(iA, jA) * psi(iB) *
                                                                  std::conj(psi(jB)) *
                                                                  projC(iC, jC);
                                                if (e == Complex(0, 0)) continue;
                                                const int row = 8 * iA + 2 * iB + iC;
                                                const int col = 8 * jA + 2 * jB + jC;
                                                tr += e * rho(col, row);
                                            }
                        dist.at(x, z, a, b, c) = tr.real();
                    }
            }
    }
    return dist;
}

}  // namespace

TEST_CASE("named gates are unitary and unknown names are rejected") {
    for (const char* name : {"CNOT", "CNOT_rev", "HxI", "IxH"}) {
        CHECK(gate(name).is_unitary(1e-12));
    }
    for (const char* name : {"Rphi_first", "Rphi_second", "CRphi"}) {
        CHECK(gate(name, 0.73).is_unitary(1e-12));
    }
    CHECK_THROWS_AS(gate("Toffoli"), UsageError);
}

TEST_CASE("zero-angle phase gates degenerate to the identity") {
    CHECK((gate("Rphi_first", 0.0).u - Mat4c::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((gate("CRphi", 0.0).u - Mat4c::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    // At theta = pi/2 the controlled phase vanishes from the composition.
    CHECK((gate("CRphi", kPi / 2 - kPi / 2).u - Mat4c::Identity()).cwiseAbs().maxCoeff() <
          1e-15);
}

TEST_CASE("single-qubit phase acts on the advertised wire") {
    const Mat4c first = gate("Rphi_first", 1.1).u;
    const Mat4c second = gate("Rphi_second", 1.1).u;
    const Complex ph = std::exp(Complex(0, 1.1));
    CHECK(std::abs(first(0, 0) - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(first(2, 2) - ph) < 1e-15);
    CHECK(std::abs(first(1, 1) - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(second(1, 1) - ph) < 1e-15);
    CHECK(std::abs(second(2, 2) - Complex(1, 0)) < 1e-15);
}

TEST_CASE("assembled circuit is unitary across the parameter range") {
    for (double theta : {0.0, 0.3, kPi / 4, 1.2, kPi / 2}) {
        CHECK(ejm_circuit(theta).is_unitary(1e-12));
        CHECK(ejm_circuit(theta, true).is_unitary(1e-12));
    }
    CHECK_THROWS_AS(ejm_circuit(-0.2), DomainError);
    CHECK_THROWS_AS(ejm_circuit(kPi), DomainError);
}

TEST_CASE("circuit maps every basis ket to a distinct computational state") {
    const CircuitVerdict v0 = verify_circuit(0.0);
    CHECK(v0.pass);
    CHECK(v0.maxInfidelity <= 1e-10);
    CHECK_FALSE(v0.wiresSwapped);
    std::array<bool, 4> used{};
    for (int k : v0.permutation) {
        REQUIRE(k >= 0);
        REQUIRE(k < 4);
        used[static_cast<std::size_t>(k)] = true;
    }
    for (bool u : used) CHECK(u);
}

TEST_CASE("batch verification is uniform over a 21-point grid") {
    std::vector<double> thetas;
    for (int i = 0; i <= 20; ++i) thetas.push_back(kPi / 2 * i / 20.0);
    const auto verdicts = verify_circuit(thetas);
    REQUIRE(verdicts.size() == 21);
    for (const CircuitVerdict& v : verdicts) {
        CHECK(v.pass);
        CHECK(v.permutation == verdicts[0].permutation);
        CHECK(v.wiresSwapped == verdicts[0].wiresSwapped);
    }
}

TEST_CASE("circuit measurement with relabelling reproduces the network distribution") {
    for (double theta : {0.0, kPi / 6, kPi / 2}) {
        for (double v1 : {0.6, 1.0}) {
            const TripartiteDistribution via_circuit = circuit_distribution(theta, v1, 0.9);
            const TripartiteDistribution direct =
                network_distribution(theta, v1, 0.9, pauli_settings(), pauli_settings());
            double maxdiff = 0;
            for (std::size_t i = 0; i < TripartiteDistribution::kSize; ++i)
                maxdiff = std::max(maxdiff, std::abs(via_circuit.p[i] - direct.p[i]));
            CHECK(maxdiff < 1e-10);
        }
    }
}
