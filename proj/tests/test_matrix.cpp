#include <catch2/catch.hpp>

#include "qdl/matrix.hpp"
#include "qdl/oracle.hpp"

#include <random>

using namespace qdl;

namespace {

// A = sum_i lambda_i v_i v_i^dag with Gram-Schmidt-orthonormalized random
// vectors: an independent construction with a known spectrum.
DenseMatrix hermitian_with_spectrum(const std::vector<double>& lambda, std::mt19937_64& rng) {
    const int n = static_cast<int>(lambda.size());
    std::vector<StateVector> basis;
    std::normal_distribution<double> gauss;
    while (static_cast<int>(basis.size()) < n) {
        StateVector v(n);
        for (auto& x : v) x = Complex(gauss(rng), gauss(rng));
        for (const auto& b : basis) {
            Complex overlap = 0;
            for (int i = 0; i < n; ++i) overlap += std::conj(b[i]) * v[i];
            for (int i = 0; i < n; ++i) v[i] -= overlap * b[i];
        }
        if (norm2(v) < 1e-6) continue;
        normalize(v);
        basis.push_back(std::move(v));
    }
    DenseMatrix a(n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) += lambda[k] * basis[k][i] * std::conj(basis[k][j]);
    return a;
}

} // namespace

TEST_CASE("Jacobi eigensolver recovers a planted spectrum", "[matrix]") {
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> uni(-5, 5);
    for (int n : {2, 5, 17, 40}) {
        std::vector<double> lambda(n);
        for (auto& l : lambda) l = uni(rng);
        const DenseMatrix a = hermitian_with_spectrum(lambda, rng);
        auto eig = hermitian_eigenvalues(a);
        std::sort(lambda.begin(), lambda.end());
        REQUIRE(eig.size() == lambda.size());
        for (int i = 0; i < n; ++i) REQUIRE(eig[i] == Approx(lambda[i]).margin(1e-10));
    }
}

TEST_CASE("eigensolver rejects non-Hermitian input", "[matrix]") {
    DenseMatrix a(2);
    a(0, 1) = 1;  // no conjugate partner
    REQUIRE_THROWS_AS(hermitian_eigenvalues(a), std::invalid_argument);
}

TEST_CASE("kron and trace behave", "[matrix]") {
    DenseMatrix a(2), b(3);
    a(0, 0) = 2;
    a(1, 1) = Complex(0, 1);
    for (int i = 0; i < 3; ++i) b(i, i) = i + 1;
    const DenseMatrix k = a.kron(b);
    REQUIRE(k.dim() == 6);
    REQUIRE(k.trace() == a.trace() * b.trace());
    REQUIRE(k(0, 0) == Complex(2, 0));
    REQUIRE(k(5, 5) == Complex(0, 3));
}

TEST_CASE("shadow map against the symmetric-projector identity", "[matrix]") {
    // 6 tr_BC[P_sym (I (x) O (x) O)] = O O + O O + tr(O^2) I for Hermitian
    // traceless O, with norm (3D-2)/D ||O||_2^2 saturated at O = D|0><0| - I
    for (int D : {3, 5}) {
        const DenseMatrix psym = p_sym_dense(D);
        DenseMatrix o(D);
        o(0, 0) = D - 1;
        for (int i = 1; i < D; ++i) o(i, i) = -1;
        DenseMatrix mapped = shadow_map(psym, o);
        mapped *= Complex(6, 0);
        // direct formula: 2 O^2 + ||O||_2^2 I
        DenseMatrix expect = o.mul(o);
        expect *= Complex(2, 0);
        double hs = 0;
        for (int i = 0; i < D; ++i) hs += std::norm(o(i, i));
        for (int i = 0; i < D; ++i) expect(i, i) += hs;
        REQUIRE(mapped.max_abs_diff(expect) < 1e-12);
        const double norm = operator_norm_hermitian(mapped);
        REQUIRE(norm == Approx((3.0 * D - 2) / D * hs).margin(1e-9));
    }
}

TEST_CASE("partial traces are consistent", "[matrix]") {
    const int D = 3;
    std::mt19937_64 rng(7);
    const StateVector psi = random_state(D, rng);
    DenseMatrix q(D * D * D);
    accumulate_outer3(q, psi, 1.0);
    // tracing out two parties of a pure product power leaves |psi><psi|
    for (int keep : {0, 1, 2}) {
        const DenseMatrix reduced = partial_trace_two(q, keep, D);
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j)
                REQUIRE(std::abs(reduced(i, j) - psi[i] * std::conj(psi[j])) < 1e-12);
    }
    // one-party trace of the identity gives D * I
    const DenseMatrix eye = DenseMatrix::identity(D * D * D);
    const DenseMatrix r1 = partial_trace_one(eye, 0, D);
    for (int i = 0; i < D * D; ++i) REQUIRE(r1(i, i) == Complex(D, 0));
}

TEST_CASE("eigenvalue clustering", "[matrix]") {
    const auto clusters = cluster_eigenvalues({1.0, 1.0 + 1e-9, 0.5, 0.0, 0.0}, 1e-7);
    REQUIRE(clusters.size() == 3);
    REQUIRE(clusters[0].multiplicity == 2);
    REQUIRE(clusters[1].value == Approx(0.5));
    REQUIRE(clusters[2].multiplicity == 2);
}
