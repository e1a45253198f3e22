#pragma once

// Dense complex matrices for the brute-force oracle: products, tensor
// powers, partial traces over parties of a tripartite space, and a
// self-contained cyclic-Jacobi Hermitian eigensolver. Sizes stay small
// (dimension <= ~1500), so clarity wins over blocking.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace qdl {

using Complex = std::complex<double>;

class DenseMatrix {
public:
    DenseMatrix() = default;
    explicit DenseMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, Complex(0, 0)) {}

    static DenseMatrix identity(int n) {
        DenseMatrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    int dim() const { return n_; }
    Complex& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * n_ + c]; }
    const Complex& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * n_ + c]; }
    const std::vector<Complex>& data() const { return a_; }

    DenseMatrix& operator+=(const DenseMatrix& o) {
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    DenseMatrix& operator-=(const DenseMatrix& o) {
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    DenseMatrix& operator*=(Complex s) {
        for (auto& x : a_) x *= s;
        return *this;
    }
    friend DenseMatrix operator*(Complex s, DenseMatrix m) { return m *= s; }
    friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
    friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }

    DenseMatrix mul(const DenseMatrix& o) const {
        DenseMatrix r(n_);
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < n_; ++k) {
                const Complex aik = (*this)(i, k);
                if (aik == Complex(0, 0)) continue;
                for (int j = 0; j < n_; ++j) r(i, j) += aik * o(k, j);
            }
        return r;
    }

    DenseMatrix dagger() const {
        DenseMatrix r(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    Complex trace() const {
        Complex t = 0;
        for (int i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    DenseMatrix kron(const DenseMatrix& o) const {
        DenseMatrix r(n_ * o.n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                const Complex v = (*this)(i, j);
                if (v == Complex(0, 0)) continue;
                for (int k = 0; k < o.n_; ++k)
                    for (int l = 0; l < o.n_; ++l)
                        r(i * o.n_ + k, j * o.n_ + l) = v * o(k, l);
            }
        return r;
    }

    double max_abs_diff(const DenseMatrix& o) const {
        double m = 0;
        for (std::size_t i = 0; i < a_.size(); ++i) m = std::max(m, std::abs(a_[i] - o.a_[i]));
        return m;
    }

    double frobenius_norm() const {
        double s = 0;
        for (const auto& x : a_) s += std::norm(x);
        return std::sqrt(s);
    }

    double hermiticity_residual() const {
        double m = 0;
        for (int i = 0; i < n_; ++i)
            for (int j = i; j < n_; ++j)
                m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return m;
    }

private:
    int n_ = 0;
    std::vector<Complex> a_;
};

// Complex state vector, kept normalized by the oracle constructors.
using StateVector = std::vector<Complex>;

inline double norm2(const StateVector& v) {
    double s = 0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

inline void normalize(StateVector& v) {
    const double n = norm2(v);
    if (n == 0) throw std::invalid_argument("normalize: zero vector");
    for (auto& x : v) x /= n;
}

inline StateVector kron(const StateVector& a, const StateVector& b) {
    StateVector r(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i * b.size() + j] = a[i] * b[j];
    return r;
}

// Adds w * |psi><psi|^{(x) 3} to acc (dimension must equal D^3 with D = psi.size()).
inline void accumulate_outer3(DenseMatrix& acc, const StateVector& psi, double w) {
    const int D = static_cast<int>(psi.size());
    std::vector<Complex> triple(static_cast<std::size_t>(D) * D * D);
    std::size_t idx = 0;
    for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b) {
            const Complex ab = psi[a] * psi[b];
            for (int c = 0; c < D; ++c) triple[idx++] = ab * psi[c];
        }
    const int M = D * D * D;
    for (int r = 0; r < M; ++r) {
        const Complex tw = w * triple[r];
        for (int c = 0; c < M; ++c) acc(r, c) += tw * std::conj(triple[c]);
    }
}

// tr_BC[Q (I (x) O (x) O^dagger)] for Q on H^{(x)3}, O on H.
inline DenseMatrix shadow_map(const DenseMatrix& Q, const DenseMatrix& O) {
    const int D = O.dim();
    if (Q.dim() != D * D * D) throw std::invalid_argument("shadow_map: dimension mismatch");
    DenseMatrix out(D);
    for (int a = 0; a < D; ++a)
        for (int ap = 0; ap < D; ++ap) {
            Complex acc = 0;
            for (int b = 0; b < D; ++b)
                for (int c = 0; c < D; ++c) {
                    const int row = (a * D + b) * D + c;
                    for (int bp = 0; bp < D; ++bp) {
                        const Complex obp = O(bp, b);
                        if (obp == Complex(0, 0)) continue;
                        for (int cp = 0; cp < D; ++cp) {
                            const Complex occ = std::conj(O(c, cp));
                            if (occ == Complex(0, 0)) continue;
                            acc += Q(row, (ap * D + bp) * D + cp) * obp * occ;
                        }
                    }
                }
            out(a, ap) = acc;
        }
    return out;
}

// Partial trace over one party (0 = A, 1 = B, 2 = C) of Q on H^{(x)3}.
inline DenseMatrix partial_trace_one(const DenseMatrix& Q, int party, int D) {
    if (Q.dim() != D * D * D) throw std::invalid_argument("partial_trace_one: dimension mismatch");
    DenseMatrix out(D * D);
    auto idx = [D](int a, int b, int c) { return (a * D + b) * D + c; };
    for (int t = 0; t < D; ++t)
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j)
                for (int ip = 0; ip < D; ++ip)
                    for (int jp = 0; jp < D; ++jp) {
                        int r, c;
                        if (party == 0) { r = idx(t, i, j); c = idx(t, ip, jp); }
                        else if (party == 1) { r = idx(i, t, j); c = idx(ip, t, jp); }
                        else { r = idx(i, j, t); c = idx(ip, jp, t); }
                        out(i * D + j, ip * D + jp) += Q(r, c);
                    }
    return out;
}

// Partial trace over two parties, leaving the named one.
inline DenseMatrix partial_trace_two(const DenseMatrix& Q, int keep, int D) {
    if (Q.dim() != D * D * D) throw std::invalid_argument("partial_trace_two: dimension mismatch");
    DenseMatrix out(D);
    auto idx = [D](int a, int b, int c) { return (a * D + b) * D + c; };
    for (int i = 0; i < D; ++i)
        for (int ip = 0; ip < D; ++ip) {
            Complex acc = 0;
            for (int s = 0; s < D; ++s)
                for (int t = 0; t < D; ++t) {
                    if (keep == 0) acc += Q(idx(i, s, t), idx(ip, s, t));
                    else if (keep == 1) acc += Q(idx(s, i, t), idx(s, ip, t));
                    else acc += Q(idx(s, t, i), idx(s, t, ip));
                }
            out(i, ip) = acc;
        }
    return out;
}

// Eigenvalues of a Hermitian matrix by cyclic Jacobi with complex rotations.
// Input is copied; ~60 digits-of-pi quality is not needed, 1e-12 relative is.
inline std::vector<double> hermitian_eigenvalues(DenseMatrix A) {
    const int n = A.dim();
    if (n == 0) return {};
    if (A.hermiticity_residual() > 1e-8 * std::max(1.0, A.frobenius_norm()))
        throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian");
    const double scale = std::max(1.0, A.frobenius_norm());
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::norm(A(p, q));
        if (std::sqrt(off) < 1e-14 * scale) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const Complex apq = A(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double app = A(p, p).real();
                const double aqq = A(q, q).real();
                // unitary 2x2: [c, -conj(s); s, c] with s carrying the phase of apq
                const double theta = 0.5 * std::atan2(2.0 * std::abs(apq), app - aqq);
                const double c = std::cos(theta);
                const Complex phase = apq / std::abs(apq);
                const Complex s = std::sin(theta) * phase;
                for (int k = 0; k < n; ++k) {
                    const Complex akp = A(k, p);
                    const Complex akq = A(k, q);
                    A(k, p) = c * akp + std::conj(s) * akq;
                    A(k, q) = -s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const Complex apk = A(p, k);
                    const Complex aqk = A(q, k);
                    A(p, k) = c * apk + s * aqk;
                    A(q, k) = -std::conj(s) * apk + c * aqk;
                }
            }
    }
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = A(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

inline double operator_norm_hermitian(const DenseMatrix& A) {
    const auto eig = hermitian_eigenvalues(A);
    double m = 0;
    for (double e : eig) m = std::max(m, std::abs(e));
    return m;
}

// Groups sorted eigenvalues into (value, multiplicity) clusters using an
// absolute tolerance.
struct EigenCluster {
    double value = 0;
    int multiplicity = 0;
};

inline std::vector<EigenCluster> cluster_eigenvalues(std::vector<double> eig, double tol) {
    std::sort(eig.begin(), eig.end(), [](double a, double b) { return a > b; });
    std::vector<EigenCluster> out;
    for (double e : eig) {
        if (!out.empty() && std::abs(out.back().value - e) <= tol) {
            // running mean keeps the cluster centre stable
            auto& c = out.back();
            c.value = (c.value * c.multiplicity + e) / (c.multiplicity + 1);
            ++c.multiplicity;
        } else {
            out.push_back({e, 1});
        }
    }
    return out;
}

} // namespace qdl
