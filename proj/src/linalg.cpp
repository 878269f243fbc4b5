// Copyright 2026 The nclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nclab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace nclab {

namespace {

Spectrum closed_form_2x2(const Matrix& a) {
    const double p = a(0, 0).real();
    const double d = a(1, 1).real();
    const Complex b = a(0, 1);
    // (tr +- sqrt(tr^2 - 4 det)) / 2, written in the cancellation-free form.
    const double mean = 0.5 * (p + d);
    const double radius = std::hypot(0.5 * (p - d), std::abs(b));
    Spectrum s;
    s.values.resize(2);
    s.values << mean + radius, mean - radius;
    s.vectors = Matrix::Identity(2, 2);
    if (std::abs(b) == 0.0) {
        if (d > p) {
            s.vectors.col(0).swap(s.vectors.col(1));
        }
        return s;
    }
    const double top = s.values[0];
    Eigen::Vector2cd v(b, top - p);
    Eigen::Vector2cd w(top - d, std::conj(b));
    Eigen::Vector2cd u = v.norm() >= w.norm() ? v : w;
    u.normalize();
    s.vectors.col(0) = u;
    s.vectors(0, 1) = -std::conj(u[1]);
    s.vectors(1, 1) = std::conj(u[0]);
    return s;
}

double off_diagonal_norm(const Matrix& a) {
    double sum = 0.0;
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
        for (Eigen::Index r = 0; r < a.rows(); ++r) {
            if (r != c) {
                sum += std::norm(a(r, c));
            }
        }
    }
    return std::sqrt(sum);
}

// Cyclic Jacobi: each (p, q) step first rotates the phase of a_pq away, then
// applies the real symmetric rotation that annihilates it.
Spectrum jacobi(Matrix a, const JacobiOptions& options) {
    const Eigen::Index n = a.rows();
    Matrix v = Matrix::Identity(n, n);
    const double scale = a.norm();
    bool converged = false;
    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
        if (off_diagonal_norm(a) <= options.off_diagonal_threshold * scale) {
            converged = true;
            break;
        }
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) {
                    continue;
                }
                const Complex phase = apq / mag;
                const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // G = diag(1, conj(phase)) * [[c, s], [-s, c]]
                const Complex g00 = c;
                const Complex g01 = s;
                const Complex g10 = -s * std::conj(phase);
                const Complex g11 = c * std::conj(phase);
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * g00 + akq * g10;
                    a(k, q) = akp * g01 + akq * g11;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(g00) * apk + std::conj(g10) * aqk;
                    a(q, k) = std::conj(g01) * apk + std::conj(g11) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * g00 + vkq * g10;
                    v(k, q) = vkp * g01 + vkq * g11;
                }
            }
        }
    }
    if (!converged && off_diagonal_norm(a) > options.off_diagonal_threshold * scale) {
        throw Error("Jacobi eigensolver did not converge in " + std::to_string(options.max_sweeps) + " sweeps");
    }
    Spectrum s;
    s.values = a.diagonal().real();
    s.vectors = std::move(v);
    return s;
}

void sort_descending(Spectrum& s) {
    const auto n = s.values.size();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return s.values[i] > s.values[j]; });
    Spectrum sorted;
    sorted.values.resize(n);
    sorted.vectors.resize(s.vectors.rows(), n);
    for (Eigen::Index k = 0; k < n; ++k) {
        sorted.values[k] = s.values[order[static_cast<std::size_t>(k)]];
        sorted.vectors.col(k) = s.vectors.col(order[static_cast<std::size_t>(k)]);
    }
    s = std::move(sorted);
}

bool lexicographically_less(const Matrix& a, const Matrix& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const Complex x = a.data()[i];
        const Complex y = b.data()[i];
        if (x.real() != y.real()) {
            return x.real() < y.real();
        }
        if (x.imag() != y.imag()) {
            return x.imag() < y.imag();
        }
    }
    return false;
}

}  // namespace

Spectrum eig_hermitian(const Matrix& h, double hermitian_tol, const JacobiOptions& options) {
    if (h.rows() != h.cols()) {
        throw SignatureError("eig_hermitian: matrix is " + std::to_string(h.rows()) + "x" + std::to_string(h.cols()));
    }
    const double dev = h.size() ? max_abs_diff(h, h.adjoint()) : 0.0;
    if (dev > hermitian_tol) {
        throw NotHermitian("eig_hermitian: |H - H^dagger| = " + std::to_string(dev));
    }
    const Matrix a = (h + h.adjoint()) / 2.0;
    Spectrum s;
    switch (a.rows()) {
        case 0:
            return s;
        case 1:
            s.values = Eigen::VectorXd::Constant(1, a(0, 0).real());
            s.vectors = Matrix::Identity(1, 1);
            return s;
        case 2:
            return closed_form_2x2(a);
        default:
            s = jacobi(a, options);
    }
    sort_descending(s);
    return s;
}

double reconstruction_residual(const Matrix& h, const Spectrum& s) {
    const Matrix rebuilt = s.vectors * s.values.cast<Complex>().asDiagonal() * s.vectors.adjoint();
    return max_abs_diff(h, rebuilt);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.signature() != sigma.signature()) {
        throw SignatureError("trace_distance: signatures " + rho.signature().to_string() + " and " +
                             sigma.signature().to_string());
    }
    // Fixed argument order makes the result exactly symmetric.
    const bool swap = lexicographically_less(sigma.matrix(), rho.matrix());
    const Matrix diff = swap ? Matrix(sigma.matrix() - rho.matrix()) : Matrix(rho.matrix() - sigma.matrix());
    const Spectrum s = eig_hermitian(diff);
    return std::min(1.0, 0.5 * s.values.cwiseAbs().sum());
}

double entropy(const DensityMatrix& rho) {
    const Spectrum s = eig_hermitian(rho.matrix());
    double h = 0.0;
    for (Eigen::Index k = 0; k < s.values.size(); ++k) {
        const double p = s.values[k];
        if (p > 0.0) {
            h -= p * std::log2(p);
        }
    }
    return std::max(0.0, h);
}

double binary_entropy(double p) {
    double h = 0.0;
    if (p > 0.0) {
        h -= p * std::log2(p);
    }
    if (p < 1.0) {
        h -= (1.0 - p) * std::log2(1.0 - p);
    }
    return h;
}

}  // namespace nclab
