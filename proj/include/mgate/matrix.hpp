// matrix.hpp
// Small dense complex matrices. Used for gate verification oracles and
// custom/controlled gate blocks, never for simulation kernels.

#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <utility>
#include <vector>

#include "mgate/common.hpp"
#include "mgate/errors.hpp"

namespace mgate {

class CMatrix {
public:
    CMatrix() = default;

    explicit CMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

    CMatrix(std::size_t dim, std::vector<Amplitude> entries)
        : dim_(dim), a_(std::move(entries)) {
        if (a_.size() != dim_ * dim_) {
            throw InputError("matrix entry count does not match dimension");
        }
    }

    static CMatrix identity(std::size_t dim) {
        CMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
        return m;
    }

    static CMatrix from_rows(std::initializer_list<std::initializer_list<Amplitude>> rows) {
        CMatrix m(rows.size());
        std::size_t r = 0;
        for (const auto& row : rows) {
            if (row.size() != m.dim_) throw InputError("ragged matrix rows");
            std::size_t c = 0;
            for (const auto& v : row) m.at(r, c++) = v;
            ++r;
        }
        return m;
    }

    std::size_t dim() const { return dim_; }
    bool empty() const { return dim_ == 0; }

    Amplitude& at(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
    const Amplitude& at(std::size_t r, std::size_t c) const { return a_[r * dim_ + c]; }

    const std::vector<Amplitude>& entries() const { return a_; }

    CMatrix operator*(const CMatrix& rhs) const {
        if (dim_ != rhs.dim_) throw InputError("matrix dimension mismatch in product");
        CMatrix out(dim_);
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t k = 0; k < dim_; ++k) {
                const Amplitude v = at(r, k);
                if (v == Amplitude{}) continue;
                for (std::size_t c = 0; c < dim_; ++c) {
                    out.at(r, c) += v * rhs.at(k, c);
                }
            }
        }
        return out;
    }

    std::vector<Amplitude> apply_to(const std::vector<Amplitude>& v) const {
        if (v.size() != dim_) throw InputError("matrix/vector dimension mismatch");
        std::vector<Amplitude> out(dim_);
        for (std::size_t r = 0; r < dim_; ++r) {
            Amplitude acc{};
            for (std::size_t c = 0; c < dim_; ++c) acc += at(r, c) * v[c];
            out[r] = acc;
        }
        return out;
    }

    CMatrix dagger() const {
        CMatrix out(dim_);
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = 0; c < dim_; ++c) {
                out.at(c, r) = std::conj(at(r, c));
            }
        }
        return out;
    }

    double max_abs_diff(const CMatrix& rhs) const {
        if (dim_ != rhs.dim_) throw InputError("matrix dimension mismatch in comparison");
        double worst = 0.0;
        for (std::size_t i = 0; i < a_.size(); ++i) {
            worst = std::max(worst, std::abs(a_[i] - rhs.a_[i]));
        }
        return worst;
    }

    bool approx_equal(const CMatrix& rhs, double tol) const {
        return dim_ == rhs.dim_ && max_abs_diff(rhs) < tol;
    }

    // ||U†U - I||_max < tol
    bool is_unitary(double tol) const {
        return (dagger() * *this).max_abs_diff(identity(dim_)) < tol;
    }

private:
    std::size_t dim_ = 0;
    std::vector<Amplitude> a_;
};

}  // namespace mgate
