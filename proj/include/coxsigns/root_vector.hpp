#pragma once

// Small exact vectors and symmetric bilinear forms over Scalar.

#include <cstddef>
#include <string>
#include <vector>

#include "coxsigns/errors.hpp"
#include "coxsigns/scalar.hpp"

namespace coxsigns {

using RootVector = std::vector<Scalar>;

inline RootVector vec_add(const RootVector& u, const RootVector& v) {
    RootVector r(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) r[i] = u[i] + v[i];
    return r;
}

inline RootVector vec_sub(const RootVector& u, const RootVector& v) {
    RootVector r(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) r[i] = u[i] - v[i];
    return r;
}

inline RootVector vec_neg(const RootVector& u) {
    RootVector r(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) r[i] = -u[i];
    return r;
}

inline RootVector vec_scale(const Scalar& c, const RootVector& u) {
    RootVector r(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) r[i] = c * u[i];
    return r;
}

inline bool vec_is_zero(const RootVector& u) {
    for (const auto& x : u)
        if (!x.is_zero()) return false;
    return true;
}

// Strict numeric lexicographic order; used for canonical sorting.
inline bool vec_less(const RootVector& u, const RootVector& v) {
    for (std::size_t i = 0; i < u.size() && i < v.size(); ++i) {
        Sign s = (u[i] - v[i]).sign();
        if (s == Sign::negative) return true;
        if (s == Sign::positive) return false;
    }
    return u.size() < v.size();
}

inline std::string vec_str(const RootVector& u) {
    std::string s = "(";
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (i) s += ",";
        s += u[i].str();
    }
    s += ")";
    return s;
}

// Symmetric bilinear form given by its matrix in the working basis.
class GramForm {
public:
    GramForm() = default;
    explicit GramForm(std::vector<std::vector<Scalar>> m) : mat_(std::move(m)) {}

    static GramForm identity(std::size_t dim) {
        std::vector<std::vector<Scalar>> m(dim, std::vector<Scalar>(dim, Scalar(0)));
        for (std::size_t i = 0; i < dim; ++i) m[i][i] = Scalar(1);
        return GramForm(std::move(m));
    }

    std::size_t dim() const { return mat_.size(); }

    Scalar operator()(const RootVector& u, const RootVector& v) const {
        Scalar acc(0);
        for (std::size_t i = 0; i < mat_.size(); ++i) {
            if (u[i].is_zero()) continue;
            Scalar row(0);
            for (std::size_t j = 0; j < mat_.size(); ++j) {
                if (v[j].is_zero()) continue;
                row += mat_[i][j] * v[j];
            }
            acc += u[i] * row;
        }
        return acc;
    }

private:
    std::vector<std::vector<Scalar>> mat_;
};

// v - 2 g(root, v)/g(root, root) * root, exactly.
inline RootVector reflect_vector(const RootVector& v, const RootVector& root, const GramForm& gram) {
    Scalar nn = gram(root, root);
    if (nn.is_zero()) throw DegenerateFormError("reflect_vector: isotropic root");
    Scalar c = (Scalar(2) * gram(root, v)) / nn;
    return vec_sub(v, vec_scale(c, root));
}

} // namespace coxsigns
