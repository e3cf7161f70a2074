#pragma once

// Finite Coxeter systems.  A system is built from a type descriptor; its
// positive roots are enumerated once by orbit closure, and group elements
// are stored as signed permutations of the positive-root list.
//
// Signed roots: values in [0, 2N) where r < N is the positive root r and
// r >= N is the negative of root r - N.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "coxsigns/errors.hpp"
#include "coxsigns/linalg.hpp"
#include "coxsigns/root_vector.hpp"
#include "coxsigns/typedesc.hpp"

namespace coxsigns {

using SignedRoot = std::uint32_t;

struct Reflection {
    std::uint32_t root; // index into the positive-root list
    friend bool operator==(Reflection a, Reflection b) { return a.root == b.root; }
    friend bool operator<(Reflection a, Reflection b) { return a.root < b.root; }
};

namespace detail {

struct VecLess {
    bool operator()(const RootVector& a, const RootVector& b) const { return vec_less(a, b); }
};

struct SystemData {
    TypeDescriptor type;
    int rank = 0;
    std::size_t n_pos = 0;
    bool has_coords = true;
    std::size_t ambient_dim = 0;

    std::vector<RootVector> pos_coords;   // model coordinates (empty for I2 factors)
    std::vector<RootVector> pos_simple;   // simple-root-basis coordinates
    GramForm gram_model;                  // bilinear form on model coordinates
    GramForm gram_simple;                 // the same form written in the simple basis

    std::vector<std::uint32_t> simple_root_of_gen;
    std::vector<std::vector<SignedRoot>> gen_perm; // generator -> image of each positive root
    std::vector<std::vector<int>> coxeter_matrix;

    std::vector<std::uint32_t> orbit_of_root;      // wall orbit id per positive root
    std::vector<std::vector<std::uint32_t>> orbits;

    std::vector<int> factor_of_gen;
    std::vector<std::pair<int, int>> factor_gens;                    // [begin,end) generator range
    std::vector<std::pair<std::size_t, std::size_t>> factor_roots;   // [begin,end) positive roots
    std::vector<bool> factor_has_coords;

    std::map<RootVector, std::uint32_t, VecLess> root_index; // model coords -> positive index

    SignedRoot negate(SignedRoot r) const {
        return r < n_pos ? r + static_cast<SignedRoot>(n_pos)
                         : r - static_cast<SignedRoot>(n_pos);
    }
    SignedRoot gen_apply(int s, SignedRoot r) const {
        return r < n_pos ? gen_perm[s][r] : negate(gen_perm[s][r - n_pos]);
    }
};

inline std::uint64_t hash_u32_span(std::span<const std::uint32_t> v) {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::uint32_t x : v) {
        h ^= x;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace detail

class CoxeterSystem;

// An element of W as a signed permutation of the positive roots, with its
// length cached.  Elements keep the system data alive; composing elements
// of different systems throws.
class GroupElement {
public:
    GroupElement() = default;
    GroupElement(std::shared_ptr<const detail::SystemData> sys, std::vector<SignedRoot> img)
        : sys_(std::move(sys)), img_(std::move(img)) {
        len_ = 0;
        for (SignedRoot r : img_)
            if (r >= sys_->n_pos) ++len_;
    }

    const detail::SystemData& data() const { return *sys_; }
    const std::shared_ptr<const detail::SystemData>& data_ptr() const { return sys_; }

    int length() const { return static_cast<int>(len_); }

    bool is_identity() const {
        for (std::size_t i = 0; i < img_.size(); ++i)
            if (img_[i] != i) return false;
        return true;
    }

    SignedRoot apply(SignedRoot r) const {
        return r < sys_->n_pos ? img_[r] : sys_->negate(img_[r - sys_->n_pos]);
    }

    friend GroupElement operator*(const GroupElement& a, const GroupElement& b) {
        if (a.sys_.get() != b.sys_.get())
            throw MixedSystemError("composing elements of different systems");
        std::vector<SignedRoot> img(a.img_.size());
        for (std::size_t i = 0; i < img.size(); ++i) img[i] = a.apply(b.img_[i]);
        return GroupElement(a.sys_, std::move(img));
    }

    GroupElement inverse() const {
        std::vector<SignedRoot> inv(img_.size());
        const std::size_t n = sys_->n_pos;
        for (std::size_t i = 0; i < img_.size(); ++i) {
            SignedRoot t = img_[i];
            if (t < n)
                inv[t] = static_cast<SignedRoot>(i);
            else
                inv[t - n] = static_cast<SignedRoot>(i + n);
        }
        return GroupElement(sys_, std::move(inv));
    }

    friend bool operator==(const GroupElement& a, const GroupElement& b) {
        return a.sys_.get() == b.sys_.get() && a.img_ == b.img_;
    }
    friend bool operator!=(const GroupElement& a, const GroupElement& b) { return !(a == b); }

    std::uint64_t hash() const { return detail::hash_u32_span(img_); }

    // Reflections whose wall separates the fundamental chamber from w C0,
    // i.e. { a > 0 : w^{-1} a < 0 } = { -w(b) : b > 0, w(b) < 0 }.
    std::vector<Reflection> inversion_set() const {
        std::vector<Reflection> t;
        const std::size_t n = sys_->n_pos;
        for (std::size_t i = 0; i < img_.size(); ++i)
            if (img_[i] >= n) t.push_back(Reflection{img_[i] - static_cast<std::uint32_t>(n)});
        std::sort(t.begin(), t.end());
        return t;
    }

    int order() const {
        GroupElement acc = *this;
        int k = 1;
        while (!acc.is_identity()) {
            acc = acc * *this;
            ++k;
            if (k > 1 << 20) throw Error("order: runaway iteration");
        }
        return k;
    }

private:
    std::shared_ptr<const detail::SystemData> sys_;
    std::vector<SignedRoot> img_;
    std::uint32_t len_ = 0;
};

class CoxeterSystem {
public:
    static CoxeterSystem build(const std::string& descriptor) {
        return CoxeterSystem(TypeDescriptor::parse(descriptor));
    }
    explicit CoxeterSystem(const TypeDescriptor& type) : d_(construct(type)) {}

    const TypeDescriptor& type() const { return d_->type; }
    std::string name() const { return d_->type.name(); }
    int rank() const { return d_->rank; }
    std::size_t num_positive_roots() const { return d_->n_pos; }
    std::size_t num_roots() const { return 2 * d_->n_pos; }
    bool has_coordinates() const { return d_->has_coords; }
    const detail::SystemData& data() const { return *d_; }
    const std::shared_ptr<const detail::SystemData>& data_ptr() const { return d_; }

    const RootVector& root_coords(std::uint32_t pos_index) const { return d_->pos_coords[pos_index]; }
    const RootVector& root_simple_coords(std::uint32_t pos_index) const { return d_->pos_simple[pos_index]; }
    const GramForm& gram() const { return d_->gram_model; }

    std::uint32_t simple_root_index(int s) const { return d_->simple_root_of_gen[s]; }
    int coxeter_m(int s, int t) const { return d_->coxeter_matrix[s][t]; }

    std::uint32_t wall_orbit(std::uint32_t pos_index) const { return d_->orbit_of_root[pos_index]; }
    std::size_t num_wall_orbits() const { return d_->orbits.size(); }
    const std::vector<std::vector<std::uint32_t>>& wall_orbits() const { return d_->orbits; }

    GroupElement identity() const {
        std::vector<SignedRoot> img(d_->n_pos);
        std::iota(img.begin(), img.end(), 0u);
        return GroupElement(d_, std::move(img));
    }

    GroupElement simple_reflection(int s) const {
        if (s < 0 || s >= d_->rank) throw IndexError("generator index out of range");
        return GroupElement(d_, d_->gen_perm[s]);
    }

    // Product of simple reflections in word order (0-based indices).
    GroupElement element_of(std::span<const int> word) const {
        for (int s : word)
            if (s < 0 || s >= d_->rank)
                throw IndexError("generator index " + std::to_string(s + 1) + " out of range");
        // (s1 s2 ... sk)(r) = s1(s2(...sk(r))): fold right-to-left over images
        std::vector<SignedRoot> img(d_->n_pos);
        std::iota(img.begin(), img.end(), 0u);
        for (auto it = word.rbegin(); it != word.rend(); ++it)
            for (auto& r : img) r = d_->gen_apply(*it, r);
        return GroupElement(d_, std::move(img));
    }

    GroupElement element_of(std::initializer_list<int> word) const {
        return element_of(std::span<const int>(word.begin(), word.size()));
    }

    // The reflection t as a group element.
    GroupElement reflection_element(Reflection t) const {
        const auto& d = *d_;
        int f = factor_of_root(t.root);
        std::vector<SignedRoot> img(d.n_pos);
        std::iota(img.begin(), img.end(), 0u);
        auto [rb, re] = d.factor_roots[f];
        if (d.factor_has_coords[f]) {
            const RootVector& alpha = d.pos_coords[t.root];
            for (std::size_t i = rb; i < re; ++i) {
                RootVector v = reflect_vector(d.pos_coords[i], alpha, d.gram_model);
                img[i] = lookup_signed(v);
            }
        } else {
            // dihedral factor: mirror of root k sends j to 2k + m - j (mod 2m)
            int m = d.type.factors[f].dihedral_m;
            long long k = static_cast<long long>(t.root - rb);
            for (std::size_t i = rb; i < re; ++i) {
                long long j = static_cast<long long>(i - rb);
                long long image = ((2 * k + m - j) % (2 * m) + 2 * m) % (2 * m);
                img[i] = image < m
                             ? static_cast<SignedRoot>(rb + image)
                             : static_cast<SignedRoot>(d.n_pos + rb + (image - m));
            }
        }
        return GroupElement(d_, std::move(img));
    }

    int factor_of_root(std::uint32_t pos_index) const {
        for (std::size_t f = 0; f < d_->factor_roots.size(); ++f)
            if (pos_index >= d_->factor_roots[f].first && pos_index < d_->factor_roots[f].second)
                return static_cast<int>(f);
        throw IndexError("root index out of range");
    }

    // Greedy descent with smallest-generator tie break; element_of(result) == w.
    std::vector<int> reduced_word(const GroupElement& w) const {
        std::vector<int> word;
        GroupElement u = w;
        GroupElement uinv = w.inverse();
        while (true) {
            int s = -1;
            for (int k = 0; k < d_->rank; ++k) {
                if (uinv.apply(d_->simple_root_of_gen[k]) >= d_->n_pos) { // |s u| < |u|
                    s = k;
                    break;
                }
            }
            if (s < 0) break;
            word.push_back(s);
            u = simple_reflection(s) * u;
            uinv = uinv * simple_reflection(s);
        }
        if (!u.is_identity()) throw Error("reduced_word: descent did not terminate");
        return word;
    }

    // Unique longest element of the standard parabolic generated by J.
    GroupElement longest_element(std::span<const int> J) const {
        if (J.empty()) throw IndexError("longest_element: empty generator set");
        GroupElement w = identity();
        bool grew = true;
        while (grew) {
            grew = false;
            for (int s : J) {
                // |w s| > |w| iff w(alpha_s) > 0
                if (w.apply(d_->simple_root_of_gen[s]) < d_->n_pos) {
                    w = w * simple_reflection(s);
                    grew = true;
                }
            }
        }
        return w;
    }
    GroupElement longest_element() const {
        std::vector<int> all(d_->rank);
        std::iota(all.begin(), all.end(), 0);
        return longest_element(all);
    }

    // Positive root of maximal height within one irreducible factor.
    std::uint32_t highest_root(int factor = 0) const {
        const auto& d = *d_;
        if (!d.factor_has_coords[factor])
            throw NonWeylError("highest_root: no coordinates for dihedral factor");
        auto [rb, re] = d.factor_roots[factor];
        std::uint32_t best = static_cast<std::uint32_t>(rb);
        Scalar best_h = height_of(rb);
        for (std::size_t i = rb + 1; i < re; ++i) {
            Scalar h = height_of(i);
            if ((h - best_h).sign() == Sign::positive) {
                best = static_cast<std::uint32_t>(i);
                best_h = h;
            }
        }
        return best;
    }

    Scalar height_of(std::size_t pos_index) const {
        Scalar h(0);
        for (const auto& c : d_->pos_simple[pos_index]) h += c;
        return h;
    }

    // Build an element from an exact linear map on model coordinates.
    template <class Fn>
    GroupElement element_from_coordinate_map(Fn&& map) const {
        if (!d_->has_coords)
            throw NonWeylError("element_from_coordinate_map needs coordinates");
        std::vector<SignedRoot> img(d_->n_pos);
        for (std::size_t i = 0; i < d_->n_pos; ++i)
            img[i] = lookup_signed(map(d_->pos_coords[i]));
        return GroupElement(d_, std::move(img));
    }

    SignedRoot lookup_signed(const RootVector& v) const {
        auto it = d_->root_index.find(v);
        if (it != d_->root_index.end()) return it->second;
        it = d_->root_index.find(vec_neg(v));
        if (it != d_->root_index.end()) return it->second + static_cast<SignedRoot>(d_->n_pos);
        throw Error("vector is not a root: " + vec_str(v));
    }

private:
    std::shared_ptr<const detail::SystemData> d_;

    explicit CoxeterSystem(std::shared_ptr<const detail::SystemData> d) : d_(std::move(d)) {}

    static std::shared_ptr<const detail::SystemData> construct(const TypeDescriptor& type);
};

// ---------------------------------------------------------------------------
// free functions mirroring the operation names used throughout

inline CoxeterSystem build_system(const std::string& descriptor) {
    return CoxeterSystem::build(descriptor);
}

inline GroupElement compose(const GroupElement& a, const GroupElement& b) { return a * b; }
inline GroupElement invert(const GroupElement& a) { return a.inverse(); }
inline int length(const GroupElement& w) { return w.length(); }
inline std::vector<Reflection> inversion_set(const GroupElement& w) { return w.inversion_set(); }

// The reflection with positive root +-w(alpha_t).
inline Reflection conjugate_reflection(const GroupElement& w, Reflection t) {
    SignedRoot r = w.apply(t.root);
    std::uint32_t n = static_cast<std::uint32_t>(w.data().n_pos);
    return Reflection{r < n ? r : r - n};
}

namespace detail {

struct FactorModel {
    int dim = 0;
    std::vector<RootVector> simple_model;
    std::vector<std::vector<Scalar>> gram;
};

inline FactorModel factor_model(const IrreducibleType& t) {
    FactorModel fm;
    const int n = t.rank;
    auto unit = [](int dim, int i) {
        RootVector v(static_cast<std::size_t>(dim), Scalar(0));
        v[static_cast<std::size_t>(i)] = Scalar(1);
        return v;
    };
    auto identity_gram = [](int dim) {
        std::vector<std::vector<Scalar>> g(dim, std::vector<Scalar>(dim, Scalar(0)));
        for (int i = 0; i < dim; ++i) g[i][i] = Scalar(1);
        return g;
    };
    switch (t.family) {
        case Family::A: {
            fm.dim = n + 1;
            for (int i = 0; i < n; ++i) {
                RootVector v(static_cast<std::size_t>(fm.dim), Scalar(0));
                v[i] = Scalar(1);
                v[i + 1] = Scalar(-1);
                fm.simple_model.push_back(std::move(v));
            }
            fm.gram = identity_gram(fm.dim);
            break;
        }
        case Family::B:
        case Family::C:
        case Family::D: {
            fm.dim = n;
            for (int i = 0; i + 1 < n; ++i) {
                RootVector v(static_cast<std::size_t>(n), Scalar(0));
                v[i] = Scalar(1);
                v[i + 1] = Scalar(-1);
                fm.simple_model.push_back(std::move(v));
            }
            RootVector last(static_cast<std::size_t>(n), Scalar(0));
            if (t.family == Family::B) {
                last[n - 1] = Scalar(1);
            } else if (t.family == Family::C) {
                last[n - 1] = Scalar(2);
            } else {
                last[n - 2] = Scalar(1);
                last[n - 1] = Scalar(1);
            }
            fm.simple_model.push_back(std::move(last));
            fm.gram = identity_gram(n);
            break;
        }
        case Family::E: {
            fm.dim = n;
            for (int i = 0; i < n; ++i) fm.simple_model.push_back(unit(n, i));
            std::vector<std::pair<int, int>> edges = {{0, 2}, {2, 3}, {3, 4}, {1, 3}};
            for (int i = 4; i + 1 < n; ++i) edges.push_back({i, i + 1});
            fm.gram.assign(n, std::vector<Scalar>(n, Scalar(0)));
            for (int i = 0; i < n; ++i) fm.gram[i][i] = Scalar(2);
            for (auto [a, b] : edges) {
                fm.gram[a][b] = Scalar(-1);
                fm.gram[b][a] = Scalar(-1);
            }
            break;
        }
        case Family::F: {
            fm.dim = 4;
            for (int i = 0; i < 4; ++i) fm.simple_model.push_back(unit(4, i));
            fm.gram = {{Scalar(4), Scalar(-2), Scalar(0), Scalar(0)},
                       {Scalar(-2), Scalar(4), Scalar(-2), Scalar(0)},
                       {Scalar(0), Scalar(-2), Scalar(2), Scalar(-1)},
                       {Scalar(0), Scalar(0), Scalar(-1), Scalar(2)}};
            break;
        }
        case Family::G: {
            fm.dim = 2;
            fm.simple_model = {unit(2, 0), unit(2, 1)};
            fm.gram = {{Scalar(2), Scalar(-3)}, {Scalar(-3), Scalar(6)}};
            break;
        }
        case Family::H: {
            fm.dim = n;
            for (int i = 0; i < n; ++i) fm.simple_model.push_back(unit(n, i));
            fm.gram.assign(n, std::vector<Scalar>(n, Scalar(0)));
            Scalar half(Rational(1), Rational(2));
            Scalar phi_half = Scalar::golden(Rational(0), Rational(1, 2));
            for (int i = 0; i < n; ++i) fm.gram[i][i] = Scalar(1);
            // the 5-edge sits between the first two nodes
            fm.gram[0][1] = -phi_half;
            fm.gram[1][0] = -phi_half;
            for (int i = 1; i + 1 < n; ++i) {
                fm.gram[i][i + 1] = -half;
                fm.gram[i + 1][i] = -half;
            }
            break;
        }
        case Family::I:
            fm.dim = 0; // combinatorial model, handled separately
            break;
    }
    return fm;
}

// Enumerate the positive roots of one coordinate factor by orbit closure.
struct EnumeratedFactor {
    std::vector<RootVector> pos_model;
    std::vector<RootVector> pos_simple;
    std::vector<std::vector<SignedRoot>> gen_perm; // local signed indices, n_pos = count
    std::vector<std::uint32_t> simple_local;       // local root index of each generator
};

inline EnumeratedFactor enumerate_factor(const IrreducibleType& t, const FactorModel& fm) {
    EnumeratedFactor ef;
    const std::size_t expected = t.positive_root_count();
    const int rank = t.rank;
    GramForm gram{fm.gram};

    std::map<RootVector, std::uint32_t, VecLess> index;
    auto sign_of_simple = [&](const RootVector& sc) -> int {
        for (const auto& c : sc) {
            Sign s = c.sign();
            if (s == Sign::positive) return 1;
            if (s == Sign::negative) return -1;
        }
        return 0;
    };

    for (int i = 0; i < rank; ++i) {
        RootVector sc(static_cast<std::size_t>(rank), Scalar(0));
        sc[i] = Scalar(1);
        ef.pos_model.push_back(fm.simple_model[i]);
        ef.pos_simple.push_back(std::move(sc));
        index.emplace(fm.simple_model[i], static_cast<std::uint32_t>(i));
        ef.simple_local.push_back(static_cast<std::uint32_t>(i));
    }

    // closure
    for (std::size_t head = 0; head < ef.pos_model.size(); ++head) {
        for (int s = 0; s < rank; ++s) {
            const RootVector& alpha = fm.simple_model[s];
            Scalar c = (Scalar(2) * gram(alpha, ef.pos_model[head])) / gram(alpha, alpha);
            RootVector v = vec_sub(ef.pos_model[head], vec_scale(c, alpha));
            RootVector vs = ef.pos_simple[head];
            vs[s] = vs[s] - c;
            int sg = sign_of_simple(vs);
            if (sg == 0) throw Error("root enumeration produced zero vector");
            RootVector key = sg > 0 ? v : vec_neg(v);
            if (!index.count(key)) {
                if (ef.pos_model.size() >= expected)
                    throw Error("root enumeration exceeded the expected count for " + t.name());
                index.emplace(key, static_cast<std::uint32_t>(ef.pos_model.size()));
                ef.pos_model.push_back(key);
                ef.pos_simple.push_back(sg > 0 ? vs : vec_neg(vs));
            }
        }
    }
    if (ef.pos_model.size() != expected)
        throw Error("root enumeration found " + std::to_string(ef.pos_model.size()) +
                    " positive roots for " + t.name() + ", expected " + std::to_string(expected));

    const std::size_t n = ef.pos_model.size();
    ef.gen_perm.assign(rank, std::vector<SignedRoot>(n));
    for (int s = 0; s < rank; ++s) {
        const RootVector& alpha = fm.simple_model[s];
        for (std::size_t i = 0; i < n; ++i) {
            Scalar c = (Scalar(2) * gram(alpha, ef.pos_model[i])) / gram(alpha, alpha);
            RootVector v = vec_sub(ef.pos_model[i], vec_scale(c, alpha));
            auto it = index.find(v);
            if (it != index.end()) {
                ef.gen_perm[s][i] = it->second;
            } else {
                it = index.find(vec_neg(v));
                if (it == index.end()) throw Error("reflection image is not a root");
                ef.gen_perm[s][i] = it->second + static_cast<SignedRoot>(n);
            }
        }
    }
    return ef;
}

inline EnumeratedFactor enumerate_dihedral(int m) {
    EnumeratedFactor ef;
    const std::size_t n = static_cast<std::size_t>(m);
    ef.gen_perm.assign(2, std::vector<SignedRoot>(n));
    // mirror of root k maps j to 2k + m - j (mod 2m); simple roots are 0 and m-1
    auto mirror = [&](long long k, long long j) -> SignedRoot {
        long long image = ((2 * k + m - j) % (2 * m) + 2 * m) % (2 * m);
        return image < m ? static_cast<SignedRoot>(image)
                         : static_cast<SignedRoot>(n + (image - m));
    };
    for (long long j = 0; j < m; ++j) {
        ef.gen_perm[0][j] = mirror(0, j);
        ef.gen_perm[1][j] = mirror(m - 1, j);
    }
    ef.simple_local = {0, static_cast<std::uint32_t>(m - 1)};
    return ef;
}

inline void validate_small_factor_order(const CoxeterSystem& sys, int factor);

} // namespace detail

inline std::shared_ptr<const detail::SystemData> CoxeterSystem::construct(const TypeDescriptor& type) {
    auto data = std::make_shared<detail::SystemData>();
    auto& d = *data;
    d.type = type;
    d.rank = type.total_rank();

    // first pass: enumerate each factor
    std::vector<detail::EnumeratedFactor> efs;
    std::vector<detail::FactorModel> models;
    std::size_t total_pos = 0, total_dim = 0;
    for (const auto& f : type.factors) {
        detail::FactorModel fm = detail::factor_model(f);
        detail::EnumeratedFactor ef =
            f.family == Family::I ? detail::enumerate_dihedral(f.dihedral_m)
                                  : detail::enumerate_factor(f, fm);
        total_pos += f.positive_root_count();
        total_dim += static_cast<std::size_t>(fm.dim);
        efs.push_back(std::move(ef));
        models.push_back(std::move(fm));
    }

    d.n_pos = total_pos;
    d.ambient_dim = total_dim;
    d.has_coords = true;
    for (const auto& f : type.factors)
        if (f.family == Family::I) d.has_coords = false;

    // assemble global structures
    std::vector<std::vector<Scalar>> gram_model(total_dim, std::vector<Scalar>(total_dim, Scalar(0)));
    std::size_t root_off = 0, gen_off = 0, dim_off = 0;
    d.gen_perm.assign(static_cast<std::size_t>(d.rank), {});
    for (std::size_t f = 0; f < type.factors.size(); ++f) {
        const auto& t = type.factors[f];
        const auto& ef = efs[f];
        const std::size_t n_local = t.positive_root_count();
        const int rank_local = t.rank;
        d.factor_gens.emplace_back(static_cast<int>(gen_off), static_cast<int>(gen_off + rank_local));
        d.factor_roots.emplace_back(root_off, root_off + n_local);
        d.factor_has_coords.push_back(t.family != Family::I);

        for (int s = 0; s < rank_local; ++s) d.factor_of_gen.push_back(static_cast<int>(f));

        for (std::size_t i = 0; i < n_local; ++i) {
            RootVector model(total_dim, Scalar(0));
            RootVector simple(static_cast<std::size_t>(d.rank), Scalar(0));
            if (t.family != Family::I) {
                for (std::size_t k = 0; k < ef.pos_model[i].size(); ++k)
                    model[dim_off + k] = ef.pos_model[i][k];
                for (std::size_t k = 0; k < ef.pos_simple[i].size(); ++k)
                    simple[gen_off + k] = ef.pos_simple[i][k];
                d.root_index.emplace(model, static_cast<std::uint32_t>(root_off + i));
            }
            d.pos_coords.push_back(std::move(model));
            d.pos_simple.push_back(std::move(simple));
        }
        if (t.family != Family::I) {
            for (int a = 0; a < models[f].dim; ++a)
                for (int b = 0; b < models[f].dim; ++b)
                    gram_model[dim_off + a][dim_off + b] = models[f].gram[a][b];
        }

        for (int s = 0; s < rank_local; ++s) {
            auto& perm = d.gen_perm[gen_off + s];
            perm.resize(total_pos);
            d.simple_root_of_gen.push_back(static_cast<std::uint32_t>(root_off + ef.simple_local[s]));
            // identity outside this factor, local action inside
            for (std::size_t i = 0; i < total_pos; ++i) perm[i] = static_cast<SignedRoot>(i);
            for (std::size_t i = 0; i < n_local; ++i) {
                SignedRoot v = ef.gen_perm[s][i];
                perm[root_off + i] = v < n_local
                                         ? static_cast<SignedRoot>(root_off + v)
                                         : static_cast<SignedRoot>(total_pos + root_off + (v - n_local));
            }
        }
        root_off += n_local;
        gen_off += static_cast<std::size_t>(rank_local);
        if (t.family != Family::I) dim_off += static_cast<std::size_t>(models[f].dim);
    }
    // simple roots of I2 factors have no coordinates but still need simple indices set
    // (done above uniformly).
    d.gram_model = GramForm(std::move(gram_model));

    // Gram in the simple basis (only meaningful for coordinate factors; the
    // dihedral rows stay zero and are never consulted).
    {
        std::vector<std::vector<Scalar>> gs(static_cast<std::size_t>(d.rank),
                                            std::vector<Scalar>(static_cast<std::size_t>(d.rank), Scalar(0)));
        for (int a = 0; a < d.rank; ++a)
            for (int b = 0; b < d.rank; ++b) {
                if (d.factor_of_gen[a] != d.factor_of_gen[b]) continue;
                int f = d.factor_of_gen[a];
                if (!d.factor_has_coords[f]) continue;
                gs[a][b] = d.gram_model(d.pos_coords[d.simple_root_of_gen[a]],
                                        d.pos_coords[d.simple_root_of_gen[b]]);
            }
        d.gram_simple = GramForm(std::move(gs));
    }

    // validation: each generator sends exactly one positive root (its own) negative
    for (int s = 0; s < d.rank; ++s) {
        std::size_t flipped = 0;
        for (std::size_t i = 0; i < d.n_pos; ++i)
            if (d.gen_perm[s][i] >= d.n_pos) ++flipped;
        if (flipped != 1 || d.gen_perm[s][d.simple_root_of_gen[s]] != d.negate(d.simple_root_of_gen[s]))
            throw Error("simple reflection sanity check failed");
    }

    // Coxeter matrix from pairwise product orders
    d.coxeter_matrix.assign(static_cast<std::size_t>(d.rank),
                            std::vector<int>(static_cast<std::size_t>(d.rank), 1));
    {
        auto order_of_product = [&](int s, int t) {
            std::vector<SignedRoot> id(d.n_pos);
            std::iota(id.begin(), id.end(), 0u);
            std::vector<SignedRoot> st(d.n_pos);
            for (std::size_t i = 0; i < d.n_pos; ++i)
                st[i] = d.gen_apply(s, d.gen_perm[t][i]);
            std::vector<SignedRoot> acc = st;
            int k = 1;
            while (acc != id) {
                std::vector<SignedRoot> nxt(d.n_pos);
                for (std::size_t i = 0; i < d.n_pos; ++i) {
                    SignedRoot r = acc[i];
                    nxt[i] = r < d.n_pos ? st[r] : d.negate(st[r - d.n_pos]);
                }
                acc = std::move(nxt);
                ++k;
                if (k > 4096) throw Error("coxeter matrix entry did not terminate");
            }
            return k;
        };
        for (int s = 0; s < d.rank; ++s)
            for (int t = s + 1; t < d.rank; ++t) {
                int m = order_of_product(s, t);
                d.coxeter_matrix[s][t] = m;
                d.coxeter_matrix[t][s] = m;
            }
    }

    // wall orbits under the W-action a -> |w a|
    {
        d.orbit_of_root.assign(d.n_pos, UINT32_MAX);
        for (std::size_t seed = 0; seed < d.n_pos; ++seed) {
            if (d.orbit_of_root[seed] != UINT32_MAX) continue;
            std::uint32_t id = static_cast<std::uint32_t>(d.orbits.size());
            d.orbits.push_back({});
            std::vector<std::uint32_t> stack = {static_cast<std::uint32_t>(seed)};
            d.orbit_of_root[seed] = id;
            while (!stack.empty()) {
                std::uint32_t r = stack.back();
                stack.pop_back();
                d.orbits[id].push_back(r);
                for (int s = 0; s < d.rank; ++s) {
                    SignedRoot v = d.gen_perm[s][r];
                    std::uint32_t pr = v < d.n_pos ? v : v - static_cast<std::uint32_t>(d.n_pos);
                    if (d.orbit_of_root[pr] == UINT32_MAX) {
                        d.orbit_of_root[pr] = id;
                        stack.push_back(pr);
                    }
                }
            }
            std::sort(d.orbits[id].begin(), d.orbits[id].end());
        }
    }

    CoxeterSystem sys(std::shared_ptr<const detail::SystemData>(data));
    for (std::size_t f = 0; f < type.factors.size(); ++f) {
        if (type.factors[f].rank <= 4)
            detail::validate_small_factor_order(sys, static_cast<int>(f));
    }
    return data;
}

namespace detail {

// Exhaustive order check for small factors at construction time.
inline void validate_small_factor_order(const CoxeterSystem& sys, int factor) {
    const auto& d = sys.data();
    auto [gb, ge] = d.factor_gens[factor];
    std::vector<GroupElement> elems = {sys.identity()};
    std::vector<std::uint64_t> seen = {elems[0].hash()};
    auto known = [&](const GroupElement& g) {
        std::uint64_t h = g.hash();
        for (std::size_t i = 0; i < elems.size(); ++i)
            if (seen[i] == h && elems[i] == g) return true;
        return false;
    };
    unsigned long long expected = d.type.factors[factor].group_order();
    for (std::size_t head = 0; head < elems.size(); ++head) {
        for (int s = gb; s < ge; ++s) {
            GroupElement g = elems[head] * sys.simple_reflection(s);
            if (!known(g)) {
                if (elems.size() >= expected)
                    throw Error("group order check failed for factor " +
                                d.type.factors[factor].name());
                elems.push_back(g);
                seen.push_back(g.hash());
            }
        }
    }
    if (elems.size() != expected)
        throw Error("group order check failed for factor " + d.type.factors[factor].name() +
                    ": got " + std::to_string(elems.size()));
}

} // namespace detail

// ---------------------------------------------------------------------------
// fixed spaces and perpendicular subsystems (reflection representation in
// the simple-root basis)

// Matrix of w acting on the simple basis: column j = simple coords of w(alpha_j).
inline std::vector<std::vector<Scalar>> reflection_matrix(const CoxeterSystem& sys,
                                                          const GroupElement& w) {
    const auto& d = sys.data();
    const int r = d.rank;
    std::vector<std::vector<Scalar>> m(static_cast<std::size_t>(r),
                                       std::vector<Scalar>(static_cast<std::size_t>(r), Scalar(0)));
    for (int j = 0; j < r; ++j) {
        SignedRoot im = w.apply(d.simple_root_of_gen[j]);
        bool neg = im >= d.n_pos;
        const RootVector& sc = d.pos_simple[neg ? im - d.n_pos : im];
        for (int i = 0; i < r; ++i) m[i][j] = neg ? -sc[i] : sc[i];
    }
    return m;
}

inline std::vector<std::vector<Scalar>> fixed_space_basis(const CoxeterSystem& sys,
                                                          std::span<const GroupElement> X) {
    if (X.empty()) throw IndexError("fixed_space: empty element set");
    if (!sys.has_coordinates())
        throw NonWeylError("fixed_space needs coordinate factors");
    const int r = sys.rank();
    std::vector<std::vector<Scalar>> rows;
    for (const auto& w : X) {
        auto m = reflection_matrix(sys, w);
        for (int i = 0; i < r; ++i) {
            m[i][i] = m[i][i] - Scalar(1);
            rows.push_back(m[i]);
        }
    }
    return kernel_basis(std::move(rows), static_cast<std::size_t>(r));
}

inline int fixed_space_dimension(const CoxeterSystem& sys, std::span<const GroupElement> X) {
    return static_cast<int>(fixed_space_basis(sys, X).size());
}

// All positive roots orthogonal to the common fixed space of X.
inline std::vector<Reflection> perp_subsystem(const CoxeterSystem& sys,
                                              std::span<const GroupElement> X) {
    auto basis = fixed_space_basis(sys, X);
    const auto& d = sys.data();
    std::vector<Reflection> out;
    for (std::uint32_t i = 0; i < d.n_pos; ++i) {
        bool perp = true;
        for (const auto& v : basis) {
            if (!d.gram_simple(d.pos_simple[i], v).is_zero()) {
                perp = false;
                break;
            }
        }
        if (perp) out.push_back(Reflection{i});
    }
    return out;
}

// ---------------------------------------------------------------------------
// diagram automorphisms

class DiagramAutomorphism {
public:
    DiagramAutomorphism(const CoxeterSystem& sys, std::vector<int> perm)
        : sys_(sys), perm_(std::move(perm)) {
        const int r = sys_.rank();
        if (static_cast<int>(perm_.size()) != r)
            throw NotAnAutomorphismError("permutation has wrong size");
        std::vector<bool> hit(static_cast<std::size_t>(r), false);
        for (int v : perm_) {
            if (v < 0 || v >= r || hit[v]) throw NotAnAutomorphismError("not a permutation");
            hit[v] = true;
        }
        for (int s = 0; s < r; ++s)
            for (int t = 0; t < r; ++t)
                if (sys_.coxeter_m(s, t) != sys_.coxeter_m(perm_[s], perm_[t]))
                    throw NotAnAutomorphismError("permutation does not preserve the Coxeter matrix");
    }

    GroupElement operator()(const GroupElement& w) const {
        std::vector<int> word = sys_.reduced_word(w);
        for (auto& s : word) s = perm_[s];
        return sys_.element_of(word);
    }

    const std::vector<int>& generator_map() const { return perm_; }

private:
    CoxeterSystem sys_;
    std::vector<int> perm_;
};

inline DiagramAutomorphism diagram_automorphism(const CoxeterSystem& sys, std::vector<int> perm) {
    return DiagramAutomorphism(sys, std::move(perm));
}

} // namespace coxsigns
