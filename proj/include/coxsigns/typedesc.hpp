#pragma once

// Finite Coxeter type descriptors: parsing ("A3", "B2xA1", "I2(7)") and
// the per-type constants used to validate construction.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "coxsigns/errors.hpp"

namespace coxsigns {

enum class Family : char {
    A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G', H = 'H', I = 'I'
};

struct IrreducibleType {
    Family family;
    int rank;
    int dihedral_m = 0; // only for I2(m)

    std::string name() const {
        if (family == Family::I) return "I2(" + std::to_string(dihedral_m) + ")";
        return std::string(1, static_cast<char>(family)) + std::to_string(rank);
    }

    bool is_weyl() const {
        switch (family) {
            case Family::A: case Family::B: case Family::C: case Family::D:
            case Family::E: case Family::F: case Family::G:
                return true;
            default:
                return false;
        }
    }

    bool is_crystallographic() const { return is_weyl(); }

    std::size_t positive_root_count() const {
        std::size_t n = static_cast<std::size_t>(rank);
        switch (family) {
            case Family::A: return n * (n + 1) / 2;
            case Family::B:
            case Family::C: return n * n;
            case Family::D: return n * (n - 1);
            case Family::E: return rank == 6 ? 36 : (rank == 7 ? 63 : 120);
            case Family::F: return 24;
            case Family::G: return 6;
            case Family::H: return rank == 3 ? 15 : 60;
            case Family::I: return static_cast<std::size_t>(dihedral_m);
        }
        return 0;
    }

    unsigned long long group_order() const {
        auto fact = [](int k) {
            unsigned long long f = 1;
            for (int i = 2; i <= k; ++i) f *= static_cast<unsigned long long>(i);
            return f;
        };
        switch (family) {
            case Family::A: return fact(rank + 1);
            case Family::B:
            case Family::C: return (1ULL << rank) * fact(rank);
            case Family::D: return (1ULL << (rank - 1)) * fact(rank);
            case Family::E: return rank == 6 ? 51840ULL : (rank == 7 ? 2903040ULL : 696729600ULL);
            case Family::F: return 1152ULL;
            case Family::G: return 12ULL;
            case Family::H: return rank == 3 ? 120ULL : 14400ULL;
            case Family::I: return 2ULL * static_cast<unsigned long long>(dihedral_m);
        }
        return 0;
    }
};

struct TypeDescriptor {
    std::vector<IrreducibleType> factors;

    std::string name() const {
        std::string s;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i) s += "x";
            s += factors[i].name();
        }
        return s;
    }

    int total_rank() const {
        int r = 0;
        for (const auto& f : factors) r += f.rank;
        return r;
    }

    bool is_weyl() const {
        for (const auto& f : factors)
            if (!f.is_weyl()) return false;
        return true;
    }

    bool irreducible() const { return factors.size() == 1; }

    unsigned long long group_order() const {
        unsigned long long o = 1;
        for (const auto& f : factors) o *= f.group_order();
        return o;
    }

    static IrreducibleType parse_factor(std::string_view tok) {
        auto fail = [&](const std::string& why) -> IrreducibleType {
            throw UnknownTypeError("unknown type \"" + std::string(tok) + "\": " + why);
        };
        if (tok.empty()) fail("empty factor");
        char fam = tok[0];
        if (fam == 'I') {
            // I2(m)
            if (tok.size() < 5 || tok.substr(0, 3) != "I2(" || tok.back() != ')')
                fail("dihedral types are written I2(m)");
            int m = 0;
            for (std::size_t i = 3; i + 1 < tok.size(); ++i) {
                if (!std::isdigit(static_cast<unsigned char>(tok[i]))) fail("bad dihedral order");
                m = m * 10 + (tok[i] - '0');
            }
            if (m < 2) fail("I2(m) needs m >= 2");
            return {Family::I, 2, m};
        }
        if (fam < 'A' || fam > 'H' || tok.size() < 2) fail("expected a letter A-H followed by a rank");
        int rank = 0;
        for (std::size_t i = 1; i < tok.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(tok[i]))) fail("bad rank");
            rank = rank * 10 + (tok[i] - '0');
        }
        Family family = static_cast<Family>(fam);
        switch (family) {
            case Family::A: if (rank < 1) fail("A_n needs n >= 1"); break;
            case Family::B: if (rank < 2) fail("B_n needs n >= 2"); break;
            case Family::C: if (rank < 2) fail("C_n needs n >= 2"); break;
            case Family::D: if (rank < 3) fail("D_n needs n >= 3"); break;
            case Family::E: if (rank < 6 || rank > 8) fail("E_n needs n in {6,7,8}"); break;
            case Family::F: if (rank != 4) fail("only F4 exists"); break;
            case Family::G: if (rank != 2) fail("only G2 exists"); break;
            case Family::H: if (rank != 3 && rank != 4) fail("H_n needs n in {3,4}"); break;
            default: fail("unsupported family");
        }
        if (rank > 24) fail("rank too large");
        return {family, rank, 0};
    }

    // Products are written with 'x' or '*' between factors, e.g. "A1xA2".
    static TypeDescriptor parse(std::string_view text) {
        TypeDescriptor d;
        std::string tok;
        auto flush = [&]() {
            if (!tok.empty()) {
                d.factors.push_back(parse_factor(tok));
                tok.clear();
            }
        };
        for (char ch : text) {
            if (ch == ' ' || ch == '\t') continue;
            if (ch == 'x' || ch == '*') {
                flush();
                continue;
            }
            tok += ch;
        }
        flush();
        if (d.factors.empty())
            throw UnknownTypeError("empty type descriptor");
        return d;
    }
};

} // namespace coxsigns
