#pragma once

// Word-string serialization.  A word is "s1 s3 s2" (1-based generator
// indices; the s prefix is optional on input), the identity prints as "e",
// and tuple entries are separated by commas.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coxsigns/coxeter.hpp"
#include "coxsigns/errors.hpp"

namespace coxsigns {

inline std::vector<int> parse_word(const CoxeterSystem& sys, std::string_view text) {
    std::vector<int> word;
    std::size_t i = 0;
    auto skip_ws = [&]() {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    skip_ws();
    while (i < text.size()) {
        std::size_t start = i;
        while (i < text.size() && text[i] != ' ' && text[i] != '\t') ++i;
        std::string_view tok = text.substr(start, i - start);
        skip_ws();
        std::string_view digits = tok;
        if (!digits.empty() && (digits[0] == 's' || digits[0] == 'S')) digits.remove_prefix(1);
        if (digits == "e" && tok.size() == 1) continue; // explicit identity token
        if (digits.empty())
            throw WordParseError("bad word token \"" + std::string(tok) + "\"");
        int v = 0;
        for (char c : digits) {
            if (c < '0' || c > '9')
                throw WordParseError("bad word token \"" + std::string(tok) + "\"");
            v = v * 10 + (c - '0');
        }
        if (v < 1 || v > sys.rank())
            throw WordParseError("generator " + std::string(tok) + " out of range for " +
                                 sys.name() + " (rank " + std::to_string(sys.rank()) + ")");
        word.push_back(v - 1);
    }
    return word;
}

inline GroupElement parse_element(const CoxeterSystem& sys, std::string_view text) {
    return sys.element_of(parse_word(sys, text));
}

inline std::vector<GroupElement> parse_tuple(const CoxeterSystem& sys, std::string_view text) {
    std::vector<GroupElement> tuple;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        std::string_view part =
            comma == std::string_view::npos ? text.substr(start) : text.substr(start, comma - start);
        tuple.push_back(parse_element(sys, part));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return tuple;
}

inline std::string format_word(std::span<const int> word) {
    if (word.empty()) return "e";
    std::string s;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) s += " ";
        s += "s" + std::to_string(word[i] + 1);
    }
    return s;
}

inline std::string format_element(const CoxeterSystem& sys, const GroupElement& w) {
    return format_word(sys.reduced_word(w));
}

inline std::string format_tuple(const CoxeterSystem& sys, std::span<const GroupElement> t) {
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ", ";
        s += format_element(sys, t[i]);
    }
    return s;
}

} // namespace coxsigns
