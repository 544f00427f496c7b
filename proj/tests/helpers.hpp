#pragma once

// Shared brute-force oracles for the test suites. These deliberately avoid
// the library's own scanning/search code paths: each one re-derives its
// answer from first principles so it can arbitrate the closed forms.

#include <cstddef>
#include <string>
#include <vector>

#include "wqo/word.hpp"

namespace testutil {

/// Enumerate every binary word of length <= max_len ('a'/'b'), shortest first.
template <typename Fn>
void for_all_binary_words(std::size_t max_len, Fn&& fn) {
    for (std::size_t len = 0; len <= max_len; ++len) {
        for (unsigned long bits = 0; bits < (1ul << len); ++bits) {
            std::string s(len, 'a');
            for (std::size_t t = 0; t < len; ++t)
                if (bits & (1ul << t)) s[t] = 'b';
            fn(s);
        }
    }
}

inline std::string reversed(const std::string& s) { return {s.rbegin(), s.rend()}; }

inline std::string exchanged(const std::string& s) {
    std::string out = s;
    for (char& c : out) c = (c == 'a') ? 'b' : 'a';
    return out;
}

/// Does t literally equal a^k b^h with k, h >= 2?
inline bool is_form1_factor(const std::string& t) {
    std::size_t i = 0;
    while (i < t.size() && t[i] == 'a') ++i;
    const std::size_t k = i;
    std::size_t j = i;
    while (j < t.size() && t[j] == 'b') ++j;
    return k >= 2 && (j - i) >= 2 && j == t.size();
}

/// Does t literally equal a^k b a^l b^m with k > l >= 1, m >= 1?
inline bool is_form2_factor(const std::string& t) {
    std::size_t i = 0;
    while (i < t.size() && t[i] == 'a') ++i;
    const std::size_t k = i;
    if (k < 1 || i >= t.size() || t[i] != 'b') return false;
    ++i;
    std::size_t l = 0;
    while (i < t.size() && t[i] == 'a') ++i, ++l;
    if (!(k > l && l >= 1)) return false;
    std::size_t m = 0;
    while (i < t.size() && t[i] == 'b') ++i, ++m;
    return m >= 1 && i == t.size();
}

/// Naive bad-word oracle: every factor of every variant, checked literally.
inline bool naive_bad(const std::string& w) {
    const std::string vs[] = {w, reversed(w), exchanged(w), exchanged(reversed(w))};
    for (const auto& v : vs)
        for (std::size_t start = 0; start < v.size(); ++start)
            for (std::size_t len = 1; start + len <= v.size(); ++len) {
                const std::string t = v.substr(start, len);
                if (is_form1_factor(t) || is_form2_factor(t)) return true;
            }
    return false;
}

/// Independent good-word oracle: w is good iff it is a factor of
/// (b a^n)^{|w|} or (a b^n)^{|w|} for some 0 <= n <= |w|.
inline bool good_by_power_factor(const std::string& w) {
    if (w.empty()) return true;
    for (std::size_t n = 0; n <= w.size(); ++n) {
        std::string ban, abn;
        for (std::size_t rep = 0; rep < w.size(); ++rep) {
            ban += "b" + std::string(n, 'a');
            abn += "a" + std::string(n, 'b');
        }
        if (ban.find(w) != std::string::npos) return true;
        if (abn.find(w) != std::string::npos) return true;
    }
    return false;
}

} // namespace testutil
