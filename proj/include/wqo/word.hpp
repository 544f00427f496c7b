#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wqo {

/// Base error for all domain failures.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A configured resource limit (word length, memo budget, ...) was exceeded.
struct limit_error : error {
    using error::error;
};

/// A finite word over a small ordered alphabet of printable characters.
///
/// The alphabet defaults to "ab"; parsing extends it with whatever other
/// printable symbols occur. All positions reported to callers are 1-based,
/// matching the usual combinatorics-on-words convention.
class Word {
public:
    Word() : alphabet_("ab") {}

    explicit Word(std::string symbols, std::string alphabet = "ab")
        : symbols_(std::move(symbols)), alphabet_(std::move(alphabet)) {
        std::sort(alphabet_.begin(), alphabet_.end());
        alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());
        for (char c : symbols_) {
            if (!in_alphabet(c))
                throw error(std::string("symbol '") + c + "' not in alphabet \"" + alphabet_ + "\"");
        }
    }

    /// Parse from plain ASCII; alphabet is {a, b} extended by the symbols seen.
    static Word parse(std::string_view text) {
        std::string alpha = "ab";
        for (char c : text) {
            if (c < '!' || c > '~')
                throw error("word contains a non-printable character");
            if (alpha.find(c) == std::string::npos) alpha.push_back(c);
        }
        return Word(std::string(text), std::move(alpha));
    }

    const std::string& str() const { return symbols_; }
    const std::string& alphabet() const { return alphabet_; }

    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }

    /// Symbol at 1-based position i.
    char at(std::size_t i) const {
        if (i == 0 || i > symbols_.size()) throw error("position out of range");
        return symbols_[i - 1];
    }

    bool in_alphabet(char c) const { return alphabet_.find(c) != std::string::npos; }

    /// Distinct symbols actually occurring, in alphabet order.
    std::string occurring() const {
        std::string out;
        for (char c : alphabet_)
            if (symbols_.find(c) != std::string::npos) out.push_back(c);
        return out;
    }

    Word prefix(std::size_t len) const { return with_same_alphabet(symbols_.substr(0, len)); }
    Word suffix_from(std::size_t pos) const { return with_same_alphabet(symbols_.substr(pos)); }
    Word factor(std::size_t pos, std::size_t len) const { return with_same_alphabet(symbols_.substr(pos, len)); }

    Word operator+(const Word& rhs) const {
        std::string alpha = alphabet_;
        for (char c : rhs.alphabet_)
            if (alpha.find(c) == std::string::npos) alpha.push_back(c);
        return Word(symbols_ + rhs.symbols_, std::move(alpha));
    }

    friend bool operator==(const Word& a, const Word& b) { return a.symbols_ == b.symbols_; }
    friend bool operator!=(const Word& a, const Word& b) { return a.symbols_ != b.symbols_; }
    /// Length-then-lexicographic; the ordering used in all enumerated output.
    friend bool operator<(const Word& a, const Word& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.symbols_ < b.symbols_;
    }

private:
    Word with_same_alphabet(std::string s) const {
        Word w;
        w.symbols_ = std::move(s);
        w.alphabet_ = alphabet_;
        return w;
    }

    std::string symbols_;
    std::string alphabet_;
};

/// Number of occurrences of s in u.
inline std::size_t count(const Word& u, char s) {
    if (!u.in_alphabet(s)) throw error(std::string("symbol '") + s + "' not in alphabet");
    return static_cast<std::size_t>(std::count(u.str().begin(), u.str().end(), s));
}

/// Exchange morphism: swaps the two alphabet symbols.
inline Word exchange(const Word& u) {
    if (u.alphabet().size() != 2) throw error("exchange requires a two-symbol alphabet");
    const char x = u.alphabet()[0], y = u.alphabet()[1];
    std::string out = u.str();
    for (char& c : out) c = (c == x) ? y : x;
    return Word(std::move(out), u.alphabet());
}

/// Mirror image.
inline Word reverse(const Word& u) {
    std::string out(u.str().rbegin(), u.str().rend());
    return Word(std::move(out), u.alphabet());
}

inline Word repeated(char s, std::size_t n, const std::string& alphabet = "ab") {
    return Word(std::string(n, s), alphabet);
}

} // namespace wqo
