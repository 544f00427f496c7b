#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wqo/word.hpp"

namespace wqo {

/// Which of the four symmetry images of a word exposed a bad factor.
enum class Variant : std::uint8_t { identity, reverse, exchange, exchange_reverse };

inline const char* to_string(Variant v) {
    switch (v) {
        case Variant::identity: return "identity";
        case Variant::reverse: return "reverse";
        case Variant::exchange: return "exchange";
        case Variant::exchange_reverse: return "exchange-reverse";
    }
    return "?";
}

/// Evidence that a word is bad: either it uses three or more distinct
/// symbols, or one of its four symmetry images contains a factor
/// a^k b^h (k, h >= 2) or a^k b a^l b^m (k > l >= 1, m >= 1).
/// start/end are 1-based inclusive positions of the factor inside the
/// cited variant image.
struct BadWitness {
    enum class Form : std::uint8_t { form1, form2, ternary };

    Form form = Form::ternary;
    long k = 0, h = 0;        // form1: a^k b^h
    long l = 0, m = 0;        // form2: a^k b a^l b^m (k shared)
    std::size_t start = 0, end = 0;
    Variant variant = Variant::identity;
};

/// Canonical shape of a good word: a^i (b a^n)^e b a^f for a-type,
/// its exchange image for b-type, or the empty word.
///
/// Degenerate pure powers use the lemma's own encoding with i = n = f = 0:
/// b^p is a-type (0, 0, p-1, 0) and a^p is b-type (0, 0, p-1, 0).
struct GoodForm {
    enum class Orientation : std::uint8_t { a_type, b_type, empty };

    Orientation orientation = Orientation::empty;
    long i = 0, n = 0, e = 0, f = 0;
    /// The two symbols playing the roles of a and b (alphabet order).
    std::string roles = "ab";
};

inline const char* to_string(GoodForm::Orientation o) {
    switch (o) {
        case GoodForm::Orientation::a_type: return "a-type";
        case GoodForm::Orientation::b_type: return "b-type";
        case GoodForm::Orientation::empty: return "empty";
    }
    return "?";
}

struct Classification {
    bool good = true;
    std::optional<GoodForm> form;       // present iff good
    std::optional<BadWitness> witness;  // present iff bad
};

namespace detail {

struct Block {
    char symbol;
    std::size_t len;
    std::size_t start;  // 1-based position of first letter
};

inline std::vector<Block> blocks_of(const std::string& s) {
    std::vector<Block> out;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t j = i;
        while (j < s.size() && s[j] == s[i]) ++j;
        out.push_back({s[i], j - i, i + 1});
        i = j;
    }
    return out;
}

inline std::string exchanged(const std::string& s, char ra, char rb) {
    std::string out = s;
    for (char& c : out) c = (c == ra) ? rb : ra;
    return out;
}

/// First (leftmost) bad factor of one variant image; blocks are scanned in
/// order, form 1 before form 2 at each index.
inline std::optional<BadWitness> scan_variant(const std::string& s, char ra, char rb, Variant which) {
    const auto bs = blocks_of(s);
    for (std::size_t t = 0; t < bs.size(); ++t) {
        if (t + 1 < bs.size() && bs[t].symbol == ra && bs[t + 1].symbol == rb &&
            bs[t].len >= 2 && bs[t + 1].len >= 2) {
            BadWitness w;
            w.form = BadWitness::Form::form1;
            w.k = static_cast<long>(bs[t].len);
            w.h = static_cast<long>(bs[t + 1].len);
            w.start = bs[t].start;
            w.end = bs[t + 1].start + bs[t + 1].len - 1;
            w.variant = which;
            return w;
        }
        if (t + 3 < bs.size() && bs[t].symbol == ra && bs[t + 1].len == 1 &&
            bs[t].len > bs[t + 2].len && bs[t + 2].len >= 1) {
            BadWitness w;
            w.form = BadWitness::Form::form2;
            w.k = static_cast<long>(bs[t].len);
            w.l = static_cast<long>(bs[t + 2].len);
            w.m = static_cast<long>(bs[t + 3].len);
            w.start = bs[t].start;
            w.end = bs[t + 3].start + bs[t + 3].len - 1;
            w.variant = which;
            return w;
        }
    }
    return std::nullopt;
}

} // namespace detail

/// Bad-factor scan over the word and its three symmetry images.
/// Returns the first witness in variant order identity, reverse, exchange,
/// exchange-reverse, or nothing when the word is good.
inline std::optional<BadWitness> scan_bad_factor(const Word& w) {
    const std::string occ = w.occurring();
    if (occ.size() >= 3) {
        BadWitness t;
        t.form = BadWitness::Form::ternary;
        t.start = 1;
        t.end = w.size();
        t.variant = Variant::identity;
        return t;
    }
    if (occ.size() < 2) return std::nullopt;
    const char ra = occ[0], rb = occ[1];
    const std::string& s = w.str();
    const std::string r(s.rbegin(), s.rend());
    const std::string e = detail::exchanged(s, ra, rb);
    const std::string er(e.rbegin(), e.rend());
    if (auto hit = detail::scan_variant(s, ra, rb, Variant::identity)) return hit;
    if (auto hit = detail::scan_variant(r, ra, rb, Variant::reverse)) return hit;
    if (auto hit = detail::scan_variant(e, ra, rb, Variant::exchange)) return hit;
    if (auto hit = detail::scan_variant(er, ra, rb, Variant::exchange_reverse)) return hit;
    return std::nullopt;
}

/// Equivalent two-pattern scan: a factor aabb or a^{k+1} b a^k b (k >= 1)
/// in any of the four variants. Kept alongside scan_bad_factor so the two
/// readings can be checked against each other.
inline bool has_minimal_bad_factor(const Word& w) {
    const std::string occ = w.occurring();
    if (occ.size() >= 3) return true;
    if (occ.size() < 2) return false;
    const char ra = occ[0], rb = occ[1];

    auto hit = [&](const std::string& s) {
        const std::string aabb{ra, ra, rb, rb};
        if (s.find(aabb) != std::string::npos) return true;
        // a^{k+1} b a^k b: try every factor start and parse directly
        for (std::size_t i = 0; i < s.size(); ++i) {
            std::size_t p = i;
            std::size_t run1 = 0;
            while (p < s.size() && s[p] == ra) { ++p; ++run1; }
            if (run1 < 2 || p >= s.size() || s[p] != rb) continue;
            ++p;
            std::size_t run2 = 0;
            while (p < s.size() && s[p] == ra) { ++p; ++run2; }
            if (p < s.size() && s[p] == rb && run2 >= 1 && run1 >= run2 + 1) return true;
        }
        return false;
    };

    const std::string& s = w.str();
    const std::string r(s.rbegin(), s.rend());
    const std::string e = detail::exchanged(s, ra, rb);
    const std::string er(e.rbegin(), e.rend());
    return hit(s) || hit(r) || hit(e) || hit(er);
}

/// Expand a GoodForm back into the word it describes.
inline Word render_good_form(const GoodForm& g) {
    if (g.orientation == GoodForm::Orientation::empty) return Word("", g.roles);
    if (g.i < 0 || g.n < 0 || g.e < 0 || g.f < 0 || g.i > g.n || g.f > g.n)
        throw error("good form violates 0 <= i, f <= n");
    if (g.e == 0 && g.n != std::max(g.i, g.f))
        throw error("good form violates: e = 0 requires n = max(i, f)");
    if (g.roles.size() != 2) throw error("good form needs exactly two role symbols");
    const bool a_type = g.orientation == GoodForm::Orientation::a_type;
    const char ca = a_type ? g.roles[0] : g.roles[1];
    const char cb = a_type ? g.roles[1] : g.roles[0];
    std::string out(static_cast<std::size_t>(g.i), ca);
    for (long t = 0; t < g.e; ++t) {
        out.push_back(cb);
        out.append(static_cast<std::size_t>(g.n), ca);
    }
    out.push_back(cb);
    out.append(static_cast<std::size_t>(g.f), ca);
    return Word(std::move(out), g.roles);
}

namespace detail {

/// (i, n, e, f) of a word containing both symbols, reading ra as the run
/// symbol and rb as the separator. Throws if the runs are uneven (i.e. the
/// word was not good).
inline GoodForm run_decomposition(const std::string& s, char ra) {
    std::vector<long> runs;  // ra-run lengths around each separator
    long run = 0;
    long seps = 0;
    for (char c : s) {
        if (c == ra) {
            ++run;
        } else {
            runs.push_back(run);
            run = 0;
            ++seps;
        }
    }
    runs.push_back(run);
    GoodForm g;
    g.i = runs.front();
    g.f = runs.back();
    g.e = seps - 1;
    if (g.e >= 1) {
        g.n = runs[1];
        for (long t = 1; t <= g.e; ++t)
            if (runs[static_cast<std::size_t>(t)] != g.n)
                throw error("uneven interior runs: word is not good");
    } else {
        g.n = std::max(g.i, g.f);
    }
    if (g.i > g.n || g.f > g.n) throw error("border run too long: word is not good");
    return g;
}

} // namespace detail

/// Good/bad verdict with the attached witness or canonical form.
/// Ambiguous words (fitting both orientations) resolve to a-type.
inline Classification classify(const Word& w) {
    Classification out;
    if (auto witness = scan_bad_factor(w)) {
        out.good = false;
        out.witness = *witness;
        return out;
    }
    out.good = true;
    GoodForm g;
    const std::string occ = w.occurring();
    if (w.empty()) {
        g.orientation = GoodForm::Orientation::empty;
        out.form = g;
        return out;
    }
    char ra, rb;
    if (occ.size() == 2) {
        ra = occ[0];
        rb = occ[1];
    } else if (w.alphabet().size() >= 2) {
        ra = w.alphabet()[0];
        rb = w.alphabet()[1];
    } else {
        ra = occ[0];
        rb = (ra == 'b') ? 'a' : 'b';
    }
    g.roles = {ra, rb};
    if (occ.size() == 1) {
        // pure power: rb^p is a-type (0,0,p-1,0), ra^p its exchange image
        g.i = g.n = g.f = 0;
        g.e = static_cast<long>(w.size()) - 1;
        g.orientation = (occ[0] == rb) ? GoodForm::Orientation::a_type : GoodForm::Orientation::b_type;
        out.form = g;
        return out;
    }
    const std::string& s = w.str();
    const std::string bb{rb, rb};
    if (s.find(bb) == std::string::npos) {
        g = detail::run_decomposition(s, ra);
        g.orientation = GoodForm::Orientation::a_type;
    } else {
        g = detail::run_decomposition(s, rb);
        g.orientation = GoodForm::Orientation::b_type;
    }
    g.roles = {ra, rb};
    out.form = g;
    return out;
}

} // namespace wqo
