#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wqo/classify.hpp"
#include "wqo/membership.hpp"
#include "wqo/word.hpp"

namespace wqo {

/// Occurrence-index tables: pi_a[i-1] is the 1-based position of the i-th a.
struct Numbering {
    std::vector<std::size_t> pi_a;
    std::vector<std::size_t> pi_b;
};

inline Numbering numbering(const Word& u) {
    for (char c : u.str())
        if (c != 'a' && c != 'b') throw error("numbering requires a word over {a, b}");
    Numbering out;
    for (std::size_t t = 0; t < u.size(); ++t)
        (u.str()[t] == 'a' ? out.pi_a : out.pi_b).push_back(t + 1);
    return out;
}

/// The P(1)..P(x) position sets marking x candidate copies of w inside u.
struct CopyPartition {
    std::size_t x = 0;
    std::vector<std::vector<std::size_t>> sets;  // each sorted ascending
};

namespace detail {

struct CaracShape {
    char ca, cb;        // symbols playing a and b
    long i, n, e, f;    // the good form of w read in those roles
};

inline CaracShape carac_shape(const Word& w) {
    const auto cls = classify(w);
    if (!cls.good) throw error("expected a good word");
    const GoodForm& g = *cls.form;
    if (g.orientation == GoodForm::Orientation::empty || g.n == 0)
        throw error("expected a good word containing both letters");
    const bool a_type = g.orientation == GoodForm::Orientation::a_type;
    return {a_type ? g.roles[0] : g.roles[1], a_type ? g.roles[1] : g.roles[0], g.i, g.n, g.e, g.f};
}

} // namespace detail

/// Build the copy-marking partition of u for the system word w. Requires the
/// counting condition (common integral ratio x); the finer prefix conditions
/// are not needed to write the sets down.
inline CopyPartition partition_sets(const Word& u, const Word& w) {
    const auto sh = detail::carac_shape(w);
    for (char c : u.str())
        if (c != sh.ca && c != sh.cb) throw error("word uses symbols outside the system word");

    const long wa = sh.i + sh.e * sh.n + sh.f;
    const long wb = sh.e + 1;
    const long ua = static_cast<long>(std::count(u.str().begin(), u.str().end(), sh.ca));
    const long ub = static_cast<long>(std::count(u.str().begin(), u.str().end(), sh.cb));
    if (ub % wb != 0 || ua * wb != ub * wa)
        throw error("letter counts are not an integral number of copies");
    const long x = ub / wb;

    std::vector<std::size_t> pi_a, pi_b;
    for (std::size_t t = 0; t < u.size(); ++t)
        (u.str()[t] == sh.ca ? pi_a : pi_b).push_back(t + 1);

    CopyPartition part;
    part.x = static_cast<std::size_t>(x);
    for (long i = 1; i <= x; ++i) {
        std::vector<std::size_t> set;
        for (long j = 1; j <= sh.i; ++j)
            set.push_back(pi_a[static_cast<std::size_t>((i - 1) * sh.i + j - 1)]);
        for (long k = 0; k < sh.e; ++k)
            for (long j = 1; j <= sh.n; ++j)
                set.push_back(pi_a[static_cast<std::size_t>(x * sh.i + k * x * sh.n + (i - 1) * sh.n + j - 1)]);
        for (long j = 1; j <= sh.f; ++j)
            set.push_back(pi_a[static_cast<std::size_t>(x * sh.i + sh.e * x * sh.n + (i - 1) * sh.f + j - 1)]);
        for (long k = 0; k <= sh.e; ++k)
            set.push_back(pi_b[static_cast<std::size_t>(i + k * x - 1)]);
        std::sort(set.begin(), set.end());
        part.sets.push_back(std::move(set));
    }
    return part;
}

/// The word u(i) spelled by P(i) in increasing position order.
inline Word extract_copy(const Word& u, const CopyPartition& part, std::size_t i) {
    if (i == 0 || i > part.x) throw error("copy index out of range");
    std::string out;
    for (std::size_t p : part.sets[i - 1]) out.push_back(u.str()[p - 1]);
    return Word(out, u.alphabet());
}

/// Digit word: position j carries the index of the set containing j.
inline Word trace_word(const Word& u, const CopyPartition& part) {
    static const char digits[] = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";
    if (part.x > 35) throw error("trace word supports at most 35 copies");
    std::string out(u.size(), '?');
    for (std::size_t i = 1; i <= part.x; ++i)
        for (std::size_t p : part.sets[i - 1]) {
            if (p == 0 || p > u.size() || out[p - 1] != '?')
                throw error("sets do not partition the positions");
            out[p - 1] = digits[i];
        }
    for (char c : out)
        if (c == '?') throw error("sets do not partition the positions");
    return Word::parse(out);
}

/// Certificate that a prefix p of u with |p|_a = x (i_w + k n_w) lies in the
/// closure of the two-word system {p_wk, p_wk b} with p_wk = a^{i_w}(b a^{n_w})^k.
inline std::optional<ShuffleCertificate> prefix_property(const Word& u, const Word& w, const Word& p,
                                                         const SearchLimits& limits = {}) {
    if (!member_carac(u, w)) throw error("prefix_property requires a closure member");
    if (u.str().compare(0, p.size(), p.str()) != 0) throw error("p is not a prefix of u");
    const auto sh = detail::carac_shape(w);
    const long wb = sh.e + 1;
    const long x = static_cast<long>(std::count(u.str().begin(), u.str().end(), sh.cb)) / wb;
    const long pa = static_cast<long>(std::count(p.str().begin(), p.str().end(), sh.ca));

    long k = -1;
    for (long cand = 0; cand <= sh.e; ++cand)
        if (pa == x * (sh.i + cand * sh.n)) k = cand;
    if (k < 0) throw error("prefix a-count does not match any x (i_w + k n_w)");

    std::string pwk(static_cast<std::size_t>(sh.i), sh.ca);
    for (long t = 0; t < k; ++t) {
        pwk.push_back(sh.cb);
        pwk.append(static_cast<std::size_t>(sh.n), sh.ca);
    }
    if (p.empty()) return ShuffleCertificate{};
    std::vector<Word> words;
    if (!pwk.empty()) words.push_back(Word(pwk, w.alphabet()));
    words.push_back(Word(pwk + sh.cb, w.alphabet()));
    return closure_member(p, InsertionSystem(std::move(words)), limits);
}

/// Three-way split w1 w2 w3 with w1 in the closure of {b a^m, a}, w2 in the
/// closure of {b a^m, b} and fewer than m stray a's in w3, built by a single
/// left-to-right pass. Also reports the copy bound |w1|_b + |w2|_a / m.
struct ThreeDecomposition {
    Word w1, w2, w3;
    long copy_bound = 0;
};

inline ThreeDecomposition decompose_three(const Word& u, long m) {
    if (m < 1) throw error("decompose_three requires m >= 1");
    for (char c : u.str())
        if (c != 'a' && c != 'b') throw error("decompose_three requires a word over {a, b}");

    std::string bam = "b" + std::string(static_cast<std::size_t>(m), 'a');
    const Word wbam = Word::parse(bam);
    auto complete_copies = [&](const std::string& s) {
        return member_carac(Word(s, "ab"), wbam);
    };

    std::string w1, w2, w3;
    long w3a = 0;
    for (char c : u.str()) {
        if (c == 'b' || w3a + 1 < m) {
            w3.push_back(c);
            w3a += (c == 'a');
            continue;
        }
        // this a completes m stray a's; fold them into w1 or w2
        if (!w2.empty()) {  // invariant: nonempty w2 is never all complete copies
            w2 += w3;
            w2.push_back('a');
            w3.clear();
            w3a = 0;
        } else if (w3.empty()) {
            w1.push_back('a');
        } else if (w3.front() == 'b') {
            w2 = w3 + "a";
            w3.clear();
            w3a = 0;
        } else {
            // move the leading stray a into w1; the new a stays stray
            w1.push_back('a');
            w3.erase(w3.begin());
            w3.push_back('a');
        }
        if (!w2.empty() && complete_copies(w2)) {
            w1 += w2;
            w2.clear();
        }
    }

    ThreeDecomposition out;
    out.w1 = Word(w1, "ab");
    out.w2 = Word(w2, "ab");
    out.w3 = Word(w3, "ab");
    const long w2a = static_cast<long>(std::count(w2.begin(), w2.end(), 'a'));
    out.copy_bound = static_cast<long>(std::count(w1.begin(), w1.end(), 'b')) + w2a / m;

    if (!member_pair_closed(out.w1, PairFamily::ban_a, m) ||
        !member_pair_closed(out.w2, PairFamily::ban_b, m) ||
        static_cast<long>(count(out.w3, 'a')) >= m || w1 + w2 + w3 != u.str())
        throw error("three-way decomposition postcondition failed");
    return out;
}

/// Four-factor witness for membership in the closure of {w a^n b, w a^n b a^m}.
struct Decomp1 {
    Word u1, u2, u3, u4;
    Word w;
    long n = 1, m = 1;
    std::array<bool, 7> conditions{};
};

/// Six-factor witness for membership in the closure of {w b a^n, w b a^n b}.
struct Decomp2 {
    Word u1, u2, u3, u4, u5, u6;
    Word w;
    long n = 1;
    int delta = 0;
    std::array<bool, 9> conditions{};
};

namespace detail {

// w in a^{<=n} (b a^n)* b ∪ {ε}
inline bool decomp1_shape(const std::string& w, long n) {
    if (w.empty()) return true;
    std::size_t idx = 0;
    long lead = 0;
    while (idx < w.size() && w[idx] == 'a') ++idx, ++lead;
    if (lead > n) return false;
    while (idx < w.size()) {
        if (w[idx] != 'b') return false;
        ++idx;
        if (idx == w.size()) return true;  // ends with b
        for (long t = 0; t < n; ++t, ++idx)
            if (idx >= w.size() || w[idx] != 'a') return false;
    }
    return false;  // ended inside an a-group, missing the final b
}

// w in a^{<=n} (b a^n)*
inline bool decomp2_shape(const std::string& w, long n) {
    std::size_t idx = 0;
    long lead = 0;
    while (idx < w.size() && w[idx] == 'a') ++idx, ++lead;
    if (lead > n) return false;
    while (idx < w.size()) {
        if (w[idx] != 'b') return false;
        ++idx;
        for (long t = 0; t < n; ++t, ++idx)
            if (idx >= w.size() || w[idx] != 'a') return false;
    }
    return true;
}

inline long count_in(const std::string& s, char c, std::size_t from, std::size_t to) {
    return static_cast<long>(std::count(s.begin() + static_cast<std::ptrdiff_t>(from),
                                        s.begin() + static_cast<std::ptrdiff_t>(to), c));
}

} // namespace detail

/// Search for the four-factor decomposition certifying u in the closure of
/// {w a^n b, w a^n b a^m}. Longest u1 first, then longest u2/u3, so the
/// returned witness is deterministic.
inline std::optional<Decomp1> check_decomp1(const Word& u, const Word& w, long n, long m,
                                            const SearchLimits& limits = {}) {
    if (n < 1 || m < 1) throw error("check_decomp1 requires n, m >= 1");
    if (!detail::decomp1_shape(w.str(), n)) throw error("w not of shape a^{<=n}(ba^n)*b or empty");
    const std::string root = w.str() + std::string(static_cast<std::size_t>(n), 'a');
    const Word wanb = Word::parse(root + "b");
    const Word wanbam = Word::parse(root + "b" + std::string(static_cast<std::size_t>(m), 'a'));
    if (!classify(wanbam).good) throw error("w a^n b a^m must be a good word");
    const Word wan = Word::parse(root);

    const std::string& s = u.str();
    for (char c : s)
        if (c != 'a' && c != 'b') return std::nullopt;
    const long wlen = static_cast<long>(w.size());
    const long wa = detail::count_in(w.str(), 'a', 0, w.size());
    const long wb = wlen - wa;
    const long total_a = detail::count_in(s, 'a', 0, s.size());
    const long total_b = static_cast<long>(s.size()) - total_a;

    // condition 6 pins |u1|_a
    if (((wa + n) * total_b) % (wb + 1) != 0) return std::nullopt;
    const long u1_a = (wa + n) * total_b / (wb + 1);

    std::vector<long> pref_a(s.size() + 1, 0);
    for (std::size_t t = 0; t < s.size(); ++t) pref_a[t + 1] = pref_a[t] + (s[t] == 'a');

    std::map<std::string, bool> memo1;
    auto cond1 = [&](const std::string& u1) {
        auto it = memo1.find(u1);
        if (it != memo1.end()) return it->second;
        bool ok;
        if (w.empty()) {
            ok = member_pair_closed(Word(u1, "ab"), PairFamily::anb_an, n);
        } else {
            ok = closure_member(Word(u1, "ab"), InsertionSystem({wanb, wan}), limits).has_value();
        }
        return memo1.emplace(u1, ok).first->second;
    };

    const long L = static_cast<long>(s.size());
    for (long e1 = L; e1 >= 0; --e1) {
        if (pref_a[static_cast<std::size_t>(e1)] != u1_a) continue;
        const std::string u1 = s.substr(0, static_cast<std::size_t>(e1));
        if (!cond1(u1)) continue;  // condition 1 depends on u1 alone
        for (long e2 = L; e2 >= e1; --e2) {
            const long u2_a = pref_a[static_cast<std::size_t>(e2)] - u1_a;
            const long u2_b = (e2 - e1) - u2_a;
            const std::string u2 = s.substr(static_cast<std::size_t>(e1), static_cast<std::size_t>(e2 - e1));
            if (!member_pair_closed(Word(u2, "ab"), PairFamily::ban_a, m)) continue;  // condition 2
            for (long e3 = L; e3 >= e2; --e3) {
                const long u4_a = pref_a[static_cast<std::size_t>(L)] - pref_a[static_cast<std::size_t>(e3)];
                if (u4_a >= m) continue;                  // condition 4
                if ((u2_a + u4_a) % m != 0) continue;     // condition 5
                // condition 7, cross-multiplied by m (|w|_a + n) > 0
                const long lhs = (u2_a + u4_a) * (wa + n) - m * u2_b * (wa + n);
                const long rhs = m * e1 * (wa + n) - m * u1_a * (wlen + n);
                if (lhs > rhs) continue;
                const std::string u3 = s.substr(static_cast<std::size_t>(e2), static_cast<std::size_t>(e3 - e2));
                const std::string u4 = s.substr(static_cast<std::size_t>(e3));
                if (!member_pair_closed(Word(u3, "ab"), PairFamily::ban_b, m)) continue;  // condition 3
                Decomp1 out;
                out.u1 = Word(u1, "ab");
                out.u2 = Word(u2, "ab");
                out.u3 = Word(u3, "ab");
                out.u4 = Word(u4, "ab");
                out.w = w;
                out.n = n;
                out.m = m;
                out.conditions.fill(true);
                return out;
            }
        }
    }
    return std::nullopt;
}

/// Search for the six-factor decomposition certifying u in the closure of
/// {w b a^n, w b a^n b}. Longest factors first, left to right.
inline std::optional<Decomp2> check_decomp2(const Word& u, const Word& w, long n,
                                            const SearchLimits& limits = {}) {
    if (n < 1) throw error("check_decomp2 requires n >= 1");
    if (!detail::decomp2_shape(w.str(), n)) throw error("w not of shape a^{<=n}(ba^n)*");
    const Word wb_word = Word::parse(w.str() + "b");
    const Word wban = Word::parse(w.str() + "b" + std::string(static_cast<std::size_t>(n), 'a'));

    const std::string& s = u.str();
    for (char c : s)
        if (c != 'a' && c != 'b') return std::nullopt;
    const long wa = detail::count_in(w.str(), 'a', 0, w.size());
    const long wb = static_cast<long>(w.size()) - wa;
    const long total_a = detail::count_in(s, 'a', 0, s.size());

    // condition 2 pins |u1 u2|_b
    if ((total_a * (wb + 1)) % (wa + n) != 0) return std::nullopt;
    const long u12_b = total_a * (wb + 1) / (wa + n);

    const long L = static_cast<long>(s.size());
    std::vector<long> pref_a(s.size() + 1, 0);
    for (std::size_t t = 0; t < s.size(); ++t) pref_a[t + 1] = pref_a[t] + (s[t] == 'a');
    auto seg_a = [&](long from, long to) { return pref_a[static_cast<std::size_t>(to)] - pref_a[static_cast<std::size_t>(from)]; };
    auto seg_b = [&](long from, long to) { return (to - from) - seg_a(from, to); };

    // family memberships for all substrings, precomputed
    std::vector<std::vector<bool>> is_u5(s.size() + 1, std::vector<bool>(s.size() + 1, false));
    std::vector<std::vector<bool>> is_u6(s.size() + 1, std::vector<bool>(s.size() + 1, false));
    for (long from = 0; from <= L; ++from)
        for (long to = from; to <= L; ++to) {
            const Word seg(s.substr(static_cast<std::size_t>(from), static_cast<std::size_t>(to - from)), "ab");
            is_u5[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)] =
                member_pair_closed(seg, PairFamily::anb_b, n);
            is_u6[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)] =
                member_pair_closed(seg, PairFamily::anb_a, n);
        }

    std::map<std::pair<std::string, long>, bool> memo1;
    auto cond1 = [&](const std::string& u1, long b_power) {
        const auto key = std::make_pair(u1, b_power);
        auto it = memo1.find(key);
        if (it != memo1.end()) return it->second;
        const Word padded(u1 + std::string(static_cast<std::size_t>(b_power), 'b'), "ab");
        bool ok;
        if (w.empty()) {
            ok = member_pair_closed(padded, PairFamily::ban_b, n);
        } else {
            SearchLimits padded_limits = limits;
            padded_limits.oracle_word_len = std::max(limits.oracle_word_len, padded.size());
            ok = closure_member(padded, InsertionSystem({wb_word, wban}), padded_limits).has_value();
        }
        return memo1.emplace(key, ok).first->second;
    };

    for (long e1 = L; e1 >= 0; --e1) {
        const long u1_a = seg_a(0, e1);
        const long bracket = (wb + 1) * u1_a - u12_b * wa;
        for (long e2 = L; e2 >= e1; --e2) {
            if (seg_b(0, e2) != u12_b) continue;  // condition 2
            const long u2_b = seg_b(e1, e2);
            if (!cond1(s.substr(0, static_cast<std::size_t>(e1)), u2_b)) continue;  // condition 1
            for (long e3 = L; e3 >= e2; --e3) {
                const bool u23_empty = (e3 == e1);
                if (!u23_empty && seg_a(e1, e3) != n) continue;  // condition 3
                const long delta = u23_empty ? 0 : 1;
                // condition 9, cross-multiplied by n
                if (total_a - u1_a < n * (u2_b + delta)) continue;
                // condition 7, cross-multiplied by n (|w|_b + 1)
                if (n * (wb + 1) * seg_b(e2, e3) > bracket) continue;
                for (long e4 = L; e4 >= e3; --e4) {
                    if (seg_a(e3, e4) >= n) continue;  // condition 4
                    for (long e5 = L; e5 >= e4; --e5) {
                        if (!is_u5[static_cast<std::size_t>(e4)][static_cast<std::size_t>(e5)]) continue;
                        if (!is_u6[static_cast<std::size_t>(e5)][static_cast<std::size_t>(L)]) continue;
                        // condition 8, cross-multiplied by n (|w|_b + 1)
                        const long q5 = seg_a(e4, e5) / n;
                        const long lhs8 = n * (wb + 1) * (seg_b(e4, e5) - q5 + seg_b(e2, e4));
                        if (lhs8 > bracket + n * (wb + 1) * delta) continue;
                        Decomp2 out;
                        out.u1 = Word(s.substr(0, static_cast<std::size_t>(e1)), "ab");
                        out.u2 = Word(s.substr(static_cast<std::size_t>(e1), static_cast<std::size_t>(e2 - e1)), "ab");
                        out.u3 = Word(s.substr(static_cast<std::size_t>(e2), static_cast<std::size_t>(e3 - e2)), "ab");
                        out.u4 = Word(s.substr(static_cast<std::size_t>(e3), static_cast<std::size_t>(e4 - e3)), "ab");
                        out.u5 = Word(s.substr(static_cast<std::size_t>(e4), static_cast<std::size_t>(e5 - e4)), "ab");
                        out.u6 = Word(s.substr(static_cast<std::size_t>(e5)), "ab");
                        out.w = w;
                        out.n = n;
                        out.delta = static_cast<int>(delta);
                        out.conditions.fill(true);
                        return out;
                    }
                }
            }
        }
    }
    return std::nullopt;
}

} // namespace wqo
