#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "wqo/classify.hpp"
#include "wqo/word.hpp"

namespace wqo {

/// Resource guards for the exact searches. All searches fail with a
/// limit_error when a guard trips; they never silently truncate.
struct SearchLimits {
    std::size_t oracle_word_len = 20;     // closure_member input length
    std::size_t enumerate_len = 16;       // closure_enumerate bound
    std::size_t shuffle_total_len = 16;   // shuffle_pair |u| + |v|
    std::size_t memo_budget = 8'000'000;  // distinct memo states per query
};

/// The set I of a unitary grammar: finitely many nonempty words.
class InsertionSystem {
public:
    explicit InsertionSystem(std::vector<Word> words) {
        if (words.empty()) throw error("insertion system must be nonempty");
        for (const auto& w : words)
            if (w.empty()) throw error("insertion system words must be nonempty");
        std::sort(words.begin(), words.end());
        words.erase(std::unique(words.begin(), words.end()), words.end());
        words_ = std::move(words);
    }

    /// Parse a comma-separated list of words.
    static InsertionSystem parse(std::string_view csv) {
        std::vector<Word> ws;
        std::string cur;
        for (char c : csv) {
            if (c == ',') {
                ws.push_back(Word::parse(cur));
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        ws.push_back(Word::parse(cur));
        return InsertionSystem(std::move(ws));
    }

    const std::vector<Word>& words() const { return words_; }

    bool contains(const Word& w) const {
        return std::find(words_.begin(), words_.end(), w) != words_.end();
    }

private:
    std::vector<Word> words_;
};

/// One copy used in a shuffle decomposition: the system word and the
/// 1-based positions of u it occupies, in increasing order.
struct CertificateCopy {
    Word word;
    std::vector<std::size_t> positions;
};

/// Witness that u is an interleaving of whole copies of system words.
struct ShuffleCertificate {
    std::vector<CertificateCopy> copies;
};

/// Partition + spelling check, independent of how the certificate was found.
inline bool validate(const ShuffleCertificate& cert, const Word& u) {
    std::vector<bool> used(u.size(), false);
    for (const auto& copy : cert.copies) {
        if (copy.positions.size() != copy.word.size()) return false;
        std::size_t prev = 0;
        for (std::size_t t = 0; t < copy.positions.size(); ++t) {
            const std::size_t p = copy.positions[t];
            if (p == 0 || p > u.size() || p <= prev) return false;
            if (used[p - 1]) return false;
            if (u.at(p) != copy.word.at(t + 1)) return false;
            used[p - 1] = true;
            prev = p;
        }
    }
    return std::all_of(used.begin(), used.end(), [](bool b) { return b; });
}

inline bool validate(const ShuffleCertificate& cert, const Word& u, const InsertionSystem& system) {
    for (const auto& copy : cert.copies)
        if (!system.contains(copy.word)) return false;
    return validate(cert, u);
}

/// Quotients and remainders of the letter counts by h and k, the parameters
/// driving the closed form for systems {a^h b^k}.
struct QuotRem {
    long q_a = 0, q_b = 0, r_a = 0, r_b = 0;
};

inline QuotRem quot_rem(const Word& u, long h, long k) {
    if (h <= 0 || k <= 0) throw error("quot_rem requires positive moduli");
    const long na = static_cast<long>(std::count(u.str().begin(), u.str().end(), 'a'));
    const long nb = static_cast<long>(std::count(u.str().begin(), u.str().end(), 'b'));
    return {na / h, nb / k, na % h, nb % k};
}

namespace detail {

/// Nonnegative-integer-combination feasibility of the per-symbol counts:
/// a cheap necessary condition checked before any search.
inline bool counts_feasible(const std::string& u, const std::vector<std::string>& words) {
    std::string alpha;
    for (char c : u)
        if (alpha.find(c) == std::string::npos) alpha.push_back(c);
    for (const auto& w : words)
        for (char c : w)
            if (alpha.find(c) == std::string::npos) alpha.push_back(c);
    std::sort(alpha.begin(), alpha.end());

    std::vector<long> target;
    for (char c : alpha) target.push_back(static_cast<long>(std::count(u.begin(), u.end(), c)));
    std::vector<std::vector<long>> vecs;
    for (const auto& w : words) {
        std::vector<long> v;
        for (char c : alpha) v.push_back(static_cast<long>(std::count(w.begin(), w.end(), c)));
        vecs.push_back(std::move(v));
    }

    std::vector<long> rest = target;
    auto rec = [&](auto&& self, std::size_t idx) -> bool {
        if (idx == vecs.size())
            return std::all_of(rest.begin(), rest.end(), [](long x) { return x == 0; });
        long taken = 0;
        bool ok = false;
        for (;;) {
            if (self(self, idx + 1)) {
                ok = true;
                break;
            }
            bool can_take = true;
            for (std::size_t s = 0; s < rest.size(); ++s)
                if (rest[s] < vecs[idx][s]) can_take = false;
            if (!can_take) break;
            for (std::size_t s = 0; s < rest.size(); ++s) rest[s] -= vecs[idx][s];
            ++taken;
        }
        for (std::size_t s = 0; s < rest.size(); ++s) rest[s] += taken * vecs[idx][s];
        return ok;
    };
    return rec(rec, 0);
}

/// Exhaustive assignment search over open-copy progress states with
/// memoized failures. Exact; positions recorded for the certificate.
class ClosureSearch {
public:
    ClosureSearch(const std::string& u, const std::vector<std::string>& words, const SearchLimits& limits)
        : u_(u), words_(words), limits_(limits) {}

    std::optional<std::vector<std::pair<std::size_t, std::vector<std::size_t>>>> run() {
        if (!counts_feasible(u_, words_)) return std::nullopt;
        if (dfs(0)) return done_;
        return std::nullopt;
    }

private:
    struct Open {
        std::size_t word;
        std::size_t progress;  // letters consumed so far (>= 1)
        std::vector<std::size_t> positions;
    };

    std::string state_key(std::size_t pos) const {
        std::string key;
        key.reserve(1 + 2 * open_.size());
        key.push_back(static_cast<char>(pos));
        std::vector<std::uint16_t> pairs;
        pairs.reserve(open_.size());
        for (const auto& o : open_)
            pairs.push_back(static_cast<std::uint16_t>((o.word << 8) | o.progress));
        std::sort(pairs.begin(), pairs.end());
        for (auto p : pairs) {
            key.push_back(static_cast<char>(p >> 8));
            key.push_back(static_cast<char>(p & 0xff));
        }
        return key;
    }

    bool dfs(std::size_t pos) {
        if (pos == u_.size()) return open_.empty();
        const std::string key = state_key(pos);
        if (failed_.count(key)) return false;
        const char c = u_[pos];

        // extend an open copy; identical (word, progress) states are interchangeable
        std::set<std::pair<std::size_t, std::size_t>> tried;
        for (std::size_t idx = 0; idx < open_.size(); ++idx) {
            const auto sig = std::make_pair(open_[idx].word, open_[idx].progress);
            if (words_[sig.first][sig.second] != c || tried.count(sig)) continue;
            tried.insert(sig);
            Open o = open_[idx];
            o.progress += 1;
            o.positions.push_back(pos + 1);
            open_.erase(open_.begin() + static_cast<std::ptrdiff_t>(idx));
            const bool closes = o.progress == words_[o.word].size();
            if (closes)
                done_.emplace_back(o.word, o.positions);
            else
                open_.push_back(o);
            if (dfs(pos + 1)) return true;
            if (closes)
                done_.pop_back();
            else
                open_.pop_back();
            o.progress -= 1;
            o.positions.pop_back();
            open_.insert(open_.begin() + static_cast<std::ptrdiff_t>(idx), o);
        }

        // open a fresh copy
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            if (words_[wi][0] != c) continue;
            if (words_[wi].size() == 1) {
                done_.emplace_back(wi, std::vector<std::size_t>{pos + 1});
                if (dfs(pos + 1)) return true;
                done_.pop_back();
            } else {
                open_.push_back({wi, 1, {pos + 1}});
                if (dfs(pos + 1)) return true;
                open_.pop_back();
            }
        }

        if (failed_.size() >= limits_.memo_budget)
            throw limit_error("memo budget exceeded in closure search");
        failed_.insert(key);
        return false;
    }

    const std::string& u_;
    const std::vector<std::string>& words_;
    const SearchLimits& limits_;
    std::vector<Open> open_;
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> done_;
    std::unordered_set<std::string> failed_;
};

} // namespace detail

/// Decide u in the closure of I (all words derivable from the empty word by
/// iterated scattered insertion, equivalently all interleavings of whole
/// copies of system words). Returns a validated certificate on success.
inline std::optional<ShuffleCertificate> closure_member(const Word& u, const InsertionSystem& system,
                                                        const SearchLimits& limits = {}) {
    if (u.size() > limits.oracle_word_len)
        throw limit_error("word too long for closure search (raise the oracle limit)");
    if (u.size() >= 250) throw limit_error("closure search caps words at 250 symbols");
    std::vector<std::string> raw;
    raw.reserve(system.words().size());
    for (const auto& w : system.words()) raw.push_back(w.str());

    detail::ClosureSearch search(u.str(), raw, limits);
    auto found = search.run();
    if (!found) return std::nullopt;

    ShuffleCertificate cert;
    for (auto& [wi, positions] : *found)
        cert.copies.push_back({system.words()[wi], std::move(positions)});
    std::sort(cert.copies.begin(), cert.copies.end(),
              [](const CertificateCopy& a, const CertificateCopy& b) {
                  return a.positions.front() < b.positions.front();
              });
    return cert;
}

namespace detail {

inline std::set<std::string> shuffle_strings(const std::string& x, const std::string& y) {
    std::map<std::pair<std::size_t, std::size_t>, std::set<std::string>> memo;
    auto rec = [&](auto&& self, std::size_t i, std::size_t j) -> const std::set<std::string>& {
        const auto key = std::make_pair(i, j);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        std::set<std::string> out;
        if (i == x.size() && j == y.size()) {
            out.insert("");
        } else {
            if (i < x.size())
                for (const auto& s : self(self, i + 1, j)) out.insert(x[i] + s);
            if (j < y.size())
                for (const auto& s : self(self, i, j + 1)) out.insert(y[j] + s);
        }
        return memo.emplace(key, std::move(out)).first->second;
    };
    return rec(rec, 0, 0);
}

} // namespace detail

/// The set u ⧢ v of all interleavings preserving both internal orders.
inline std::set<Word> shuffle_pair(const Word& u, const Word& v, const SearchLimits& limits = {}) {
    if (u.size() + v.size() > limits.shuffle_total_len)
        throw limit_error("shuffle_pair size limit exceeded");
    std::set<Word> out;
    const Word joined = u + v;  // just to merge alphabets
    for (const auto& s : detail::shuffle_strings(u.str(), v.str()))
        out.insert(Word(s, joined.alphabet()));
    return out;
}

/// All closure members of length <= max_len, duplicate-free, sorted
/// length-then-lexicographic. Every member is re-verified by closure_member.
inline std::vector<Word> closure_enumerate(const InsertionSystem& system, std::size_t max_len,
                                           const SearchLimits& limits = {}) {
    if (max_len > limits.enumerate_len)
        throw limit_error("enumeration length limit exceeded");
    std::set<std::string> seen;
    std::vector<std::string> frontier{""};
    seen.insert("");
    while (!frontier.empty()) {
        std::vector<std::string> next;
        for (const auto& u : frontier) {
            for (const auto& w : system.words()) {
                if (u.size() + w.size() > max_len) continue;
                for (const auto& v : detail::shuffle_strings(u, w.str()))
                    if (seen.insert(v).second) next.push_back(v);
            }
        }
        frontier = std::move(next);
    }

    SearchLimits verify_limits = limits;
    verify_limits.oracle_word_len = std::max(limits.oracle_word_len, max_len);
    std::vector<Word> out;
    out.reserve(seen.size());
    for (const auto& s : seen) {
        Word w = Word::parse(s);
        auto cert = closure_member(w, system, verify_limits);
        if (!cert || !validate(*cert, w, system))
            throw error("enumerated word failed closure verification");
        out.push_back(std::move(w));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Closed form for u in the closure of {a^h b^k}, h, k >= 2: the letter
/// counts split into equal numbers of full copies and every prefix keeps
/// the a-quotient ahead (or level with no leftover b's).
inline bool member_fs6(const Word& u, long h, long k) {
    if (h < 2 || k < 2) throw error("member_fs6 requires h, k >= 2");
    for (char c : u.str())
        if (c != 'a' && c != 'b') return false;
    const auto global = quot_rem(u, h, k);
    if (global.q_a != global.q_b || global.r_a != global.r_b) return false;
    long pa = 0, pb = 0;
    for (char c : u.str()) {
        (c == 'a' ? pa : pb) += 1;
        const long qa = pa / h, qb = pb / k, rb = pb % k;
        if (!(qa > qb || (qa == qb && rb == 0))) return false;
    }
    return true;
}

/// Closed form for u in the closure of a single good word w containing both
/// letters: the count ratio is a common nonnegative integer x and every
/// split u = ps satisfies the two slope inequalities drawn from w's shape.
inline bool member_carac(const Word& u, const Word& w) {
    const auto cls = classify(w);
    if (!cls.good) throw error("member_carac requires a good word");
    const GoodForm& g = *cls.form;
    if (g.orientation == GoodForm::Orientation::empty) throw error("member_carac requires a nonempty word");
    if (g.n == 0) throw error("member_carac requires both letters in w");

    const bool a_type = g.orientation == GoodForm::Orientation::a_type;
    const char ca = a_type ? g.roles[0] : g.roles[1];
    const char cb = a_type ? g.roles[1] : g.roles[0];
    for (char c : u.str())
        if (c != ca && c != cb) return false;

    const long wa = g.i + g.e * g.n + g.f;
    const long wb = g.e + 1;
    const long ua = static_cast<long>(std::count(u.str().begin(), u.str().end(), ca));
    const long ub = static_cast<long>(std::count(u.str().begin(), u.str().end(), cb));
    if (ub % wb != 0) return false;
    const long x = ub / wb;
    if (ua != x * wa) return false;

    long pa = 0, pb = 0;
    for (std::size_t t = 0; t <= u.size(); ++t) {
        if (t > 0) (u.str()[t - 1] == ca ? pa : pb) += 1;
        const long sa = ua - pa, sb = ub - pb;
        if (pa < g.i * pb + std::max<long>(0, pb - x) * (g.n - g.i)) return false;
        if (sa < g.f * sb + std::max<long>(0, sb - x) * (g.n - g.f)) return false;
    }
    return true;
}

/// The twelve two-word systems with known closed forms.
enum class PairFamily : std::uint8_t {
    anb_an,  // {a^n b, a^n}
    ban_an,  // {b a^n, a^n}
    bna_bn,  // {b^n a, b^n}
    abn_bn,  // {a b^n, b^n}
    anb_a,   // {a^n b, a}
    anb_b,   // {a^n b, b}
    ban_a,
    ban_b,
    bna_a,
    bna_b,
    abn_a,
    abn_b,
};

/// The two words of a family, over {a, b}.
inline std::vector<Word> pair_family_words(PairFamily family, long n) {
    if (n < 1) throw error("pair family requires n >= 1");
    const std::string an(static_cast<std::size_t>(n), 'a');
    const std::string bn(static_cast<std::size_t>(n), 'b');
    auto mk = [](std::string a, std::string b) {
        return std::vector<Word>{Word::parse(a), Word::parse(b)};
    };
    switch (family) {
        case PairFamily::anb_an: return mk(an + "b", an);
        case PairFamily::ban_an: return mk("b" + an, an);
        case PairFamily::bna_bn: return mk(bn + "a", bn);
        case PairFamily::abn_bn: return mk("a" + bn, bn);
        case PairFamily::anb_a: return mk(an + "b", "a");
        case PairFamily::anb_b: return mk(an + "b", "b");
        case PairFamily::ban_a: return mk("b" + an, "a");
        case PairFamily::ban_b: return mk("b" + an, "b");
        case PairFamily::bna_a: return mk(bn + "a", "a");
        case PairFamily::bna_b: return mk(bn + "a", "b");
        case PairFamily::abn_a: return mk("a" + bn, "a");
        case PairFamily::abn_b: return mk("a" + bn, "b");
    }
    throw error("unknown pair family");
}

namespace detail {

inline bool base_power_and_mark(const std::string& u, long n) {
    // {a^n b, a^n}: full groups of n a's, every prefix a-dominant
    long a = 0, b = 0;
    for (char c : u) {
        (c == 'a' ? a : b) += 1;
        if (a < n * b) return false;
    }
    return a % n == 0;
}

inline bool base_free_a(const std::string& u, long n) {
    // {a^n b, a}: every prefix a-dominant, leftovers are free a's
    long a = 0, b = 0;
    for (char c : u) {
        (c == 'a' ? a : b) += 1;
        if (a < n * b) return false;
    }
    return true;
}

inline bool base_free_b(const std::string& u, long n) {
    // {a^n b, b}: full groups of n a's; enough b's behind every completed
    // group (checked suffix-wise, Hall's condition for the group-to-b matching)
    long total_a = 0;
    for (char c : u) total_a += (c == 'a');
    if (total_a % n != 0) return false;
    long sa = 0, sb = 0;
    for (auto it = u.rbegin(); it != u.rend(); ++it) {
        (*it == 'a' ? sa : sb) += 1;
        if (sb < (sa + n - 1) / n) return false;
    }
    return true;
}

inline std::string rev(const std::string& s) { return std::string(s.rbegin(), s.rend()); }

inline std::string swap_ab(const std::string& s) {
    std::string out = s;
    for (char& c : out) c = (c == 'a') ? 'b' : 'a';
    return out;
}

} // namespace detail

/// Closed forms for the pair families, each obtained from one of three base
/// tests by reversal and/or the exchange morphism.
inline bool member_pair_closed(const Word& u, PairFamily family, long n) {
    if (n < 1) throw error("pair family requires n >= 1");
    for (char c : u.str())
        if (c != 'a' && c != 'b') return false;
    const std::string& s = u.str();
    using namespace detail;
    switch (family) {
        case PairFamily::anb_an: return base_power_and_mark(s, n);
        case PairFamily::ban_an: return base_power_and_mark(rev(s), n);
        case PairFamily::bna_bn: return base_power_and_mark(swap_ab(s), n);
        case PairFamily::abn_bn: return base_power_and_mark(rev(swap_ab(s)), n);
        case PairFamily::anb_a: return base_free_a(s, n);
        case PairFamily::anb_b: return base_free_b(s, n);
        case PairFamily::ban_a: return base_free_a(rev(s), n);
        case PairFamily::ban_b: return base_free_b(rev(s), n);
        case PairFamily::bna_b: return base_free_a(swap_ab(s), n);
        case PairFamily::bna_a: return base_free_b(swap_ab(s), n);
        case PairFamily::abn_b: return base_free_a(rev(swap_ab(s)), n);
        case PairFamily::abn_a: return base_free_b(rev(swap_ab(s)), n);
    }
    throw error("unknown pair family");
}

/// Necessary conditions for membership in the closure of a^k b a^l b^m
/// (k > l >= 1, m >= 1): every nonempty prefix keeps the letter-count
/// slope at least (k+l)/(m+1), a first b needs k leading a's, an
/// immediate second b needs 2k.
inline bool necessary_form2(const Word& u, long k, long l, long m) {
    if (!(k > l && l >= 1 && m >= 1)) throw error("necessary_form2 parameters out of regime");
    const std::string& s = u.str();
    for (char c : s)
        if (c != 'a' && c != 'b') return false;
    long pa = 0, pb = 0;
    for (char c : s) {
        (c == 'a' ? pa : pb) += 1;
        if (pa * (m + 1) < (k + l) * pb) return false;
    }
    std::size_t alpha = 0;
    while (alpha < s.size() && s[alpha] == 'a') ++alpha;
    if (alpha < s.size()) {  // s = a^alpha b ...
        if (static_cast<long>(alpha) < k) return false;
        if (alpha + 1 < s.size() && s[alpha + 1] == 'b' && static_cast<long>(alpha) < 2 * k)
            return false;
    }
    return true;
}

} // namespace wqo
