#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "wqo/classify.hpp"
#include "wqo/membership.hpp"
#include "wqo/word.hpp"

namespace wqo {

/// Strictly increasing, letter-preserving position map witnessing that one
/// word is a subsequence of another. Positions are 1-based into v.
struct Embedding {
    std::vector<std::size_t> map;
};

inline bool valid_embedding(const Embedding& f, const Word& u, const Word& v) {
    if (f.map.size() != u.size()) return false;
    std::size_t prev = 0;
    for (std::size_t i = 0; i < f.map.size(); ++i) {
        const std::size_t p = f.map[i];
        if (p <= prev || p > v.size()) return false;
        if (v.at(p) != u.at(i + 1)) return false;
        prev = p;
    }
    return true;
}

/// Lazy enumeration of all embeddings of u in v, lexicographically by
/// position map. Yields nothing when u is not a subsequence of v.
class EmbeddingEnumerator {
public:
    EmbeddingEnumerator(Word u, Word v) : u_(std::move(u)), v_(std::move(v)) {}

    std::optional<Embedding> next() {
        if (exhausted_) return std::nullopt;
        if (u_.empty()) {
            exhausted_ = true;
            return Embedding{};
        }
        if (!started_) {
            started_ = true;
            if (extend(0, 0)) return current();
            exhausted_ = true;
            return std::nullopt;
        }
        while (!stack_.empty()) {
            const std::size_t i = stack_.size() - 1;
            const std::size_t from = stack_.back() + 1;
            stack_.pop_back();
            if (extend(i, from)) return current();
        }
        exhausted_ = true;
        return std::nullopt;
    }

private:
    // complete the partial map for u[i..], scanning v from index `from`
    bool extend(std::size_t i, std::size_t from) {
        const std::string& us = u_.str();
        const std::string& vs = v_.str();
        while (i < us.size()) {
            bool found = false;
            for (std::size_t j = from; j + (us.size() - i) <= vs.size(); ++j) {
                if (vs[j] == us[i]) {
                    stack_.push_back(j);
                    from = j + 1;
                    ++i;
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
        return true;
    }

    Embedding current() const {
        Embedding f;
        f.map.reserve(stack_.size());
        for (std::size_t j : stack_) f.map.push_back(j + 1);
        return f;
    }

    Word u_, v_;
    std::vector<std::size_t> stack_;
    bool started_ = false;
    bool exhausted_ = false;
};

/// All embeddings, materialized.
inline std::vector<Embedding> embeddings(const Word& u, const Word& v) {
    std::vector<Embedding> out;
    EmbeddingEnumerator e(u, v);
    while (auto f = e.next()) out.push_back(std::move(*f));
    return out;
}

/// The word spelled by v's positions outside the image of f.
inline Word difference(const Word& u, const Word& v, const Embedding& f) {
    if (!valid_embedding(f, u, v)) throw error("invalid embedding");
    std::vector<bool> image(v.size(), false);
    for (std::size_t p : f.map) image[p - 1] = true;
    std::string out;
    for (std::size_t t = 0; t < v.size(); ++t)
        if (!image[t]) out.push_back(v.str()[t]);
    return Word(out, v.alphabet());
}

/// Witness of u derives-to v: an embedding of u in v together with a closure
/// certificate for the difference word.
struct DerivationCertificate {
    Embedding embedding;
    Word difference;
    ShuffleCertificate difference_certificate;
};

namespace detail {

struct Form2Params {
    long k, l, m;
};

/// Recognize a single-word system a^k b a^l b^m (k > l >= 1, m >= 1).
inline std::optional<Form2Params> form2_shape(const InsertionSystem& system) {
    if (system.words().size() != 1) return std::nullopt;
    const auto bs = blocks_of(system.words().front().str());
    if (bs.size() != 4) return std::nullopt;
    if (bs[0].symbol != 'a' || bs[1].symbol != 'b' || bs[1].len != 1) return std::nullopt;
    const long k = static_cast<long>(bs[0].len);
    const long l = static_cast<long>(bs[2].len);
    const long m = static_cast<long>(bs[3].len);
    if (k > l && l >= 1 && m >= 1) return Form2Params{k, l, m};
    return std::nullopt;
}

/// Joint search over "match the next letter of u" / "route the letter into
/// the difference" decisions, with the closure assignment tracked for the
/// routed letters. Match is tried first, so the first accepting embedding is
/// the lexicographically least one.
class DeriveSearch {
public:
    DeriveSearch(const std::string& u, const std::string& v, const std::vector<std::string>& words,
                 std::optional<Form2Params> prune, const SearchLimits& limits)
        : u_(u), v_(v), words_(words), prune_(prune), limits_(limits) {
        ua_.resize(u_.size() + 1, 0);
        for (std::size_t t = 0; t < u_.size(); ++t) ua_[t + 1] = ua_[t] + (u_[t] == 'a');
        va_.resize(v_.size() + 1, 0);
        for (std::size_t t = 0; t < v_.size(); ++t) va_[t + 1] = va_[t] + (v_[t] == 'a');
    }

    struct Result {
        std::vector<std::size_t> matched;  // 1-based v-positions, the embedding
        std::vector<std::pair<std::size_t, std::vector<std::size_t>>> copies;  // word idx, v-positions
    };

    std::optional<Result> run() {
        if (u_.size() > v_.size()) return std::nullopt;
        if (dfs(0, 0)) return Result{matched_, done_};
        return std::nullopt;
    }

private:
    struct Open {
        std::size_t word;
        std::size_t progress;
        std::vector<std::size_t> positions;
    };

    std::string state_key(std::size_t pos, std::size_t ui) const {
        std::string key;
        key.reserve(2 + 2 * open_.size());
        key.push_back(static_cast<char>(pos));
        key.push_back(static_cast<char>(ui));
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

    // necessary conditions on the prefix of the difference built so far
    bool prune_rejects(std::size_t pos, std::size_t ui, char routed) const {
        if (!prune_) return false;
        const long da = static_cast<long>(va_[pos + 1]) - static_cast<long>(ua_[ui]);
        const long len = static_cast<long>(pos + 1 - ui);
        const long db = len - da;
        if (da * (prune_->m + 1) < (prune_->k + prune_->l) * db) return true;
        if (routed == 'b' && db == 1 && da < prune_->k) return true;  // first b of the difference
        return false;
    }

    bool dfs(std::size_t pos, std::size_t ui) {
        if (pos == v_.size()) return ui == u_.size() && open_.empty();
        if (v_.size() - pos < u_.size() - ui) return false;
        const std::string key = state_key(pos, ui);
        if (failed_.count(key)) return false;
        const char c = v_[pos];

        if (ui < u_.size() && u_[ui] == c) {
            matched_.push_back(pos + 1);
            if (dfs(pos + 1, ui + 1)) return true;
            matched_.pop_back();
        }

        if (!prune_rejects(pos, ui, c)) {
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
                if (dfs(pos + 1, ui)) return true;
                if (closes)
                    done_.pop_back();
                else
                    open_.pop_back();
                o.progress -= 1;
                o.positions.pop_back();
                open_.insert(open_.begin() + static_cast<std::ptrdiff_t>(idx), o);
            }
            for (std::size_t wi = 0; wi < words_.size(); ++wi) {
                if (words_[wi][0] != c) continue;
                if (words_[wi].size() == 1) {
                    done_.emplace_back(wi, std::vector<std::size_t>{pos + 1});
                    if (dfs(pos + 1, ui)) return true;
                    done_.pop_back();
                } else {
                    open_.push_back({wi, 1, {pos + 1}});
                    if (dfs(pos + 1, ui)) return true;
                    open_.pop_back();
                }
            }
        }

        if (failed_.size() >= limits_.memo_budget)
            throw limit_error("memo budget exceeded in derivation search");
        failed_.insert(key);
        return false;
    }

    const std::string& u_;
    const std::string& v_;
    const std::vector<std::string>& words_;
    std::optional<Form2Params> prune_;
    const SearchLimits& limits_;
    std::vector<std::size_t> ua_, va_;
    std::vector<Open> open_;
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> done_;
    std::vector<std::size_t> matched_;
    std::unordered_set<std::string> failed_;
};

} // namespace detail

/// Decide u derives-to v under I: some embedding f of u in v leaves a
/// difference word in the closure of I. Certificates are deterministic
/// (least embedding first). Count pruning never changes answers.
inline std::optional<DerivationCertificate> derives(const Word& u, const Word& v,
                                                    const InsertionSystem& system,
                                                    const SearchLimits& limits = {}) {
    if (v.size() > limits.oracle_word_len)
        throw limit_error("target word too long for derivation search (raise the oracle limit)");
    if (v.size() >= 250) throw limit_error("derivation search caps words at 250 symbols");
    if (u.size() > v.size()) return std::nullopt;

    // per-symbol feasibility of the difference counts
    std::string alpha;
    for (char c : u.str())
        if (alpha.find(c) == std::string::npos) alpha.push_back(c);
    for (char c : v.str())
        if (alpha.find(c) == std::string::npos) alpha.push_back(c);
    std::string fake;
    for (char c : alpha) {
        const long d = static_cast<long>(std::count(v.str().begin(), v.str().end(), c)) -
                       static_cast<long>(std::count(u.str().begin(), u.str().end(), c));
        if (d < 0) return std::nullopt;
        fake.append(static_cast<std::size_t>(d), c);
    }
    std::vector<std::string> raw;
    for (const auto& w : system.words()) raw.push_back(w.str());
    if (!detail::counts_feasible(fake, raw)) return std::nullopt;

    detail::DeriveSearch search(u.str(), v.str(), raw, detail::form2_shape(system), limits);
    auto found = search.run();
    if (!found) return std::nullopt;

    DerivationCertificate cert;
    cert.embedding.map = found->matched;
    cert.difference = difference(u, v, cert.embedding);

    // remap difference copies from v-positions to positions in the
    // difference word itself
    std::vector<std::size_t> diff_positions;
    for (const auto& [wi, ps] : found->copies)
        diff_positions.insert(diff_positions.end(), ps.begin(), ps.end());
    std::sort(diff_positions.begin(), diff_positions.end());
    std::map<std::size_t, std::size_t> rank;
    for (std::size_t t = 0; t < diff_positions.size(); ++t) rank[diff_positions[t]] = t + 1;
    for (const auto& [wi, ps] : found->copies) {
        CertificateCopy copy;
        copy.word = system.words()[wi];
        for (std::size_t p : ps) copy.positions.push_back(rank.at(p));
        cert.difference_certificate.copies.push_back(std::move(copy));
    }
    std::sort(cert.difference_certificate.copies.begin(), cert.difference_certificate.copies.end(),
              [](const CertificateCopy& a, const CertificateCopy& b) {
                  return a.positions.front() < b.positions.front();
              });
    return cert;
}

/// Entry (i, j) says words[i] derives-to words[j].
inline std::vector<std::vector<bool>> comparability_matrix(const std::vector<Word>& words,
                                                           const InsertionSystem& system,
                                                           const SearchLimits& limits = {}) {
    std::vector<std::vector<bool>> out(words.size(), std::vector<bool>(words.size(), false));
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = 0; j < words.size(); ++j)
            out[i][j] = derives(words[i], words[j], system, limits).has_value();
    return out;
}

} // namespace wqo
